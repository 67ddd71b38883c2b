#pragma once

#include <cstdint>
#include <mutex>
#include <shared_mutex>

#include "flintlab/bigint.hpp"
#include "flintlab/mp_real.hpp"

namespace flintlab {

/// Largest working precision any operation may request (default 10^7 bits).
Precision max_precision_bits();
void set_max_precision_bits(Precision bits);
/// Throws ResourceLimitError when `bits` exceeds max_precision_bits().
void check_precision(std::uint64_t bits);

/// Process-wide cache of a constant held as a fixed-point integer.
///
/// `compute(W)` must return an integer within 3 units of c * 2^W. The cache
/// only grows; requests at or below the stored precision are answered by
/// rounding the stored value and never recompute.
class ConstantCache {
 public:
  using Compute = mpz_class (*)(std::int64_t);
  explicit ConstantCache(Compute compute) : compute_(compute) {}

  /// Integer within one unit of c * 2^w.
  mpz_class fixed(std::int64_t w);
  std::int64_t stored_bits() const;
  std::uint64_t computations() const;

 private:
  Compute compute_;
  mutable std::shared_mutex mu_;
  std::int64_t stored_bits_ = 0;
  mpz_class stored_;
  std::uint64_t computations_ = 0;
};

/// Cached pi, computed with a Machin arctangent formula by binary splitting.
class PiCache {
 public:
  static PiCache& global();

  /// pi with absolute error <= 2^-bits.
  MpReal get(Precision bits);
  /// Integer within one unit of pi * 2^w.
  mpz_class fixed(std::int64_t w) { return cache_.fixed(w); }
  std::int64_t stored_bits() const { return cache_.stored_bits(); }
  std::uint64_t computations() const { return cache_.computations(); }

 private:
  PiCache();
  ConstantCache cache_;
};

/// Integer within one unit of ln(2) * 2^w (cached).
mpz_class ln2_fixed(std::int64_t w);

/// pi with absolute error <= 2^-bits. Requires bits >= 8.
MpReal compute_pi(Precision bits);

struct ReducedInteger {
  BigInt k;
  MpReal r;  ///< n - k*pi, in (-pi/2, pi/2]
};

/// Writes n = k*pi + r with err(r) <= 2^-bits. Internally works at
/// bits + bit_length(n) + 32 bits so the cancellation in n - k*pi is absorbed.
ReducedInteger reduce_mod_pi(const BigInt& n, Precision bits);

/// sin(n) for integer n >= 1 with absolute error <= 2^-bits.
MpReal sin_int(const BigInt& n, Precision bits);

/// sin / cos of |x| <= pi (+ err(x)); DomainError otherwise. The error of the
/// result is err(x) plus at most 2^-bits.
MpReal sin_mp(const MpReal& x, Precision bits);
MpReal cos_mp(const MpReal& x, Precision bits);

/// sin / cos of any finite x; the argument is reduced modulo pi/2 with
/// guard bits covering the integer part of x.
MpReal sin_any(const MpReal& x, Precision bits);
MpReal cos_any(const MpReal& x, Precision bits);

/// exp(x) with relative error <= 2^-bits beyond the propagated input error.
MpReal exp_mp(const MpReal& x, Precision bits);
/// Natural log of x > 0 with absolute error <= 2^-bits beyond the
/// propagated input error. DomainError when x is not certainly positive.
MpReal log_mp(const MpReal& x, Precision bits);

}  // namespace flintlab
