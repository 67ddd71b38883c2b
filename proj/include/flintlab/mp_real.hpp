#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "flintlab/bigint.hpp"
#include "flintlab/bound.hpp"

namespace flintlab {

/// Number of mantissa bits.
using Precision = std::uint32_t;

/// Arbitrary-precision real: a dyadic midpoint mantissa * 2^exponent plus an
/// absolute error bound. The represented mathematical quantity lies in
/// [midpoint - err, midpoint + err]. Mantissas are kept odd (trailing zero
/// bits are folded into the exponent) so equal values are bit-identical.
class MpReal {
 public:
  MpReal() = default;

  static MpReal exact(const BigInt& v);
  static MpReal exact(std::int64_t v) { return exact(BigInt(v)); }
  /// The exact binary value of a finite double.
  static MpReal exact(double v);
  static MpReal dyadic(mpz_class mantissa, std::int64_t exponent, Bound err = {});
  /// Parses "[-]digits[.digits][e[-]digits]". Values that are not dyadic
  /// rationals are rounded to `prec` bits with the rounding folded into err.
  static MpReal parse(std::string_view text, Precision prec);

  const mpz_class& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }
  const Bound& err() const { return err_; }
  int sign() const { return sgn(man_); }
  bool is_exact() const { return err_.is_zero(); }
  /// Bits in the mantissa magnitude.
  std::size_t mantissa_bits() const;
  /// floor(log2 |midpoint|); the midpoint must be non-zero.
  std::int64_t msb() const;

  /// |midpoint| rounded in `dir`.
  Bound magnitude(Rounding dir) const { return Bound::of(man_, exp_, dir); }
  /// Upper bound on |true value|.
  Bound abs_upper() const { return magnitude(Rounding::up) + err_; }
  /// Lower bound on |true value| (zero when the interval straddles 0).
  Bound abs_lower() const { return Bound::sub(magnitude(Rounding::down), err_, Rounding::down); }
  /// True when the interval excludes zero.
  bool sign_certain() const { return !abs_lower().is_zero(); }

  MpReal widened(const Bound& extra) const;
  /// Round-to-nearest to `prec` mantissa bits; the rounding is added to err.
  MpReal rounded(Precision prec) const;
  MpReal abs() const;
  MpReal operator-() const;

  /// Midpoint scaled by 2^w and rounded to the nearest integer; `rounding`
  /// receives an upper bound on the absolute rounding error (unscaled).
  mpz_class to_fixed(std::int64_t w, Bound* rounding = nullptr) const;

  double to_double() const;
  /// Exact decimal expansion of the midpoint.
  std::string to_exact_decimal() const;
  /// Midpoint rounded half away from zero to `frac_digits` decimals.
  std::string to_decimal(int frac_digits) const;
  /// Only the decimals covered by the error bound: the printed value is
  /// within err + half a unit in its last place of the midpoint.
  std::string to_guaranteed_decimal() const;
  /// Midpoint with `sig_digits` significant digits, e.g. "3.0144e-5".
  std::string to_scientific(int sig_digits) const;
  /// Number of decimals to_guaranteed_decimal() prints for a non-exact value.
  int guaranteed_decimals() const;

  /// Identical midpoint and error bound.
  friend bool identical(const MpReal& a, const MpReal& b) {
    return a.exp_ == b.exp_ && cmp(a.man_, b.man_) == 0 && a.err_ == b.err_;
  }

 private:
  void normalize();

  mpz_class man_;
  std::int64_t exp_ = 0;
  Bound err_;
};

MpReal add(const MpReal& a, const MpReal& b, Precision prec);
MpReal sub(const MpReal& a, const MpReal& b, Precision prec);
MpReal mul(const MpReal& a, const MpReal& b, Precision prec);
/// Throws DomainError when the divisor interval contains zero.
MpReal div(const MpReal& a, const MpReal& b, Precision prec);
MpReal pow_ui(const MpReal& x, unsigned long e, Precision prec);
MpReal mul_2exp(const MpReal& x, std::int64_t k);

/// Exact comparison of midpoints.
int compare_midpoints(const MpReal& a, const MpReal& b);
/// -1 / +1 when the intervals are disjoint, nullopt when they overlap.
std::optional<int> compare_certain(const MpReal& a, const MpReal& b);
/// Upper bound on |a - b| between midpoints.
Bound midpoint_distance(const MpReal& a, const MpReal& b);

}  // namespace flintlab
