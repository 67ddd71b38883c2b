#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flintlab/bigint.hpp"
#include "flintlab/mp_real.hpp"

namespace flintlab {

struct Rational {
  BigInt num;
  BigInt den{1};
};

/// Partial quotients with an explicit marker for a truncated expansion.
struct CfExpansion {
  std::vector<BigInt> terms;
  /// Fewer than the requested number of terms could be certified.
  bool precision_exhausted = false;
};

/// Continued fraction of a positive rational; finite expansions stop early
/// without setting the marker.
CfExpansion cf_terms(const Rational& x, std::size_t count);

/// Partial quotients shared by every real in [x - err, x + err].
CfExpansion cf_terms(const MpReal& x, std::size_t count);

using RealSource = std::function<MpReal(Precision)>;

/// Evaluates `source` at `bits` and at 2*bits and keeps the partial quotients
/// up to the first disagreement.
CfExpansion cf_terms(const RealSource& source, Precision bits, std::size_t count);

/// Continued fraction of pi under the doubled-precision policy.
CfExpansion pi_cf_terms(Precision bits, std::size_t count);

struct Convergent {
  BigInt p;
  BigInt q;
  std::size_t index = 0;
};

/// p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}.
std::vector<Convergent> convergents(std::span<const BigInt> terms);

/// A running record minimum of |sin n|.
struct SpikeRecord {
  std::uint64_t n = 0;
  MpReal abs_sin;
  /// -ln|sin n| / ln n; absent for n = 1.
  std::optional<double> lambda;
};

/// Record minima of |sin n| over 1 <= n <= n_max, ascending in n. Chunks of
/// the range are scanned concurrently and merged in order.
std::vector<SpikeRecord> spike_indices(std::uint64_t n_max, Precision bits, unsigned threads = 1,
                                       std::uint64_t chunk_size = 4096);

/// lambda(n) = -ln|sin n| / ln n for n >= 2.
double local_exponent(std::uint64_t n, Precision bits);

/// true when |sin a| < |sin b|, escalating precision until the intervals
/// separate.
bool abs_sin_less(std::uint64_t a, std::uint64_t b, Precision bits);

}  // namespace flintlab
