#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flintlab/mp_real.hpp"

namespace flintlab {

struct ResidualReport {
  std::string description;
  std::vector<std::pair<std::string, std::string>> parameters;
  MpReal residual;
  MpReal tolerance;
  /// |residual midpoint| <= tolerance
  bool pass = false;
  std::optional<std::uint64_t> seed;

  /// Value of a named parameter, or empty.
  std::string parameter(const std::string& key) const;
};

/// Guard bits subtracted from the target precision to form the tolerance of
/// verify_multiple_angle.
inline constexpr int kMultipleAngleGuardBits = 32;

/// |sin(n t) - sin t * sum_k c_k cos^k t| with the collected double-sum
/// coefficients; tolerance 2^(-bits + 32).
ResidualReport verify_multiple_angle(std::uint64_t n, const MpReal& theta, Precision bits);

/// verify_multiple_angle for every n in [n_first, n_last] at `count`
/// angles drawn uniformly from (-pi, pi) by a generator seeded with `seed`.
std::vector<ResidualReport> verify_multiple_angle_sweep(std::uint64_t n_first, std::uint64_t n_last,
                                                        std::size_t count, std::uint64_t seed,
                                                        Precision bits);

struct SincPoint {
  MpReal m;
  MpReal ratio;  ///< sin(m) / m
  /// m^2/6 plus the evaluation error: an upper bound on |ratio - 1|.
  Bound distance_bound;
};

/// sin(m)/m along a sequence of positive m.
std::vector<SincPoint> verify_sinc_limit(std::span<const MpReal> ms, Precision bits = 128);

/// |sin(n - a) - (sin n cos a - cos n sin a)|, tolerance 4 * 2^-bits.
/// DomainError when |sin n| is not separated from zero by its error bound.
ResidualReport verify_angle_difference(const MpReal& n, const MpReal& a, Precision bits);

/// |S_s(k) / S_0(k) - 1| for the s-indexed family. The parameter
/// "g_ratio_max" holds max_{n<=k} |G(n)/n - 1| as an exact decimal.
ResidualReport verify_iteration_ratio(std::uint64_t k, std::uint32_t s, Precision bits);

/// One-line JSON object for a report.
std::string to_json_line(const ResidualReport& r);

}  // namespace flintlab
