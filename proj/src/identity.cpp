#include "flintlab/identity.hpp"

#include <random>

#include <json.hpp>

#include "flintlab/combinatorics.hpp"
#include "flintlab/errors.hpp"
#include "flintlab/series.hpp"
#include "flintlab/transcendental.hpp"

namespace flintlab {

namespace {

MpReal power_of_two(std::int64_t k) { return MpReal::dyadic(1, k); }

std::string describe(const MpReal& x) {
  return x.is_exact() ? x.to_exact_decimal() : x.to_guaranteed_decimal();
}

}  // namespace

std::string ResidualReport::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters) {
    if (k == key) return v;
  }
  return {};
}

ResidualReport verify_multiple_angle(std::uint64_t n, const MpReal& theta, Precision bits) {
  if (n < 1) throw DomainError("verify_multiple_angle: n must be >= 1");
  const auto coeffs = multiple_angle_coefficients(n);
  BigInt coeff_mass;
  for (const auto& c : coeffs) coeff_mass += c.coefficient.abs();
  // rounding in the polynomial is amplified by at most the coefficient mass
  const auto wp = static_cast<Precision>(bits + coeff_mass.bit_length() + 64);

  const MpReal n_theta = mul(MpReal::exact(static_cast<std::int64_t>(n)), theta, wp + 64);
  const MpReal lhs = sin_any(n_theta, wp);
  const MpReal sine = sin_any(theta, wp);
  const MpReal cosine = cos_any(theta, wp);
  const MpReal cos2 = mul(cosine, cosine, wp);

  // Horner in cos^2 from the highest power down
  MpReal poly;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    poly = add(mul(poly, cos2, wp), MpReal::exact(it->coefficient), wp);
  }
  if (coeffs.front().cos_power == 1) poly = mul(poly, cosine, wp);
  const MpReal rhs = mul(sine, poly, wp);

  ResidualReport r;
  r.description = "sin(n t) = sin(t) * sum (-1)^(i-j) C(n,2i+1) C(i,j) cos^(n-2(i-j)-1)(t)";
  r.parameters = {{"n", std::to_string(n)},
                  {"theta", describe(theta)},
                  {"bits", std::to_string(bits)},
                  {"guard_bits", std::to_string(kMultipleAngleGuardBits)},
                  {"working_bits", std::to_string(wp)}};
  r.residual = sub(lhs, rhs, wp).abs();
  r.tolerance = power_of_two(-static_cast<std::int64_t>(bits) + kMultipleAngleGuardBits);
  r.pass = r.residual.magnitude(Rounding::up) <= r.tolerance.magnitude(Rounding::down);
  return r;
}

std::vector<ResidualReport> verify_multiple_angle_sweep(std::uint64_t n_first, std::uint64_t n_last,
                                                        std::size_t count, std::uint64_t seed,
                                                        Precision bits) {
  std::mt19937_64 rng(seed);
  // angles are dyadic with 61 fraction bits, strictly inside (-pi, pi)
  constexpr std::int64_t kFractionBits = 61;
  const mpz_class pi_scaled = PiCache::global().fixed(kFractionBits) - 2;
  const auto limit = static_cast<std::int64_t>(pi_scaled.get_si());
  std::uniform_int_distribution<std::int64_t> dist(-limit, limit);
  std::vector<MpReal> angles;
  angles.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    angles.push_back(MpReal::dyadic(mpz_class(static_cast<long>(dist(rng))), -kFractionBits));
  }
  std::vector<ResidualReport> out;
  for (std::uint64_t n = n_first; n <= n_last; ++n) {
    for (const auto& theta : angles) {
      ResidualReport r = verify_multiple_angle(n, theta, bits);
      r.seed = seed;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SincPoint> verify_sinc_limit(std::span<const MpReal> ms, Precision bits) {
  std::vector<SincPoint> out;
  out.reserve(ms.size());
  for (const auto& m : ms) {
    if (m.sign() <= 0 || !m.sign_certain()) throw DomainError("verify_sinc_limit: m must be positive");
    if (m.abs_upper() > Bound::pow2(1)) throw DomainError("verify_sinc_limit: m must be small");
    const std::int64_t scale = std::max<std::int64_t>(0, -m.msb());
    const auto wp = static_cast<Precision>(bits + scale + 16);
    const MpReal ratio = div(sin_mp(m, wp), m, wp);
    SincPoint p{m, ratio, {}};
    // |sin m / m - 1| <= m^2 / 6
    const Bound m2 = m.abs_upper() * m.abs_upper();
    p.distance_bound = Bound::div(m2, Bound::scaled(6, 0), Rounding::up) + ratio.err();
    out.push_back(std::move(p));
  }
  return out;
}

ResidualReport verify_angle_difference(const MpReal& n, const MpReal& a, Precision bits) {
  const auto wp = static_cast<Precision>(bits + 16);
  const MpReal sin_n = sin_any(n, wp);
  if (!sin_n.sign_certain()) {
    throw DomainError("verify_angle_difference: |sin n| is within its error bound of zero");
  }
  const MpReal cos_n = cos_any(n, wp);
  const MpReal lhs = sin_any(sub(n, a, wp + 64), wp);
  const MpReal rhs = sub(mul(sin_n, cos_any(a, wp), wp), mul(cos_n, sin_any(a, wp), wp), wp);

  ResidualReport r;
  r.description = "sin(n - a) = sin(n) cos(a) - cos(n) sin(a)";
  r.parameters = {{"n", describe(n)}, {"a", describe(a)}, {"bits", std::to_string(bits)}};
  r.residual = sub(lhs, rhs, wp).abs();
  r.tolerance = power_of_two(2 - static_cast<std::int64_t>(bits));
  r.pass = r.residual.magnitude(Rounding::up) <= r.tolerance.magnitude(Rounding::down);
  return r;
}

ResidualReport verify_iteration_ratio(std::uint64_t k, std::uint32_t s, Precision bits) {
  if (k < 1 || s < 1) throw DomainError("verify_iteration_ratio: need k >= 1 and s >= 1");
  SeriesSpec base;
  base.bits = bits;
  SeriesSpec deep = base;
  deep.s = s;
  const PartialSumResult s0 = partial_sum(k, base);
  const PartialSumResult ss = partial_sum(k, deep);

  // max |G(n)/n - 1| kept as an exact rational p/q
  mpz_class worst_num = 0;
  mpz_class worst_den = 1;
  for (std::uint64_t n = 1; n <= k; ++n) {
    const mpz_class g = g_value(n).value.raw();
    const mpz_class diff = abs(g - static_cast<unsigned long>(n));
    if (diff * worst_den > worst_num * static_cast<unsigned long>(n)) {
      worst_num = diff;
      worst_den = static_cast<unsigned long>(n);
    }
  }
  const MpReal g_ratio = sgn(worst_num) == 0
                             ? MpReal()
                             : div(MpReal::exact(BigInt(worst_num)), MpReal::exact(BigInt(worst_den)), 64);

  const auto wp = static_cast<Precision>(bits + 64);
  const MpReal v0 = s0.value();
  const MpReal vs = ss.value();
  const MpReal ratio = div(vs, v0, wp);

  ResidualReport r;
  r.description = "S_s(k) / S_0(k) = 1 for the s-indexed family";
  r.parameters = {{"k", std::to_string(k)},
                  {"s", std::to_string(s)},
                  {"bits", std::to_string(bits)},
                  {"S_0", v0.to_guaranteed_decimal()},
                  {"S_s", vs.to_guaranteed_decimal()},
                  {"g_ratio_max", g_ratio.is_exact() ? g_ratio.to_exact_decimal() : g_ratio.to_scientific(17)}};
  r.residual = sub(ratio, MpReal::exact(std::int64_t{1}), wp).abs();
  // (err_s + err_0) / (S_0 - err_0) plus the quotient rounding
  const Bound spread = Bound::div(s0.err() + ss.err(), v0.abs_lower(), Rounding::up) +
                       Bound::pow2(-static_cast<std::int64_t>(wp) + 4);
  auto [tm, te] = spread.to_dyadic();
  r.tolerance = MpReal::dyadic(tm, te);
  r.pass = r.residual.magnitude(Rounding::up) <= r.tolerance.magnitude(Rounding::down);
  return r;
}

std::string to_json_line(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["description"] = r.description;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["residual"] = r.residual.sign() == 0 ? std::string("0") : r.residual.to_scientific(6);
  j["residual_err"] = r.residual.err().is_zero() ? std::string("0")
                                                  : MpReal::dyadic(r.residual.err().to_dyadic().first,
                                                                   r.residual.err().to_dyadic().second)
                                                        .to_scientific(6);
  j["tolerance"] = r.tolerance.to_scientific(6);
  j["pass"] = r.pass;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j.dump();
}

}  // namespace flintlab
