#include "flintlab/series.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flintlab/combinatorics.hpp"
#include "flintlab/errors.hpp"
#include "flintlab/parallel.hpp"
#include "flintlab/transcendental.hpp"

namespace flintlab {

namespace {

constexpr std::int64_t kGridGuardBits = 64;

bool integral_power(double p) { return p == std::floor(p) && p <= 1.0e6; }

std::int64_t bits_of(std::uint64_t v) {
  std::int64_t n = 0;
  for (; v != 0; v >>= 1U) ++n;
  return n;
}

// ceil(b * 2^w) for a bound b
mpz_class ceil_units(const Bound& b, std::int64_t w) {
  auto [m, e] = b.to_dyadic();
  if (sgn(m) == 0) return 0;
  const std::int64_t k = e + w;
  if (k >= 0) return m << static_cast<mp_bitcnt_t>(k);
  mpz_class q;
  mpz_cdiv_q_2exp(q.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  return q;
}

// Exact integer value of a decimal string on the grid 2^-w.
BigInt grid_units(std::string_view text, std::int64_t w, const char* what) {
  const MpReal x = MpReal::parse(text, 64);
  if (!x.is_exact()) throw FormatError(std::string("checkpoint ") + what + " is not a dyadic value");
  if (x.sign() != 0 && x.exponent() < -w) {
    throw FormatError(std::string("checkpoint ") + what + " is finer than the summation grid");
  }
  return BigInt(x.to_fixed(w));
}

struct ChunkSum {
  mpz_class value;
  mpz_class err;
};

}  // namespace

void SeriesSpec::validate() const {
  if (u < 1) throw DomainError("series spec: u must be >= 1");
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("series spec: v must be positive");
  if (bits < 8) throw DomainError("series spec: bits must be >= 8");
  check_precision(bits);
}

std::int64_t grid_bits(const SeriesSpec& spec) {
  return static_cast<std::int64_t>(spec.bits) + kGridGuardBits;
}

MpReal PartialSumResult::value() const {
  const std::int64_t w = grid_bits(spec);
  return MpReal::dyadic(grid_value.raw(), -w, err());
}

Bound PartialSumResult::err() const {
  return Bound::of(grid_err.raw(), -grid_bits(spec), Rounding::up);
}

MpReal term(std::uint64_t n, const SeriesSpec& spec) {
  return term(n, spec, static_cast<std::int64_t>(spec.bits));
}

MpReal term(std::uint64_t n, const SeriesSpec& spec, std::int64_t target_bits) {
  spec.validate();
  if (n < 1) throw DomainError("term: n must be >= 1");
  const BigInt n_big(static_cast<std::int64_t>(n));

  BigInt numerator(1);
  if (spec.s > 0) numerator = g_value(n).value.pow(2UL * spec.s);

  const double power = spec.denominator_power();
  const bool exact_power = integral_power(power);
  BigInt exact_den;
  if (exact_power) exact_den = n_big.pow(static_cast<unsigned long>(power));

  // magnitude estimate: |sin n| and log2 of the summand
  MpReal rough;
  for (Precision p = 64;; p *= 2) {
    rough = sin_int(n_big, p).abs();
    if (rough.sign_certain()) break;
  }
  const double sin_log = std::max(0.0, -rough.abs_lower().log2());
  const double log_term = static_cast<double>(numerator.bit_length()) -
                          power * std::log2(static_cast<double>(n)) + spec.u * sin_log;

  const Bound target = Bound::pow2(-target_bits);
  std::int64_t extra = 0;
  for (;;) {
    const std::int64_t rel = target_bits + std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(log_term))) +
                             16 + extra + bits_of(spec.u);
    const auto prec = static_cast<Precision>(rel + 8);
    check_precision(prec);
    const auto sin_bits = static_cast<Precision>(rel + static_cast<std::int64_t>(std::ceil(sin_log)) + 8);
    const MpReal abs_sin = sin_int(n_big, sin_bits).abs();
    MpReal den = pow_ui(abs_sin, spec.u, prec);
    if (exact_power) {
      den = mul(den, MpReal::exact(exact_den), prec);
    } else {
      const MpReal exponent = mul(MpReal::exact(power), log_mp(MpReal::exact(n_big), prec + 16), prec + 16);
      den = mul(den, exp_mp(exponent, prec), prec);
    }
    MpReal t = div(MpReal::exact(numerator), den, prec);
    if (t.err() <= target) return t;
    extra += 32;
  }
}

PartialSumResult partial_sum(std::uint64_t k, const SeriesSpec& spec,
                             const std::optional<PartialSumResult>& checkpoint,
                             const SumOptions& options) {
  spec.validate();
  if (k < 1) throw DomainError("partial_sum: k must be >= 1");
  PartialSumResult out;
  out.spec = spec;
  std::uint64_t first = 1;
  if (checkpoint) {
    if (!(checkpoint->spec == spec)) throw CheckpointMismatchError("checkpoint was taken with a different series spec");
    if (checkpoint->k >= k) throw CheckpointMismatchError("checkpoint k must be below the requested k");
    out.grid_value = checkpoint->grid_value;
    out.grid_err = checkpoint->grid_err;
    first = checkpoint->k + 1;
  }
  const std::int64_t w = grid_bits(spec);
  const auto chunks = aligned_chunks(first, k, std::max<std::uint64_t>(1, options.chunk_size));
  const auto sums = map_chunks<ChunkSum>(chunks, options.threads, [&](const IndexRange& r) {
    ChunkSum c;
    for (std::uint64_t n = r.first; n <= r.last; ++n) {
      const MpReal t = term(n, spec, w);
      Bound rounding;
      c.value += t.to_fixed(w, &rounding);
      c.err += ceil_units(t.err(), w) + (rounding.is_zero() ? 0 : 1);
    }
    return c;
  });
  mpz_class value = out.grid_value.raw();
  mpz_class err = out.grid_err.raw();
  for (const auto& c : sums) {
    value += c.value;
    err += c.err;
  }
  out.grid_value = BigInt(std::move(value));
  out.grid_err = BigInt(std::move(err));
  out.k = k;
  return out;
}

std::vector<EquivalenceRow> equivalence_experiment(std::uint64_t k, std::uint32_t s_max,
                                                   Precision bits, const SumOptions& options) {
  if (k < 1 || s_max < 1) throw DomainError("equivalence_experiment: need k >= 1 and s_max >= 1");
  std::vector<EquivalenceRow> rows;
  std::optional<PartialSumResult> base;
  for (std::uint32_t s = 0; s <= s_max; ++s) {
    SeriesSpec spec;
    spec.s = s;
    spec.bits = bits;
    const PartialSumResult r = partial_sum(k, spec, std::nullopt, options);
    if (!base) base = r;
    const std::int64_t w = grid_bits(spec);
    mpz_class d = r.grid_value.raw() - base->grid_value.raw();
    rows.push_back({s, r.value(), r.err(), MpReal::dyadic(abs(d), -w)});
  }
  return rows;
}

std::string checkpoint_to_json(const PartialSumResult& r) {
  const std::int64_t w = grid_bits(r.spec);
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["spec"] = {{"s", r.spec.s}, {"u", r.spec.u}, {"v", r.spec.v}, {"bits", r.spec.bits}};
  j["k"] = r.k;
  j["value"] = MpReal::dyadic(r.grid_value.raw(), -w).to_exact_decimal();
  j["err"] = MpReal::dyadic(r.grid_err.raw(), -w).to_exact_decimal();
  return j.dump();
}

PartialSumResult checkpoint_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1) throw FormatError("unsupported checkpoint version");
    PartialSumResult r;
    const auto& s = j.at("spec");
    r.spec.s = s.at("s").get<std::uint32_t>();
    r.spec.u = s.at("u").get<std::uint32_t>();
    r.spec.v = s.at("v").get<double>();
    r.spec.bits = s.at("bits").get<Precision>();
    r.spec.validate();
    r.k = j.at("k").get<std::uint64_t>();
    const std::int64_t w = grid_bits(r.spec);
    r.grid_value = grid_units(j.at("value").get<std::string>(), w, "value");
    r.grid_err = grid_units(j.at("err").get<std::string>(), w, "err");
    if (r.grid_value.sign() < 0 || r.grid_err.sign() < 0) throw FormatError("checkpoint holds a negative sum");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::string& path, const PartialSumResult& r) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write checkpoint " + path);
  out << checkpoint_to_json(r) << '\n';
  if (!out) throw FormatError("cannot write checkpoint " + path);
}

PartialSumResult load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read checkpoint " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace flintlab
