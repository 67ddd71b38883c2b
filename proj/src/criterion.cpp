#include "flintlab/criterion.hpp"

#include <cmath>
#include <limits>

#include "flintlab/combinatorics.hpp"
#include "flintlab/errors.hpp"
#include "flintlab/parallel.hpp"
#include "flintlab/rationality.hpp"
#include "flintlab/transcendental.hpp"

namespace flintlab {

namespace {

double ln_double(const MpReal& x) { return log_mp(x, 64).to_double(); }

}  // namespace

CriterionReport check_criterion(std::uint64_t n, std::uint32_t s, double epsilon, Precision bits,
                                Precision cap, GEvaluation g_eval) {
  if (n < 1) throw DomainError("check_criterion: n must be >= 1");
  if (s < 1) throw DomainError("check_criterion: s must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 2.0)) throw DomainError("check_criterion: epsilon must lie in (0, 2)");
  if (bits < 8) throw DomainError("check_criterion: bits must be >= 8");

  CriterionReport rep;
  rep.n = n;
  rep.s = s;
  rep.epsilon = epsilon;
  const BigInt n_big(static_cast<std::int64_t>(n));
  const BigInt g = g_of(n, g_eval).abs();
  rep.lhs = MpReal::exact(g.pow(2UL * s));
  // 2s + 2 - eps is exact: both parts fit well inside 128 bits
  const MpReal power = sub(MpReal::exact(static_cast<std::int64_t>(2 * s + 2)), MpReal::exact(epsilon), 128);

  for (Precision p = bits; p <= cap; p *= 2) {
    const MpReal sine = sin_int(n_big, p);
    const MpReal sin2 = mul(sine, sine, p);
    const MpReal scaled = mul(power, log_mp(MpReal::exact(n_big), p + 16), p + 16);
    rep.rhs = mul(sin2, exp_mp(scaled, p), p);
    if (auto c = compare_certain(rep.lhs, rep.rhs)) {
      rep.satisfied = *c < 0;
      rep.decided_bits = p;
      break;
    }
    if (p > cap / 2) {
      throw UndecidableError("criterion at n=" + std::to_string(n) + " undecided at the precision cap");
    }
  }

  rep.ln_rhs = ln_double(rep.rhs);
  if (g.is_zero()) {
    rep.ln_lhs = -std::numeric_limits<double>::infinity();
    rep.margin = std::numeric_limits<double>::infinity();
  } else {
    rep.ln_lhs = 2.0 * s * ln_double(MpReal::exact(g));
    rep.margin = rep.ln_rhs - rep.ln_lhs;
  }
  return rep;
}

ScanResult scan_criterion(std::uint64_t from, std::uint64_t to, std::uint32_t s, double epsilon,
                          Precision bits, unsigned threads, std::uint64_t chunk_size, GEvaluation g_eval) {
  if (from < 1 || to < from) throw DomainError("scan_criterion: invalid range");
  struct Chunk {
    std::vector<CriterionReport> violations;
    std::uint64_t checked = 0;
    std::uint64_t worst_n = 0;
    double worst = std::numeric_limits<double>::infinity();
  };
  const auto chunks = aligned_chunks(from, to, std::max<std::uint64_t>(1, chunk_size));
  auto parts = map_chunks<Chunk>(chunks, threads, [&](const IndexRange& r) {
    Chunk c;
    for (std::uint64_t n = r.first; n <= r.last; ++n) {
      CriterionReport rep = check_criterion(n, s, epsilon, bits, kDefaultDecisionCap, g_eval);
      ++c.checked;
      if (rep.margin < c.worst) {
        c.worst = rep.margin;
        c.worst_n = n;
      }
      if (!rep.satisfied) c.violations.push_back(std::move(rep));
    }
    return c;
  });
  ScanResult out;
  out.summary.worst_margin = std::numeric_limits<double>::infinity();
  for (auto& c : parts) {
    out.summary.checked += c.checked;
    if (c.worst < out.summary.worst_margin) {
      out.summary.worst_margin = c.worst;
      out.summary.worst_margin_n = c.worst_n;
    }
    for (auto& v : c.violations) out.violations.push_back(std::move(v));
  }
  out.summary.violations = out.violations.size();
  return out;
}

std::vector<ExponentRow> exponent_profile(std::uint64_t n_max, Precision bits, unsigned threads,
                                          std::uint64_t chunk_size) {
  if (n_max < 2) throw DomainError("exponent_profile: n_max must be >= 2");
  const auto chunks = aligned_chunks(2, n_max, std::max<std::uint64_t>(1, chunk_size));
  auto parts = map_chunks<std::vector<double>>(chunks, threads, [&](const IndexRange& r) {
    std::vector<double> lambdas;
    lambdas.reserve(r.last - r.first + 1);
    for (std::uint64_t n = r.first; n <= r.last; ++n) lambdas.push_back(local_exponent(n, bits));
    return lambdas;
  });
  std::vector<ExponentRow> rows;
  rows.reserve(n_max - 1);
  double running = -std::numeric_limits<double>::infinity();
  std::uint64_t n = 2;
  for (const auto& part : parts) {
    for (double lambda : part) {
      running = std::max(running, lambda);
      rows.push_back({n++, lambda, running});
    }
  }
  return rows;
}

}  // namespace flintlab
