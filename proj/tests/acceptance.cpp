// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flintlab/combinatorics.hpp"
#include "flintlab/criterion.hpp"
#include "flintlab/identity.hpp"
#include "flintlab/rationality.hpp"
#include "flintlab/reports.hpp"
#include "flintlab/series.hpp"
#include "flintlab/transcendental.hpp"

using namespace flintlab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

// 1 -------------------------------------------------------------------------
Verdict g_identity() {
  Verdict v;
  const auto t0 = Clock::now();
  BigInt prev = 0, cheb = 1;  // U_{n-2}(1), U_{n-1}(1)
  for (std::uint64_t n = 1; n <= 2000 && v.pass; ++n) {
    const BigInt g = g_value(n).value;
    v.require(g == BigInt(static_cast<std::int64_t>(n)), "G(" + std::to_string(n) + ") != n");
    v.require(g == cheb, "G(" + std::to_string(n) + ") != U_{n-1}(1)");
    const BigInt next = BigInt(2) * cheb - prev;
    prev = cheb;
    cheb = next;
  }
  const double dt = seconds_since(t0);
  v.require(dt < 30.0, "took " + fmt(dt) + " s");
  if (v.pass) v.detail = "n = 1..2000 exact, " + fmt(dt) + " s";
  return v;
}

// 2 -------------------------------------------------------------------------
Verdict multiple_angle() {
  Verdict v;
  const auto reports = verify_multiple_angle_sweep(1, 60, 50, 20240611, 192);
  v.require(reports.size() == 3000, "expected 3000 reports");
  const MpReal tol = MpReal::dyadic(mpz_class(1), -160);
  double worst = -1e9;
  for (const auto& r : reports) {
    v.require(r.pass, "residual above tolerance at n=" + r.parameter("n") + " theta=" + r.parameter("theta"));
    v.require(identical(r.tolerance, tol), "tolerance is not 2^-160");
    if (r.residual.sign() != 0) worst = std::max(worst, r.residual.abs_upper().log2());
  }
  if (v.pass) v.detail = "3000 residuals, worst 2^" + fmt(worst) + " <= 2^-160";
  return v;
}

// 3 -------------------------------------------------------------------------
std::string fixture_path() {
  if (const char* env = std::getenv("FLINTLAB_PI_FIXTURE")) return env;
  return FLINTLAB_DEFAULT_PI_FIXTURE;
}

Verdict pi_engine() {
  Verdict v;
  std::ifstream in(fixture_path());
  std::string fixture;
  std::getline(in, fixture);
  v.require(fixture.size() >= 1002 && fixture.compare(0, 2, "3.") == 0, "fixture missing or short");
  if (!v.pass) return v;

  const auto t0 = Clock::now();
  const Precision bits = 1000 * 10 / 3 + 64;
  const MpReal pi = compute_pi(bits);
  const std::string digits = pi.to_decimal(1010);
  std::size_t same = 0;
  while (same < 1002 && digits[same] == fixture[same]) ++same;
  v.require(same >= 1002, "first mismatch at decimal " + std::to_string(same - 1));
  v.require(pi.guaranteed_decimals() >= 1000, "error bound does not cover 1000 decimals");

  const std::vector<std::int64_t> expected{3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14, 2, 1, 1, 2, 2, 2, 2};
  const CfExpansion cf = pi_cf_terms(256, 20);
  v.require(cf.terms.size() == 20 && !cf.precision_exhausted, "fewer than 20 stable partial quotients");
  for (std::size_t i = 0; i < cf.terms.size() && v.pass; ++i) {
    v.require(cf.terms[i] == BigInt(expected[i]), "partial quotient " + std::to_string(i) + " differs");
  }
  const double dt = seconds_since(t0);
  v.require(dt < 10.0, "took " + fmt(dt) + " s");
  if (v.pass) v.detail = "1000 decimals match fixture, cf[4] = 292, " + fmt(dt) + " s";
  return v;
}

// 4 -------------------------------------------------------------------------
Verdict spikes() {
  Verdict v;
  const auto records = spike_indices(400, 64);
  std::vector<std::uint64_t> ns;
  for (const auto& r : records) ns.push_back(r.n);
  v.require(ns == std::vector<std::uint64_t>{1, 3, 22, 333, 355}, "record set differs");
  const MpReal s355 = sin_int(BigInt(355), 96).abs();
  const double d = std::abs(s355.to_double() - 3.0144e-5);
  v.require(d <= 1e-9, "|sin 355| off by " + fmt(d));
  if (v.pass) v.detail = "{1, 3, 22, 333, 355}, |sin 355| = " + s355.to_scientific(8);
  return v;
}

// 5 -------------------------------------------------------------------------
Verdict equivalence() {
  Verdict v;
  const auto t0 = Clock::now();
  const Bound cap = Bound::pow2(-96);
  double worst = -1e9;
  for (std::uint64_t k : {10, 100, 1000, 10000}) {
    const auto rows = equivalence_experiment(k, 3, 128);
    for (std::uint32_t s = 1; s <= 3; ++s) {
      const Bound budget = rows[s].err + rows[0].err;
      const std::string at = " at k=" + std::to_string(k) + " s=" + std::to_string(s);
      v.require(rows[s].delta_vs_s0.abs_upper() <= budget, "|S_s - S_0| exceeds err_s + err_0" + at);
      v.require(budget <= cap, "err_s + err_0 above 2^-96" + at);
      worst = std::max(worst, budget.log2());
    }
  }
  const double dt = seconds_since(t0);
  v.require(dt < 120.0, "took " + fmt(dt) + " s");
  if (v.pass) v.detail = "12 cases, largest err_s + err_0 = 2^" + fmt(worst) + ", " + fmt(dt) + " s";
  return v;
}

// 6 -------------------------------------------------------------------------
Verdict criterion_scan() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::uint64_t last = 100000;
  // the double sum over the whole range is cubic; it is compared with the
  // Chebyshev value on the prefix it can reach and G(n) = n is taken beyond
  const std::uint64_t direct_last = 10000;
  const auto direct = scan_criterion(1, direct_last, 1, 0.1, 64, 1, 4096, GEvaluation::direct);
  const ScanResult s1 = scan_criterion(1, last, 1, 0.1, 64, 1, 4096, GEvaluation::chebyshev);
  {
    std::vector<std::uint64_t> a, b;
    for (const auto& r : direct.violations) a.push_back(r.n);
    for (const auto& r : s1.violations) {
      if (r.n <= direct_last) b.push_back(r.n);
    }
    v.require(a == b, "direct and Chebyshev G disagree on [1, 10^4]");
  }
  std::set<std::uint64_t> viol;
  for (const auto& r : s1.violations) viol.insert(r.n);
  for (std::uint64_t n : {1, 3, 22, 355}) v.require(viol.contains(n), std::to_string(n) + " not reported");

  const auto numerators = pi_convergent_numerators(last);
  std::set<std::uint64_t> from_lambda;
  for (std::uint64_t n = 2; n <= last; ++n) {
    const double lambda = local_exponent(n, 64);
    if (lambda > 1.0 - 0.1 / 2) from_lambda.insert(n);
    if (viol.contains(n) && n >= 3) {
      v.require(numerators.contains(n) || lambda > 0.95, std::to_string(n) + " is unexplained");
    }
  }
  std::set<std::uint64_t> viol_ge2(viol.upper_bound(1), viol.end());
  v.require(viol_ge2 == from_lambda, "scan and lambda path disagree");

  const ScanResult s5 = scan_criterion(1, last, 5, 0.1, 64, 1, 4096, GEvaluation::chebyshev);
  std::set<std::uint64_t> viol5;
  for (const auto& r : s5.violations) viol5.insert(r.n);
  v.require(viol5 == viol, "s = 1 and s = 5 verdicts differ");
  const double dt = seconds_since(t0);
  v.require(dt < 300.0, "took " + fmt(dt) + " s");
  if (v.pass) {
    v.detail = std::to_string(viol.size()) + " violations, worst at n=" + std::to_string(s1.summary.worst_margin_n) +
               ", " + fmt(dt) + " s";
  }
  return v;
}

// 7 -------------------------------------------------------------------------
Verdict sinc() {
  Verdict v;
  std::vector<MpReal> ms;
  for (int e = 1; e <= 8; ++e) ms.push_back(MpReal::parse("1e-" + std::to_string(e), 256));
  const auto points = verify_sinc_limit(ms, 128);
  const MpReal one = MpReal::exact(std::int64_t{1});
  std::optional<MpReal> prev;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const MpReal dist = sub(one, points[i].ratio, 320).abs();
    const MpReal bound = div(mul(points[i].m, points[i].m, 320), MpReal::exact(std::int64_t{5}), 320);
    const std::string at = " at m=1e-" + std::to_string(i + 1);
    v.require(compare_certain(dist, bound) == -1, "|ratio - 1| not below m^2/5" + at);
    if (prev) v.require(compare_certain(dist, *prev) == -1, "not strictly decreasing" + at);
    prev = dist;
  }
  if (v.pass) v.detail = "8 points, |sin(1e-8)/1e-8 - 1| = " + prev->to_scientific(4);
  return v;
}

// 8 -------------------------------------------------------------------------
Verdict determinism() {
  Verdict v;
  const SeriesSpec spec;
  const PartialSumResult one = partial_sum(20000, spec, std::nullopt, SumOptions{1, 4096});
  const PartialSumResult eight = partial_sum(20000, spec, std::nullopt, SumOptions{8, 4096});
  v.require(one == eight, "threaded sum differs");

  const ScanResult a = scan_criterion(1, 20000, 1, 0.1, 64, 1);
  const ScanResult b = scan_criterion(1, 20000, 1, 0.1, 64, 8);
  std::ostringstream ca, cb;
  write_violation_csv(ca, a.violations);
  write_violation_csv(cb, b.violations);
  v.require(ca.str() == cb.str() && summary_json(a.summary) == summary_json(b.summary), "threaded scan differs");

  const auto sa = spike_indices(20000, 64, 1);
  const auto sb = spike_indices(20000, 64, 8);
  bool same = sa.size() == sb.size();
  for (std::size_t i = 0; same && i < sa.size(); ++i) same = sa[i].n == sb[i].n && identical(sa[i].abs_sin, sb[i].abs_sin);
  v.require(same, "threaded spike scan differs");

  const PartialSumResult cp = checkpoint_from_json(checkpoint_to_json(partial_sum(7777, spec)));
  const PartialSumResult resumed = partial_sum(20000, spec, cp);
  v.require(resumed == one, "resumed sum differs");
  v.require(checkpoint_to_json(resumed) == checkpoint_to_json(one), "resumed checkpoint text differs");
  if (v.pass) v.detail = "sum, scan and spikes identical for 1 and 8 threads; resume identical";
  return v;
}

// 9 -------------------------------------------------------------------------
MpReal random_input(std::mt19937_64& rng, int exp_lo, int exp_hi) {
  std::uniform_int_distribution<std::int64_t> man(1, std::int64_t{1} << 60);
  std::uniform_int_distribution<int> ex(exp_lo, exp_hi);
  const MpReal x = MpReal::dyadic(mpz_class(static_cast<long>(man(rng))), ex(rng) - 60);
  return (rng() & 1) ? x : -x;
}

Verdict precision_contract() {
  Verdict v;
  std::mt19937_64 rng(90210);
  using Op = std::function<MpReal(Precision)>;
  struct Named {
    std::string name;
    Op op;
  };
  int checked = 0;
  for (int i = 0; i < 200 && v.pass; ++i) {
    const Precision bits = 32 + static_cast<Precision>(rng() % 225);
    const MpReal x = random_input(rng, -6, 6);
    const MpReal y = random_input(rng, -6, 6);
    const MpReal big = random_input(rng, 10, 200);
    const MpReal small = random_input(rng, -30, 0).abs();
    const std::uint64_t n = 1 + rng() % 1000000;
    // the series evaluates G(n) as the double sum, so its indices stay in the
    // range the series experiments use
    const std::uint64_t m = 1 + rng() % 10000;
    const std::uint32_t s = static_cast<std::uint32_t>(rng() % 4);
    const std::vector<Named> ops{
        {"add", [&](Precision p) { return add(x, y, p); }},
        {"mul", [&](Precision p) { return mul(x, y, p); }},
        {"div", [&](Precision p) { return div(x, y, p); }},
        {"sin_any", [&](Precision p) { return sin_any(big, p); }},
        {"cos_any", [&](Precision p) { return cos_any(x, p); }},
        {"exp", [&](Precision p) { return exp_mp(x, p); }},
        {"log", [&](Precision p) { return log_mp(x.abs(), p); }},
        {"pi", [&](Precision p) { return compute_pi(p); }},
        {"sin_int", [&](Precision p) { return sin_int(BigInt(static_cast<std::int64_t>(n)), p); }},
        {"reduce", [&](Precision p) { return reduce_mod_pi(BigInt(static_cast<std::int64_t>(n)), p).r; }},
        {"term", [&](Precision p) { return term(m, SeriesSpec{s, 2, 3.0, p}); }},
        {"sum", [&](Precision p) { return partial_sum(1 + n % 300, SeriesSpec{s, 2, 3.0, p}).value(); }},
        {"sinc", [&](Precision p) {
           const std::vector<MpReal> m{small};
           return verify_sinc_limit(m, p)[0].ratio;
         }},
    };
    const Named& pick = ops[rng() % ops.size()];
    const MpReal lo = pick.op(bits);
    const MpReal hi = pick.op(2 * bits);
    // for sums the grid error is carried separately from the midpoint
    Bound err = lo.err();
    if (pick.name == "sum") err = partial_sum(1 + n % 300, SeriesSpec{s, 2, 3.0, bits}).err();
    const Bound moved = midpoint_distance(lo, hi);
    if (err.is_zero()) {
      v.require(moved.is_zero(), pick.name + ": exact result changed at " + std::to_string(bits) + " bits");
    } else {
      v.require(moved < err, pick.name + ": moved " + moved.to_scientific_up() + " >= err " + err.to_scientific_up() +
                                  " at " + std::to_string(bits) + " bits");
    }
    ++checked;
  }
  if (v.pass) v.detail = std::to_string(checked) + " random operations";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"exact G identity", g_identity},
      {"multiple-angle residuals", multiple_angle},
      {"pi digits and continued fraction", pi_engine},
      {"spike detection", spikes},
      {"series equivalence", equivalence},
      {"criterion scan", criterion_scan},
      {"sinc limit", sinc},
      {"determinism and checkpointing", determinism},
      {"precision contract", precision_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << v.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
