#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flintlab/combinatorics.hpp"
#include "flintlab/criterion.hpp"
#include "flintlab/errors.hpp"
#include "flintlab/identity.hpp"
#include "flintlab/rationality.hpp"
#include "flintlab/reports.hpp"
#include "flintlab/series.hpp"
#include "flintlab/transcendental.hpp"

namespace flintlab::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct Globals {
  std::string format = "text";
  unsigned threads = 1;
  std::string pi_fixture;
  Precision max_bits = max_precision_bits();

  Format fmt() const {
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    return Format::text;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string err_text(const Bound& b) { return b.to_scientific_up(); }

std::string value_text(const MpReal& x) {
  return x.is_exact() ? x.to_exact_decimal() : x.to_guaranteed_decimal();
}

// ---------------------------------------------------------------- sum

struct SumArgs {
  std::uint64_t k = 0;
  std::uint32_t s = 0;
  std::uint32_t u = 2;
  double v = 3.0;
  Precision bits = 128;
  std::string checkpoint;
  std::string resume;
  std::uint64_t every = 0;
  std::uint64_t chunk = 4096;
};

Json sum_json(const PartialSumResult& r) {
  Json j;
  j["k"] = r.k;
  j["s"] = r.spec.s;
  j["u"] = r.spec.u;
  j["v"] = r.spec.v;
  j["bits"] = r.spec.bits;
  j["value"] = r.value().to_guaranteed_decimal();
  j["err"] = err_text(r.err());
  return j;
}

int cmd_sum(const SumArgs& a, const Globals& g, std::ostream& out) {
  SeriesSpec spec{a.s, a.u, a.v, a.bits};
  spec.validate();
  std::optional<PartialSumResult> start;
  if (!a.resume.empty()) {
    try {
      start = load_checkpoint(a.resume);
    } catch (const FormatError& e) {
      throw CheckpointMismatchError(e.what());
    }
  }
  const SumOptions opts{g.threads, a.chunk};
  std::vector<PartialSumResult> rows;
  if (a.every > 0) {
    std::uint64_t next = (start ? start->k : 0) / a.every * a.every + a.every;
    for (; next < a.k; next += a.every) {
      start = partial_sum(next, spec, start, opts);
      rows.push_back(*start);
    }
  }
  rows.push_back(partial_sum(a.k, spec, start, opts));
  if (!a.checkpoint.empty()) save_checkpoint(a.checkpoint, rows.back());

  switch (g.fmt()) {
    case Format::json:
      if (rows.size() == 1) {
        out << sum_json(rows.back()).dump() << '\n';
      } else {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(sum_json(r));
        out << Json{{"rows", arr}}.dump() << '\n';
      }
      break;
    case Format::csv:
      write_sum_csv(out, rows);
      break;
    case Format::text:
      for (const auto& r : rows) {
        out << "S(" << r.k << ") = " << r.value().to_guaranteed_decimal() << "  err <= " << err_text(r.err())
            << '\n';
      }
      break;
  }
  return kOk;
}

// ---------------------------------------------------------------- term

struct TermArgs {
  std::uint64_t n = 1;
  std::uint32_t s = 0;
  std::uint32_t u = 2;
  double v = 3.0;
  Precision bits = 128;
};

int cmd_term(const TermArgs& a, const Globals& g, std::ostream& out) {
  const SeriesSpec spec{a.s, a.u, a.v, a.bits};
  const MpReal t = term(a.n, spec);
  if (g.fmt() == Format::json) {
    Json j;
    j["n"] = a.n;
    j["s"] = a.s;
    j["u"] = a.u;
    j["v"] = a.v;
    j["value"] = value_text(t);
    j["err"] = err_text(t.err());
    out << j.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "n,s,u,v,value,err\n"
        << a.n << ',' << a.s << ',' << a.u << ',' << format_double(a.v) << ',' << value_text(t) << ','
        << err_text(t.err()) << '\n';
  } else {
    out << value_text(t) << "  err <= " << err_text(t.err()) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- g, coeffs

int cmd_g(std::uint64_t n, const Globals& g, std::ostream& out) {
  const GValue v = g_value(n);
  if (g.fmt() == Format::json) {
    out << Json{{"n", n}, {"value", v.value.to_string()}}.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "n,value\n" << n << ',' << v.value.to_string() << '\n';
  } else {
    out << v.value.to_string() << '\n';
  }
  return kOk;
}

int cmd_coeffs(std::uint64_t n, const Globals& g, std::ostream& out) {
  const auto coeffs = multiple_angle_coefficients(n);
  if (g.fmt() == Format::json) {
    Json arr = Json::array();
    for (const auto& c : coeffs) arr.push_back({{"cos_power", c.cos_power}, {"coefficient", c.coefficient.to_string()}});
    out << Json{{"n", n}, {"coefficients", arr}}.dump() << '\n';
  } else {
    if (g.fmt() == Format::csv) out << "cos_power,coefficient\n";
    for (const auto& c : coeffs) {
      out << c.cos_power << (g.fmt() == Format::csv ? "," : " ") << c.coefficient.to_string() << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- pi

struct PiArgs {
  Precision bits = 0;
  std::uint64_t digits = 0;
};

std::string read_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read pi fixture " + path);
  std::string line;
  std::getline(in, line);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  if (line.size() < 3 || line.compare(0, 2, "3.") != 0) throw FormatError("pi fixture must start with \"3.\"");
  return line;
}

int cmd_pi(const PiArgs& a, const Globals& g, std::ostream& out) {
  std::uint64_t digits = a.digits;
  Precision bits = a.bits;
  if (digits == 0 && bits == 0) digits = 50;
  if (bits == 0) bits = static_cast<Precision>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 16;
  check_precision(bits);
  const MpReal pi = compute_pi(bits);
  if (digits == 0) digits = static_cast<std::uint64_t>(std::max(1, pi.guaranteed_decimals()));
  // a few spare digits so the last printed one is not a rounding artefact
  std::string text = pi.to_decimal(static_cast<int>(digits + 8)).substr(0, 2 + digits);

  std::optional<std::pair<std::uint64_t, std::uint64_t>> match;
  if (!g.pi_fixture.empty()) {
    const std::string fixture = read_fixture(g.pi_fixture);
    const std::size_t compared = std::min(fixture.size(), text.size());
    std::size_t same = 0;
    while (same < compared && fixture[same] == text[same]) ++same;
    // count decimals, not the "3." prefix
    match = {same >= 2 ? same - 2 : 0, compared >= 2 ? compared - 2 : 0};
  }
  if (g.fmt() == Format::json) {
    Json j;
    j["bits"] = bits;
    j["digits"] = digits;
    j["value"] = text;
    j["err"] = err_text(pi.err());
    if (match) {
      j["fixture_digits_matched"] = match->first;
      j["fixture_digits_compared"] = match->second;
    }
    out << j.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "bits,digits,value\n" << bits << ',' << digits << ',' << text << '\n';
  } else {
    out << text << '\n';
    if (match) out << "fixture: " << match->first << " of " << match->second << " decimals match\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- sin

int cmd_sin(const std::string& n_text, Precision bits, const Globals& g, std::ostream& out) {
  const BigInt n = BigInt::from_string(n_text);
  const ReducedInteger red = reduce_mod_pi(n, bits);
  const MpReal s = sin_int(n, bits);
  if (g.fmt() == Format::json) {
    Json j;
    j["n"] = n.to_string();
    j["k"] = red.k.to_string();
    j["r"] = value_text(red.r);
    j["value"] = value_text(s);
    j["err"] = err_text(s.err());
    out << j.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "n,k,r,value,err\n"
        << n.to_string() << ',' << red.k.to_string() << ',' << value_text(red.r) << ',' << value_text(s) << ','
        << err_text(s.err()) << '\n';
  } else {
    out << "sin(" << n.to_string() << ") = " << value_text(s) << "  err <= " << err_text(s.err()) << '\n'
        << "n = " << red.k.to_string() << " pi + " << value_text(red.r) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- cf

int cmd_cf(Precision bits, std::size_t count, const Globals& g, std::ostream& out) {
  const CfExpansion cf = pi_cf_terms(bits, count);
  if (cf.terms.empty()) throw UndecidableError("no stable partial quotient at this precision");
  const auto conv = convergents(cf.terms);
  if (g.fmt() == Format::json) {
    Json terms = Json::array();
    for (const auto& t : cf.terms) terms.push_back(t.to_string());
    Json cv = Json::array();
    for (const auto& c : conv) cv.push_back({{"index", c.index}, {"p", c.p.to_string()}, {"q", c.q.to_string()}});
    Json j;
    j["bits"] = bits;
    j["requested"] = count;
    j["terms"] = terms;
    j["precision_exhausted"] = cf.precision_exhausted;
    j["convergents"] = cv;
    out << j.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "index,a,p,q\n";
    for (std::size_t i = 0; i < conv.size(); ++i) {
      out << i << ',' << cf.terms[i].to_string() << ',' << conv[i].p.to_string() << ',' << conv[i].q.to_string()
          << '\n';
    }
  } else {
    out << "[";
    for (std::size_t i = 0; i < cf.terms.size(); ++i) out << (i == 0 ? "" : i == 1 ? "; " : ", ") << cf.terms[i].to_string();
    out << "]" << (cf.precision_exhausted ? "  (precision exhausted)" : "") << '\n';
    for (const auto& c : conv) out << c.p.to_string() << '/' << c.q.to_string() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- spikes, lambda

int cmd_spikes(std::uint64_t n_max, Precision bits, const Globals& g, std::ostream& out) {
  const auto records = spike_indices(n_max, bits, g.threads);
  const auto numerators = pi_convergent_numerators(n_max);
  if (g.fmt() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : records) {
      Json row;
      row["n"] = r.n;
      row["abs_sin"] = r.abs_sin.to_guaranteed_decimal();
      row["lambda"] = r.lambda ? Json(*r.lambda) : Json(nullptr);
      row["is_convergent_numerator"] = numerators.contains(r.n);
      arr.push_back(row);
    }
    out << Json{{"n_max", n_max}, {"records", arr}}.dump() << '\n';
  } else {
    write_spike_csv(out, records, numerators);
  }
  return kOk;
}

int cmd_lambda(std::uint64_t n, std::uint64_t n_max, Precision bits, const Globals& g, std::ostream& out) {
  if (n == 0 && n_max == 0) throw UsageError("lambda needs --n or --n-max");
  if (n != 0) {
    const double l = local_exponent(n, bits);
    if (g.fmt() == Format::json) {
      out << Json{{"n", n}, {"lambda", l}}.dump() << '\n';
    } else if (g.fmt() == Format::csv) {
      out << "n,lambda\n" << n << ',' << format_double(l) << '\n';
    } else {
      out << format_double(l) << '\n';
    }
    return kOk;
  }
  const auto rows = exponent_profile(n_max, bits, g.threads);
  if (g.fmt() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back({{"n", r.n}, {"lambda", r.lambda}, {"running_max", r.running_max}});
    out << Json{{"n_max", n_max}, {"profile", arr}}.dump() << '\n';
  } else {
    write_profile_csv(out, rows);
  }
  return kOk;
}

// ---------------------------------------------------------------- criterion, scan

struct CriterionArgs {
  std::uint64_t n = 1;
  std::uint64_t from = 1;
  std::uint64_t to = 1;
  std::uint32_t s = 1;
  double eps = 0.1;
  Precision bits = 64;
  std::string g_eval = "direct";

  GEvaluation g() const { return g_eval == "chebyshev" ? GEvaluation::chebyshev : GEvaluation::direct; }
};

int cmd_criterion(const CriterionArgs& a, const Globals& g, std::ostream& out) {
  const CriterionReport r = check_criterion(a.n, a.s, a.eps, a.bits, kDefaultDecisionCap, a.g());
  if (g.fmt() == Format::json) {
    Json j;
    j["n"] = r.n;
    j["s"] = r.s;
    j["epsilon"] = r.epsilon;
    j["lhs"] = value_text(r.lhs);
    j["rhs"] = r.rhs.to_scientific(12);
    j["rhs_err"] = err_text(r.rhs.err());
    j["satisfied"] = r.satisfied;
    j["ln_lhs"] = r.ln_lhs;
    j["ln_rhs"] = r.ln_rhs;
    j["margin"] = r.margin;
    out << j.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    write_violation_csv(out, std::span<const CriterionReport>(&r, 1));
  } else {
    out << "n=" << r.n << " s=" << r.s << " eps=" << format_double(r.epsilon) << ": lhs=" << value_text(r.lhs)
        << " rhs=" << r.rhs.to_scientific(12) << " -> " << (r.satisfied ? "satisfied" : "violated")
        << " (margin " << format_double(r.margin) << ")\n";
  }
  return kOk;
}

int cmd_scan(const CriterionArgs& a, const Globals& g, std::ostream& out) {
  const ScanResult r = scan_criterion(a.from, a.to, a.s, a.eps, a.bits, g.threads, 4096, a.g());
  if (g.fmt() == Format::json) {
    out << summary_json(r.summary) << '\n';
  } else if (g.fmt() == Format::csv) {
    write_violation_csv(out, r.violations);
  } else {
    write_violation_csv(out, r.violations);
    out << summary_json(r.summary) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- identity

struct IdentityArgs {
  std::string kind = "all";
  std::uint64_t n = 12;
  std::string theta;
  std::size_t count = 5;
  std::uint64_t seed = 20240611;
  std::vector<std::string> m;
  std::string x = "355";
  std::string a = "0.000001";
  std::uint64_t k = 100;
  std::uint32_t s = 1;
  Precision bits = 192;
};

int cmd_identity(const IdentityArgs& a, const Globals& g, std::ostream& out) {
  std::vector<ResidualReport> reports;
  const bool all = a.kind == "all";
  const Precision parse_bits = a.bits + 64;
  if (all || a.kind == "multiple-angle") {
    if (!a.theta.empty()) {
      reports.push_back(verify_multiple_angle(a.n, MpReal::parse(a.theta, parse_bits), a.bits));
    } else {
      auto sweep = verify_multiple_angle_sweep(1, a.n, a.count, a.seed, a.bits);
      reports.insert(reports.end(), sweep.begin(), sweep.end());
    }
  }
  if (all || a.kind == "sinc") {
    std::vector<MpReal> ms;
    if (a.m.empty()) {
      for (int e = 1; e <= 8; ++e) ms.push_back(MpReal::parse("1e-" + std::to_string(e), parse_bits));
    } else {
      for (const auto& t : a.m) ms.push_back(MpReal::parse(t, parse_bits));
    }
    for (const auto& p : verify_sinc_limit(ms, a.bits)) {
      ResidualReport r;
      r.description = "sin(m)/m -> 1 as m -> 0";
      r.parameters = {{"m", value_text(p.m)}, {"ratio", p.ratio.to_guaranteed_decimal()}};
      r.residual = sub(p.ratio, MpReal::exact(std::int64_t{1}), a.bits + 32).abs();
      const auto [bm, be] = p.distance_bound.to_dyadic();
      r.tolerance = MpReal::dyadic(bm, be);
      r.pass = r.residual.magnitude(Rounding::up) <= p.distance_bound;
      reports.push_back(std::move(r));
    }
  }
  if (all || a.kind == "angle-difference") {
    reports.push_back(verify_angle_difference(MpReal::parse(a.x, parse_bits), MpReal::parse(a.a, parse_bits), a.bits));
  }
  if (all || a.kind == "iteration-ratio") {
    reports.push_back(verify_iteration_ratio(a.k, a.s, std::min<Precision>(a.bits, 128)));
  }
  if (g.fmt() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(Json::parse(to_json_line(r)));
    out << arr.dump() << '\n';
  } else if (g.fmt() == Format::csv) {
    out << "description,residual,tolerance,pass\n";
    for (const auto& r : reports) {
      out << '"' << r.description << "\"," << (r.residual.sign() == 0 ? "0" : r.residual.to_scientific(6)) << ','
          << r.tolerance.to_scientific(6) << ',' << (r.pass ? 1 : 0) << '\n';
    }
  } else {
    for (const auto& r : reports) out << to_json_line(r) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- equiv

int cmd_equiv(std::uint64_t k, std::uint32_t s_max, Precision bits, const Globals& g, std::ostream& out) {
  const auto rows = equivalence_experiment(k, s_max, bits, SumOptions{g.threads, 4096});
  if (g.fmt() == Format::json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"s", r.s},
                     {"value", r.value.to_guaranteed_decimal()},
                     {"err", err_text(r.err)},
                     {"delta_vs_s0", r.delta_vs_s0.sign() == 0 ? std::string("0") : r.delta_vs_s0.to_scientific(6)}});
    }
    out << Json{{"k", k}, {"bits", bits}, {"rows", arr}}.dump() << '\n';
  } else {
    out << "s,value,err,delta_vs_s0\n";
    for (const auto& r : rows) {
      out << r.s << ',' << r.value.to_guaranteed_decimal() << ',' << err_text(r.err) << ','
          << (r.delta_vs_s0.sign() == 0 ? std::string("0") : r.delta_vs_s0.to_scientific(6)) << '\n';
    }
  }
  return kOk;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

constexpr const char* kFooter = R"(Output schemas (--format json):
  sum        {"k","s","u","v","bits","value","err"}  ({"rows":[...]} with --every)
  term       {"n","s","u","v","value","err"}
  g          {"n","value"}
  coeffs     {"n","coefficients":[{"cos_power","coefficient"}]}
  pi         {"bits","digits","value","err"[,"fixture_digits_matched","fixture_digits_compared"]}
  sin        {"n","k","r","value","err"}
  cf         {"bits","requested","terms","precision_exhausted","convergents":[{"index","p","q"}]}
  spikes     {"n_max","records":[{"n","abs_sin","lambda","is_convergent_numerator"}]}
  lambda     {"n","lambda"} or {"n_max","profile":[{"n","lambda","running_max"}]}
  criterion  {"n","s","epsilon","lhs","rhs","rhs_err","satisfied","ln_lhs","ln_rhs","margin"}
  scan       {"checked","violations","worst_margin_n","worst_margin"}
  identity   [{"description","parameters","residual","residual_err","tolerance","pass","seed"}]
  equiv      {"k","bits","rows":[{"s","value","err","delta_vs_s0"}]}
CSV columns: sum k,s,u,v,value,err; spikes n,abs_sin,lambda,is_convergent_numerator;
  lambda profile n,lambda,running_max; scan n,s,epsilon,ln_lhs,ln_rhs,margin.
scan takes G(n) = U_{n-1}(1) by default; --g-eval direct sums the double sum
  instead, whose cost grows cubically with the range.
Decimal values carry only digits covered by the error bound; "err" is an upper bound.
Exit codes: 0 ok, 1 usage, 2 precision/resource limit, 3 checkpoint mismatch.
The pi fixture path may also come from FLINTLAB_PI_FIXTURE.)";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"flintlab: high-precision experiments on the Flint Hills series", "flintlab"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("FLINTLAB_PI_FIXTURE")) g.pi_fixture = env;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", g.threads, "Worker threads for chunked scans")->check(CLI::Range(1U, 1024U));
  app.add_option("--pi-fixture", g.pi_fixture, "Known-digits file for pi (\"3.14159...\")");
  app.add_option("--max-bits", g.max_bits, "Precision ceiling in bits")->check(CLI::PositiveNumber);

  auto bits_check = CLI::Range(Precision{8}, Precision{1} << 30);

  SumArgs sum;
  auto* sum_cmd = app.add_subcommand("sum", "Partial sum of the s-indexed series family");
  sum_cmd->add_option("--k", sum.k, "Last index")->required()->check(CLI::PositiveNumber);
  sum_cmd->add_option("--s", sum.s, "Iteration depth s");
  sum_cmd->add_option("--u", sum.u, "Sine exponent")->check(CLI::PositiveNumber);
  sum_cmd->add_option("--v", sum.v, "Power of n");
  sum_cmd->add_option("--bits", sum.bits, "Target precision")->check(bits_check);
  sum_cmd->add_option("--checkpoint", sum.checkpoint, "Write the final state to this JSON file");
  sum_cmd->add_option("--resume", sum.resume, "Resume from this checkpoint file");
  sum_cmd->add_option("--every", sum.every, "Also report every multiple of this k");
  sum_cmd->add_option("--chunk", sum.chunk, "Chunk size for parallel evaluation")->check(CLI::PositiveNumber);

  TermArgs term_args;
  auto* term_cmd = app.add_subcommand("term", "One summand of the series family");
  term_cmd->add_option("--n", term_args.n, "Index")->required()->check(CLI::PositiveNumber);
  term_cmd->add_option("--s", term_args.s, "Iteration depth s");
  term_cmd->add_option("--u", term_args.u, "Sine exponent")->check(CLI::PositiveNumber);
  term_cmd->add_option("--v", term_args.v, "Power of n");
  term_cmd->add_option("--bits", term_args.bits, "Target precision")->check(bits_check);

  std::uint64_t g_n = 1;
  auto* g_cmd = app.add_subcommand("g", "Exact double binomial sum G(n)");
  g_cmd->add_option("--n", g_n, "n")->required()->check(CLI::PositiveNumber);

  std::uint64_t coeff_n = 1;
  auto* coeff_cmd = app.add_subcommand("coeffs", "Multiple-angle coefficients by cosine power");
  coeff_cmd->add_option("--n", coeff_n, "n")->required()->check(CLI::PositiveNumber);

  PiArgs pi_args;
  auto* pi_cmd = app.add_subcommand("pi", "Digits of pi, optionally checked against a fixture");
  pi_cmd->add_option("--bits", pi_args.bits, "Precision in bits")->check(bits_check);
  pi_cmd->add_option("--digits", pi_args.digits, "Decimal places")->check(CLI::PositiveNumber);

  std::string sin_n = "1";
  Precision sin_bits = 128;
  auto* sin_cmd = app.add_subcommand("sin", "sin(n) for an integer n via reduction modulo pi");
  sin_cmd->add_option("--n", sin_n, "Positive integer (any size)")->required();
  sin_cmd->add_option("--bits", sin_bits, "Target precision")->check(bits_check);

  Precision cf_bits = 256;
  std::size_t cf_count = 20;
  auto* cf_cmd = app.add_subcommand("cf", "Continued fraction of pi and its convergents");
  cf_cmd->add_option("--bits", cf_bits, "Precision (checked again at twice this)")->check(bits_check);
  cf_cmd->add_option("--count", cf_count, "Partial quotients requested")->check(CLI::PositiveNumber);

  std::uint64_t spikes_max = 400;
  Precision spikes_bits = 64;
  auto* spikes_cmd = app.add_subcommand("spikes", "Record minima of |sin n|");
  spikes_cmd->add_option("--n-max", spikes_max, "Upper end of the scan")->required()->check(CLI::PositiveNumber);
  spikes_cmd->add_option("--bits", spikes_bits, "Working precision")->check(bits_check);

  std::uint64_t lambda_n = 0;
  std::uint64_t lambda_max = 0;
  Precision lambda_bits = 64;
  auto* lambda_cmd = app.add_subcommand("lambda", "Local sine exponent -ln|sin n| / ln n");
  auto* ln_opt = lambda_cmd->add_option("--n", lambda_n, "Single n >= 2");
  lambda_cmd->add_option("--n-max", lambda_max, "Profile over 2..n-max")->excludes(ln_opt);
  lambda_cmd->add_option("--bits", lambda_bits, "Working precision")->check(bits_check);

  CriterionArgs crit;
  auto* crit_cmd = app.add_subcommand("criterion", "Check |G(n)|^(2s) <= sin^2(n) n^(2s+2-eps) at one n");
  crit_cmd->add_option("--n", crit.n, "n")->required()->check(CLI::PositiveNumber);
  crit_cmd->add_option("--s", crit.s, "s >= 1")->check(CLI::PositiveNumber);
  crit_cmd->add_option("--eps", crit.eps, "epsilon in (0, 2)");
  crit_cmd->add_option("--bits", crit.bits, "Starting precision")->check(bits_check);
  crit_cmd->add_option("--g-eval", crit.g_eval, "G(n) from the double sum or from U_{n-1}(1)")
      ->check(CLI::IsMember({"direct", "chebyshev"}));

  CriterionArgs scan;
  scan.g_eval = "chebyshev";
  auto* scan_cmd = app.add_subcommand("scan", "Scan the criterion over a range and report violations");
  scan_cmd->add_option("--from", scan.from, "First n")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--to", scan.to, "Last n")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--s", scan.s, "s >= 1")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--eps", scan.eps, "epsilon in (0, 2)");
  scan_cmd->add_option("--bits", scan.bits, "Starting precision")->check(bits_check);
  scan_cmd->add_option("--g-eval", scan.g_eval, "G(n) from the double sum or from U_{n-1}(1)")
      ->check(CLI::IsMember({"direct", "chebyshev"}))
      ->capture_default_str();

  IdentityArgs ident;
  auto* ident_cmd = app.add_subcommand("identity", "Residual reports for the trigonometric identities");
  ident_cmd->add_option("--kind", ident.kind, "Which check")
      ->check(CLI::IsMember({"all", "multiple-angle", "sinc", "angle-difference", "iteration-ratio"}));
  ident_cmd->add_option("--n", ident.n, "multiple-angle: n (sweeps 1..n without --theta)")->check(CLI::PositiveNumber);
  ident_cmd->add_option("--theta", ident.theta, "multiple-angle: single angle");
  ident_cmd->add_option("--count", ident.count, "multiple-angle: angles per n");
  ident_cmd->add_option("--seed", ident.seed, "multiple-angle: generator seed");
  ident_cmd->add_option("--m", ident.m, "sinc: values of m");
  ident_cmd->add_option("--x", ident.x, "angle-difference: n (real)");
  ident_cmd->add_option("--a", ident.a, "angle-difference: a");
  ident_cmd->add_option("--k", ident.k, "iteration-ratio: k")->check(CLI::PositiveNumber);
  ident_cmd->add_option("--s", ident.s, "iteration-ratio: s")->check(CLI::PositiveNumber);
  ident_cmd->add_option("--bits", ident.bits, "Target precision")->check(bits_check);

  std::uint64_t eq_k = 100;
  std::uint32_t eq_smax = 3;
  Precision eq_bits = 128;
  auto* eq_cmd = app.add_subcommand("equiv", "Partial sums for s = 0..s-max at a common k");
  eq_cmd->add_option("--k", eq_k, "k")->required()->check(CLI::PositiveNumber);
  eq_cmd->add_option("--s-max", eq_smax, "Largest s")->check(CLI::PositiveNumber);
  eq_cmd->add_option("--bits", eq_bits, "Target precision")->check(bits_check);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kUsage;
  }

  struct RestoreLimit {
    Precision bits;
    ~RestoreLimit() { set_max_precision_bits(bits); }
  } restore{max_precision_bits()};
  try {
    set_max_precision_bits(g.max_bits);
    int code = kOk;
    if (sum_cmd->parsed()) code = cmd_sum(sum, g, out);
    else if (term_cmd->parsed()) code = cmd_term(term_args, g, out);
    else if (g_cmd->parsed()) code = cmd_g(g_n, g, out);
    else if (coeff_cmd->parsed()) code = cmd_coeffs(coeff_n, g, out);
    else if (pi_cmd->parsed()) code = cmd_pi(pi_args, g, out);
    else if (sin_cmd->parsed()) code = cmd_sin(sin_n, sin_bits, g, out);
    else if (cf_cmd->parsed()) code = cmd_cf(cf_bits, cf_count, g, out);
    else if (spikes_cmd->parsed()) code = cmd_spikes(spikes_max, spikes_bits, g, out);
    else if (lambda_cmd->parsed()) code = cmd_lambda(lambda_n, lambda_max, lambda_bits, g, out);
    else if (crit_cmd->parsed()) code = cmd_criterion(crit, g, out);
    else if (scan_cmd->parsed()) code = cmd_scan(scan, g, out);
    else if (ident_cmd->parsed()) code = cmd_identity(ident, g, out);
    else if (eq_cmd->parsed()) code = cmd_equiv(eq_k, eq_smax, eq_bits, g, out);
    return code;
  } catch (const CheckpointMismatchError& e) {
    emit_error(err, "checkpoint", e.what());
    return kCheckpoint;
  } catch (const ResourceLimitError& e) {
    emit_error(err, "resource", e.what());
    return kPrecision;
  } catch (const UndecidableError& e) {
    emit_error(err, "precision", e.what());
    return kPrecision;
  } catch (const std::exception& e) {
    // domain errors, malformed numbers and unreadable files
    emit_error(err, "usage", e.what());
    return kUsage;
  }
}

}  // namespace flintlab::cli
