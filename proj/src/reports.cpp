#include "flintlab/reports.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace flintlab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::set<std::uint64_t> pi_convergent_numerators(std::uint64_t limit) {
  // each partial quotient costs at most ~2 log2(limit) bits of pi
  std::uint64_t bits_needed = 64;
  for (std::uint64_t v = limit; v != 0; v >>= 1U) bits_needed += 4;
  const auto cf = pi_cf_terms(static_cast<Precision>(bits_needed), 4 * bits_needed);
  std::set<std::uint64_t> out;
  for (const auto& c : convergents(cf.terms)) {
    if (!c.p.fits_int64() || c.p.to_int64() > static_cast<std::int64_t>(limit)) break;
    out.insert(static_cast<std::uint64_t>(c.p.to_int64()));
  }
  return out;
}

void write_spike_csv(std::ostream& out, std::span<const SpikeRecord> records,
                     const std::set<std::uint64_t>& numerators) {
  out << "n,abs_sin,lambda,is_convergent_numerator\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.abs_sin.to_guaranteed_decimal() << ','
        << (r.lambda ? format_double(*r.lambda) : std::string()) << ','
        << (numerators.contains(r.n) ? 1 : 0) << '\n';
  }
}

void write_violation_csv(std::ostream& out, std::span<const CriterionReport> reports) {
  out << "n,s,epsilon,ln_lhs,ln_rhs,margin\n";
  for (const auto& r : reports) {
    out << r.n << ',' << r.s << ',' << format_double(r.epsilon) << ',' << format_double(r.ln_lhs) << ','
        << format_double(r.ln_rhs) << ',' << format_double(r.margin) << '\n';
  }
}

std::string summary_json(const ScanSummary& summary) {
  nlohmann::ordered_json j;
  j["checked"] = summary.checked;
  j["violations"] = summary.violations;
  j["worst_margin_n"] = summary.worst_margin_n;
  j["worst_margin"] = summary.worst_margin;
  return j.dump();
}

void write_sum_csv(std::ostream& out, std::span<const PartialSumResult> rows) {
  out << "k,s,u,v,value,err\n";
  for (const auto& r : rows) {
    const MpReal v = r.value();
    out << r.k << ',' << r.spec.s << ',' << r.spec.u << ',' << format_double(r.spec.v) << ','
        << v.to_guaranteed_decimal() << ',' << r.err().to_scientific_up() << '\n';
  }
}

void write_profile_csv(std::ostream& out, std::span<const ExponentRow> rows) {
  out << "n,lambda,running_max\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.lambda) << ',' << format_double(r.running_max) << '\n';
  }
}

}  // namespace flintlab
