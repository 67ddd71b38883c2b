#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <span>
#include <string>

#include "flintlab/criterion.hpp"
#include "flintlab/rationality.hpp"
#include "flintlab/series.hpp"

namespace flintlab {

/// Numerators p <= limit of the continued-fraction convergents of pi.
std::set<std::uint64_t> pi_convergent_numerators(std::uint64_t limit);

/// n,abs_sin,lambda,is_convergent_numerator
void write_spike_csv(std::ostream& out, std::span<const SpikeRecord> records,
                     const std::set<std::uint64_t>& numerators);

/// n,s,epsilon,ln_lhs,ln_rhs,margin
void write_violation_csv(std::ostream& out, std::span<const CriterionReport> reports);

/// {"checked":..,"violations":..,"worst_margin_n":..,"worst_margin":..}
std::string summary_json(const ScanSummary& summary);

/// k,s,u,v,value,err
void write_sum_csv(std::ostream& out, std::span<const PartialSumResult> rows);

/// n,lambda,running_max
void write_profile_csv(std::ostream& out, std::span<const ExponentRow> rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace flintlab
