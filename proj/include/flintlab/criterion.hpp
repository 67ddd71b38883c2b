#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flintlab/combinatorics.hpp"
#include "flintlab/mp_real.hpp"

namespace flintlab {

/// One evaluation of |G(n)|^(2s) <= sin^2(n) * n^(2s+2-eps).
struct CriterionReport {
  std::uint64_t n = 0;
  std::uint32_t s = 0;
  double epsilon = 0.0;
  MpReal lhs;  ///< |G(n)|^(2s), exact
  MpReal rhs;  ///< sin^2(n) * exp((2s+2-eps) ln n)
  bool satisfied = false;
  double ln_lhs = 0.0;
  double ln_rhs = 0.0;
  /// ln rhs - ln lhs; negative exactly when the inequality fails.
  double margin = 0.0;
  /// Precision at which the two intervals separated.
  Precision decided_bits = 0;
};

inline constexpr Precision kDefaultDecisionCap = Precision{1} << 20;

/// The verdict is decided strictly (disjoint intervals), doubling the working
/// precision from `bits` up to `cap`; UndecidableError beyond that.
/// epsilon is taken as the exact binary value of the double.
CriterionReport check_criterion(std::uint64_t n, std::uint32_t s, double epsilon, Precision bits,
                                Precision cap = kDefaultDecisionCap,
                                GEvaluation g_eval = GEvaluation::direct);

struct ScanSummary {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  /// n with the most negative margin over the scanned range.
  std::uint64_t worst_margin_n = 0;
  double worst_margin = 0.0;
};

struct ScanResult {
  std::vector<CriterionReport> violations;  ///< ascending in n
  ScanSummary summary;
};

ScanResult scan_criterion(std::uint64_t from, std::uint64_t to, std::uint32_t s, double epsilon,
                          Precision bits, unsigned threads = 1, std::uint64_t chunk_size = 4096,
                          GEvaluation g_eval = GEvaluation::direct);

struct ExponentRow {
  std::uint64_t n = 0;
  double lambda = 0.0;
  double running_max = 0.0;
};

/// lambda(n) for 2 <= n <= n_max with its running maximum.
std::vector<ExponentRow> exponent_profile(std::uint64_t n_max, Precision bits, unsigned threads = 1,
                                          std::uint64_t chunk_size = 4096);

}  // namespace flintlab
