#pragma once

#include <cstdint>
#include <vector>

#include "flintlab/bigint.hpp"

namespace flintlab {

/// C(n, k) by the multiplicative formula with exact division; 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// The double binomial sum
///   G(n) = sum_{i=0}^{floor((n+1)/2)} sum_{j=0}^{i} (-1)^(i-j) C(n, 2i+1) C(i, j).
struct GValue {
  std::uint64_t n = 0;
  BigInt value;
};

enum class SummationOrder {
  /// Outer index i, inner j. Each row's alternating sum over j is formed
  /// exactly before it is scaled by C(n, 2i+1).
  row_major,
  /// Outer index j, inner i; every term is formed individually.
  column_major,
};

/// Exact G(n) for n >= 1 (DomainError for n == 0).
GValue g_value(std::uint64_t n, SummationOrder order = SummationOrder::row_major);

/// How consumers that need G(n) over long ranges obtain it.
enum class GEvaluation {
  /// g_value: the double sum, exactly. Building the row sums costs O(n^3)
  /// word operations over a range, which limits it to n of order 10^4.
  direct,
  /// The Chebyshev value U_{n-1}(1) = n, which the test suite checks against
  /// the double sum.
  chebyshev,
};

BigInt g_of(std::uint64_t n, GEvaluation how);

/// sum_{j=0}^{i} (-1)^(i-j) C(i, j), memoised process-wide.
BigInt alternating_row_sum(std::uint64_t i);

struct AngleCoefficient {
  std::uint64_t cos_power = 0;
  BigInt coefficient;

  friend bool operator==(const AngleCoefficient&, const AngleCoefficient&) = default;
};

/// Coefficients of sin(n t) / sin(t) as a polynomial in cos(t), collected
/// from the double sum by cosine power n - 2(i-j) - 1. Dense over the powers
/// of parity n-1 in [0, n-1], ascending; zero coefficients are kept.
std::vector<AngleCoefficient> multiple_angle_coefficients(std::uint64_t n);

}  // namespace flintlab
