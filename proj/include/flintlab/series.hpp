#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flintlab/bigint.hpp"
#include "flintlab/mp_real.hpp"

namespace flintlab {

/// Summand G(n)^(2s) / (|sin n|^u * n^(v+2s)). The defaults give the
/// Flint Hills series 1 / (sin^2 n * n^3).
struct SeriesSpec {
  std::uint32_t s = 0;
  std::uint32_t u = 2;
  double v = 3.0;
  Precision bits = 128;

  /// Throws DomainError unless u >= 1, v > 0 (finite) and bits >= 8.
  void validate() const;
  /// Exponent of n in the denominator, v + 2s.
  double denominator_power() const { return v + 2.0 * s; }

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

/// Bits of the fixed summation grid: partial sums are exact sums of terms
/// rounded to multiples of 2^-grid_bits(spec).
std::int64_t grid_bits(const SeriesSpec& spec);

/// Accumulated partial sum over n = 1..k.
///
/// The running total is kept as integers on the summation grid, so chunked,
/// multi-threaded and resumed evaluations agree bit for bit.
struct PartialSumResult {
  SeriesSpec spec;
  std::uint64_t k = 0;
  /// Sum of the rounded terms in units of 2^-grid_bits(spec).
  BigInt grid_value;
  /// Accumulated error bound in the same units.
  BigInt grid_err;

  MpReal value() const;
  Bound err() const;

  friend bool operator==(const PartialSumResult&, const PartialSumResult&) = default;
};

/// One summand with absolute error <= 2^-spec.bits.
MpReal term(std::uint64_t n, const SeriesSpec& spec);
/// One summand with absolute error <= 2^-target_bits.
MpReal term(std::uint64_t n, const SeriesSpec& spec, std::int64_t target_bits);

struct SumOptions {
  unsigned threads = 1;
  std::uint64_t chunk_size = 4096;
};

/// Sum of term(n) for n in (checkpoint.k, k], or (0, k] without a checkpoint.
/// Throws CheckpointMismatchError when the checkpoint's spec differs or its
/// k is not below the requested k.
PartialSumResult partial_sum(std::uint64_t k, const SeriesSpec& spec,
                             const std::optional<PartialSumResult>& checkpoint = std::nullopt,
                             const SumOptions& options = {});

struct EquivalenceRow {
  std::uint32_t s = 0;
  MpReal value;
  Bound err;
  /// |S_s(k) - S_0(k)| between midpoints (exact).
  MpReal delta_vs_s0;
};

/// Partial sums of the s-indexed family for s = 0..s_max at a common k.
std::vector<EquivalenceRow> equivalence_experiment(std::uint64_t k, std::uint32_t s_max,
                                                   Precision bits, const SumOptions& options = {});

/// Checkpoint document:
///   {"version":1,"spec":{"s":..,"u":..,"v":..,"bits":..},"k":..,
///    "value":"<exact decimal>","err":"<exact decimal>"}
std::string checkpoint_to_json(const PartialSumResult& r);
/// Throws FormatError on malformed or inexact documents.
PartialSumResult checkpoint_from_json(std::string_view text);
void save_checkpoint(const std::string& path, const PartialSumResult& r);
PartialSumResult load_checkpoint(const std::string& path);

}  // namespace flintlab
