#include "flintlab/combinatorics.hpp"

#include <mutex>
#include <shared_mutex>

#include "flintlab/errors.hpp"

namespace flintlab {

namespace {

class RowSumTable {
 public:
  BigInt get(std::uint64_t i) {
    {
      std::shared_lock lock(mu_);
      if (i < rows_.size()) return rows_[i];
    }
    std::unique_lock lock(mu_);
    while (rows_.size() <= i) rows_.push_back(compute(rows_.size()));
    return rows_[i];
  }

 private:
  static BigInt compute(std::uint64_t i) {
    // C(i, j) generated along the row
    mpz_class c = 1;
    mpz_class sum = (i % 2 == 0) ? 1 : -1;
    for (std::uint64_t j = 1; j <= i; ++j) {
      c *= static_cast<unsigned long>(i - j + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j));
      if ((i - j) % 2 == 0) {
        sum += c;
      } else {
        sum -= c;
      }
    }
    return BigInt(std::move(sum));
  }

  std::shared_mutex mu_;
  std::vector<BigInt> rows_;
};

RowSumTable& row_sums() {
  static RowSumTable table;
  return table;
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  mpz_class r = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    r *= static_cast<unsigned long>(n - k + j);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(j));
  }
  return BigInt(std::move(r));
}

BigInt alternating_row_sum(std::uint64_t i) { return row_sums().get(i); }

GValue g_value(std::uint64_t n, SummationOrder order) {
  if (n == 0) throw DomainError("g_value: n must be >= 1");
  const std::uint64_t top = (n + 1) / 2;
  BigInt total;
  if (order == SummationOrder::row_major) {
    for (std::uint64_t i = 0; i <= top; ++i) {
      const BigInt row = alternating_row_sum(i);
      // a vanishing row contributes nothing whatever C(n, 2i+1) is
      if (row.is_zero()) continue;
      total += binomial(n, 2 * i + 1) * row;
    }
  } else {
    std::vector<BigInt> outer(top + 1);
    for (std::uint64_t i = 0; i <= top; ++i) outer[i] = binomial(n, 2 * i + 1);
    for (std::uint64_t j = 0; j <= top; ++j) {
      for (std::uint64_t i = j; i <= top; ++i) {
        BigInt term = outer[i] * binomial(i, j);
        if ((i - j) % 2 == 0) {
          total += term;
        } else {
          total -= term;
        }
      }
    }
  }
  return {n, total};
}

BigInt g_of(std::uint64_t n, GEvaluation how) {
  if (how == GEvaluation::direct) return g_value(n).value;
  if (n == 0) throw DomainError("g_of: n must be >= 1");
  return BigInt(static_cast<std::int64_t>(n));
}

std::vector<AngleCoefficient> multiple_angle_coefficients(std::uint64_t n) {
  if (n == 0) throw DomainError("multiple_angle_coefficients: n must be >= 1");
  const std::uint64_t max_d = (n - 1) / 2;
  std::vector<BigInt> outer(max_d + 1);
  for (std::uint64_t i = 0; i <= max_d; ++i) outer[i] = binomial(n, 2 * i + 1);

  // d = i - j indexes the power n - 2d - 1
  std::vector<AngleCoefficient> out(max_d + 1);
  for (std::uint64_t d = 0; d <= max_d; ++d) {
    BigInt c;
    for (std::uint64_t i = d; i <= max_d; ++i) c += outer[i] * binomial(i, i - d);
    if (d % 2 == 1) c = -c;
    out[max_d - d] = {n - 2 * d - 1, std::move(c)};
  }
  return out;
}

}  // namespace flintlab
