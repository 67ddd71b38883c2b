#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace flintlab {

enum class Rounding { down, up };

/// Non-negative real magnitude with a 53-bit mantissa and an unbounded
/// binary exponent. Used for error bounds; every operation takes the
/// direction in which its result is rounded so callers can keep upper
/// bounds upper and lower bounds lower.
class Bound {
 public:
  Bound() = default;

  static Bound zero() { return {}; }
  /// Exactly 2^k.
  static Bound pow2(std::int64_t k) { return Bound(0.5, k + 1); }
  /// count * 2^k, rounded in `dir`.
  static Bound scaled(std::uint64_t count, std::int64_t k, Rounding dir = Rounding::up);
  /// |z| * 2^k, rounded in `dir`.
  static Bound of(const mpz_class& z, std::int64_t k, Rounding dir);
  static Bound of_double(double d, Rounding dir);

  bool is_zero() const { return frac_ == 0.0; }
  /// Approximate log2 of the value; -infinity for zero.
  double log2() const;
  /// Smallest k with value <= 2^k (value must be non-zero).
  std::int64_t ceil_log2() const;
  /// Approximate value as a double (0 or inf outside the double range).
  double to_double() const;
  /// Exact dyadic form mantissa * 2^exponent.
  std::pair<mpz_class, std::int64_t> to_dyadic() const;
  /// Exact decimal expansion of the stored value.
  std::string to_decimal() const;
  /// Scientific notation rounded upward, e.g. "2.12e-56"; "0" for zero.
  std::string to_scientific_up(int sig_digits = 3) const;

  Bound times2exp(std::int64_t k) const { return is_zero() ? *this : Bound(frac_, exp_ + k); }

  static Bound add(const Bound& a, const Bound& b, Rounding dir);
  /// max(a - b, 0), rounded in `dir`.
  static Bound sub(const Bound& a, const Bound& b, Rounding dir);
  static Bound mul(const Bound& a, const Bound& b, Rounding dir);
  /// a / b; b must be non-zero.
  static Bound div(const Bound& a, const Bound& b, Rounding dir);

  friend Bound operator+(const Bound& a, const Bound& b) { return add(a, b, Rounding::up); }
  friend Bound operator*(const Bound& a, const Bound& b) { return mul(a, b, Rounding::up); }
  Bound& operator+=(const Bound& o) { return *this = add(*this, o, Rounding::up); }

  friend bool operator==(const Bound& a, const Bound& b) = default;
  friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

 private:
  Bound(double frac, std::int64_t exp) : frac_(frac), exp_(exp) {}
  static Bound make(double d, std::int64_t exp, Rounding dir, bool inexact);

  double frac_ = 0.0;  // 0, or in [0.5, 1)
  std::int64_t exp_ = 0;
};

}  // namespace flintlab
