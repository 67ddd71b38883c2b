#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace flintlab {

/// Arbitrary-size signed integer.
///
/// Thin value wrapper over a GMP integer. The sign is derived from the
/// magnitude, so a zero magnitude always carries sign 0.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  explicit BigInt(mpz_class v) : v_(std::move(v)) {}

  /// Parses an optionally signed decimal string. Throws FormatError.
  static BigInt from_string(std::string_view s);
  std::string to_string() const { return v_.get_str(10); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  /// Number of bits in the magnitude (0 for zero).
  std::size_t bit_length() const;
  bool fits_int64() const;
  std::int64_t to_int64() const;
  double to_double() const { return v_.get_d(); }

  BigInt abs() const { return BigInt(mpz_class(::abs(v_))); }
  BigInt pow(unsigned long e) const;

  const mpz_class& raw() const { return v_; }

  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }
  /// Division that must be exact; the quotient is exact when it is.
  BigInt& divide_exact(const BigInt& o);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator-(const BigInt& a) { return BigInt(mpz_class(-a.v_)); }
  /// Truncating division and remainder.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class v_;
};

BigInt gcd(const BigInt& a, const BigInt& b);

}  // namespace flintlab
