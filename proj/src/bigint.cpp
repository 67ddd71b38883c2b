#include "flintlab/bigint.hpp"

#include <limits>

#include "flintlab/errors.hpp"

namespace flintlab {

BigInt BigInt::from_string(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw FormatError("empty integer literal");
  for (char c : digits) {
    if (c < '0' || c > '9') throw FormatError("invalid integer literal: " + std::string(s));
  }
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return BigInt(mpz_class(text, 10));
}

std::size_t BigInt::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

bool BigInt::fits_int64() const {
  return bit_length() <= 63;
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("BigInt does not fit in int64");
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return v_.get_si();
}

BigInt BigInt::pow(unsigned long e) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), e);
  return BigInt(std::move(r));
}

BigInt& BigInt::divide_exact(const BigInt& o) {
  mpz_divexact(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
  return *this;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(q));
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return BigInt(std::move(r));
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(std::move(g));
}

}  // namespace flintlab
