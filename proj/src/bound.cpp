#include "flintlab/bound.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flintlab {

namespace {

double nudge(double d, Rounding dir) {
  return dir == Rounding::up ? std::nextafter(d, std::numeric_limits<double>::infinity())
                             : std::nextafter(d, 0.0);
}

}  // namespace

Bound Bound::make(double d, std::int64_t exp, Rounding dir, bool inexact) {
  if (d <= 0.0) {
    if (dir == Rounding::down || !inexact) return {};
    // An inexact non-positive upper result can only come from cancellation
    // in sub(); it is clamped to zero by the caller.
    return {};
  }
  if (inexact) d = nudge(d, dir);
  if (d == 0.0) return {};
  int ex = 0;
  const double f = std::frexp(d, &ex);
  return Bound(f, exp + ex);
}

Bound Bound::scaled(std::uint64_t count, std::int64_t k, Rounding dir) {
  if (count == 0) return {};
  const double d = static_cast<double>(count);
  const bool inexact = count > (std::uint64_t{1} << 53);
  return make(d, k, dir, inexact);
}

Bound Bound::of(const mpz_class& z, std::int64_t k, Rounding dir) {
  if (sgn(z) == 0) return {};
  long ex = 0;
  double d = std::fabs(mpz_get_d_2exp(&ex, z.get_mpz_t()));
  const bool inexact = mpz_sizeinbase(z.get_mpz_t(), 2) > 53;
  return make(d, k + ex, dir, inexact);
}

Bound Bound::of_double(double d, Rounding dir) {
  if (!(d >= 0.0) || std::isinf(d)) throw std::invalid_argument("Bound::of_double: bad value");
  return make(d, 0, dir, false);
}

double Bound::log2() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(frac_) + static_cast<double>(exp_);
}

std::int64_t Bound::ceil_log2() const {
  if (is_zero()) throw std::domain_error("ceil_log2 of zero");
  return frac_ == 0.5 ? exp_ - 1 : exp_;
}

double Bound::to_double() const {
  if (is_zero()) return 0.0;
  if (exp_ > 2000) return std::numeric_limits<double>::infinity();
  if (exp_ < -2000) return 0.0;
  return std::ldexp(frac_, static_cast<int>(exp_));
}

std::pair<mpz_class, std::int64_t> Bound::to_dyadic() const {
  if (is_zero()) return {mpz_class(0), 0};
  const double m = std::ldexp(frac_, 53);
  mpz_class z(m);
  return {z, exp_ - 53};
}

std::string Bound::to_decimal() const {
  auto [m, e] = to_dyadic();
  if (sgn(m) == 0) return "0";
  if (e >= 0) {
    mpz_class v = m << static_cast<mp_bitcnt_t>(e);
    return v.get_str(10);
  }
  // m * 2^e = m * 5^-e / 10^-e
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(-e));
  mpz_class digits = m * five;
  std::string s = digits.get_str(10);
  const auto places = static_cast<std::size_t>(-e);
  if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
  s.insert(s.size() - places, ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string Bound::to_scientific_up(int sig_digits) const {
  if (is_zero()) return "0";
  if (sig_digits < 1) throw std::invalid_argument("to_scientific_up: need at least one digit");
  auto [m, e] = to_dyadic();
  auto d = static_cast<std::int64_t>(std::floor(log2() * 0.30102999566398119521));
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::int64_t shift = sig_digits - 1 - d;
    mpz_class num = m;
    mpz_class den = 1;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0) {
      num *= p10;
    } else {
      den = p10;
    }
    if (e >= 0) {
      num <<= static_cast<mp_bitcnt_t>(e);
    } else {
      den <<= static_cast<mp_bitcnt_t>(-e);
    }
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const std::string s = q.get_str(10);
    const auto want = static_cast<std::size_t>(sig_digits);
    if (s.size() > want) {
      ++d;
      continue;
    }
    if (s.size() < want) {
      --d;
      continue;
    }
    std::string out = s.substr(0, 1);
    if (want > 1) out += "." + s.substr(1);
    return out + "e" + std::to_string(d);
  }
  throw std::logic_error("to_scientific_up: exponent search did not settle");
}

Bound Bound::add(const Bound& a, const Bound& b, Rounding dir) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Bound& hi = a.exp_ >= b.exp_ ? a : b;
  const Bound& lo = a.exp_ >= b.exp_ ? b : a;
  const std::int64_t gap = hi.exp_ - lo.exp_;
  if (gap > 60) {
    // lo is below half an ulp of hi
    return dir == Rounding::up ? make(hi.frac_, hi.exp_, dir, true) : hi;
  }
  const double l = std::ldexp(lo.frac_, -static_cast<int>(gap));
  const double sum = hi.frac_ + l;
  return make(sum, hi.exp_, dir, sum - hi.frac_ != l);
}

Bound Bound::sub(const Bound& a, const Bound& b, Rounding dir) {
  if (b.is_zero()) return a;
  if (a <= b) return {};
  const std::int64_t gap = a.exp_ - b.exp_;
  if (gap > 60) {
    return dir == Rounding::down ? make(a.frac_, a.exp_, dir, true) : a;
  }
  const double l = std::ldexp(b.frac_, -static_cast<int>(gap));
  const double diff = a.frac_ - l;
  return make(diff, a.exp_, dir, a.frac_ - diff != l);
}

Bound Bound::mul(const Bound& a, const Bound& b, Rounding dir) {
  if (a.is_zero() || b.is_zero()) return {};
  const double p = a.frac_ * b.frac_;
  return make(p, a.exp_ + b.exp_, dir, std::fma(a.frac_, b.frac_, -p) != 0.0);
}

Bound Bound::div(const Bound& a, const Bound& b, Rounding dir) {
  if (b.is_zero()) throw std::domain_error("Bound::div by zero");
  if (a.is_zero()) return {};
  const double q = a.frac_ / b.frac_;
  return make(q, a.exp_ - b.exp_, dir, std::fma(q, b.frac_, -a.frac_) != 0.0);
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
  if (a.is_zero() || b.is_zero()) {
    return a.is_zero() ? (b.is_zero() ? std::strong_ordering::equal : std::strong_ordering::less)
                       : std::strong_ordering::greater;
  }
  if (a.exp_ != b.exp_) return a.exp_ <=> b.exp_;
  if (a.frac_ < b.frac_) return std::strong_ordering::less;
  if (a.frac_ > b.frac_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace flintlab
