#include "flintlab/mp_real.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flintlab/errors.hpp"

namespace flintlab {

namespace {

mpz_class shifted(const mpz_class& z, std::int64_t k) {
  mpz_class r;
  if (k >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_tdiv_q_2exp(r.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  }
  return r;
}

// Round z / 2^k to nearest, ties away from zero (k > 0).
mpz_class shift_round(const mpz_class& z, std::int64_t k) {
  mpz_class r = abs(z);
  mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(k - 1);
  r += half;
  mpz_tdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  if (sgn(z) < 0) r = -r;
  return r;
}

mpz_class pow5(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 5, static_cast<unsigned long>(k));
  return r;
}

mpz_class pow10(std::uint64_t k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

std::string place_point(const mpz_class& scaled, std::size_t places) {
  std::string s = mpz_class(abs(scaled)).get_str(10);
  if (places > 0) {
    if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
    s.insert(s.size() - places, ".");
  }
  if (sgn(scaled) < 0) s.insert(0, "-");
  return s;
}

}  // namespace

void MpReal::normalize() {
  if (sgn(man_) == 0) {
    exp_ = 0;
    return;
  }
  const mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
    exp_ += static_cast<std::int64_t>(tz);
  }
}

MpReal MpReal::exact(const BigInt& v) {
  return dyadic(v.raw(), 0);
}

MpReal MpReal::exact(double v) {
  if (!std::isfinite(v)) throw DomainError("MpReal::exact: non-finite double");
  if (v == 0.0) return {};
  int ex = 0;
  const double f = std::frexp(v, &ex);
  const double m = std::ldexp(f, 53);  // integral
  return dyadic(mpz_class(m), static_cast<std::int64_t>(ex) - 53);
}

MpReal MpReal::dyadic(mpz_class mantissa, std::int64_t exponent, Bound err) {
  MpReal r;
  r.man_ = std::move(mantissa);
  r.exp_ = exponent;
  r.err_ = err;
  r.normalize();
  return r;
}

MpReal MpReal::parse(std::string_view text, Precision prec) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (t.empty()) throw FormatError("empty decimal literal");
  bool negative = false;
  if (t.front() == '-' || t.front() == '+') {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  std::string digits;
  std::int64_t dec_exp = 0;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < t.size(); ++i) {
    const char c = t[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --dec_exp;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw FormatError("invalid decimal literal: " + std::string(text));
  if (i < t.size()) {
    if (t[i] != 'e' && t[i] != 'E') throw FormatError("invalid decimal literal: " + std::string(text));
    std::string_view e = t.substr(i + 1);
    bool eneg = false;
    if (!e.empty() && (e.front() == '-' || e.front() == '+')) {
      eneg = e.front() == '-';
      e.remove_prefix(1);
    }
    if (e.empty() || e.size() > 9) throw FormatError("invalid exponent: " + std::string(text));
    std::int64_t ev = 0;
    for (char c : e) {
      if (c < '0' || c > '9') throw FormatError("invalid exponent: " + std::string(text));
      ev = ev * 10 + (c - '0');
    }
    dec_exp += eneg ? -ev : ev;
  }
  mpz_class n(digits, 10);
  if (negative) n = -n;
  if (sgn(n) == 0) return {};
  if (dec_exp >= 0) return dyadic(n * pow10(static_cast<std::uint64_t>(dec_exp)), 0);

  const auto k = static_cast<std::uint64_t>(-dec_exp);
  const mpz_class five = pow5(k);
  if (mpz_divisible_p(n.get_mpz_t(), five.get_mpz_t()) != 0) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), five.get_mpz_t());
    return dyadic(std::move(q), -static_cast<std::int64_t>(k));
  }
  // n / 5^k carries `sh` fraction bits in the quotient
  const std::int64_t sh = static_cast<std::int64_t>(prec) + 2 +
                          static_cast<std::int64_t>(mpz_sizeinbase(five.get_mpz_t(), 2)) -
                          static_cast<std::int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const std::int64_t s = std::max<std::int64_t>(sh, 0);
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), shifted(n, s).get_mpz_t(), five.get_mpz_t());
  const std::int64_t e = -static_cast<std::int64_t>(k) - s;
  return dyadic(std::move(q), e, Bound::pow2(e)).rounded(prec);
}

std::size_t MpReal::mantissa_bits() const {
  return sgn(man_) == 0 ? 0 : mpz_sizeinbase(man_.get_mpz_t(), 2);
}

std::int64_t MpReal::msb() const {
  if (sgn(man_) == 0) throw DomainError("msb of zero");
  return exp_ + static_cast<std::int64_t>(mantissa_bits()) - 1;
}

MpReal MpReal::widened(const Bound& extra) const {
  MpReal r = *this;
  r.err_ += extra;
  return r;
}

MpReal MpReal::rounded(Precision prec) const {
  const std::size_t bits = mantissa_bits();
  if (bits <= prec) return *this;
  const auto shift = static_cast<std::int64_t>(bits - prec);
  MpReal r;
  r.man_ = shift_round(man_, shift);
  r.exp_ = exp_ + shift;
  r.err_ = err_ + Bound::pow2(exp_ + shift - 1);
  r.normalize();
  return r;
}

MpReal MpReal::abs() const {
  MpReal r = *this;
  r.man_ = ::abs(man_);
  return r;
}

MpReal MpReal::operator-() const {
  MpReal r = *this;
  r.man_ = -man_;
  return r;
}

mpz_class MpReal::to_fixed(std::int64_t w, Bound* rounding) const {
  const std::int64_t k = exp_ + w;
  if (rounding != nullptr) *rounding = Bound::zero();
  if (k >= 0 || sgn(man_) == 0) return shifted(man_, k);
  if (rounding != nullptr) *rounding = Bound::pow2(-w - 1);
  return shift_round(man_, -k);
}

double MpReal::to_double() const {
  if (sgn(man_) == 0) return 0.0;
  long ex = 0;
  const double d = mpz_get_d_2exp(&ex, man_.get_mpz_t());
  const std::int64_t e = exp_ + ex;
  if (e > 2000) return d > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  if (e < -2000) return 0.0;
  return std::ldexp(d, static_cast<int>(e));
}

std::string MpReal::to_exact_decimal() const {
  if (sgn(man_) == 0) return "0";
  if (exp_ >= 0) return shifted(man_, exp_).get_str(10);
  const auto places = static_cast<std::size_t>(-exp_);
  std::string s = place_point(man_ * pow5(places), places);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string MpReal::to_decimal(int frac_digits) const {
  if (frac_digits < 0) throw std::invalid_argument("negative decimal count");
  const auto d = static_cast<std::uint64_t>(frac_digits);
  mpz_class scaled = man_ * pow10(d);
  if (exp_ >= 0) {
    scaled = shifted(scaled, exp_);
  } else {
    scaled = shift_round(scaled, -exp_);
  }
  std::string s = place_point(scaled, d);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

int MpReal::guaranteed_decimals() const {
  if (err_.is_zero()) return std::numeric_limits<int>::max();
  // largest d with 10^-d >= 2 err
  const double l10 = (err_.log2() + 1.0) * 0.30102999566398119521;
  const double d = std::floor(-l10);
  if (d <= 0) return 0;
  return static_cast<int>(std::min(d, 1.0e6));
}

std::string MpReal::to_guaranteed_decimal() const {
  if (err_.is_zero()) return to_exact_decimal();
  return to_decimal(guaranteed_decimals());
}

std::string MpReal::to_scientific(int sig_digits) const {
  if (sig_digits < 1) throw std::invalid_argument("to_scientific: need at least one digit");
  if (sgn(man_) == 0) return "0";
  const auto digits = static_cast<std::size_t>(sig_digits);
  auto d = static_cast<std::int64_t>(std::floor(static_cast<double>(msb()) * 0.30102999566398119521));
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::int64_t shift = static_cast<std::int64_t>(digits) - 1 - d;
    mpz_class num = ::abs(man_);
    mpz_class den = 1;
    if (shift >= 0) {
      num *= pow10(static_cast<std::uint64_t>(shift));
    } else {
      den = pow10(static_cast<std::uint64_t>(-shift));
    }
    if (exp_ >= 0) {
      num <<= static_cast<mp_bitcnt_t>(exp_);
    } else {
      den <<= static_cast<mp_bitcnt_t>(-exp_);
    }
    // round half up
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), mpz_class(2 * num + den).get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    std::string s = q.get_str(10);
    if (s.size() > digits) {
      ++d;
      continue;
    }
    if (s.size() < digits) {
      --d;
      continue;
    }
    std::string out = sgn(man_) < 0 ? "-" : "";
    out += s.substr(0, 1);
    if (digits > 1) out += "." + s.substr(1);
    out += "e" + std::to_string(d);
    return out;
  }
  throw std::logic_error("to_scientific: exponent search did not settle");
}

MpReal add(const MpReal& a, const MpReal& b, Precision prec) {
  if (a.sign() == 0) return b.widened(a.err()).rounded(prec);
  if (b.sign() == 0) return a.widened(b.err()).rounded(prec);
  const MpReal& hi = a.msb() >= b.msb() ? a : b;
  const MpReal& lo = a.msb() >= b.msb() ? b : a;
  // lo entirely below the rounding position of the result: fold it into err
  if (hi.msb() - lo.msb() > static_cast<std::int64_t>(prec) + 4) {
    return hi.widened(lo.abs_upper()).rounded(prec);
  }
  const std::int64_t e = std::min(a.exponent(), b.exponent());
  mpz_class m = a.mantissa() << static_cast<mp_bitcnt_t>(a.exponent() - e);
  m += b.mantissa() << static_cast<mp_bitcnt_t>(b.exponent() - e);
  return MpReal::dyadic(std::move(m), e, a.err() + b.err()).rounded(prec);
}

MpReal sub(const MpReal& a, const MpReal& b, Precision prec) {
  return add(a, -b, prec);
}

MpReal mul(const MpReal& a, const MpReal& b, Precision prec) {
  Bound err = a.magnitude(Rounding::up) * b.err() + b.magnitude(Rounding::up) * a.err() +
              a.err() * b.err();
  return MpReal::dyadic(a.mantissa() * b.mantissa(), a.exponent() + b.exponent(), err).rounded(prec);
}

MpReal div(const MpReal& a, const MpReal& b, Precision prec) {
  const Bound b_low = b.abs_lower();
  if (b_low.is_zero()) throw DomainError("division by an interval containing zero");
  if (a.sign() == 0) {
    return MpReal::dyadic(0, 0, Bound::div(a.err(), b_low, Rounding::up));
  }
  const std::int64_t sh = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(prec) + 2 + static_cast<std::int64_t>(b.mantissa_bits()) -
             static_cast<std::int64_t>(a.mantissa_bits()));
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), mpz_class(a.mantissa() << static_cast<mp_bitcnt_t>(sh)).get_mpz_t(),
             b.mantissa().get_mpz_t());
  const std::int64_t e = a.exponent() - sh - b.exponent();
  // |a/b - ã/b̃| <= (|ã| eb + |b̃| ea) / (|b̃| (|b̃| - eb))
  Bound err;
  if (!a.err().is_zero() || !b.err().is_zero()) {
    const Bound num = a.magnitude(Rounding::up) * b.err() + b.magnitude(Rounding::up) * a.err();
    const Bound den = Bound::mul(b.magnitude(Rounding::down), b_low, Rounding::down);
    err = Bound::div(num, den, Rounding::up);
  }
  err += Bound::pow2(e);  // truncation of the quotient
  return MpReal::dyadic(std::move(q), e, err).rounded(prec);
}

MpReal pow_ui(const MpReal& x, unsigned long e, Precision prec) {
  MpReal result = MpReal::exact(std::int64_t{1});
  MpReal base = x;
  while (e > 0) {
    if ((e & 1U) != 0) result = mul(result, base, prec);
    e >>= 1U;
    if (e > 0) base = mul(base, base, prec);
  }
  return result;
}

MpReal mul_2exp(const MpReal& x, std::int64_t k) {
  return MpReal::dyadic(x.mantissa(), x.exponent() + k, x.err().times2exp(k));
}

int compare_midpoints(const MpReal& a, const MpReal& b) {
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  const std::int64_t e = std::min(a.exponent(), b.exponent());
  const mpz_class ma = a.mantissa() << static_cast<mp_bitcnt_t>(a.exponent() - e);
  const mpz_class mb = b.mantissa() << static_cast<mp_bitcnt_t>(b.exponent() - e);
  const int c = cmp(ma, mb);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Bound midpoint_distance(const MpReal& a, const MpReal& b) {
  if (a.sign() == 0) return b.magnitude(Rounding::up);
  if (b.sign() == 0) return a.magnitude(Rounding::up);
  const std::int64_t e = std::min(a.exponent(), b.exponent());
  const mpz_class ma = a.mantissa() << static_cast<mp_bitcnt_t>(a.exponent() - e);
  const mpz_class mb = b.mantissa() << static_cast<mp_bitcnt_t>(b.exponent() - e);
  return Bound::of(mpz_class(ma - mb), e, Rounding::up);
}

std::optional<int> compare_certain(const MpReal& a, const MpReal& b) {
  const int c = compare_midpoints(a, b);
  if (c == 0) return std::nullopt;
  const Bound gap = Bound::of(
      [&] {
        const std::int64_t e = std::min(a.exponent(), b.exponent());
        return mpz_class((a.mantissa() << static_cast<mp_bitcnt_t>(a.exponent() - e)) -
                         (b.mantissa() << static_cast<mp_bitcnt_t>(b.exponent() - e)));
      }(),
      std::min(a.exponent(), b.exponent()), Rounding::down);
  if (gap > a.err() + b.err()) return c;
  return std::nullopt;
}

}  // namespace flintlab
