#include "flintlab/transcendental.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <limits>
#include <string>

#include "flintlab/errors.hpp"

namespace flintlab {

namespace {

std::atomic<Precision> g_max_bits{10'000'000};

struct SplitSum {
  mpz_class p, q, b, t;
};

// Sum_{k in [a,b)} sigma^k / ((2k+1) x^(2k+1)), as t / (b q).
SplitSum split_arctan(unsigned long x, int sigma, std::uint64_t a, std::uint64_t b) {
  if (b - a == 1) {
    SplitSum s;
    s.p = a == 0 ? 1 : sigma;
    if (a == 0) {
      s.q = x;
    } else {
      s.q = x;
      s.q *= x;
    }
    s.b = 2 * a + 1;
    s.t = s.p;
    return s;
  }
  const std::uint64_t m = (a + b) / 2;
  SplitSum l = split_arctan(x, sigma, a, m);
  SplitSum r = split_arctan(x, sigma, m, b);
  SplitSum s;
  s.t = r.b * r.q * l.t + l.b * l.p * r.t;
  s.p = l.p * r.p;
  s.q = l.q * r.q;
  s.b = l.b * r.b;
  return s;
}

// Terms needed for a tail below 2^-(w+4).
std::uint64_t arctan_terms(std::int64_t w, unsigned long x) {
  const double per_term = 2.0 * std::log2(static_cast<double>(x));
  return static_cast<std::uint64_t>(std::ceil((static_cast<double>(w) + 4.0) / per_term)) + 1;
}

mpz_class pi_fixed_uncached(std::int64_t w) {
  // pi = 16 atan(1/5) - 4 atan(1/239)
  const SplitSum a = split_arctan(5, -1, 0, arctan_terms(w, 5));
  const SplitSum c = split_arctan(239, -1, 0, arctan_terms(w, 239));
  const mpz_class den_a = a.b * a.q;
  const mpz_class den_c = c.b * c.q;
  mpz_class num = 16 * a.t * den_c - 4 * c.t * den_a;
  num <<= static_cast<mp_bitcnt_t>(w);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), mpz_class(den_a * den_c).get_mpz_t());
  return out;
}

mpz_class ln2_fixed_uncached(std::int64_t w) {
  // ln 2 = 2 atanh(1/3)
  const SplitSum s = split_arctan(3, 1, 0, arctan_terms(w, 3) + 1);
  mpz_class num = 2 * s.t;
  num <<= static_cast<mp_bitcnt_t>(w);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), mpz_class(s.b * s.q).get_mpz_t());
  return out;
}

ConstantCache& ln2_cache() {
  static ConstantCache cache(&ln2_fixed_uncached);
  return cache;
}

mpz_class round_shift(const mpz_class& z, std::int64_t k) {
  if (k <= 0) return z << static_cast<mp_bitcnt_t>(-k);
  mpz_class r = z + (mpz_class(1) << static_cast<mp_bitcnt_t>(k - 1));
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

mpz_class mul_fixed(const mpz_class& a, const mpz_class& b, std::int64_t w) {
  mpz_class r = a * b;
  mpz_tdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(w));
  return r;
}

struct FixedResult {
  mpz_class value;
  std::uint64_t units = 0;  // error bound in units of 2^-w
};

// sin t for |t| <= pi/2, scale 2^w.
FixedResult taylor_sin(const mpz_class& t, std::int64_t w) {
  const mpz_class t2 = mul_fixed(t, t, w);
  mpz_class term = t;
  mpz_class sum = t;
  std::uint64_t k = 1;
  for (;; ++k) {
    term = mul_fixed(term, t2, w);
    mpz_tdiv_q_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>((2 * k) * (2 * k + 1)));
    if (sgn(term) == 0) break;
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return {sum, 4 * k + 8};
}

// cos t for |t| <= pi/2, scale 2^w.
FixedResult taylor_cos(const mpz_class& t, std::int64_t w) {
  const mpz_class t2 = mul_fixed(t, t, w);
  mpz_class term = mpz_class(1) << static_cast<mp_bitcnt_t>(w);
  mpz_class sum = term;
  std::uint64_t k = 1;
  for (;; ++k) {
    term = mul_fixed(term, t2, w);
    mpz_tdiv_q_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>((2 * k - 1) * (2 * k)));
    if (sgn(term) == 0) break;
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return {sum, 4 * k + 8};
}

// exp r for |r| <= 1/2, scale 2^w.
FixedResult taylor_exp(const mpz_class& r, std::int64_t w) {
  mpz_class term = mpz_class(1) << static_cast<mp_bitcnt_t>(w);
  mpz_class sum = term;
  std::uint64_t j = 1;
  for (;; ++j) {
    term = mul_fixed(term, r, w);
    mpz_tdiv_q_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(j));
    if (sgn(term) == 0) break;
    sum += term;
  }
  return {sum, 3 * j + 4};
}

std::int64_t bit_length_u64(std::uint64_t v) {
  std::int64_t n = 0;
  while (v != 0) {
    ++n;
    v >>= 1U;
  }
  return n;
}

std::int64_t log2_guard(std::int64_t w) {
  return bit_length_u64(static_cast<std::uint64_t>(w)) + 4;
}

enum class Trig { sine, cosine };

MpReal trig_any(const MpReal& x, Precision bits, Trig which) {
  check_precision(bits);
  if (x.sign() == 0 && x.is_exact()) {
    return which == Trig::sine ? MpReal() : MpReal::exact(std::int64_t{1});
  }
  const std::int64_t int_bits = x.sign() == 0 ? 0 : std::max<std::int64_t>(0, x.msb() + 1);
  std::int64_t w = static_cast<std::int64_t>(bits) + int_bits + 16;
  const Bound target = Bound::pow2(-static_cast<std::int64_t>(bits));
  for (;;) {
    w += log2_guard(w);
    check_precision(static_cast<std::uint64_t>(w));
    Bound x_round;
    const mpz_class xf = x.to_fixed(w, &x_round);
    // pi/2 at scale w within one unit
    const mpz_class half_pi = PiCache::global().fixed(w - 1);
    mpz_class q;
    mpz_class twice = 2 * xf + half_pi;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * half_pi).get_mpz_t());
    const mpz_class t = xf - q * half_pi;
    const Bound q_err = Bound::of(q, -w, Rounding::up);

    const mpz_class q4 = ((q % 4) + 4) % 4;
    const unsigned long quadrant = q4.get_ui();
    const bool use_sin = (which == Trig::sine) == (quadrant % 2 == 0);
    FixedResult f = use_sin ? taylor_sin(t, w) : taylor_cos(t, w);
    bool negate = false;
    if (which == Trig::sine) {
      negate = quadrant >= 2;
    } else {
      negate = quadrant == 1 || quadrant == 2;
    }
    if (negate) f.value = -f.value;
    const Bound own = Bound::scaled(f.units, -w) + q_err + x_round;
    if (own <= target) return MpReal::dyadic(std::move(f.value), -w, own + x.err());
    w += 32;
  }
}

}  // namespace

Precision max_precision_bits() { return g_max_bits.load(); }
void set_max_precision_bits(Precision bits) { g_max_bits.store(bits); }

void check_precision(std::uint64_t bits) {
  if (bits > g_max_bits.load()) {
    throw ResourceLimitError("requested precision of " + std::to_string(bits) +
                             " bits exceeds the limit of " + std::to_string(g_max_bits.load()));
  }
}

mpz_class ConstantCache::fixed(std::int64_t w) {
  {
    std::shared_lock lock(mu_);
    if (stored_bits_ >= w + 3) return round_shift(stored_, stored_bits_ - w);
  }
  std::unique_lock lock(mu_);
  if (stored_bits_ < w + 3) {
    const std::int64_t target = std::max(w + 32, stored_bits_ + stored_bits_ / 2);
    check_precision(static_cast<std::uint64_t>(target));
    stored_ = compute_(target);
    stored_bits_ = target;
    ++computations_;
  }
  return round_shift(stored_, stored_bits_ - w);
}

std::int64_t ConstantCache::stored_bits() const {
  std::shared_lock lock(mu_);
  return stored_bits_;
}

std::uint64_t ConstantCache::computations() const {
  std::shared_lock lock(mu_);
  return computations_;
}

PiCache::PiCache() : cache_(&pi_fixed_uncached) {}

PiCache& PiCache::global() {
  static PiCache cache;
  return cache;
}

MpReal PiCache::get(Precision bits) {
  const auto w = static_cast<std::int64_t>(bits) + 1;
  return MpReal::dyadic(cache_.fixed(w), -w, Bound::pow2(-w));
}

mpz_class ln2_fixed(std::int64_t w) { return ln2_cache().fixed(w); }

MpReal compute_pi(Precision bits) {
  if (bits < 8) throw DomainError("compute_pi: bits must be >= 8");
  check_precision(bits);
  return PiCache::global().get(bits);
}

ReducedInteger reduce_mod_pi(const BigInt& n, Precision bits) {
  if (n.sign() <= 0) throw DomainError("reduce_mod_pi: n must be >= 1");
  const auto w = static_cast<std::int64_t>(bits) + static_cast<std::int64_t>(n.bit_length()) + 32;
  check_precision(static_cast<std::uint64_t>(w));
  const mpz_class p = PiCache::global().fixed(w);
  const mpz_class scaled = n.raw() << static_cast<mp_bitcnt_t>(w);
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), mpz_class(2 * scaled + p).get_mpz_t(), mpz_class(2 * p).get_mpz_t());
  mpz_class r = scaled - k * p;
  const Bound err = Bound::of(k, -w, Rounding::up);
  return {BigInt(std::move(k)), MpReal::dyadic(std::move(r), -w, err)};
}

MpReal sin_int(const BigInt& n, Precision bits) {
  const ReducedInteger red = reduce_mod_pi(n, bits + 4);
  MpReal s = sin_any(red.r, bits + 2);
  if (mpz_odd_p(red.k.raw().get_mpz_t()) != 0) s = -s;
  return s;
}

namespace {

void check_trig_domain(const MpReal& x) {
  // pi < 3.1416
  static const MpReal pi_upper = MpReal::exact(3.1416);
  if (x.abs_lower() > pi_upper.magnitude(Rounding::down)) {
    throw DomainError("argument exceeds pi in magnitude; reduce it first");
  }
}

}  // namespace

MpReal sin_mp(const MpReal& x, Precision bits) {
  check_trig_domain(x);
  return trig_any(x, bits, Trig::sine);
}

MpReal cos_mp(const MpReal& x, Precision bits) {
  check_trig_domain(x);
  return trig_any(x, bits, Trig::cosine);
}

MpReal sin_any(const MpReal& x, Precision bits) { return trig_any(x, bits, Trig::sine); }
MpReal cos_any(const MpReal& x, Precision bits) { return trig_any(x, bits, Trig::cosine); }

MpReal exp_mp(const MpReal& x, Precision bits) {
  check_precision(bits);
  if (x.sign() == 0 && x.is_exact()) return MpReal::exact(std::int64_t{1});
  if (x.err() > Bound::pow2(-1)) throw DomainError("exp_mp: input error above 1/2");
  const double xd = x.to_double();
  if (!(std::fabs(xd) < 1.0e15)) throw ResourceLimitError("exp_mp: argument out of range");
  const auto k = static_cast<std::int64_t>(std::llround(xd / std::numbers::ln2));
  const std::int64_t k_bits = bit_length_u64(static_cast<std::uint64_t>(k < 0 ? -k : k));
  std::int64_t w = static_cast<std::int64_t>(bits) + k_bits + 16;
  for (;;) {
    w += log2_guard(w);
    check_precision(static_cast<std::uint64_t>(w));
    Bound x_round;
    const mpz_class xf = x.to_fixed(w, &x_round);
    const mpz_class r = xf - mpz_class(static_cast<long>(k)) * ln2_fixed(w);
    const FixedResult e = taylor_exp(r, w);
    // error of r in units, doubled for exp' <= e^(1/2) plus the rounding
    const std::uint64_t r_units = 2 * (static_cast<std::uint64_t>(k < 0 ? -k : k) + 1);
    const Bound own_scaled = Bound::scaled(e.units + r_units, -w);
    MpReal mid = MpReal::dyadic(e.value, k - w);
    Bound own = own_scaled.times2exp(k) + Bound::mul(mid.magnitude(Rounding::up), x_round.times2exp(1), Rounding::up);
    const Bound rel_target = Bound::mul(mid.magnitude(Rounding::down),
                                        Bound::pow2(-static_cast<std::int64_t>(bits)), Rounding::down);
    if (own <= rel_target) {
      Bound in_err;
      if (!x.err().is_zero()) {
        in_err = Bound::mul(mid.magnitude(Rounding::up) + own, x.err().times2exp(1), Rounding::up);
      }
      return mid.widened(own + in_err).rounded(bits + 16);
    }
    w += 32;
  }
}

MpReal log_mp(const MpReal& x, Precision bits) {
  check_precision(bits);
  if (x.sign() <= 0 || !x.sign_certain()) throw DomainError("log_mp: argument not certainly positive");
  std::int64_t e = x.msb();
  const std::int64_t e_bits = bit_length_u64(static_cast<std::uint64_t>(e < 0 ? -e : e) + 1);
  std::int64_t w = static_cast<std::int64_t>(bits) + e_bits + 20;
  const Bound target = Bound::pow2(-static_cast<std::int64_t>(bits));
  for (;;) {
    w += log2_guard(w);
    check_precision(static_cast<std::uint64_t>(w));
    std::int64_t ee = e;
    const mpz_class one = mpz_class(1) << static_cast<mp_bitcnt_t>(w);
    mpz_class m = MpReal::dyadic(x.mantissa(), x.exponent() - ee).to_fixed(w);
    if (m * m > (one * one) * 2) {
      ++ee;
      m = MpReal::dyadic(x.mantissa(), x.exponent() - ee).to_fixed(w);
    }
    mpz_class z;
    mpz_tdiv_q(z.get_mpz_t(), mpz_class((m - one) << static_cast<mp_bitcnt_t>(w)).get_mpz_t(),
               mpz_class(m + one).get_mpz_t());
    const mpz_class z2 = mul_fixed(z, z, w);
    mpz_class pw = z;
    mpz_class sum = z;
    std::uint64_t j = 1;
    for (;; ++j) {
      pw = mul_fixed(pw, z2, w);
      mpz_class term;
      mpz_tdiv_q_ui(term.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(2 * j + 1));
      if (sgn(term) == 0) break;
      sum += term;
    }
    mpz_class value = 2 * sum + mpz_class(static_cast<long>(ee)) * ln2_fixed(w);
    const std::uint64_t units = 4 * j + 16 + static_cast<std::uint64_t>(ee < 0 ? -ee : ee);
    const Bound own = Bound::scaled(units, -w);
    if (own <= target) {
      Bound in_err;
      if (!x.err().is_zero()) in_err = Bound::div(x.err(), x.abs_lower(), Rounding::up);
      return MpReal::dyadic(std::move(value), -w, own + in_err);
    }
    w += 32;
  }
}

}  // namespace flintlab
