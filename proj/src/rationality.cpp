#include "flintlab/rationality.hpp"

#include <algorithm>

#include "flintlab/errors.hpp"
#include "flintlab/parallel.hpp"
#include "flintlab/transcendental.hpp"

namespace flintlab {

namespace {

constexpr Precision kEscalationCap = Precision{1} << 20;

struct Fraction {
  mpz_class num;
  mpz_class den;
};

// Exact dyadic value man * 2^exp as a fraction.
Fraction dyadic_fraction(const mpz_class& man, std::int64_t exp) {
  if (exp >= 0) return {man << static_cast<mp_bitcnt_t>(exp), 1};
  return {man, mpz_class(1) << static_cast<mp_bitcnt_t>(-exp)};
}

// Shared prefix of the expansions of lo <= hi (both positive).
CfExpansion interval_cf(Fraction lo, Fraction hi, std::size_t count) {
  CfExpansion out;
  while (out.terms.size() < count) {
    mpz_class a_lo;
    mpz_class a_hi;
    mpz_fdiv_q(a_lo.get_mpz_t(), lo.num.get_mpz_t(), lo.den.get_mpz_t());
    mpz_fdiv_q(a_hi.get_mpz_t(), hi.num.get_mpz_t(), hi.den.get_mpz_t());
    if (a_lo != a_hi) {
      out.precision_exhausted = true;
      return out;
    }
    out.terms.emplace_back(a_lo);
    const mpz_class r_lo = lo.num - a_lo * lo.den;
    const mpz_class r_hi = hi.num - a_hi * hi.den;
    const bool lo_ends = sgn(r_lo) == 0;
    const bool hi_ends = sgn(r_hi) == 0;
    if (lo_ends && hi_ends) return out;  // finite expansion
    if (lo_ends || hi_ends) {
      out.precision_exhausted = true;
      return out;
    }
    // x -> 1 / (x - a) reverses the order of the endpoints
    Fraction next_lo{hi.den, r_hi};
    Fraction next_hi{lo.den, r_lo};
    lo = std::move(next_lo);
    hi = std::move(next_hi);
  }
  return out;
}

MpReal abs_sin(std::uint64_t n, Precision bits) {
  return sin_int(BigInt(static_cast<std::int64_t>(n)), bits).abs();
}

}  // namespace

CfExpansion cf_terms(const Rational& x, std::size_t count) {
  if (x.den.sign() == 0) throw DomainError("cf_terms: zero denominator");
  Fraction f{x.num.raw(), x.den.raw()};
  if (sgn(f.den) < 0) {
    f.num = -f.num;
    f.den = -f.den;
  }
  if (sgn(f.num) <= 0) throw DomainError("cf_terms: x must be positive");
  return interval_cf(f, f, count);
}

CfExpansion cf_terms(const MpReal& x, std::size_t count) {
  if (x.sign() <= 0 || !x.sign_certain()) throw DomainError("cf_terms: x must be positive");
  const auto [em, ee] = x.err().to_dyadic();
  const std::int64_t e = std::min(x.exponent(), ee);
  const mpz_class mid = x.mantissa() << static_cast<mp_bitcnt_t>(x.exponent() - e);
  const mpz_class rad = em << static_cast<mp_bitcnt_t>(ee - e);
  Fraction lo = dyadic_fraction(mid - rad, e);
  Fraction hi = dyadic_fraction(mid + rad, e);
  return interval_cf(std::move(lo), std::move(hi), count);
}

CfExpansion cf_terms(const RealSource& source, Precision bits, std::size_t count) {
  const CfExpansion single = cf_terms(source(bits), count);
  const CfExpansion doubled = cf_terms(source(2 * bits), count);
  CfExpansion out;
  const std::size_t n = std::min(single.terms.size(), doubled.terms.size());
  for (std::size_t i = 0; i < n && single.terms[i] == doubled.terms[i]; ++i) {
    out.terms.push_back(single.terms[i]);
  }
  const bool both_finished = out.terms.size() == single.terms.size() &&
                             out.terms.size() == doubled.terms.size() &&
                             !single.precision_exhausted && !doubled.precision_exhausted;
  out.precision_exhausted = out.terms.size() < count && !both_finished;
  return out;
}

CfExpansion pi_cf_terms(Precision bits, std::size_t count) {
  return cf_terms([](Precision p) { return compute_pi(p); }, bits, count);
}

std::vector<Convergent> convergents(std::span<const BigInt> terms) {
  if (terms.empty()) throw DomainError("convergents: empty partial-quotient sequence");
  std::vector<Convergent> out;
  out.reserve(terms.size());
  BigInt p_prev(1), q_prev(0);  // p_{-1}, q_{-1}
  BigInt p_prev2(0), q_prev2(1);  // p_{-2}, q_{-2}
  for (std::size_t k = 0; k < terms.size(); ++k) {
    BigInt p = terms[k] * p_prev + p_prev2;
    BigInt q = terms[k] * q_prev + q_prev2;
    out.push_back({p, q, k});
    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = std::move(p);
    q_prev = std::move(q);
  }
  return out;
}

bool abs_sin_less(std::uint64_t a, std::uint64_t b, Precision bits) {
  for (Precision p = bits; p <= kEscalationCap; p *= 2) {
    if (auto c = compare_certain(abs_sin(a, p), abs_sin(b, p))) return *c < 0;
  }
  throw UndecidableError("|sin " + std::to_string(a) + "| and |sin " + std::to_string(b) +
                         "| not separated at the precision cap");
}

double local_exponent(std::uint64_t n, Precision bits) {
  if (n < 2) throw DomainError("local_exponent: n must be >= 2");
  const Precision w = std::max<Precision>(bits, 64);
  for (Precision p = w; p <= kEscalationCap; p *= 2) {
    const MpReal s = abs_sin(n, p);
    if (!s.sign_certain()) continue;
    const MpReal num = log_mp(s, p);
    const MpReal den = log_mp(MpReal::exact(static_cast<std::int64_t>(n)), p);
    return -div(num, den, p).to_double();
  }
  throw UndecidableError("local_exponent: |sin n| not separated from zero");
}

std::vector<SpikeRecord> spike_indices(std::uint64_t n_max, Precision bits, unsigned threads,
                                       std::uint64_t chunk_size) {
  if (n_max < 1) throw DomainError("spike_indices: n_max must be >= 1");
  struct Local {
    std::uint64_t n;
    MpReal value;
  };
  const auto chunks = aligned_chunks(1, n_max, chunk_size);
  auto local = map_chunks<std::vector<Local>>(chunks, threads, [&](const IndexRange& r) {
    std::vector<Local> records;
    for (std::uint64_t n = r.first; n <= r.last; ++n) {
      MpReal v = abs_sin(n, bits);
      if (records.empty()) {
        records.push_back({n, std::move(v)});
        continue;
      }
      auto c = compare_certain(v, records.back().value);
      const bool smaller = c ? *c < 0 : abs_sin_less(n, records.back().n, bits * 2);
      if (smaller) records.push_back({n, std::move(v)});
    }
    return records;
  });

  std::vector<SpikeRecord> out;
  for (auto& chunk : local) {
    for (auto& rec : chunk) {
      if (!out.empty()) {
        auto c = compare_certain(rec.value, out.back().abs_sin);
        const bool smaller = c ? *c < 0 : abs_sin_less(rec.n, out.back().n, bits * 2);
        if (!smaller) continue;
      }
      std::optional<double> lambda;
      if (rec.n >= 2) lambda = local_exponent(rec.n, bits);
      out.push_back({rec.n, std::move(rec.value), lambda});
    }
  }
  return out;
}

}  // namespace flintlab
