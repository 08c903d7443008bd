#include "ffk/expsum.hpp"

#include <cmath>
#include <numbers>

namespace ffk {
namespace {

BigInt big_pow(unsigned base, unsigned e) {
  BigInt v = 1;
  for (unsigned i = 0; i < e; ++i) v *= base;
  return v;
}

MixedValue exact_value(CycValue z) {
  MixedValue m;
  m.approx = z.to_complex();
  m.exact = std::move(z);
  return m;
}

MixedValue times(const MixedValue& a, const MixedValue& b) {
  MixedValue out;
  if (a.exact && b.exact) {
    out = exact_value(*a.exact * *b.exact);
  } else {
    out.approx = a.to_complex() * b.to_complex();
  }
  out.branches = a.branches;
  out.branches.insert(out.branches.end(), b.branches.begin(), b.branches.end());
  return out;
}

unsigned valuation(const PolyRing& R, Poly x, const Poly& P, unsigned cap) {
  if (x.is_zero()) return cap;
  unsigned v = 0;
  while (v < cap) {
    auto [quo, rem] = R.divmod(x, P);
    if (!rem.is_zero()) break;
    x = std::move(quo);
    ++v;
  }
  return v;
}

}  // namespace

KloostermanEvaluator::KloostermanEvaluator(CharContext ctx) : ctx_(std::move(ctx)) {}

const CharContext& KloostermanEvaluator::sub_context(const Poly& M) {
  if (M == ctx_.modulus().poly()) return ctx_;
  auto it = cache_.find(M);
  if (it == cache_.end()) it = cache_.emplace(M, CharContext(ctx_.ring(), M)).first;
  return it->second;
}

// K_M(s, t) for M = c P^j; s and t already reduced mod M.
MixedValue KloostermanEvaluator::prime_power(const Poly& M, const Poly& P, unsigned j, const Poly& s,
                                             const Poly& t) {
  const PolyRing& R = ctx_.ring();
  const CharContext& ctx = sub_context(M);
  const unsigned p = ctx.p();
  const unsigned q = ctx.q();
  const unsigned dP = static_cast<unsigned>(P.degree().value());
  MixedValue out;
  if (j == 1) {
    out = exact_value(kloosterman(ctx, s, t));
    out.branches.push_back("prime:brute");
    return out;
  }
  const unsigned vs = valuation(R, s, P, j);
  const unsigned vt = valuation(R, t, P, j);
  const unsigned k = std::min(vs, vt);
  if (k >= j) {
    const BigInt phi = big_pow(q, j * dP) - big_pow(q, (j - 1) * dP);
    out = exact_value(CycValue::from_int(p, phi));
    out.branches.push_back("prime-power:both-divisible");
    return out;
  }
  if (k >= 1) {
    const Poly Pk = R.pow(P, k);
    MixedValue inner = prime_power(R.exact_div(M, Pk), P, j - k, R.exact_div(s, Pk), R.exact_div(t, Pk));
    const BigInt factor = big_pow(q, k * dP);
    if (inner.exact) {
      out = exact_value(*inner.exact * factor);
    } else {
      out.approx = inner.approx * factor.convert_to<long double>();
    }
    out.branches.push_back("prime-power:gcd-reduction");
    out.branches.insert(out.branches.end(), inner.branches.begin(), inner.branches.end());
    return out;
  }
  if (vs != vt) {
    out = exact_value(CycValue::from_int(p, 0));
    out.branches.push_back("prime-power:unequal-valuation");
    return out;
  }
  // Both units: nonzero only when s = c^2 t for some unit c.
  const Res rs = ctx.res(s);
  const Res rt = ctx.res(t);
  const Res c = ctx.sqrt_unit(ctx.mul(rs, ctx.inv(rt)));
  if (c == kNoRes) {
    out = exact_value(CycValue::from_int(p, 0));
    out.branches.push_back("prime-power:no-square-class");
    return out;
  }
  const Res ell = ctx.mul(c, rt);
  const int J = R.jacobi(ctx.poly(ell), ctx.modulus());
  const unsigned a = ctx.psi(ctx.add(ell, ell));
  const int r = ctx.r();
  if (r % 2 == 0) {
    const CycValue re2 = ctx.zeta(a) + ctx.zeta(-static_cast<long long>(a));
    out = exact_value(re2 * (big_pow(q, r / 2) * J));
    out.branches.push_back("prime-power:square-class-even");
    return out;
  }
  const long double ang = 2 * std::numbers::pi_v<long double> * a / p;
  const std::complex<long double> z(std::cos(ang), std::sin(ang));
  const long double mag = std::pow(static_cast<long double>(q), r / 2.0L);
  out.approx = 2.0L * J * mag * (z * epsilon_F(ctx)).real();
  out.branches.push_back("prime-power:square-class-odd");
  return out;
}

std::vector<std::int64_t> kloosterman_bins(const CharContext& ctx, Res s, Res t) {
  const unsigned p = ctx.p();
  std::vector<std::int64_t> bins(p);
  const auto& U = ctx.units();
  const auto& Ui = ctx.unit_inverses();
  const std::uint16_t* rs = ctx.mul_row(s);
  const std::uint16_t* rt = ctx.mul_row(t);
  if (rs && rt) {
    for (std::size_t i = 0; i < U.size(); ++i) ++bins[(ctx.psi(rs[U[i]]) + ctx.psi(rt[Ui[i]])) % p];
  } else {
    for (std::size_t i = 0; i < U.size(); ++i) {
      ++bins[(ctx.psi(ctx.mul(s, U[i])) + ctx.psi(ctx.mul(t, Ui[i]))) % p];
    }
  }
  return bins;
}

CycValue kloosterman(const CharContext& ctx, Res s, Res t) {
  return cyc_from_bins(ctx.p(), kloosterman_bins(ctx, s, t));
}

CycValue kloosterman(const CharContext& ctx, const Poly& s, const Poly& t) {
  return kloosterman(ctx, ctx.res(s), ctx.res(t));
}

MixedValue kloosterman_explicit(const CharContext& ctx, const Poly& s, const Poly& t) {
  return KloostermanEvaluator(ctx)(s, t);
}

MixedValue KloostermanEvaluator::operator()(const Poly& s, const Poly& t) {
  const CharContext& ctx = ctx_;
  const PolyRing& R = ctx.ring();
  const Modulus& F = ctx.modulus();
  const auto& fac = F.factorization().factors;
  for (const auto& pe : fac) {
    if (pe.second >= 2 && ctx.p() == 2) {
      throw UnsupportedCharacteristic("prime-power Kloosterman formulas need odd q");
    }
  }
  if (fac.size() == 1) {
    return prime_power(F.poly(), fac[0].first, fac[0].second, R.rem(s, F.poly()), R.rem(t, F.poly()));
  }
  MixedValue acc = exact_value(CycValue::from_int(ctx.p(), 1));
  acc.branches.push_back("twisted-multiplicativity");
  for (std::size_t i = 0; i < fac.size(); ++i) {
    Poly M = R.pow(fac[i].first, fac[i].second);
    if (i == 0) M = R.scale(F.lead(), M);
    const Poly N = R.exact_div(F.poly(), M);
    const Poly Nbar = R.inv_mod(N, M);
    const Poly si = R.rem(R.mul(s, Nbar), M);
    const Poly ti = R.rem(R.mul(t, Nbar), M);
    acc = times(acc, prime_power(M, fac[i].first, fac[i].second, si, ti));
  }
  return acc;
}

std::complex<long double> epsilon_F(const CharContext& ctx) {
  const FieldSpec& K = ctx.field();
  if (K.p() == 2) throw UnsupportedCharacteristic("epsilon_F needs odd q");
  if (ctx.r() % 2 == 0) return {1, 0};
  const int chi = K.quad_char(ctx.modulus().lead());
  const std::complex<long double> base = K.p() % 4 == 1 ? std::complex<long double>(-1, 0)
                                                         : std::complex<long double>(0, -1);
  std::complex<long double> pw(1, 0);
  for (unsigned i = 0; i < K.ell(); ++i) pw *= base;
  return -static_cast<long double>(chi) * pw;
}

CycValue gauss(const CharContext& ctx, Res s, Res t) {
  const unsigned p = ctx.p();
  std::vector<std::int64_t> bins(p);
  // Skipping the products for s = 0 and t = 1 keeps G_F(0, 1) off the product table.
  for (Res x = 0; x < ctx.size(); ++x) {
    const unsigned lin = s == 0 ? 0 : ctx.psi(ctx.mul(s, x));
    const Res x2 = ctx.sq(x);
    ++bins[(lin + ctx.psi(t == 1 ? x2 : ctx.mul(t, x2))) % p];
  }
  return cyc_from_bins(p, bins);
}

CycValue gauss(const CharContext& ctx, const Poly& s, const Poly& t) { return gauss(ctx, ctx.res(s), ctx.res(t)); }

CycValue gauss_reduced(const CharContext& ctx, const Poly& s, const Poly& t) {
  const unsigned p = ctx.p();
  const Res rs = ctx.res(s), rt = ctx.res(t);
  std::vector<std::int64_t> bins(p);
  for (Res x : ctx.units()) ++bins[(ctx.psi(ctx.mul(rs, x)) + ctx.psi(ctx.mul(rt, ctx.sq(x)))) % p];
  return cyc_from_bins(p, bins);
}

CycValue ramanujan(const CharContext& ctx, const Poly& s) {
  const unsigned p = ctx.p();
  const Res rs = ctx.res(s);
  std::vector<std::int64_t> bins(p);
  for (Res x : ctx.units()) ++bins[ctx.psi(ctx.mul(rs, x))];
  return cyc_from_bins(p, bins);
}

CycValue t_sum(const CharContext& ctx, const Poly& u, const Poly& v, const Poly& a) {
  const double bits = ctx.r() * std::log2(static_cast<double>(ctx.q()));
  if (bits > 16 + 1e-9) {
    throw CostLimitExceeded("t_sum table would exceed 2^16 entries (r log2 q > 16)",
                            std::pow(static_cast<double>(ctx.q()), 2.0 * ctx.r()));
  }
  const unsigned p = ctx.p();
  const Res n = ctx.size();
  const Res ru = ctx.res(u), rv = ctx.res(v), ra = ctx.res(a);
  const auto& U = ctx.units();
  const auto& Ui = ctx.unit_inverses();
  // ku[t*p + j] = number of units x with psi(u x + t/x) = j.
  std::vector<std::int64_t> ku(std::size_t{n} * p), kv(std::size_t{n} * p);
  for (std::size_t i = 0; i < U.size(); ++i) {
    const unsigned eu = ctx.psi(ctx.mul(ru, U[i]));
    const unsigned ev = ctx.psi(ctx.mul(rv, U[i]));
    for (Res t = 0; t < n; ++t) {
      const unsigned et = ctx.psi(ctx.mul(t, Ui[i]));
      ++ku[std::size_t{t} * p + (eu + et) % p];
      ++kv[std::size_t{t} * p + (ev + et) % p];
    }
  }
  std::vector<std::int64_t> bins(p);
  for (Res t = 0; t < n; ++t) {
    const unsigned shift = (p - ctx.psi(ctx.mul(ra, t))) % p;
    const std::int64_t* bu = &ku[std::size_t{t} * p];
    const std::int64_t* bv = &kv[std::size_t{t} * p];
    for (unsigned i = 0; i < p; ++i) {
      if (!bu[i]) continue;
      for (unsigned j = 0; j < p; ++j) bins[(i + j + shift) % p] += bu[i] * bv[j];
    }
  }
  return cyc_from_bins(p, bins);
}

}  // namespace ffk
