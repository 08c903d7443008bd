#include "ffk/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ffk/expsum.hpp"
#include "params_util.hpp"

namespace ffk {
namespace {

using cd = std::complex<double>;

std::vector<cd> zeta_table(unsigned p) {
  std::vector<cd> z(p);
  for (unsigned j = 0; j < p; ++j) z[j] = std::polar(1.0, 2 * std::numbers::pi * j / p);
  return z;
}

cd from_bins(const std::vector<cd>& z, const std::vector<std::int64_t>& bins) {
  cd v = 0;
  for (std::size_t j = 0; j < bins.size(); ++j) v += static_cast<double>(bins[j]) * z[j];
  return v;
}

double qpow(unsigned q, double e) { return std::pow(static_cast<double>(q), e); }

constexpr double kZeroFloor = 1e-9;

bool close(cd x, cd y) { return std::abs(x - y) <= kRelTol * std::max({1.0, std::abs(x), std::abs(y)}); }

void require_gauss_hypotheses(const CharContext& ctx, const Poly& a) {
  if (!ctx.modulus().is_irreducible()) throw HypothesisViolation("F irreducible");
  if (ctx.p() == 2) throw HypothesisViolation("q odd");
  if (!ctx.is_unit(ctx.res(a))) throw HypothesisViolation("gcd(a, F) = 1");
}

void require_support_is(const CharContext& ctx, const WeightSeq& w, const Interval& I, const char* name) {
  const auto rs = interval_residues(ctx, I);
  bool ok = rs.size() == w.support.size();
  for (std::size_t i = 0; ok && i < rs.size(); ++i) ok = ctx.res(w.support[i]) == rs[i];
  if (!ok) throw InvalidSupport(std::string(name) + " must be supported on the interval, in enumeration order");
}

// Memoised complex Kloosterman and Gauss values keyed by residue pair.
class SumCache {
 public:
  explicit SumCache(const CharContext& ctx) : ctx_(ctx), z_(zeta_table(ctx.p())) {}

  cd kloosterman(Res s, Res t) {
    auto [it, fresh] = k_.try_emplace(key(s, t));
    if (fresh) it->second = from_bins(z_, kloosterman_bins(ctx_, s, t));
    return it->second;
  }

  cd gauss(Res s, Res t) {
    auto [it, fresh] = g_.try_emplace(key(s, t));
    if (fresh) {
      std::vector<std::int64_t> bins(ctx_.p());
      for (Res x = 0; x < ctx_.size(); ++x) {
        ++bins[(ctx_.psi(ctx_.mul(s, x)) + ctx_.psi(ctx_.mul(t, ctx_.sq(x)))) % ctx_.p()];
      }
      it->second = from_bins(z_, bins);
    }
    return it->second;
  }

  cd zeta(unsigned e) const { return z_[e % ctx_.p()]; }

 private:
  std::uint64_t key(Res s, Res t) const { return std::uint64_t{s} * ctx_.size() + t; }

  const CharContext& ctx_;
  std::vector<cd> z_;
  std::unordered_map<std::uint64_t, cd> k_, g_;
};

WeightSeq finish(const CharContext& ctx, std::vector<Poly> support, std::vector<cd> values) {
  std::unordered_set<Res> seen;
  for (const Poly& s : support) {
    if (s.degree() >= Degree(ctx.r())) throw InvalidSupport("support entry of degree >= r");
    if (!seen.insert(ctx.res(s)).second) throw InvalidSupport("support entries repeat modulo F");
  }
  if (values.size() != support.size()) throw InvalidSupport("weights and support differ in length");
  WeightSeq w;
  w.support = std::move(support);
  w.values = std::move(values);
  double sq = 0;
  for (const cd& v : w.values) {
    const double a = std::abs(v);
    w.norm1 += a;
    sq += a * a;
    w.norm_inf = std::max(w.norm_inf, a);
  }
  w.norm2 = std::sqrt(sq);
  return w;
}

}  // namespace

WeightKind parse_weight_kind(const std::string& name) {
  if (name == "ones") return WeightKind::ones;
  if (name == "random_unit" || name == "random-unit") return WeightKind::random_unit;
  if (name == "random_sign" || name == "random-sign") return WeightKind::random_sign;
  throw ParseError("unknown weight kind '" + name + "'");
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::ones: return "ones";
    case WeightKind::random_unit: return "random_unit";
    case WeightKind::random_sign: return "random_sign";
  }
  return "?";
}

WeightSeq make_weights(const CharContext& ctx, WeightKind kind, std::vector<Poly> support, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<cd> values(support.size(), cd(1, 0));
  for (cd& v : values) {
    if (kind == WeightKind::random_unit) v = std::polar(1.0, 2 * std::numbers::pi * uniform());
    if (kind == WeightKind::random_sign) v = uniform() < 0.5 ? 1.0 : -1.0;
  }
  return finish(ctx, std::move(support), std::move(values));
}

WeightSeq make_weights(const CharContext& ctx, std::vector<Poly> support, std::vector<cd> values) {
  return finish(ctx, std::move(support), std::move(values));
}

std::vector<Poly> interval_elements(const PolyRing& R, const Interval& I) {
  std::vector<Poly> out;
  for (const Poly& x : R.all_below(I.size_exp)) out.push_back(R.add(x, I.offset));
  return out;
}

BilinearValue bk_plain(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In,
                       const std::vector<cd>* gamma) {
  if (gamma && gamma->size() != ctx.size()) throw InvalidParameter("gamma must have one entry per residue");
  const unsigned p = ctx.p(), q = ctx.q();
  const int r = ctx.r();
  const Res ra = ctx.res(a);
  const auto S = interval_residues(ctx, Im);
  const auto T = interval_residues(ctx, In);
  const auto z = zeta_table(p);
  const auto& U = ctx.units();
  const auto& Ui = ctx.unit_inverses();

  BilinearValue out;
  if (!gamma) {
    std::vector<std::int64_t> total(p);
    for (Res s : S) {
      for (Res t : T) {
        const auto bins = kloosterman_bins(ctx, s, ctx.mul(ra, t));
        for (unsigned j = 0; j < p; ++j) total[j] += bins[j];
      }
    }
    out.value = from_bins(z, total);
    out.exact = cyc_from_bins(p, total);
  } else {
    for (Res s : S) {
      for (Res t : T) {
        const Res at = ctx.mul(ra, t);
        for (std::size_t i = 0; i < U.size(); ++i) {
          out.value += (*gamma)[U[i]] * z[(ctx.psi(ctx.mul(s, U[i])) + ctx.psi(ctx.mul(at, Ui[i]))) % p];
        }
      }
    }
  }

  // Single-sum form: the sums over s and t collapse to indicator functions.
  const Res s0 = ctx.res(Im.offset), at0 = ctx.mul(ra, ctx.res(In.offset));
  const Degree lim_x(r - static_cast<int>(Im.size_exp)), lim_y(r - static_cast<int>(In.size_exp));
  cd reduced = 0;
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (ctx.degree(U[i]) >= lim_x || ctx.degree(ctx.mul(ra, Ui[i])) >= lim_y) continue;
    const cd g = gamma ? (*gamma)[U[i]] : cd(1, 0);
    reduced += g * z[(ctx.psi(ctx.mul(s0, U[i])) + ctx.psi(ctx.mul(at0, Ui[i]))) % p];
  }
  reduced *= qpow(q, static_cast<double>(Im.size_exp + In.size_exp));
  if (!close(out.value, reduced)) throw Error("internal: bk_plain single-sum form disagrees with the triple sum");
  return out;
}

std::complex<double> bk_type1_set(const CharContext& ctx, const Poly& a, const WeightSeq& alpha, const Interval& In) {
  SumCache cache(ctx);
  const Res ra = ctx.res(a);
  const auto T = interval_residues(ctx, In);
  cd total = 0;
  for (std::size_t i = 0; i < alpha.support.size(); ++i) {
    const Res s = ctx.res(alpha.support[i]);
    cd inner = 0;
    for (Res t : T) inner += cache.kloosterman(s, ctx.mul(ra, t));
    total += alpha.values[i] * inner;
  }
  return total;
}

std::complex<double> bk_type1_interval(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                       const Interval& Im, const Interval& In) {
  require_support_is(ctx, alpha, Im, "alpha");
  return bk_type1_set(ctx, a, alpha, In);
}

std::complex<double> bg_type1(const CharContext& ctx, const Poly& a, const WeightSeq& alpha, const Interval& In) {
  require_gauss_hypotheses(ctx, a);
  SumCache cache(ctx);
  const Res ra = ctx.res(a);
  const auto T = interval_residues(ctx, In);
  cd total = 0;
  for (std::size_t i = 0; i < alpha.support.size(); ++i) {
    const Res s = ctx.res(alpha.support[i]);
    cd inner = 0;
    for (Res t : T) {
      if (t != 0) inner += cache.gauss(s, ctx.mul(ra, t));
    }
    total += alpha.values[i] * inner;
  }
  return total;
}

std::complex<double> bg_type2_set(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                  const WeightSeq& beta, const Interval& In) {
  require_gauss_hypotheses(ctx, a);
  require_support_is(ctx, beta, In, "beta");
  SumCache cache(ctx);
  const Res ra = ctx.res(a);
  const Res four = ctx.res(ctx.ring().constant(4));
  const double root = qpow(ctx.q(), ctx.r() / 2.0);
  cd direct = 0, completed = 0;
  for (std::size_t j = 0; j < beta.support.size(); ++j) {
    const Res t = ctx.res(beta.support[j]);
    if (t == 0) continue;
    const Res at = ctx.mul(ra, t);
    const Res inv4at = ctx.inv(ctx.mul(four, at));
    const cd theta = cache.gauss(0, at) / root;
    if (std::abs(std::abs(theta) - 1) > kRelTol) throw Error("internal: |theta_t| != 1");
    for (std::size_t i = 0; i < alpha.support.size(); ++i) {
      const Res s = ctx.res(alpha.support[i]);
      const cd w = alpha.values[i] * beta.values[j];
      direct += w * cache.gauss(s, at);
      completed += w * theta * cache.zeta(ctx.psi(ctx.neg(ctx.mul(ctx.sq(s), inv4at))));
    }
  }
  completed *= root;
  if (!close(direct, completed)) throw Error("internal: completed-square form disagrees with the direct sum");
  return direct;
}

std::complex<double> bg_type2_interval(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                       const Interval& Im, const WeightSeq& beta, const Interval& In) {
  require_support_is(ctx, alpha, Im, "alpha");
  return bg_type2_set(ctx, a, alpha, beta, In);
}

Theorem parse_theorem(const std::string& name) {
  if (name == "thm1") return Theorem::thm1;
  if (name == "thm2") return Theorem::thm2;
  if (name == "thm2-remark") return Theorem::thm2_remark;
  if (name == "thm3") return Theorem::thm3;
  if (name == "thm4") return Theorem::thm4;
  if (name == "thm5") return Theorem::thm5;
  if (name == "thm6") return Theorem::thm6;
  throw ParseError("unknown theorem '" + name + "'");
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::thm1: return "thm1";
    case Theorem::thm2: return "thm2";
    case Theorem::thm2_remark: return "thm2-remark";
    case Theorem::thm3: return "thm3";
    case Theorem::thm4: return "thm4";
    case Theorem::thm5: return "thm5";
    case Theorem::thm6: return "thm6";
  }
  return "?";
}

BoundReport theorem_check(const CharContext& ctx, Theorem which, const TheoremParams& tp) {
  const PolyRing& R = ctx.ring();
  const unsigned q = ctx.q();
  const int r = ctx.r();
  const unsigned m = tp.Im.size_exp, n = tp.In.size_exp;
  const double rd = r, md = m, nd = n;
  if (m < 1 || n < 1 || static_cast<int>(m) > r || static_cast<int>(n) > r) {
    throw HypothesisViolation("1 <= m, n <= r");
  }
  for (const Interval* I : {&tp.Im, &tp.In}) {
    if (I->offset.degree() >= Degree(r)) throw HypothesisViolation("interval offsets of degree < r");
  }
  const bool gauss_family = which == Theorem::thm4 || which == Theorem::thm5 || which == Theorem::thm6;
  if (which == Theorem::thm2_remark || gauss_family) {
    if (!ctx.modulus().is_irreducible()) throw HypothesisViolation("F irreducible");
    if (!ctx.is_unit(ctx.res(tp.a))) throw HypothesisViolation("gcd(a, F) = 1");
  }
  if (gauss_family && ctx.p() == 2) throw HypothesisViolation("q odd");

  Params params = detail::base_params(ctx);
  detail::add_poly(params, ctx, "a", tp.a);
  detail::add_interval(params, ctx, "m", tp.Im);
  detail::add_interval(params, ctx, "n", tp.In);
  params.emplace_back("weights", to_string(tp.weights));
  params.emplace_back("seed", std::to_string(tp.seed));

  const WeightSeq alpha = make_weights(ctx, tp.weights, interval_elements(R, tp.Im), tp.seed);
  const double a1 = alpha.norm1, a2 = alpha.norm2;
  cd S;
  double lhs = 0, exact = 0, main = 0;

  switch (which) {
    case Theorem::thm1: {
      std::vector<cd> gamma;
      if (tp.weights != WeightKind::ones) {
        std::vector<Poly> all;
        for (Res x = 0; x < ctx.size(); ++x) all.push_back(ctx.poly(x));
        gamma = make_weights(ctx, tp.weights, std::move(all), tp.seed).values;
      }
      S = bk_plain(ctx, tp.a, tp.Im, tp.In, gamma.empty() ? nullptr : &gamma).value;
      lhs = std::abs(S);
      const auto H = hyperbola_count(ctx, tp.a, Interval::initial(r - m), Interval::initial(r - n));
      exact = qpow(q, md + nd) * static_cast<double>(H);
      main = qpow(q, md + nd) * (qpow(q, rd - md - nd) + 1);
      break;
    }
    case Theorem::thm2: {
      S = bk_type1_set(ctx, tp.a, alpha, tp.In);
      lhs = std::norm(S);
      const auto H = hyperbola_count(ctx, tp.a, Interval::initial(r), Interval::initial(r - n));
      exact = qpow(q, 2 * nd + rd) * a2 * a2 * static_cast<double>(H);
      main = std::pow(a2 * qpow(q, nd + rd / 2) * qpow(q, rd / 2 - nd / 2), 2);
      break;
    }
    case Theorem::thm2_remark: {
      S = bk_type1_set(ctx, tp.a, alpha, tp.In);
      lhs = std::pow(std::abs(S), 4);
      const auto E = energy_inv(ctx, Interval::initial(r - n));
      exact = qpow(q, 4 * nd + rd) * a1 * a1 * a2 * a2 * static_cast<double>(E);
      double B = qpow(q, 0.75 * rd - 0.875 * nd) + qpow(q, rd / 2 - nd / 2);
      if (q % 2 == 1) B = std::min(B, qpow(q, 0.75 * rd - nd) + qpow(q, 0.625 * rd - nd / 2));
      main = std::pow(std::sqrt(a1 * a2) * qpow(q, nd + rd / 4) * B, 4);
      break;
    }
    case Theorem::thm3: {
      const Poly a0r = R.canonical_rep(tp.a, ctx.modulus());
      if (a0r.is_zero()) throw HypothesisViolation("a not divisible by F");
      const Poly D = R.gcd_monic(a0r, ctx.modulus().poly());
      const int d = D.degree().value();
      const Poly F0 = R.exact_div(ctx.modulus().poly(), D);
      const Poly a0 = R.exact_div(a0r, D);
      const Poly a0bar = R.inv_mod(a0, F0);
      const CharContext ctx0(R, F0);
      const unsigned size0 = static_cast<unsigned>(std::max(0, r - d - static_cast<int>(n)));
      const auto A = inverse_avg_count(ctx0, a0bar, Interval::initial(size0), static_cast<unsigned>(r - m));
      params.emplace_back("d", std::to_string(d));
      S = bk_type1_interval(ctx, tp.a, alpha, tp.Im, tp.In);
      lhs = std::norm(S);
      const double dd = d;
      exact = qpow(q, 2 * nd + md + dd) * a2 * a2 * static_cast<double>(A);
      const double head = qpow(q, rd / 2 - dd / 2 - nd / 2);
      double B = head + qpow(q, rd / 2 - md / 2) + qpow(q, rd - dd / 2 - md / 2 - 0.75 * nd);
      B = std::min(B, head + qpow(q, rd - dd / 2 - md / 2 - nd) + qpow(q, rd - 0.75 * dd - md / 4 - nd));
      if (q % 2 == 1) {
        B = std::min(B, head + qpow(q, rd - dd / 2 - md / 2 - nd) + qpow(q, 0.75 * rd - dd / 4 - md / 2));
      }
      main = std::pow(a2 * qpow(q, nd + md / 2 + dd / 2) * B, 2);
      break;
    }
    case Theorem::thm4: {
      S = bg_type1(ctx, tp.a, alpha, tp.In);
      lhs = std::pow(std::abs(S), 4);
      const auto E = energy_sqrt(ctx, r - n);
      exact = qpow(q, 4 * nd + rd) * a1 * a1 * a2 * a2 * static_cast<double>(E);
      const double B = qpow(q, 0.75 * rd - 0.875 * nd) + qpow(q, rd / 2 - nd / 2);
      main = std::pow(std::sqrt(a1 * a2) * qpow(q, nd + rd / 4) * B, 4);
      break;
    }
    case Theorem::thm5: {
      const WeightSeq beta = make_weights(ctx, tp.weights, interval_elements(R, tp.In), tp.seed + 1);
      S = bg_type2_set(ctx, tp.a, alpha, beta, tp.In);
      lhs = std::pow(std::abs(S), 4);
      const auto E = energy_inv(ctx, tp.In);
      const double b4 = std::pow(beta.norm_inf, 4);
      exact = kC5 * qpow(q, 3 * rd) * a1 * a1 * a2 * a2 * b4 * static_cast<double>(E);
      const double B = std::min(qpow(q, nd - rd / 4) + qpow(q, nd / 2 + rd / 8),
                                qpow(q, 0.875 * nd - rd / 8) + qpow(q, nd / 2));
      main = std::pow(std::sqrt(a1 * a2) * beta.norm_inf * qpow(q, 0.75 * rd) * B, 4);
      break;
    }
    case Theorem::thm6: {
      const WeightSeq beta = make_weights(ctx, tp.weights, interval_elements(R, tp.In), tp.seed + 1);
      S = bg_type2_interval(ctx, tp.a, alpha, tp.Im, beta, tp.In);
      lhs = std::pow(std::abs(S), 8);
      const auto Ei = energy_inv(ctx, tp.In);
      const auto Es = energy_sq(ctx, tp.Im);
      exact = qpow(q, 5 * rd + 4 * nd) * std::pow(a2 * beta.norm_inf, 8) * static_cast<double>(Ei) *
              static_cast<double>(Es);
      const double B = (qpow(q, 7 * nd / 16 - rd / 16) + qpow(q, nd / 4)) * (qpow(q, md / 2 - rd / 8) + qpow(q, md / 4));
      main = std::pow(a2 * beta.norm_inf * qpow(q, 5 * rd / 8 + nd / 2) * B, 8);
      break;
    }
  }
  // Floating cancellation leaves residue around 1e-12 where the sum is exactly
  // 0; such values must not fail against an exact bound of 0.
  if (std::abs(S) < kZeroFloor) lhs = 0;
  BoundReport rep = make_report(to_string(which), std::move(params), lhs, exact, main, q);
  rep.value = S;
  return rep;
}

BoundReport trivial_envelope(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In) {
  SumCache cache(ctx);
  const Res ra = ctx.res(a);
  double mx = 0;
  for (Res s : interval_residues(ctx, Im)) {
    for (Res t : interval_residues(ctx, In)) mx = std::max(mx, std::abs(cache.kloosterman(s, ctx.mul(ra, t))));
  }
  const cd S = bk_plain(ctx, a, Im, In).value;
  Params params = detail::base_params(ctx);
  detail::add_poly(params, ctx, "a", a);
  detail::add_interval(params, ctx, "m", Im);
  detail::add_interval(params, ctx, "n", In);
  const double scale = qpow(ctx.q(), static_cast<double>(Im.size_exp + In.size_exp));
  BoundReport rep = make_report("trivial-envelope", std::move(params), std::abs(S) < kZeroFloor ? 0 : std::abs(S), scale * mx,
                                scale * qpow(ctx.q(), ctx.r() / 2.0), ctx.q());
  rep.value = S;
  return rep;
}

}  // namespace ffk
