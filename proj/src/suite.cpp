#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "ffk/approx.hpp"
#include "ffk/expsum.hpp"
#include "ffk/harness.hpp"
#include "params_util.hpp"
#include "text_util.hpp"

namespace ffk {
namespace {

using cd = std::complex<double>;
using Builder = std::function<std::vector<Task>(const CheckConfig&)>;

double qpow(unsigned q, double e) { return std::pow(static_cast<double>(q), e); }

BigInt ipow(unsigned q, unsigned e) { return boost::multiprecision::pow(BigInt(q), e); }

Params fparams(const PolyRing& R, const Poly& F) {
  return {{"field", R.field().to_string()}, {"F", R.format(F)}};
}

unsigned deg_or(const CheckConfig& c, unsigned fallback) { return c.max_deg ? c.max_deg : fallback; }

std::vector<Poly> of_degree(const PolyRing& R, unsigned d, bool monic_only) {
  if (monic_only) return R.monic_of_degree(d);
  std::vector<Poly> out;
  for (const Poly& f : R.all_below(d + 1)) {
    if (f.degree() == Degree(static_cast<int>(d))) out.push_back(f);
  }
  return out;
}

std::vector<Poly> irreducibles(const PolyRing& R, unsigned d) {
  std::vector<Poly> out;
  for (const Poly& f : R.monic_of_degree(d)) {
    if (R.is_irreducible(f)) out.push_back(f);
  }
  return out;
}

// A non-monic multiple of f: the field element of index 2 (or 1 in F_2).
Poly non_monic(const PolyRing& R, const Poly& f) {
  return R.scale(R.field().from_index(R.q() > 2 ? 2 : 1), f);
}

// The configured modulus, or the family produced by fallback.
std::vector<Poly> moduli(const PolyRing& R, const CheckConfig& c, const std::function<std::vector<Poly>()>& fallback) {
  if (!c.modulus.empty()) return {R.parse(c.modulus)};
  return fallback();
}

std::vector<Poly> a_values(const PolyRing& R, const CheckConfig& c, std::vector<std::string> fallback) {
  std::vector<Poly> out;
  for (const auto& s : c.a.empty() ? fallback : c.a) out.push_back(R.parse(s));
  return out;
}

Poly gcd3(const PolyRing& R, const Poly& x, const Poly& y, const Poly& nonzero) {
  return R.gcd_monic(x, R.gcd_monic(y, nonzero));
}

BoundReport ok_record(std::string check, Params p, bool ok, double count, std::string note = {}) {
  BoundReport r = identity_report(std::move(check), std::move(p), ok, count);
  r.note = std::move(note);
  return r;
}

// ---------------------------------------------------------------- checks

std::vector<Task> build_charsum(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] {
    std::vector<Poly> v;
    for (unsigned d = 1; d <= deg_or(c, 3); ++d) {
      for (const Poly& f : R.monic_of_degree(d)) v.push_back(f);
      v.push_back(non_monic(R, R.add(R.t_pow(d), R.one())));
    }
    return v;
  });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({r * qpow(R.q(), 2.0 * r), [R, F, r] {
                       const CharContext ctx(R, F);
                       bool ok = true;
                       double n = 0;
                       for (const Poly& u : R.all_below(r)) {
                         for (int m = 1; m <= r; ++m) {
                           CycValue lit = CycValue::from_int(ctx.p(), 0);
                           for (const Poly& x : R.all_below(m)) lit += ctx.e_F(R.mul(x, u));
                           ok = ok && lit == ctx.interval_char_sum(u, m);
                           ++n;
                         }
                       }
                       return std::vector{ok_record("charsum", fparams(R, F), ok, n)};
                     }});
  }
  return tasks;
}

std::vector<Task> build_residue(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const std::uint64_t seed = c.seed;
  return {{500.0 * 64, [R, seed] {
             std::mt19937_64 gen(seed);
             auto rand_poly = [&](unsigned maxdeg) {
               std::vector<FieldElem> v(maxdeg + 1);
               for (auto& x : v) x = R.field().from_index(static_cast<unsigned>(gen() % R.q()));
               return Poly(std::move(v));
             };
             bool ok = true;
             for (int i = 0; i < 500; ++i) {
               const Poly g = rand_poly(static_cast<unsigned>(gen() % 7));
               Poly h;
               while (h.is_zero()) h = rand_poly(static_cast<unsigned>(gen() % 5));
               // T^{-1} coefficient of g/h is the constant term of floor(gT / h).
               const FieldElem oracle = R.divmod(R.mul(g, R.t_pow(1)), h).first.coeff(0);
               ok = ok && residue_coeff(R, g, h) == oracle;
             }
             return std::vector{ok_record("residue", {{"field", R.field().to_string()}}, ok, 500)};
           }}};
}

std::vector<Task> build_gauss_mag(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] {
    std::vector<Poly> v;
    for (unsigned d = 1; d <= deg_or(c, 3); ++d) {
      const auto irr = irreducibles(R, d);
      v.insert(v.end(), irr.begin(), irr.end());
      v.push_back(non_monic(R, irr.front()));
    }
    return v;
  });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({qpow(R.q(), 3.0 * r), [R, F, r] {
                       const CharContext ctx(R, F);
                       const CycValue target = CycValue::from_int(ctx.p(), ipow(ctx.q(), r));
                       bool ok = true;
                       double n = 0;
                       for (Res s = 0; s < ctx.size(); ++s) {
                         for (Res t : ctx.units()) {
                           ok = ok && gauss(ctx, s, t).abs_sq() == target;
                           ++n;
                         }
                       }
                       return std::vector{ok_record("gauss-mag", fparams(R, F), ok, n)};
                     }});
  }
  return tasks;
}

std::vector<Task> build_gauss_sign(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  if (R.field().p() == 2) throw HypothesisViolation("q odd");
  std::vector<Task> tasks;
  const unsigned D = deg_or(c, 3);
  for (unsigned d = 1; d <= D; ++d) {
    const auto Fs = c.modulus.empty() ? of_degree(R, d, false) : std::vector<Poly>{R.parse(c.modulus)};
    if (!c.modulus.empty() && Fs.front().degree() != Degree(static_cast<int>(d))) continue;
    tasks.push_back({static_cast<double>(Fs.size()) * qpow(R.q(), d), [R, Fs, d] {
                       double worst = 0;
                       for (const Poly& F : Fs) {
                         const CharContext ctx(R, F);
                         const auto G = gauss(ctx, R.constant(0), R.one()).to_complex();
                         const auto want = epsilon_F(ctx) * std::pow(static_cast<long double>(ctx.q()), d / 2.0L);
                         worst = std::max(worst, static_cast<double>(std::abs(G - want) / std::abs(want)));
                       }
                       Params p{{"field", R.field().to_string()}, {"deg", std::to_string(d)},
                                {"count", std::to_string(Fs.size())}};
                       BoundReport rep = make_report("gauss-sign", std::move(p), worst, kRelTol, std::nullopt, R.q());
                       rep.passed = worst <= kRelTol;
                       return std::vector{rep};
                     }});
  }
  return tasks;
}

std::vector<Task> build_twisted(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] { return std::vector<Poly>{R.parse("0,1,1"), R.parse("0,1,0,1")}; });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({qpow(R.q(), 3.0 * r), [R, F] {
                       const Modulus mod(R, F);
                       const auto& fac = mod.factorization().factors;
                       if (fac.size() < 2) throw HypothesisViolation("F has two coprime factors");
                       const Poly M1 = R.scale(mod.lead(), R.pow(fac[0].first, fac[0].second));
                       const Poly M2 = R.exact_div(F, M1);
                       const CharContext ctx(R, F), c1(R, M1), c2(R, M2);
                       const Poly n1 = R.inv_mod(M2, M1), n2 = R.inv_mod(M1, M2);
                       bool ok = true;
                       double n = 0;
                       for (Res s = 0; s < ctx.size(); ++s) {
                         const Poly sp = ctx.poly(s);
                         const Res s1 = c1.res(R.mul(sp, n1)), s2 = c2.res(R.mul(sp, n2));
                         for (Res t = 0; t < ctx.size(); ++t) {
                           const Poly tp = ctx.poly(t);
                           const CycValue prod = kloosterman(c1, s1, c1.res(R.mul(tp, n1))) *
                                                 kloosterman(c2, s2, c2.res(R.mul(tp, n2)));
                           ok = ok && kloosterman(ctx, s, t) == prod;
                           ++n;
                         }
                       }
                       Params p = fparams(R, F);
                       p.emplace_back("M1", R.format(M1));
                       return std::vector{ok_record("twisted", std::move(p), ok, n)};
                     }});
  }
  return tasks;
}

}  // namespace

/// Prime powers P^j (deg P in {1, 2}, j deg P <= D) and three squarefree
/// composites, as used by the prime-power check.
std::vector<Poly> prime_power_family(const PolyRing& R, unsigned D) {
  std::vector<Poly> v;
  for (unsigned dp = 1; dp <= 2 && dp <= D; ++dp) {
    for (const Poly& P : irreducibles(R, dp)) {
      for (unsigned j = 1; j * dp <= D; ++j) v.push_back(R.pow(P, j));
    }
  }
  const auto lin = irreducibles(R, 1);
  const auto quad = irreducibles(R, 2);
  v.push_back(R.mul(lin[0], lin[1]));
  v.push_back(R.mul(lin[0], quad[0]));
  if (lin.size() >= 3) {
    v.push_back(R.mul(R.mul(lin[0], lin[1]), lin[2]));
  } else {
    v.push_back(R.mul(lin[1], quad[0]));
  }
  return v;
}

namespace {

std::vector<Task> build_prime_power(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  if (R.field().p() == 2) throw HypothesisViolation("q odd");
  const auto Fs = moduli(R, c, [&] { return prime_power_family(R, deg_or(c, 3)); });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({qpow(R.q(), 3.0 * r), [R, F] {
                       const CharContext ctx(R, F);
                       KloostermanEvaluator eval(ctx);
                       bool ok = true;
                       double n = 0, n_exact = 0;
                       for (Res s = 0; s < ctx.size(); ++s) {
                         const Poly sp = ctx.poly(s);
                         for (Res t = 0; t < ctx.size(); ++t) {
                           const CycValue brute = kloosterman(ctx, s, t);
                           const MixedValue ex = eval(sp, ctx.poly(t));
                           if (ex.exact) {
                             ok = ok && *ex.exact == brute;
                             ++n_exact;
                           } else {
                             const auto b = brute.to_complex();
                             ok = ok && std::abs(ex.approx - b) <= kRelTol * std::max<long double>(1, std::abs(b));
                           }
                           ++n;
                         }
                       }
                       return std::vector{ok_record("prime-power", fparams(R, F), ok, n,
                                                    std::to_string(static_cast<long long>(n_exact)) + " exact")};
                     }});
  }
  return tasks;
}

std::vector<Task> build_weil(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] {
    std::vector<Poly> v;
    for (unsigned d = 1; d <= deg_or(c, 3); ++d) {
      for (const Poly& f : of_degree(R, d, false)) v.push_back(f);
    }
    return v;
  });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({qpow(R.q(), 3.0 * r), [R, F, r] {
                       const CharContext ctx(R, F);
                       const double w = std::pow(4.0, ctx.modulus().omega());
                       double worst = 0;
                       for (Res s = 0; s < ctx.size(); ++s) {
                         for (Res t = 0; t < ctx.size(); ++t) {
                           const double k2 = std::norm(kloosterman(ctx, s, t).to_complex_d());
                           const int g = gcd3(R, ctx.poly(s), ctx.poly(t), F).degree().value();
                           worst = std::max(worst, k2 / (w * qpow(ctx.q(), r + g)));
                         }
                       }
                       return std::vector{make_report("weil", fparams(R, F), worst, 1.0, 1.0, R.q())};
                     }});
  }
  return tasks;
}

std::vector<Task> build_mobius(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] {
    std::vector<Poly> v;
    for (unsigned d = 1; d <= deg_or(c, 3); ++d) {
      for (const Poly& f : of_degree(R, d, false)) v.push_back(f);
    }
    return v;
  });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({qpow(R.q(), 2.0 * r), [R, F] {
                       const CharContext ctx(R, F);
                       const bool irreducible = ctx.modulus().is_irreducible();
                       bool ok = true;
                       for (Res s = 0; s < ctx.size(); ++s) {
                         const auto C = ramanujan(ctx, ctx.poly(s)).as_integer();
                         if (!C) {
                           ok = false;
                           continue;
                         }
                         const int g = R.gcd_monic(ctx.poly(s), F).degree().value();
                         ok = ok && abs(*C) <= 2 * ipow(ctx.q(), g);
                         if (irreducible && g == 0) ok = ok && *C == -1;
                       }
                       int mu_sum = 0;
                       for (const Poly& D : R.monic_divisors(F)) mu_sum += R.mobius(D);
                       ok = ok && mu_sum == 0;
                       return std::vector{ok_record("mobius", fparams(R, F), ok, ctx.size())};
                     }});
  }
  return tasks;
}

std::vector<Task> build_tsum(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  if (R.field().p() == 2) throw HypothesisViolation("q odd");
  const auto Fs = moduli(R, c, [&] { return irreducibles(R, deg_or(c, 2)); });
  const auto as = a_values(R, c, {"0", "1", "0,1"});
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    if (!R.is_irreducible(F)) throw HypothesisViolation("F irreducible");
    const int r = F.degree().value();
    for (const Poly& a : as) {
      tasks.push_back({qpow(R.q(), 4.0 * r), [R, F, a, r] {
                         const CharContext ctx(R, F);
                         const Res ra = ctx.res(a);
                         const bool case1 = ra == 0;
                         const Res abar = case1 ? kNoRes : ctx.inv(ra);
                         const BigInt q2r = ipow(ctx.q(), 2 * r);
                         bool ok = true;
                         double worst = -std::numeric_limits<double>::infinity(), at_lhs = 0, at_rhs = 1;
                         for (Res u = 0; u < ctx.size(); ++u) {
                           for (Res v = 0; v < ctx.size(); ++v) {
                             const Poly up = ctx.poly(u), vp = ctx.poly(v);
                             const CycValue T = t_sum(ctx, up, vp, a);
                             CycValue inner;
                             if (case1) {
                               inner = ramanujan(ctx, R.sub(up, vp));
                             } else {
                               const Res ua = ctx.mul(u, abar), va = ctx.mul(v, abar);
                               inner = ctx.zeta(ctx.psi(ctx.add(ua, va))) * kloosterman(ctx, ua, va) -
                                       CycValue::from_int(ctx.p(), 1);
                             }
                             ok = ok && T.abs_sq() == inner.abs_sq() * q2r;
                             const Poly g = gcd3(R, up, vp, F);
                             const Poly G = R.exact_div(F, g);
                             const int e1 = gcd3(R, R.sub(up, vp), a, G).degree().value();
                             const double bound = qpow(ctx.q(), 1.5 * r + e1 / 2.0 + g.degree().value() / 2.0);
                             const double mag = std::abs(T.to_complex_d());
                             if (mag > 1e-9 && std::log(mag / bound) > worst) {
                               worst = std::log(mag / bound);
                               at_lhs = mag;
                               at_rhs = bound;
                             }
                           }
                         }
                         Params p = fparams(R, F);
                         p.emplace_back("a", R.format(a));
                         std::vector<BoundReport> out;
                         out.push_back(ok_record(case1 ? "tsum-case-I" : "tsum-case-II", p, ok, ctx.size() * ctx.size()));
                         out.push_back(make_report("tsum-bound", p, at_lhs, std::nullopt, at_rhs, ctx.q()));
                         return out;
                       }});
    }
  }
  return tasks;
}

std::vector<Task> build_dirichlet(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const auto Fs = moduli(R, c, [&] {
    std::vector<Poly> v;
    for (unsigned d = 1; d <= deg_or(c, 4); ++d) {
      for (const Poly& f : R.monic_of_degree(d)) v.push_back(f);
    }
    return v;
  });
  std::vector<Task> tasks;
  for (const Poly& F : Fs) {
    const int r = F.degree().value();
    tasks.push_back({r * qpow(R.q(), r) * r, [R, F, r] {
                       const Modulus mod(R, F);
                       bool ok = true;
                       double n = 0;
                       for (const Poly& lam : R.all_below(r)) {
                         for (int k = 1; k <= r; ++k) {
                           try {
                             const auto [x1, x2] = dirichlet_approx(R, lam, mod, k);
                             ok = ok && !x1.is_zero() && x1.degree() <= Degree(k) && x2.degree() <= Degree(r - k - 1) &&
                                  R.canonical_rep(R.sub(R.mul(lam, x1), x2), mod).is_zero();
                           } catch (const Error&) {
                             ok = false;
                           }
                           ++n;
                         }
                       }
                       return std::vector{ok_record("dirichlet", fparams(R, F), ok, n)};
                     }});
  }
  return tasks;
}

std::vector<Task> build_energy_oracle(const CheckConfig& c) {
  const PolyRing R(FieldSpec::parse(c.field));
  const unsigned D = deg_or(c, 3);
  struct Job {
    Poly F;
    bool all_intervals;
  };
  std::vector<Job> jobs;
  if (!c.modulus.empty()) {
    const Poly F = R.parse(c.modulus);
    jobs.push_back({F, F.degree() <= Degree(2)});
  } else {
    for (unsigned d = 1; d <= std::min(D, 2u); ++d) {
      for (const Poly& F : R.monic_of_degree(d)) jobs.push_back({F, true});
    }
    for (unsigned d = 3; d <= D; ++d) {
      for (const Poly& F : irreducibles(R, d)) jobs.push_back({F, false});
    }
  }
  std::vector<Task> tasks;
  for (const Job& job : jobs) {
    const int r = job.F.degree().value();
    tasks.push_back({qpow(R.q(), 4.0 * r), [R, job, r] {
                       const CharContext ctx(R, job.F);
                       const Modulus& F = ctx.modulus();
                       bool ok = true;
                       double n = 0;
                       const std::vector<Poly> offsets = job.all_intervals ? R.all_below(r) : std::vector<Poly>{Poly{}};
                       for (const Poly& off : offsets) {
                         for (int m = job.all_intervals ? 0 : 1; m <= r; ++m) {
                           const Interval I{off, static_cast<unsigned>(m)};
                           const auto Ei = energy_inv(ctx, I);
                           ok = ok && Ei == oracle::energy_inv(R, F, I);
                           ok = ok && energy_sq(ctx, I) == oracle::energy_sq(R, F, I);
                           std::uint64_t sum_sq = 0;
                           for (const Poly& a : R.all_below(r)) {
                             const auto Ia = oracle::inverse_pair(R, F, a, I);
                             sum_sq += Ia * Ia;
                           }
                           ok = ok && sum_sq == Ei;
                           n += 3;
                         }
                       }
                       for (int m = 0; m <= r; ++m) {
                         ok = ok && energy_sqrt(ctx, m) == oracle::energy_sqrt(R, F, m);
                         ++n;
                       }
                       for (const Poly& a : R.all_below(r)) {
                         for (int m = 1; m <= r; ++m) {
                           for (int k = 1; k <= r; ++k) {
                             const auto H = hyperbola_count(ctx, a, Interval::initial(m), Interval::initial(k));
                             ok = ok && H <= hyperbola_divisor_bound(ctx, a, m, k);
                             ++n;
                           }
                         }
                       }
                       Params p = fparams(R, job.F);
                       p.emplace_back("intervals", job.all_intervals ? "all" : "initial");
                       return std::vector{ok_record("energy-oracle", std::move(p), ok, n)};
                     }});
  }
  return tasks;
}

// ------------------------------------------------------- grid-based checks

struct Point {
  Poly a;
  long long m = 1, n = 1, k = 1;
  std::uint64_t seed = 0;
};

const std::vector<std::string> kTheorems = {"thm1", "thm2", "thm2-remark", "thm3", "thm4", "thm5", "thm6"};
const std::vector<std::string> kComparators = {
    "hyperbola-square", "hyperbola-initial", "inverse-pair-initial", "inverse-pair-interval",
    "inverse-avg-initial", "inverse-avg-interval", "inverse-avg-coprime", "energy-inv",
    "energy-sq", "energy-sqrt", "envelope"};

bool is_theorem(const std::string& s) { return std::find(kTheorems.begin(), kTheorems.end(), s) != kTheorems.end(); }

std::vector<BoundReport> eval_point(const CharContext& ctx, const std::string& check, const CheckConfig& c,
                                    const Point& pt) {
  const PolyRing& R = ctx.ring();
  const Poly s0 = c.s0.empty() ? Poly{} : R.parse(c.s0);
  const Poly t0 = c.t0.empty() ? Poly{} : R.parse(c.t0);
  const auto um = static_cast<unsigned>(pt.m), un = static_cast<unsigned>(pt.n), uk = static_cast<unsigned>(pt.k);
  const Interval Im{s0, um}, In{t0, un};
  if (is_theorem(check)) {
    return {theorem_check(ctx, parse_theorem(check), TheoremParams{pt.a, Im, In, c.weights, pt.seed})};
  }
  if (check == "hyperbola-square") return {lemma::hyperbola_square(ctx, pt.a, Im, Interval{t0, um})};
  if (check == "hyperbola-initial") return {lemma::hyperbola_initial(ctx, pt.a, um, un)};
  if (check == "inverse-pair-initial") return {lemma::inverse_pair_initial(ctx, pt.a, um)};
  if (check == "inverse-pair-interval") return {lemma::inverse_pair_interval(ctx, pt.a, Im)};
  if (check == "inverse-avg-initial") return {lemma::inverse_avg_initial(ctx, pt.a, um, uk)};
  if (check == "inverse-avg-interval") return {lemma::inverse_avg_interval(ctx, pt.a, Im, uk)};
  if (check == "inverse-avg-coprime") return {lemma::inverse_avg_coprime(ctx, pt.a, um, uk)};
  if (check == "energy-inv") return {lemma::energy_inv(ctx, Im)};
  if (check == "energy-sq") return {lemma::energy_sq(ctx, Im)};
  if (check == "energy-sqrt") return {lemma::energy_sqrt(ctx, um)};
  if (check == "envelope") return {trivial_envelope(ctx, pt.a, Im, In)};
  throw ParseError("check '" + check + "' cannot be scanned");
}

double point_cost(const std::string& check, unsigned q, int r, const Point& pt) {
  if (is_theorem(check) || check == "envelope") return qpow(q, static_cast<double>(pt.m + pt.n + r));
  if (check == "energy-sqrt") return qpow(q, 2.0 * r);
  return qpow(q, 2.0 * pt.m + pt.k) + qpow(q, r);
}

std::vector<Task> grid_tasks(const std::string& check, const CheckConfig& c, const std::vector<GridAxis>& grid) {
  const PolyRing R(FieldSpec::parse(c.field));
  const Poly F = R.parse(c.modulus.empty() ? "1,0,1" : c.modulus);
  const CharContext ctx(R, F);
  // Shared residue tables; construction happens here, before any worker runs.
  ctx.units();
  ctx.unit_inverses();
  std::vector<Point> points;
  for (const Poly& a : a_values(R, c, {"1"})) {
    std::vector<Point> layer{Point{a, 1, 1, 1, c.seed}};
    for (const GridAxis& axis : grid) {
      std::vector<Point> next;
      for (const Point& base : layer) {
        for (long long v : axis.values) {
          Point pt = base;
          if (axis.name == "m") pt.m = v;
          else if (axis.name == "n") pt.n = v;
          else if (axis.name == "k") pt.k = v;
          else if (axis.name == "seed") pt.seed = static_cast<std::uint64_t>(v);
          else throw ParseError("unknown grid axis '" + axis.name + "'");
          next.push_back(pt);
        }
      }
      layer = std::move(next);
    }
    points.insert(points.end(), layer.begin(), layer.end());
  }
  for (const Point& pt : points) {
    if (pt.m < 0 || pt.n < 0 || pt.k < 0) throw InvalidParameter("grid values must be nonnegative");
    if (pt.m > ctx.r() || pt.n > ctx.r()) throw InvalidParameter("interval size exceeds deg F");
  }
  std::vector<Task> tasks;
  for (const Point& pt : points) {
    tasks.push_back({point_cost(check, R.q(), ctx.r(), pt), [ctx, check, c, pt] { return eval_point(ctx, check, c, pt); }});
  }
  return tasks;
}

std::vector<GridAxis> full_grid(int r, bool with_n, bool with_k, unsigned seeds, std::uint64_t seed) {
  std::vector<long long> sizes;
  for (int i = 1; i <= r; ++i) sizes.push_back(i);
  std::vector<GridAxis> g{{"m", sizes}};
  if (with_n) g.push_back({"n", sizes});
  if (with_k) g.push_back({"k", sizes});
  if (seeds > 1) {
    GridAxis s{"seed", {}};
    for (unsigned i = 0; i < seeds; ++i) s.values.push_back(static_cast<long long>(seed + i));
    g.push_back(s);
  }
  return g;
}

Builder theorem_builder(const std::string& name) {
  return [name](const CheckConfig& c0) {
    CheckConfig c = c0;
    if (c.a.empty()) c.a = {"1", "0,1"};
    const PolyRing R(FieldSpec::parse(c.field));
    const int r = R.parse(c.modulus.empty() ? "1,0,1" : c.modulus).degree().value();
    return grid_tasks(name, c, full_grid(r, true, false, c.seeds, c.seed));
  };
}

std::vector<Task> build_lemmas(const CheckConfig& c0) {
  std::vector<Task> tasks;
  const PolyRing R(FieldSpec::parse(c0.field));
  const std::vector<std::string> Fs =
      c0.modulus.empty() ? std::vector<std::string>{"1,0,1", "1,2,0,1"} : std::vector<std::string>{c0.modulus};
  for (const auto& Fs_text : Fs) {
    CheckConfig c = c0;
    c.modulus = Fs_text;
    if (c.a.empty()) c.a = {"1", "0,1"};
    const int r = R.parse(Fs_text).degree().value();
    auto add = [&](const std::string& name, bool n, bool k, const CheckConfig& cc) {
      auto t = grid_tasks(name, cc, full_grid(r, n, k, 1, 0));
      tasks.insert(tasks.end(), t.begin(), t.end());
    };
    CheckConfig single = c;
    single.a = {"1"};
    CheckConfig shifted = c;
    shifted.s0 = "1,1";
    shifted.t0 = "2";
    CheckConfig shifted_single = shifted;
    shifted_single.a = {"1"};
    add("hyperbola-square", false, false, c);
    add("hyperbola-square", false, false, shifted);
    add("hyperbola-initial", true, false, c);
    add("inverse-pair-initial", false, false, c);
    add("inverse-pair-interval", false, false, c);
    add("inverse-pair-interval", false, false, shifted);
    add("inverse-avg-initial", false, true, c);
    add("inverse-avg-interval", false, true, c);
    add("inverse-avg-interval", false, true, shifted);
    add("inverse-avg-coprime", false, true, c);
    add("energy-inv", false, false, single);
    add("energy-inv", false, false, shifted_single);
    add("energy-sq", false, false, single);
    add("energy-sq", false, false, shifted_single);
    add("energy-sqrt", false, false, single);
  }
  return tasks;
}

std::vector<Task> build_envelope(const CheckConfig& c0) {
  CheckConfig c = c0;
  if (c.a.empty()) c.a = {"1", "0,1", "0"};
  const PolyRing R(FieldSpec::parse(c.field));
  const int r = R.parse(c.modulus.empty() ? "1,0,1" : c.modulus).degree().value();
  return grid_tasks("envelope", c, full_grid(r, true, false, 1, 0));
}

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> reg = [] {
    std::vector<std::pair<std::string, Builder>> v{
        {"charsum", build_charsum},
        {"residue", build_residue},
        {"gauss-mag", build_gauss_mag},
        {"gauss-sign", build_gauss_sign},
        {"twisted", build_twisted},
        {"prime-power", build_prime_power},
        {"weil", build_weil},
        {"mobius", build_mobius},
        {"tsum-cases", build_tsum},
        {"dirichlet", build_dirichlet},
        {"energy-oracle", build_energy_oracle},
    };
    for (const auto& t : kTheorems) v.emplace_back(t, theorem_builder(t));
    v.emplace_back("lemmas", build_lemmas);
    v.emplace_back("envelope", build_envelope);
    return v;
  }();
  return reg;
}

void guard(const std::vector<Task>& tasks, double limit) {
  double total = 0;
  for (const Task& t : tasks) total += t.cost;
  if (total > limit) {
    throw CostLimitExceeded("estimated " + std::to_string(static_cast<long long>(total)) +
                                " character evaluations exceeds the limit of " +
                                std::to_string(static_cast<long long>(limit)),
                            total);
  }
}

}  // namespace

unsigned default_jobs() {
  if (const char* env = std::getenv("FFK_JOBS")) {
    try {
      const long long v = detail::parse_int(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const ParseError&) {
    }
  }
  return 1;
}

std::vector<BoundReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  std::vector<std::vector<BoundReport>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = tasks[i].run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < width; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  // The first failure in task order is reported, independent of timing.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<BoundReport> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<BoundReport> run_check(const std::string& name, const CheckConfig& config) {
  const unsigned jobs = config.jobs ? config.jobs : default_jobs();
  std::vector<Task> tasks;
  bool found = false;
  for (const auto& [n, build] : registry()) {
    if (name == "all" || name == n) {
      auto t = build(config);
      tasks.insert(tasks.end(), t.begin(), t.end());
      found = true;
    }
  }
  if (!found) throw ParseError("unknown check '" + name + "'");
  guard(tasks, config.cost_limit);
  return run_tasks(tasks, jobs);
}

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> out;
  if (detail::trim(spec).empty()) return out;
  for (auto part : detail::split(spec, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("grid axis needs name=values: '" + std::string(part) + "'");
    GridAxis axis{std::string(detail::trim(part.substr(0, eq))), {}};
    for (auto item : detail::split(part.substr(eq + 1), ';')) {
      const auto dots = item.find("..");
      if (dots == std::string_view::npos) {
        axis.values.push_back(detail::parse_int(item));
        continue;
      }
      const long long lo = detail::parse_int(item.substr(0, dots));
      const long long hi = detail::parse_int(item.substr(dots + 2));
      if (hi < lo) throw ParseError("empty range in grid: '" + std::string(item) + "'");
      for (long long v = lo; v <= hi; ++v) axis.values.push_back(v);
    }
    out.push_back(std::move(axis));
  }
  return out;
}

const std::vector<std::string>& scan_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v = kTheorems;
    v.insert(v.end(), kComparators.begin(), kComparators.end());
    return v;
  }();
  return names;
}

std::vector<BoundReport> run_scan(const std::string& check, const CheckConfig& config,
                                  const std::vector<GridAxis>& grid) {
  if (std::find(scan_names().begin(), scan_names().end(), check) == scan_names().end()) {
    throw ParseError("check '" + check + "' cannot be scanned");
  }
  const auto tasks = grid_tasks(check, config, grid);
  guard(tasks, config.cost_limit);
  return run_tasks(tasks, config.jobs ? config.jobs : default_jobs());
}

std::map<std::string, double> max_slack(const std::vector<BoundReport>& records) {
  std::map<std::string, double> out;
  for (const auto& r : records) {
    if (!r.slack_log_q || !std::isfinite(*r.slack_log_q)) continue;
    auto [it, fresh] = out.try_emplace(r.check, *r.slack_log_q);
    if (!fresh) it->second = std::max(it->second, *r.slack_log_q);
  }
  return out;
}

std::vector<BoundReport> standard_lemma_grid(unsigned jobs) {
  CheckConfig c;
  c.jobs = jobs;
  c.cost_limit = std::numeric_limits<double>::infinity();
  return run_check("lemmas", c);
}

std::vector<BoundReport> standard_theorem_grid(unsigned jobs) {
  std::vector<Task> tasks;
  const PolyRing R(FieldSpec::parse("3"));
  for (const char* F : {"1,0,1", "1,2,0,1"}) {
    const int r = R.parse(F).degree().value();
    for (const auto& name : kTheorems) {
      CheckConfig c;
      c.modulus = F;
      c.a = {"1", "0,1"};
      if (name == "thm1" || name == "thm2") c.a.push_back("0");
      c.weights = WeightKind::ones;
      auto t = grid_tasks(name, c, full_grid(r, true, false, 1, 0));
      tasks.insert(tasks.end(), t.begin(), t.end());
      c.weights = WeightKind::random_unit;
      t = grid_tasks(name, c, full_grid(r, true, false, 10, 0));
      tasks.insert(tasks.end(), t.begin(), t.end());
    }
  }
  return run_tasks(tasks, jobs);
}

}  // namespace ffk
