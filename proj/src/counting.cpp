#include "ffk/counting.hpp"

#include <algorithm>
#include <cmath>

#include "params_util.hpp"

namespace ffk {
namespace {

using detail::add_interval;
using detail::add_poly;
using detail::base_params;

void check_size(const CharContext& ctx, unsigned m) {
  if (static_cast<int>(m) > ctx.r()) throw InvalidParameter("interval size exceeds deg F");
}

bool in_interval(const CharContext& ctx, Res x, Res offset, unsigned m) {
  return ctx.degree(ctx.sub(x, offset)) < Degree(static_cast<int>(m));
}

std::uint64_t sum_squares(const std::vector<std::uint64_t>& bins) {
  std::uint64_t e = 0;
  for (auto b : bins) e += b * b;
  return e;
}

std::vector<std::uint64_t> sum_histogram(const CharContext& ctx, const std::vector<Res>& xs) {
  std::vector<std::uint64_t> bins(ctx.size());
  for (Res a : xs) {
    for (Res b : xs) ++bins[ctx.add(a, b)];
  }
  return bins;
}

double qpow(unsigned q, double e) { return std::pow(static_cast<double>(q), e); }

int gcd_degree(const CharContext& ctx, const Poly& a) {
  return ctx.ring().gcd_monic(a, ctx.modulus().poly()).degree().value();
}

void require_irreducible(const CharContext& ctx) {
  if (!ctx.modulus().is_irreducible()) throw HypothesisViolation("F irreducible");
}

void require_odd(const CharContext& ctx) {
  if (ctx.p() == 2) throw HypothesisViolation("q odd");
}

void require_coprime(const CharContext& ctx, const Poly& a) {
  if (gcd_degree(ctx, a) != 0) throw HypothesisViolation("gcd(a, F) = 1");
}

}  // namespace

std::vector<Res> interval_residues(const CharContext& ctx, const Interval& I) {
  check_size(ctx, I.size_exp);
  const Res off = ctx.res(I.offset);
  Res count = 1;
  for (unsigned i = 0; i < I.size_exp; ++i) count *= ctx.q();
  std::vector<Res> out(count);
  for (Res x = 0; x < count; ++x) out[x] = ctx.add(x, off);
  return out;
}

std::uint64_t hyperbola_count(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In) {
  const Res ra = ctx.res(a);
  const Res off_n = ctx.res(In.offset);
  const auto xs = interval_residues(ctx, Im);
  std::vector<Res> ys;
  std::uint64_t count = 0;
  for (Res x : xs) {
    const Res xi = ctx.inv(x);
    if (xi != kNoRes) {
      count += in_interval(ctx, ctx.mul(ra, xi), off_n, In.size_exp);
      continue;
    }
    if (ys.empty()) ys = interval_residues(ctx, In);
    for (Res y : ys) count += ctx.mul(x, y) == ra;
  }
  return count;
}

std::vector<std::uint64_t> inverse_sum_histogram(const CharContext& ctx, const Interval& Im) {
  std::vector<Res> inv;
  for (Res x : interval_residues(ctx, Im)) {
    const Res xi = ctx.inv(x);
    if (xi != kNoRes) inv.push_back(xi);
  }
  return sum_histogram(ctx, inv);
}

std::uint64_t inverse_pair_count(const CharContext& ctx, const Poly& a, const Interval& Im) {
  return inverse_sum_histogram(ctx, Im)[ctx.res(a)];
}

std::uint64_t inverse_avg_count(const CharContext& ctx, const Poly& a, const Interval& Im, unsigned k) {
  const auto bins = inverse_sum_histogram(ctx, Im);
  const PolyRing& R = ctx.ring();
  std::uint64_t total = 0;
  for (const Poly& h : R.all_below(k)) total += bins[ctx.res(R.mul(a, h))];
  return total;
}

std::uint64_t energy_inv(const CharContext& ctx, const Interval& Im) {
  return sum_squares(inverse_sum_histogram(ctx, Im));
}

std::uint64_t energy_sq(const CharContext& ctx, const Interval& Im) {
  std::vector<Res> sq;
  for (Res x : interval_residues(ctx, Im)) sq.push_back(ctx.sq(x));
  return sum_squares(sum_histogram(ctx, sq));
}

std::uint64_t energy_sqrt(const CharContext& ctx, unsigned m) {
  std::vector<Res> Q;
  for (Res x = 0; x < ctx.size(); ++x) {
    if (ctx.degree(ctx.sq(x)) < Degree(static_cast<int>(m))) Q.push_back(x);
  }
  return sum_squares(sum_histogram(ctx, Q));
}

std::uint64_t hyperbola_divisor_bound(const CharContext& ctx, const Poly& a, unsigned m, unsigned n) {
  const PolyRing& R = ctx.ring();
  const Poly& F = ctx.modulus().poly();
  const int r = ctx.r();
  const std::uint64_t q = ctx.q();
  const Poly a0 = R.canonical_rep(a, ctx.modulus());
  const int span = static_cast<int>(m + n) - r;
  const std::vector<Poly> ts = span >= 1 ? R.all_below(static_cast<unsigned>(span)) : std::vector<Poly>{Poly{}};
  const Degree top(static_cast<int>(m + n) - 2);
  std::uint64_t bound = 0;
  for (const Poly& t : ts) {
    const Poly N = R.add(a0, R.mul(t, F));
    if (N.is_zero()) {
      std::uint64_t qm = 1, qn = 1;
      for (unsigned i = 0; i < m; ++i) qm *= q;
      for (unsigned i = 0; i < n; ++i) qn *= q;
      bound += qm + qn - 1;
    } else if (N.degree() <= top) {
      bound += (q - 1) * R.divisor_count(N);
    }
  }
  return bound;
}

namespace oracle {
namespace {

std::vector<Poly> elements(const PolyRing& R, const Modulus& F, const Interval& I) {
  std::vector<Poly> out;
  for (const Poly& x : R.all_below(I.size_exp)) out.push_back(R.canonical_rep(R.add(x, I.offset), F));
  return out;
}

// Reduced inverses of the units in I.
std::vector<Poly> unit_inverses(const PolyRing& R, const Modulus& F, const Interval& I) {
  std::vector<Poly> out;
  for (const Poly& x : elements(R, F, I)) {
    if (R.gcd_monic(x, F.poly()) == R.one()) out.push_back(R.inv_mod(x, F));
  }
  return out;
}

std::uint64_t quadruples(const PolyRing& R, const Modulus& F, const std::vector<Poly>& v) {
  std::uint64_t count = 0;
  for (const auto& x1 : v)
    for (const auto& x2 : v)
      for (const auto& x3 : v)
        for (const auto& x4 : v) {
          if (R.canonical_rep(R.sub(R.add(x1, x2), R.add(x3, x4)), F).is_zero()) ++count;
        }
  return count;
}

}  // namespace

std::uint64_t hyperbola(const PolyRing& R, const Modulus& F, const Poly& a, const Interval& Im,
                        const Interval& In) {
  std::uint64_t count = 0;
  const auto ys = elements(R, F, In);
  for (const Poly& x : elements(R, F, Im)) {
    for (const Poly& y : ys) count += R.canonical_rep(R.sub(R.mul(x, y), a), F).is_zero();
  }
  return count;
}

std::uint64_t inverse_pair(const PolyRing& R, const Modulus& F, const Poly& a, const Interval& Im) {
  std::uint64_t count = 0;
  const auto v = unit_inverses(R, F, Im);
  for (const Poly& x : v) {
    for (const Poly& y : v) count += R.canonical_rep(R.sub(R.add(x, y), a), F).is_zero();
  }
  return count;
}

std::uint64_t energy_inv(const PolyRing& R, const Modulus& F, const Interval& Im) {
  return quadruples(R, F, unit_inverses(R, F, Im));
}

std::uint64_t energy_sq(const PolyRing& R, const Modulus& F, const Interval& Im) {
  std::vector<Poly> v;
  for (const Poly& x : elements(R, F, Im)) v.push_back(R.canonical_rep(R.mul(x, x), F));
  return quadruples(R, F, v);
}

std::uint64_t energy_sqrt(const PolyRing& R, const Modulus& F, unsigned m) {
  std::vector<Poly> v;
  for (const Poly& x : R.all_below(static_cast<unsigned>(F.degree()))) {
    if (R.deg_f(R.mul(x, x), F) < Degree(static_cast<int>(m))) v.push_back(x);
  }
  return quadruples(R, F, v);
}

}  // namespace oracle

namespace lemma {

BoundReport hyperbola_square(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& Jm) {
  require_irreducible(ctx);
  require_coprime(ctx, a);
  if (Im.size_exp != Jm.size_exp) throw InvalidParameter("both intervals must have the same size");
  const double m = Im.size_exp, r = ctx.r();
  const unsigned q = ctx.q();
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  add_interval(p, ctx, "m", Im);
  if (!Jm.is_initial()) p.emplace_back("m2_offset", ctx.ring().format(Jm.offset));
  const double H = static_cast<double>(hyperbola_count(ctx, a, Im, Jm));
  return make_report("hyperbola-square", std::move(p), H, std::nullopt, 1 + qpow(q, 1.5 * m - r / 2), q);
}

BoundReport hyperbola_initial(const CharContext& ctx, const Poly& a, unsigned m, unsigned n) {
  const unsigned q = ctx.q();
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  p.emplace_back("m", std::to_string(m));
  p.emplace_back("n", std::to_string(n));
  const double H = static_cast<double>(hyperbola_count(ctx, a, Interval::initial(m), Interval::initial(n)));
  const double exact = static_cast<double>(hyperbola_divisor_bound(ctx, a, m, n));
  return make_report("hyperbola-initial", std::move(p), H, exact,
                     qpow(q, static_cast<double>(m + n) - ctx.r()) + 1, q);
}

BoundReport inverse_pair_initial(const CharContext& ctx, const Poly& a, unsigned m) {
  const unsigned q = ctx.q();
  const double r = ctx.r(), d = gcd_degree(ctx, a), mm = m;
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  p.emplace_back("m", std::to_string(m));
  const double I = static_cast<double>(inverse_pair_count(ctx, a, Interval::initial(m)));
  return make_report("inverse-pair-initial", std::move(p), I, std::nullopt,
                     1 + qpow(q, 1.5 * mm - r / 2) + qpow(q, 2 * mm + d - r), q);
}

BoundReport inverse_pair_interval(const CharContext& ctx, const Poly& a, const Interval& Im) {
  require_odd(ctx);
  const unsigned q = ctx.q();
  const double r = ctx.r(), d = gcd_degree(ctx, a), m = Im.size_exp;
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  add_interval(p, ctx, "m", Im);
  const double I = static_cast<double>(inverse_pair_count(ctx, a, Im));
  return make_report("inverse-pair-interval", std::move(p), I, std::nullopt,
                     qpow(q, 2 * m - r) + qpow(q, m + d / 2 - r / 2) + qpow(q, r / 2), q);
}

BoundReport inverse_avg_initial(const CharContext& ctx, const Poly& a, unsigned m, unsigned k) {
  const unsigned q = ctx.q();
  const double r = ctx.r(), mm = m, kk = k;
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  p.emplace_back("m", std::to_string(m));
  p.emplace_back("k", std::to_string(k));
  const double A = static_cast<double>(inverse_avg_count(ctx, a, Interval::initial(m), k));
  return make_report("inverse-avg-initial", std::move(p), A, std::nullopt,
                     qpow(q, mm) + qpow(q, kk) + qpow(q, 2 * mm - r + kk) + qpow(q, 1.5 * mm - r / 2 + kk), q);
}

BoundReport inverse_avg_interval(const CharContext& ctx, const Poly& a, const Interval& Im, unsigned k) {
  require_odd(ctx);
  require_coprime(ctx, a);
  const unsigned q = ctx.q();
  const double r = ctx.r(), m = Im.size_exp, kk = k;
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  add_interval(p, ctx, "m", Im);
  p.emplace_back("k", std::to_string(k));
  const double A = static_cast<double>(inverse_avg_count(ctx, a, Im, k));
  return make_report("inverse-avg-interval", std::move(p), A, std::nullopt,
                     qpow(q, m) + qpow(q, 2 * m - r + kk) + qpow(q, r / 2 + kk) + qpow(q, m + kk - r / 2), q);
}

BoundReport inverse_avg_coprime(const CharContext& ctx, const Poly& a, unsigned m, unsigned k) {
  require_coprime(ctx, a);
  const unsigned q = ctx.q();
  const double r = ctx.r(), mm = m, kk = k;
  Params p = base_params(ctx);
  add_poly(p, ctx, "a", a);
  p.emplace_back("m", std::to_string(m));
  p.emplace_back("k", std::to_string(k));
  const double A = static_cast<double>(inverse_avg_count(ctx, a, Interval::initial(m), k));
  return make_report("inverse-avg-coprime", std::move(p), A, std::nullopt,
                     qpow(q, 2 * mm - r / 2 + kk / 2) + qpow(q, 2 * mm - r + kk) + qpow(q, mm), q);
}

BoundReport energy_inv(const CharContext& ctx, const Interval& Im) {
  require_irreducible(ctx);
  const unsigned q = ctx.q();
  const double r = ctx.r(), m = Im.size_exp;
  Params p = base_params(ctx);
  add_interval(p, ctx, "m", Im);
  const auto bins = inverse_sum_histogram(ctx, Im);
  const std::uint64_t E = sum_squares(bins);
  const std::uint64_t max_b = bins.size() > 1 ? *std::max_element(bins.begin() + 1, bins.end()) : 0;
  const double exact = qpow(q, 2 * m) * (1 + static_cast<double>(max_b));
  double main = qpow(q, 3.5 * m - r / 2) + qpow(q, 2 * m);
  if (q % 2 == 1) main = std::min(main, qpow(q, 4 * m - r) + qpow(q, 2 * m + r / 2));
  return make_report("energy-inv", std::move(p), static_cast<double>(E), exact, main, q);
}

BoundReport energy_sq(const CharContext& ctx, const Interval& Im) {
  require_irreducible(ctx);
  const unsigned q = ctx.q();
  const double r = ctx.r(), m = Im.size_exp;
  Params p = base_params(ctx);
  add_interval(p, ctx, "m", Im);
  const double E = static_cast<double>(ffk::energy_sq(ctx, Im));
  return make_report("energy-sq", std::move(p), E, std::nullopt, qpow(q, 4 * m - r) + qpow(q, 2 * m), q);
}

BoundReport energy_sqrt(const CharContext& ctx, unsigned m) {
  require_irreducible(ctx);
  require_odd(ctx);
  const unsigned q = ctx.q();
  const double r = ctx.r(), mm = m;
  Params p = base_params(ctx);
  p.emplace_back("m", std::to_string(m));
  const double E = static_cast<double>(ffk::energy_sqrt(ctx, m));
  return make_report("energy-sqrt", std::move(p), E, std::nullopt, qpow(q, 3.5 * mm - r / 2) + qpow(q, 2 * mm), q);
}

}  // namespace lemma
}  // namespace ffk
