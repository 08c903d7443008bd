#include "ffk/approx.hpp"

namespace ffk {

std::pair<Poly, Poly> dirichlet_approx(const PolyRing& R, const Poly& lambda, const Modulus& F, unsigned k) {
  const int r = F.degree();
  if (k < 1 || static_cast<int>(k) > r) throw InvalidParameter("dirichlet_approx needs 1 <= k <= r");
  const Degree limit(r - static_cast<int>(k) - 1);

  // Invariant: r_i = s_i F + t_i lambda; only t_i is tracked.
  Poly r0 = F.poly(), t0{};
  Poly r1 = R.rem(lambda, F.poly()), t1 = R.one();
  while (r1.degree() > limit) {
    auto [quo, r2] = R.divmod(r0, r1);
    Poly t2 = R.sub(t0, R.mul(quo, t1));
    r0 = std::move(r1);
    t0 = std::move(t1);
    r1 = std::move(r2);
    t1 = std::move(t2);
  }
  const FieldElem li = R.field().inv(t1.lead());
  Poly x1 = R.scale(li, t1);
  Poly x2 = R.scale(li, r1);

  const bool ok = !x1.is_zero() && x1.degree() <= Degree(static_cast<int>(k)) && x2.degree() <= limit &&
                  R.rem(R.sub(R.mul(lambda, x1), x2), F.poly()).is_zero();
  if (!ok) throw Error("internal: dirichlet_approx postcondition failed");
  return {std::move(x1), std::move(x2)};
}

}  // namespace ffk
