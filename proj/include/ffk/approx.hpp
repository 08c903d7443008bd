#pragma once

#include <utility>

#include "ffk/poly.hpp"

namespace ffk {

/// A pair (x1, x2) with x1 != 0, deg x1 <= k, deg x2 <= r - k - 1 and
/// lambda x1 = x2 (mod F), read off the extended Euclidean remainder
/// sequence of (F, lambda mod F) at the first remainder of small enough
/// degree. x1 is normalised to be monic. Requires 1 <= k <= r.
std::pair<Poly, Poly> dirichlet_approx(const PolyRing& ring, const Poly& lambda, const Modulus& F,
                                       unsigned k);

}  // namespace ffk
