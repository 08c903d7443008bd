#include <random>
#include <set>

#include "doctest.h"
#include "ffk/poly.hpp"

using namespace ffk;

namespace {

const PolyRing& R3() {
  static const PolyRing R(FieldSpec::parse("3"));
  return R;
}

Poly P(const char* s) { return R3().parse(s); }

// Brute-force irreducibility: no monic divisor of degree 1..deg/2.
bool brute_irreducible(const PolyRing& R, const Poly& f) {
  const int d = f.degree().value();
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k)
    for (const Poly& g : R.monic_of_degree(k))
      if (R.rem(f, g).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  const auto& R = R3();
  CHECK(R.rem(P("1,0,1"), P("1,1")) == P("2"));
  CHECK(R.mul(P("1,2,1"), Poly{}).is_zero());
  const auto [qq, rr] = R.divmod(P("0,2,1"), P("0,1"));
  CHECK(qq == P("2,1"));
  CHECK(rr.is_zero());
  CHECK_THROWS_AS(R.divmod(P("1"), Poly{}), DivisionByZero);
  CHECK(Poly{}.degree() == NEG_INF);
  CHECK(NEG_INF < Degree(0));
  CHECK(NEG_INF + 5 == NEG_INF);
}

TEST_CASE("divmod identity on random inputs") {
  const auto& R = R3();
  std::mt19937 gen(7);
  for (int i = 0; i < 300; ++i) {
    const Poly a = R.from_index(gen() % 2187);
    Poly b;
    while (b.is_zero()) b = R.from_index(gen() % 243);
    const auto [q, r] = R.divmod(a, b);
    CHECK(R.add(R.mul(q, b), r) == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd") {
  const auto& R = R3();
  CHECK(R.gcd_monic(P("0,2,1"), P("0,1")) == P("0,1"));
  CHECK(R.gcd_monic(P("1,0,1"), P("2,1")) == P("1"));
  CHECK(R.gcd_monic(Poly{}, P("2,2")) == P("1,1"));
  CHECK_THROWS_AS(R.gcd_monic(Poly{}, Poly{}), UndefinedGcd);
  // brute force: the monic common divisor of largest degree
  for (std::uint64_t i = 1; i < 81; i += 3) {
    for (std::uint64_t j = 1; j < 81; j += 5) {
      const Poly a = R.from_index(i), b = R.from_index(j);
      Poly best = R.one();
      for (unsigned d = 1; d <= 3; ++d)
        for (const Poly& g : R.monic_of_degree(d))
          if (R.divides(g, a) && R.divides(g, b)) best = g;
      CHECK(R.gcd_monic(a, b) == best);
      const auto bz = R.ext_gcd(a, b);
      CHECK(R.add(R.mul(bz.u, a), R.mul(bz.v, b)) == bz.g);
    }
  }
}

TEST_CASE("inverses and canonical representatives") {
  const auto& R = R3();
  const Modulus F1(R, P("1,1"));
  CHECK(R.inv_mod(P("1"), F1) == P("1"));
  CHECK(R.inv_mod(P("0,1"), F1) == P("2"));
  const Modulus F2(R, P("0,0,1"));
  try {
    R.inv_mod(P("0,1"), F2);
    FAIL("expected NotInvertible");
  } catch (const NotInvertible& e) {
    CHECK(e.gcd() == P("0,1"));
  }
  const Modulus G(R, P("1,0,1"));
  CHECK(R.deg_f(G.poly(), G) == NEG_INF);
  CHECK(R.deg_f(P("0,0,1"), G) == Degree(0));
  CHECK(R.deg_f(P("1"), G) == Degree(0));
  // exhaustive: x * inv(x) = 1 for every unit modulo a non-monic cubic
  const Modulus H(R, P("2,0,1,2"));
  for (const Poly& x : R.all_below(3)) {
    if (R.gcd_monic(x, H.poly()) != R.one()) continue;
    CHECK(R.canonical_rep(R.mul(x, R.inv_mod(x, H)), H) == R.one());
  }
}

TEST_CASE("factorisation, mobius, divisors") {
  const auto& R = R3();
  auto f = R.factor(P("0,1,1"));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == P("0,1"));
  CHECK(f.factors[1].first == P("1,1"));
  f = R.factor(P("1,0,1"));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == P("1,0,1"));
  f = R.factor(P("0,0,2"));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0] == std::pair<Poly, unsigned>{P("0,1"), 2});
  CHECK_THROWS_AS(R.factor(P("2")), NotFactorable);
  CHECK(R.mobius(P("0,1")) == -1);
  CHECK(R.mobius(P("0,0,1")) == 0);
  CHECK(R.mobius(P("0,1,1")) == 1);
  CHECK(R.monic_divisors(P("0,0,1")) == std::vector<Poly>{P("1"), P("0,1"), P("0,0,1")});
  CHECK(R.monic_divisors(P("0,1,1")) == std::vector<Poly>{P("1"), P("0,1"), P("1,1"), P("0,1,1")});
  CHECK(R.divisor_count(R.pow(P("0,1,1"), 2)) == 9);
}

TEST_CASE("factorisation and divisors against brute force") {
  const auto& R = R3();
  for (unsigned d = 1; d <= 4; ++d) {
    for (const Poly& f : R.monic_of_degree(d)) {
      CHECK(R.is_irreducible(f) == brute_irreducible(R, f));
      Poly prod = R.one();
      int mu = 1;
      for (const auto& [p, e] : R.factor(f).factors) {
        CHECK(brute_irreducible(R, p));
        prod = R.mul(prod, R.pow(p, e));
        mu = e > 1 ? 0 : -mu;
      }
      CHECK(prod == f);
      CHECK(R.mobius(f) == mu);
      std::vector<Poly> divs;
      for (unsigned k = 0; k <= d; ++k)
        for (const Poly& g : R.monic_of_degree(k))
          if (R.divides(g, f)) divs.push_back(g);
      CHECK(R.monic_divisors(f).size() == divs.size());
      CHECK(R.divisor_count(f) == divs.size());
      int s = 0;
      for (const Poly& g : divs) s += R.mobius(g);
      CHECK(s == 0);
    }
  }
  CHECK(R.mobius(P("1")) == 1);
}

TEST_CASE("jacobi symbol") {
  const auto& R = R3();
  CHECK(R.jacobi(P("1"), P("1,0,1")) == 1);
  CHECK(R.jacobi(P("2"), P("1,0,1")) == 1);
  CHECK(R.jacobi(P("0,1"), P("0,1")) == 0);
  // prime moduli: symbol is +1 exactly on nonzero squares
  for (unsigned d = 1; d <= 3; ++d) {
    for (const Poly& Pp : R.monic_of_degree(d)) {
      if (!R.is_irreducible(Pp)) continue;
      const Modulus M(R, Pp);
      std::set<Poly> squares;
      for (const Poly& x : R.all_below(d)) squares.insert(R.canonical_rep(R.mul(x, x), M));
      for (const Poly& t : R.all_below(d)) {
        const int want = t.is_zero() ? 0 : (squares.count(t) ? 1 : -1);
        CHECK(R.jacobi(t, M) == want);
      }
    }
  }
  // multiplicativity in the modulus
  const Poly A = P("1,0,1"), B = P("1,1");
  for (const Poly& t : R.all_below(3)) CHECK(R.jacobi(t, R.mul(A, B)) == R.jacobi(t, A) * R.jacobi(t, B));
  CHECK_THROWS_AS(PolyRing(FieldSpec::parse("2")).jacobi(Poly::constant(FieldElem{1}), PolyRing(FieldSpec::parse("2")).parse("0,1")),
                  UnsupportedCharacteristic);
}

TEST_CASE("text round trip and enumeration order") {
  const auto& R = R3();
  for (const Poly& x : R.all_below(3)) CHECK(R.parse(R.format(x)) == x);
  CHECK(R.format(Poly{}) == "0");
  CHECK(R.all_below(0) == std::vector<Poly>{Poly{}});
  const auto all = R.all_below(2);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(R.index_of(all[i]) == i);
  CHECK_THROWS_AS(R.parse("1,x"), ParseError);
}
