#include "doctest.h"
#include "ffk/expsum.hpp"

using namespace ffk;

namespace {

BigInt units_of(const CharContext& c) { return BigInt(c.units().size()); }

std::complex<long double> brute_complex(const CharContext& c, Res s, Res t) {
  return kloosterman(c, s, t).to_complex();
}

}  // namespace

TEST_CASE("Kloosterman examples and symmetries") {
  const PolyRing R3(FieldSpec::parse("3"));
  const CharContext t2(R3, R3.parse("0,0,1"));
  CHECK(kloosterman(t2, Poly{}, Poly{}).as_integer() == BigInt(6));
  const PolyRing R5(FieldSpec::parse("5"));
  const CharContext t1(R5, R5.parse("0,1"));
  const CycValue k = kloosterman(t1, R5.one(), R5.one());
  CHECK(k == CycValue::from_int(5, 2) + CycValue::zeta_pow(5, 2) + CycValue::zeta_pow(5, 3));
  CHECK(std::abs(k.to_complex() - std::complex<long double>(0.3819660112501051L, 0)) < 1e-12L);

  const CharContext c(R3, R3.parse("2,1,1,1"));
  for (Res s = 0; s < c.size(); s += 2) {
    for (Res t = 0; t < c.size(); t += 3) {
      CHECK(kloosterman(c, s, t) == kloosterman(c, t, s));
      for (Res u : {c.units().front(), c.units().back()}) CHECK(kloosterman(c, s, c.mul(u, t)) == kloosterman(c, c.mul(u, s), t));
    }
  }
}

TEST_CASE("explicit Kloosterman evaluation") {
  const PolyRing R3(FieldSpec::parse("3"));
  const CharContext t2(R3, R3.parse("0,0,1"));
  auto v = kloosterman_explicit(t2, R3.one(), R3.parse("0,1"));
  REQUIRE(v.exact);
  CHECK(v.exact->is_zero());
  v = kloosterman_explicit(t2, R3.one(), R3.one());
  const long double want = 2 * 3 * t2.e_F(R3.constant(2)).to_complex().real();
  CHECK(std::abs(v.to_complex() - std::complex<long double>(want, 0)) < 1e-9L);
  CHECK(std::abs(v.to_complex() - kloosterman(t2, R3.one(), R3.one()).to_complex()) < 1e-9L);

  const PolyRing R5(FieldSpec::parse("5"));
  const CharContext t3(R5, R5.parse("0,0,0,1")), sub(R5, R5.parse("0,0,1"));
  const auto w = kloosterman_explicit(t3, R5.parse("0,1"), R5.parse("0,1"));
  CHECK(std::abs(w.to_complex() - 5.0L * kloosterman(sub, R5.one(), R5.one()).to_complex()) < 1e-9L);

  // every (s, t) for a handful of moduli, including a non-monic one
  for (const char* F : {"0,0,1", "1,2,1", "0,0,0,1", "0,1,1", "2,0,0,2", "0,0,1,1"}) {
    const CharContext c(R3, R3.parse(F));
    KloostermanEvaluator eval(c);
    for (Res s = 0; s < c.size(); ++s)
      for (Res t = 0; t < c.size(); ++t) {
        const auto e = eval(c.poly(s), c.poly(t));
        if (e.exact) CHECK(*e.exact == kloosterman(c, s, t));
        CHECK(std::abs(e.to_complex() - brute_complex(c, s, t)) < 1e-9L);
      }
  }
  const PolyRing R2(FieldSpec::parse("2"));
  const CharContext even(R2, R2.parse("0,0,1"));
  CHECK_THROWS_AS(kloosterman_explicit(even, R2.one(), R2.one()), UnsupportedCharacteristic);
}

TEST_CASE("epsilon_F") {
  const PolyRing R3(FieldSpec::parse("3")), R5(FieldSpec::parse("5"));
  CHECK(std::abs(epsilon_F(CharContext(R3, R3.parse("0,1"))) - std::complex<long double>(0, 1)) < 1e-15L);
  CHECK(std::abs(epsilon_F(CharContext(R5, R5.parse("0,1"))) - std::complex<long double>(1, 0)) < 1e-15L);
  CHECK(std::abs(epsilon_F(CharContext(R3, R3.parse("1,0,1"))) - std::complex<long double>(1, 0)) < 1e-15L);
  CHECK(std::abs(epsilon_F(CharContext(R5, R5.parse("2,0,0,1,3"))) - std::complex<long double>(1, 0)) < 1e-15L);
}

TEST_CASE("Gauss sums") {
  const PolyRing R(FieldSpec::parse("3"));
  const CharContext t1(R, R.parse("0,1"));
  CHECK(gauss(t1, Poly{}, Poly{}).as_integer() == BigInt(3));
  CHECK(gauss(t1, Poly{}, R.one()) == CycValue::from_int(3, 1) + CycValue::zeta_pow(3, 1) * BigInt(2));
  CHECK(gauss_reduced(t1, Poly{}, R.one()) == CycValue::zeta_pow(3, 1) * BigInt(2));
  const CharContext c(R, R.parse("1,2,0,1"));
  CHECK(gauss(c, Poly{}, Poly{}).as_integer() == BigInt(27));
  CHECK(gauss_reduced(c, Poly{}, Poly{}).as_integer() == units_of(c));
  for (Res s = 0; s < c.size(); ++s) {
    for (Res t : c.units()) CHECK(gauss(c, s, t).abs_sq().as_integer() == BigInt(27));
    // gauss_reduced at t = 0 is the Ramanujan sum
    CHECK(gauss_reduced(c, c.poly(s), Poly{}) == ramanujan(c, c.poly(s)));
  }
  // Sign constant: G_F(0, 1) = eps_F q^{r/2}, non-monic modulus
  for (const char* F : {"1,0,2", "2,1,0,2", "0,1"}) {
    const CharContext d(R, R.parse(F));
    const auto want = epsilon_F(d) * std::pow(3.0L, d.r() / 2.0L);
    CHECK(std::abs(gauss(d, Poly{}, R.one()).to_complex() - want) < 1e-9L);
  }
}

TEST_CASE("Ramanujan sums against the divisor formula") {
  const PolyRing R(FieldSpec::parse("3"));
  const CharContext P(R, R.parse("1,0,1"));
  CHECK(ramanujan(P, Poly{}).as_integer() == BigInt(8));
  CHECK(ramanujan(P, R.one()).as_integer() == BigInt(-1));
  for (const char* F : {"0,0,1", "0,1,1", "0,2,0,1", "2,0,0,2", "0,0,0,1"}) {
    const CharContext c(R, R.parse(F));
    for (const Poly& s : R.all_below(c.r())) {
      // C_F(s) = sum over monic D | gcd(s, F) of |D| mu(F / D)
      BigInt want = 0;
      for (const Poly& D : R.monic_divisors(R.gcd_monic(s, c.modulus().poly()))) {
        want += BigInt(static_cast<long long>(std::pow(3, D.degree().value()))) *
                R.mobius(R.exact_div(c.modulus().poly(), D));
      }
      CHECK(ramanujan(c, s).as_integer() == want);
    }
  }
}

TEST_CASE("T-sum") {
  const PolyRing R(FieldSpec::parse("3"));
  const CharContext c(R, R.parse("1,0,1"));
  CHECK(t_sum(c, R.one(), R.one(), Poly{}).as_integer() == BigInt(72));
  const CharContext big(R, R.parse("1,0,0,0,0,0,0,0,0,0,0,1"));
  CHECK_THROWS_AS(t_sum(big, R.one(), R.one(), R.one()), CostLimitExceeded);
}
