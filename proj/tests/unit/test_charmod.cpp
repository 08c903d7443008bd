#include <random>

#include "doctest.h"
#include "ffk/character.hpp"

using namespace ffk;

namespace {

// Coefficient of T^{-1} in g/h by explicit Laurent long division: peel off
// leading terms of g until its degree drops below deg h - 1.
FieldElem laurent_oracle(const PolyRing& R, Poly g, const Poly& h) {
  const auto& K = R.field();
  const int dh = h.degree().value();
  const FieldElem lead_inv = K.inv(h.lead());
  // quotient digit of T^{e} is (lead of g)/(lead of h) with e = deg g - deg h.
  while (!g.is_zero() && g.degree().value() - dh >= -1) {
    const int e = g.degree().value() - dh;
    const FieldElem c = K.mul(g.lead(), lead_inv);
    if (e == -1) return c;
    g = R.sub(g, R.mul(Poly::monomial(c, static_cast<unsigned>(e)), h));
  }
  return K.zero();
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  const CycValue z = CycValue::zeta_pow(3, 1);
  const CycValue one = CycValue::from_int(3, 1);
  CHECK((one + z + z * z).is_zero());
  CHECK((one + z * BigInt(2)).abs_sq().as_integer() == BigInt(3));
  for (int k = 0; k < 7; ++k) CHECK(CycValue::zeta_pow(7, k).abs_sq().as_integer() == BigInt(1));
  CHECK(z.conj().conj() == z);
  CHECK(z.conj() == z * z);
  CHECK_THROWS_AS(z + CycValue::zeta_pow(5, 1), IncompatibleCyclotomicOrder);
  const auto c = CycValue::zeta_pow(5, 2).to_complex();
  CHECK(std::abs(c - std::polar(1.0L, 4 * 3.14159265358979323846L / 5)) < 1e-15L);
}

TEST_CASE("residue coefficient") {
  const PolyRing R(FieldSpec::parse("3"));
  CHECK(residue_coeff(R, R.one(), R.parse("0,1")) == R.field().one());
  CHECK(residue_coeff(R, R.parse("0,1"), R.parse("1,0,1")) == R.field().one());
  const Poly h = R.parse("2,1,0,2");
  CHECK(residue_coeff(R, R.mul(R.parse("0,1"), h), h) == R.field().zero());
  CHECK_THROWS_AS(residue_coeff(R, R.one(), Poly{}), DivisionByZero);
}

TEST_CASE("residue coefficient equals Laurent division") {
  for (const char* f : {"3", "5", "3^2"}) {
    const PolyRing R(FieldSpec::parse(f));
    std::mt19937_64 gen(11);
    auto rnd = [&](unsigned d) {
      std::vector<FieldElem> v(d + 1);
      for (auto& x : v) x = R.field().from_index(static_cast<unsigned>(gen() % R.q()));
      return Poly(std::move(v));
    };
    for (int i = 0; i < 500; ++i) {
      const Poly g = rnd(gen() % 8);
      Poly h;
      while (h.is_zero()) h = rnd(gen() % 6);
      CHECK(residue_coeff(R, g, h) == laurent_oracle(R, g, h));
    }
  }
}

TEST_CASE("additive characters") {
  const PolyRing R5(FieldSpec::parse("5"));
  const CharContext c5(R5, R5.parse("0,1"));
  CHECK(c5.e_F(Poly{}) == CycValue::from_int(5, 1));
  for (int c = 0; c < 5; ++c) CHECK(c5.e_F(R5.constant(c)) == CycValue::zeta_pow(5, c));

  const PolyRing R(FieldSpec::parse("3"));
  const CharContext ctx(R, R.parse("1,0,1"));
  CHECK(ctx.e_F(R.parse("0,1")) * ctx.e_F(R.parse("0,2")) == CycValue::from_int(3, 1));
  // periodicity and additivity
  for (const Poly& x : R.all_below(3)) {
    CHECK(ctx.e_F(x) == ctx.e_F(R.add(x, R.mul(R.parse("2,1"), ctx.modulus().poly()))));
    for (const Poly& y : R.all_below(2)) CHECK(ctx.e_F(R.add(x, y)) == ctx.e_F(x) * ctx.e_F(y));
  }
  const CharContext sq(R, R.parse("0,0,1"));
  CycValue s(3);
  for (const Poly& x : R.all_below(2)) {
    CHECK(sq.e_F_lambda(Poly{}, x) == CycValue::from_int(3, 1));
    CHECK(sq.e_F_lambda(R.one(), x) == sq.e_F(x));
    s += sq.e_F_lambda(R.parse("0,1"), x);
  }
  CHECK(s.is_zero());
}

TEST_CASE("interval character sum") {
  const PolyRing R(FieldSpec::parse("3"));
  const CharContext ctx(R, R.parse("0,0,1"));
  CHECK(ctx.interval_char_sum(R.one(), 1).as_integer() == BigInt(3));
  CHECK(ctx.interval_char_sum(R.one(), 2).is_zero());
  CHECK(ctx.interval_char_sum(Poly{}, 2).as_integer() == BigInt(9));
  CHECK_THROWS_AS(ctx.interval_char_sum(R.one(), 3), InvalidParameter);
  for (const char* F : {"1,0,1", "2,1,0,1", "0,2,2,2"}) {
    const CharContext c(R, R.parse(F));
    for (const Poly& u : R.all_below(c.r())) {
      for (int m = 1; m <= c.r(); ++m) {
        CycValue lit(3);
        for (const Poly& x : R.all_below(m)) lit += c.e_F(R.mul(u, x));
        CHECK(c.interval_char_sum(u, m) == lit);
      }
    }
  }
}

TEST_CASE("residue tables") {
  const PolyRing R(FieldSpec::parse("5"));
  const CharContext ctx(R, R.parse("2,0,3"));
  for (Res a = 0; a < ctx.size(); ++a) {
    CHECK(ctx.res(ctx.poly(a)) == a);
    const Poly pa = ctx.poly(a);
    for (Res b = 0; b < ctx.size(); b += 3) {
      CHECK(ctx.mul(a, b) == ctx.res(R.mul(pa, ctx.poly(b))));
      CHECK(ctx.add(a, b) == ctx.res(R.add(pa, ctx.poly(b))));
    }
    if (ctx.is_unit(a)) CHECK(ctx.mul(a, ctx.inv(a)) == ctx.res(R.one()));
  }
  std::size_t units = 0;
  for (const Poly& x : R.all_below(2)) units += R.gcd_monic(x, ctx.modulus().poly()) == R.one();
  CHECK(ctx.units().size() == units);
  CHECK(units == 16);
}
