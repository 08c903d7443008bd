#include <set>

#include "doctest.h"
#include "ffk/field.hpp"
#include "ffk/error.hpp"

using namespace ffk;

TEST_CASE("prime field arithmetic") {
  const auto F3 = FieldSpec::parse("3");
  CHECK(F3->mul(F3->from_int(2), F3->from_int(2)) == F3->from_int(1));
  const auto F5 = FieldSpec::parse("5");
  CHECK(F5->inv(F5->from_int(3)) == F5->from_int(2));
  CHECK_THROWS_AS(F5->inv(F5->zero()), DivisionByZero);
  // exhaustive inverse search in F_7
  const auto F7 = FieldSpec::parse("7");
  for (int a = 1; a < 7; ++a) {
    int b = 1;
    while ((a * b) % 7 != 1) ++b;
    CHECK(F7->inv(F7->from_int(a)) == F7->from_int(b));
  }
}

TEST_CASE("F_9 matches Z[i]/3") {
  const auto F9 = FieldSpec::parse("3^2");
  REQUIRE(F9->ext_modulus() == std::vector<unsigned>{1, 0, 1});
  auto elem = [&](unsigned x, unsigned y) {
    const unsigned c[2] = {x, y};
    return F9->from_coeffs(c);
  };
  const FieldElem u = elem(0, 1);
  CHECK(F9->mul(u, u) == elem(2, 0));
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      for (unsigned c = 0; c < 3; ++c)
        for (unsigned d = 0; d < 3; ++d) {
          // (a + bi)(c + di) = (ac - bd) + (ad + bc) i
          const unsigned re = (a * c + 2 * b * d) % 3, im = (a * d + b * c) % 3;
          CHECK(F9->mul(elem(a, b), elem(c, d)) == elem(re, im));
          CHECK(F9->add(elem(a, b), elem(c, d)) == elem((a + c) % 3, (b + d) % 3));
        }
}

TEST_CASE("trace is x + x^p + ... (Frobenius sum)") {
  const auto F9 = FieldSpec::parse("3^2");
  const unsigned uc[2] = {0, 1};
  CHECK(F9->trace(F9->from_coeffs(uc)) == 0);
  CHECK(F9->trace(F9->one()) == 2);
  CHECK(FieldSpec::parse("3")->trace(FieldSpec::parse("3")->from_int(2)) == 2);
  for (const char* spec : {"3^2", "5^2", "2^3", "3^3"}) {
    const auto K = FieldSpec::parse(spec);
    for (unsigned i = 0; i < K->q(); ++i) {
      const FieldElem x = K->from_index(i);
      FieldElem s = K->zero(), y = x;
      for (unsigned j = 0; j < K->ell(); ++j) {
        s = K->add(s, y);
        y = K->pow(y, K->p());
      }
      const auto pv = K->prime_value(s);
      REQUIRE(pv);
      CHECK(K->trace(x) == *pv);
    }
  }
}

TEST_CASE("quadratic character against the set of squares") {
  const auto F3 = FieldSpec::parse("3");
  CHECK(F3->quad_char(F3->one()) == 1);
  CHECK(F3->quad_char(F3->from_int(2)) == -1);
  for (const char* spec : {"3", "5", "7", "9", "11", "13", "5^2"}) {
    const auto K = FieldSpec::parse(spec);
    std::set<unsigned> squares;
    for (unsigned i = 1; i < K->q(); ++i) squares.insert(K->mul(K->from_index(i), K->from_index(i)).v);
    CHECK(K->quad_char(K->zero()) == 0);
    for (unsigned i = 1; i < K->q(); ++i) CHECK(K->quad_char(K->from_index(i)) == (squares.count(K->from_index(i).v) ? 1 : -1));
  }
  CHECK_THROWS_AS(FieldSpec::parse("2")->quad_char(FieldSpec::parse("2")->one()), UnsupportedCharacteristic);
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS(FieldSpec::parse("6"));
  CHECK(*FieldSpec::parse("9") == *FieldSpec::parse("3^2"));
  CHECK_THROWS(FieldSpec::parse("x"));
  CHECK_THROWS(FieldSpec::create(3, 2, std::vector<unsigned>{2, 0, 1}));  // T^2 + 2 = (T+1)(T+2)
  CHECK(FieldSpec::parse("5")->to_string() == "5");
}
