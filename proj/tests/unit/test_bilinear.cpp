#include "doctest.h"
#include "ffk/bilinear.hpp"
#include "ffk/expsum.hpp"

using namespace ffk;
using cd = std::complex<double>;

namespace {

const PolyRing& R3() {
  static const PolyRing R(FieldSpec::parse("3"));
  return R;
}

cd kd(const CharContext& c, const Poly& s, const Poly& t) { return kloosterman(c, s, t).to_complex_d(); }

}  // namespace

TEST_CASE("weights") {
  const auto& R = R3();
  const CharContext c(R, R.parse("1,0,1"));
  const auto supp = R.all_below(2);
  const auto w1 = make_weights(c, WeightKind::random_unit, supp, 5);
  const auto w2 = make_weights(c, WeightKind::random_unit, supp, 5);
  CHECK(w1.values == w2.values);
  CHECK(make_weights(c, WeightKind::random_unit, supp, 6).values != w1.values);
  for (auto v : w1.values) CHECK(std::abs(std::abs(v) - 1) < 1e-12);
  for (auto v : make_weights(c, WeightKind::random_sign, supp, 1).values) CHECK((v == cd(1) || v == cd(-1)));
  const auto ones = make_weights(c, WeightKind::ones, supp, 0);
  CHECK(ones.norm1 == doctest::Approx(9));
  CHECK(ones.norm2 == doctest::Approx(3));
  CHECK(ones.norm_inf == 1);
  CHECK_THROWS_AS(make_weights(c, WeightKind::ones, {R.one(), R.parse("2,0,1")}, 0), InvalidSupport);
  CHECK_THROWS_AS(make_weights(c, WeightKind::ones, {R.parse("0,0,1")}, 0), InvalidSupport);
  CHECK(parse_weight_kind("random-unit") == WeightKind::random_unit);
  CHECK_THROWS_AS(parse_weight_kind("gaussian"), ParseError);
}

TEST_CASE("plain Kloosterman form") {
  const auto& R = R3();
  const CharContext c(R, R.parse("1,0,1"));
  for (unsigned m = 1; m <= 2; ++m) CHECK(std::abs(bk_plain(c, R.one(), Interval::initial(m), Interval::initial(2)).value) < 1e-9);
  const CharContext t(R, R.parse("0,1"));
  const auto z = bk_plain(t, Poly{}, Interval::initial(1), Interval::initial(1));
  REQUIRE(z.exact);
  CHECK(z.exact->is_zero());
  // literal double sum
  const CharContext d(R, R.parse("2,1,0,1"));
  const Interval Im{R.parse("0,1"), 1}, In{R.parse("1,1,1"), 2};
  cd lit = 0;
  for (const Poly& s : interval_elements(R, Im))
    for (const Poly& tt : interval_elements(R, In)) lit += kd(d, s, R.mul(R.parse("0,1"), tt));
  CHECK(std::abs(bk_plain(d, R.parse("0,1"), Im, In).value - lit) < 1e-9);
}

TEST_CASE("type I forms") {
  const auto& R = R3();
  const CharContext c(R, R.parse("1,0,1"));
  const auto all = R.all_below(2);
  CHECK(std::abs(bk_type1_set(c, R.one(), make_weights(c, WeightKind::ones, all, 0), Interval::initial(2))) < 1e-9);
  const Poly s0 = R.parse("2,1");
  const auto single = make_weights(c, WeightKind::ones, {s0}, 0);
  cd want = 0;
  for (const Poly& t : R.all_below(1)) want += kd(c, s0, R.mul(R.parse("0,1"), t));
  CHECK(std::abs(bk_type1_set(c, R.parse("0,1"), single, Interval::initial(1)) - want) < 1e-9);

  const auto alpha = make_weights(c, WeightKind::random_unit, R.all_below(1), 3);
  cd lit = 0;
  for (std::size_t i = 0; i < alpha.support.size(); ++i)
    for (const Poly& t : R.all_below(2)) lit += alpha.values[i] * kd(c, alpha.support[i], t);
  CHECK(std::abs(bk_type1_interval(c, R.one(), alpha, Interval::initial(1), Interval::initial(2)) - lit) < 1e-9);

  cd g = 0;
  for (const Poly& t : R.all_below(1)) {
    if (t.is_zero()) continue;
    g += gauss(c, s0, t).to_complex_d();
  }
  CHECK(std::abs(bg_type1(c, R.one(), single, Interval::initial(1)) - g) < 1e-9);
}

TEST_CASE("Gauss forms and their hypotheses") {
  const auto& R = R3();
  const CharContext c(R, R.parse("1,0,1"));
  const auto alpha = make_weights(c, WeightKind::ones, R.all_below(1), 0);
  const auto beta = make_weights(c, WeightKind::ones, R.all_below(1), 0);
  cd lit = 0;
  for (const Poly& s : R.all_below(1))
    for (const Poly& t : R.all_below(1))
      if (!t.is_zero()) lit += gauss(c, s, t).to_complex_d();
  CHECK(std::abs(bg_type2_set(c, R.one(), alpha, beta, Interval::initial(1)) - lit) < 1e-9);
  CHECK(std::abs(bg_type2_interval(c, R.one(), alpha, Interval::initial(1), beta, Interval::initial(1)) - lit) < 1e-9);
  const CharContext comp(R, R.parse("0,1,1"));
  CHECK_THROWS_AS(bg_type1(comp, R.one(), make_weights(comp, WeightKind::ones, {R.one()}, 0), Interval::initial(1)),
                  HypothesisViolation);
  CHECK_THROWS_AS(bg_type1(c, R.parse("1,0,1"), alpha, Interval::initial(1)), HypothesisViolation);
  const PolyRing R2(FieldSpec::parse("2"));
  const CharContext even(R2, R2.parse("1,1,1"));
  CHECK_THROWS_AS(bg_type1(even, R2.one(), make_weights(even, WeightKind::ones, {R2.one()}, 0), Interval::initial(1)),
                  HypothesisViolation);
}

TEST_CASE("theorem checks") {
  const auto& R = R3();
  const CharContext c(R, R.parse("1,0,1"));
  auto rep = theorem_check(c, Theorem::thm1, {R.one(), Interval::initial(1), Interval::initial(2)});
  CHECK(rep.lhs == 0);
  CHECK(rep.passed);
  rep = theorem_check(c, Theorem::thm2, {R.one(), Interval::initial(2), Interval::initial(1)});
  CHECK(rep.passed);
  CHECK(rep.slack_log_q.has_value());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    rep = theorem_check(c, Theorem::thm6, {R.one(), Interval::initial(1), Interval::initial(1), WeightKind::random_unit, seed});
    CHECK(rep.passed);
  }
  CHECK_THROWS_AS(theorem_check(c, Theorem::thm3, {Poly{}, Interval::initial(1), Interval::initial(1)}), HypothesisViolation);
  CHECK_THROWS_AS(theorem_check(c, Theorem::thm4, {Poly{}, Interval::initial(1), Interval::initial(1)}), HypothesisViolation);
  CHECK_THROWS_AS(theorem_check(c, Theorem::thm1, {R.one(), Interval::initial(0), Interval::initial(1)}), HypothesisViolation);
  CHECK_THROWS_AS(theorem_check(c, Theorem::thm1, {R.one(), Interval::initial(3), Interval::initial(1)}), HypothesisViolation);
  const CharContext comp(R, R.parse("0,1,1"));
  CHECK_THROWS_AS(theorem_check(comp, Theorem::thm5, {R.one(), Interval::initial(1), Interval::initial(1)}), HypothesisViolation);
  CHECK(parse_theorem("thm2-remark") == Theorem::thm2_remark);
  CHECK(to_string(Theorem::thm6) == "thm6");
}

TEST_CASE("trivial envelope") {
  const auto& R = R3();
  const CharContext c(R, R.parse("2,1,0,1"));
  for (unsigned m = 1; m <= 3; ++m) {
    const auto rep = trivial_envelope(c, R.parse("0,1"), Interval::initial(m), Interval::initial(1));
    CHECK(rep.passed);
  }
}
