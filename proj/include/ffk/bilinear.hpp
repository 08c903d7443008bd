#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffk/counting.hpp"
#include "ffk/report.hpp"

namespace ffk {

enum class WeightKind { ones, random_unit, random_sign };

WeightKind parse_weight_kind(const std::string& name);
std::string to_string(WeightKind kind);

struct WeightSeq {
  std::vector<Poly> support;
  std::vector<std::complex<double>> values;
  double norm1 = 0;
  double norm2 = 0;
  double norm_inf = 0;
};

/// Deterministic in seed (mt19937_64; a uniform draw is (x >> 11) 2^-53).
/// Throws InvalidSupport on entries of degree >= r or repeated residues.
WeightSeq make_weights(const CharContext& ctx, WeightKind kind, std::vector<Poly> support, std::uint64_t seed);
/// Arbitrary values on a validated support.
WeightSeq make_weights(const CharContext& ctx, std::vector<Poly> support, std::vector<std::complex<double>> values);

/// The elements x + offset (deg x < m) of an interval as polynomials, in
/// enumeration order.
std::vector<Poly> interval_elements(const PolyRing& ring, const Interval& I);

struct BilinearValue {
  std::complex<double> value;
  /// Present when every weight is 1.
  std::optional<CycValue> exact;
};

/// sum over s in I_m, t in I_n of K_F(s, at), or with gamma (indexed by
/// residue) the weighted variant sum_x gamma_x e_F(s x + a t / x). Also
/// evaluates the single sum q^{m+n} sum gamma_x e_F(s0 x + a t0 / x) over
/// units with deg_F x < r - m and deg_F(a/x) < r - n, and throws if the two
/// disagree beyond 1e-9 relative.
BilinearValue bk_plain(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In,
                       const std::vector<std::complex<double>>* gamma = nullptr);

/// sum over s in supp(alpha), t in I_n of alpha_s K_F(s, at).
std::complex<double> bk_type1_set(const CharContext& ctx, const Poly& a, const WeightSeq& alpha, const Interval& In);
/// As bk_type1_set with the support required to be I_m.
std::complex<double> bk_type1_interval(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                       const Interval& Im, const Interval& In);

/// sum over s in supp(alpha), t in I_n with t != 0 mod F of alpha_s G_F(s, at).
/// F irreducible, q odd and (a, F) = 1.
std::complex<double> bg_type1(const CharContext& ctx, const Poly& a, const WeightSeq& alpha, const Interval& In);
/// sum alpha_s beta_t G_F(s, at) over s in supp(alpha), t in supp(beta) = I_n,
/// t != 0 mod F. Verifies the completed-square form
/// q^{r/2} sum alpha_s beta_t theta_t e_F(-s^2 / (4at)) before returning.
std::complex<double> bg_type2_set(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                  const WeightSeq& beta, const Interval& In);
std::complex<double> bg_type2_interval(const CharContext& ctx, const Poly& a, const WeightSeq& alpha,
                                       const Interval& Im, const WeightSeq& beta, const Interval& In);

enum class Theorem { thm1, thm2, thm2_remark, thm3, thm4, thm5, thm6 };

Theorem parse_theorem(const std::string& name);
std::string to_string(Theorem t);

/// Constant for thm5, absorbing the square substitution s -> -s^2 / (4a).
inline constexpr double kC5 = 2.0;

struct TheoremParams {
  Poly a;
  Interval Im;
  Interval In;
  WeightKind weights = WeightKind::ones;
  std::uint64_t seed = 0;
};

/// Evaluates the form of the chosen theorem by brute force and compares it
/// with the exact proof-level bound (rhs_exact) and the displayed main term
/// (rhs_main). lhs is |S|^k with k = 1, 2, 2, 4, 4, 4, 8 for thm1, thm2,
/// thm3, thm2-remark, thm4, thm5, thm6, and both right-hand sides are raised
/// to the same power. The weights alpha live on I_m; beta (thm5, thm6)
/// lives on I_n and uses seed + 1. Throws HypothesisViolation naming the
/// clause when the parameters fall outside the theorem.
BoundReport theorem_check(const CharContext& ctx, Theorem which, const TheoremParams& params);

/// |K(I_m, I_n)| against q^{m+n} max |K_F(s, at)| over the same ranges.
BoundReport trivial_envelope(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In);

}  // namespace ffk
