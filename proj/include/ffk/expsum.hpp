#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffk/character.hpp"

namespace ffk {

/// K_F(s, t): sum over units x mod F of e_F(s x + t x^{-1}).
CycValue kloosterman(const CharContext& ctx, const Poly& s, const Poly& t);
CycValue kloosterman(const CharContext& ctx, Res s, Res t);
/// Exponent histogram of K_F(s, t) (bin j counts terms equal to zeta^j).
std::vector<std::int64_t> kloosterman_bins(const CharContext& ctx, Res s, Res t);

/// Result of an evaluation that is exact in Z[zeta_p] on some branches and
/// floating point on others (odd powers of q^{1/2}).
struct MixedValue {
  std::optional<CycValue> exact;
  std::complex<long double> approx;
  /// Branch names taken, in evaluation order.
  std::vector<std::string> branches;

  bool is_exact() const { return exact.has_value(); }
  std::complex<long double> to_complex() const { return exact ? exact->to_complex() : approx; }
};

/// K_F(s, t) from the factorisation of F: twisted multiplicativity across
/// coprime prime-power components, brute force on squarefree components,
/// and the prime-power closed forms otherwise. Even q with a repeated factor
/// raises UnsupportedCharacteristic.
MixedValue kloosterman_explicit(const CharContext& ctx, const Poly& s, const Poly& t);

/// Reusable form of kloosterman_explicit that keeps the residue tables of
/// every component modulus it meets. Not safe for concurrent use.
class KloostermanEvaluator {
 public:
  explicit KloostermanEvaluator(CharContext ctx);
  MixedValue operator()(const Poly& s, const Poly& t);
  const CharContext& context() const { return ctx_; }

 private:
  const CharContext& sub_context(const Poly& M);
  MixedValue prime_power(const Poly& M, const Poly& P, unsigned j, const Poly& s, const Poly& t);

  CharContext ctx_;
  std::map<Poly, CharContext> cache_;
};

/// The fourth root of unity with G_F(0, 1) = q^{r/2} eps_F; q odd.
std::complex<long double> epsilon_F(const CharContext& ctx);

CycValue gauss(const CharContext& ctx, const Poly& s, const Poly& t);
CycValue gauss(const CharContext& ctx, Res s, Res t);
CycValue gauss_reduced(const CharContext& ctx, const Poly& s, const Poly& t);
CycValue ramanujan(const CharContext& ctx, const Poly& s);

/// sum over deg t < r of K_F(u, t) K_F(v, t) e_F(-a t). Refuses r log2 q > 16.
CycValue t_sum(const CharContext& ctx, const Poly& u, const Poly& v, const Poly& a);

}  // namespace ffk
