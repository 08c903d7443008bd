#pragma once

#include <cstdint>
#include <vector>

#include "ffk/character.hpp"
#include "ffk/report.hpp"

namespace ffk {

/// {x + offset : deg x < size_exp}. size_exp = 0 is the single point {offset}.
struct Interval {
  Poly offset;
  unsigned size_exp = 0;

  static Interval initial(unsigned m) { return Interval{Poly{}, m}; }
  bool is_initial() const { return offset.is_zero(); }
};

/// Residues of an interval in enumeration order: x runs through deg x < m in
/// index order and the offset is added last. Requires size_exp <= r.
std::vector<Res> interval_residues(const CharContext& ctx, const Interval& I);

/// H_{F,a}(I_m, I_n) = #{(x1, x2) in I_m x I_n : x1 x2 = a (mod F)}.
std::uint64_t hyperbola_count(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& In);
/// I_{F,a}(I_m) = #{(x1, x2) in I_m^2, both units : 1/x1 + 1/x2 = a (mod F)}.
std::uint64_t inverse_pair_count(const CharContext& ctx, const Poly& a, const Interval& Im);
/// A_{F,a}(I_m, k) = sum over deg h < k of I_{F,ah}(I_m). k may exceed r.
std::uint64_t inverse_avg_count(const CharContext& ctx, const Poly& a, const Interval& Im, unsigned k);

/// Bin counts over residues of 1/x1 + 1/x2 for unit pairs of I_m.
std::vector<std::uint64_t> inverse_sum_histogram(const CharContext& ctx, const Interval& Im);

std::uint64_t energy_inv(const CharContext& ctx, const Interval& Im);
std::uint64_t energy_sq(const CharContext& ctx, const Interval& Im);
/// Energy of Q = {x : deg x < r, deg_F(x^2) < m}.
std::uint64_t energy_sqrt(const CharContext& ctx, unsigned m);

/// Right-hand side of the divisor argument for initial intervals: the number
/// of factorisations x1 x2 = a + tF with deg x1 < m, deg x2 < n is at most
/// (q - 1) times the monic divisor count of a + tF, summed over the t for
/// which a + tF can be such a product; a + tF = 0 contributes q^m + q^n - 1.
std::uint64_t hyperbola_divisor_bound(const CharContext& ctx, const Poly& a, unsigned m, unsigned n);

/// Literal quadruple / pair loops on polynomials, without residue tables.
namespace oracle {
std::uint64_t hyperbola(const PolyRing& R, const Modulus& F, const Poly& a, const Interval& Im,
                        const Interval& In);
std::uint64_t inverse_pair(const PolyRing& R, const Modulus& F, const Poly& a, const Interval& Im);
std::uint64_t energy_inv(const PolyRing& R, const Modulus& F, const Interval& Im);
std::uint64_t energy_sq(const PolyRing& R, const Modulus& F, const Interval& Im);
std::uint64_t energy_sqrt(const PolyRing& R, const Modulus& F, unsigned m);
}  // namespace oracle

/// Comparators against the upper bounds for the counting functions. Each
/// returns a record whose rhs_main is the sum of main terms and whose
/// rhs_exact, when present, is an exact inequality that must hold.
namespace lemma {
/// H(I_m, J_m) vs 1 + q^{3m/2 - r/2} for two intervals of the same size;
/// F irreducible, (a, F) = 1.
BoundReport hyperbola_square(const CharContext& ctx, const Poly& a, const Interval& Im, const Interval& Jm);
/// H(m, n) vs q^{m+n-r} + 1; rhs_exact is hyperbola_divisor_bound.
BoundReport hyperbola_initial(const CharContext& ctx, const Poly& a, unsigned m, unsigned n);
/// I(m) vs 1 + q^{3m/2 - r/2} + q^{2m+d-r}, d = deg gcd(a, F); initial interval.
BoundReport inverse_pair_initial(const CharContext& ctx, const Poly& a, unsigned m);
/// I(I_m) vs q^{2m-r} + q^{m+d/2-r/2} + q^{r/2}; q odd, any interval.
BoundReport inverse_pair_interval(const CharContext& ctx, const Poly& a, const Interval& Im);
/// A(m, k) vs q^m + q^k + q^{2m-r+k} + q^{3m/2-r/2+k}.
BoundReport inverse_avg_initial(const CharContext& ctx, const Poly& a, unsigned m, unsigned k);
/// A(I_m, k) vs q^m + q^{2m-r+k} + q^{r/2+k} + q^{m+k-r/2}.
BoundReport inverse_avg_interval(const CharContext& ctx, const Poly& a, const Interval& Im, unsigned k);
/// A(m, k) vs q^{2m-r/2+k/2} + q^{2m-r+k} + q^m; (a, F) = 1.
BoundReport inverse_avg_coprime(const CharContext& ctx, const Poly& a, unsigned m, unsigned k);
/// E^inv(I_m) vs min(q^{4m-r} + q^{2m+r/2}, q^{7m/2-r/2} + q^{2m});
/// rhs_exact = q^{2m}(1 + max_{b != 0} I_b(I_m)).
BoundReport energy_inv(const CharContext& ctx, const Interval& Im);
/// E^sq(I_m) vs q^{4m-r} + q^{2m}.
BoundReport energy_sq(const CharContext& ctx, const Interval& Im);
/// E^sqrt(m) vs q^{7m/2-r/2} + q^{2m}.
BoundReport energy_sqrt(const CharContext& ctx, unsigned m);
}  // namespace lemma

}  // namespace ffk
