#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ffk/cyclotomic.hpp"
#include "ffk/poly.hpp"

namespace ffk {

/// Coefficient of T^{-1} in the Laurent expansion of g/h at infinity.
FieldElem residue_coeff(const PolyRing& ring, const Poly& g, const Poly& h);

/// Residues modulo F are addressed by their index in [0, q^r): the index of
/// the canonical representative. Because field elements are indexed by their
/// base-p coordinates, residue addition is digitwise addition mod p.
using Res = std::uint32_t;
inline constexpr Res kNoRes = UINT32_MAX;

/// Builds a CycValue from a histogram of exponents of zeta_p.
CycValue cyc_from_bins(unsigned p, const std::vector<std::int64_t>& bins);

/// The additive characters modulo F plus table-driven residue arithmetic.
/// Cheap to copy: tables are shared and built on first use.
class CharContext {
 public:
  /// Largest q^r accepted.
  static constexpr std::uint64_t kMaxResidues = std::uint64_t{1} << 22;
  /// Largest q^r for which the q^r x q^r product and sum tables are built.
  static constexpr std::uint64_t kMaxTable = 4096;

  CharContext(const PolyRing& ring, const Poly& f);
  CharContext(FieldPtr field, const Poly& f) : CharContext(PolyRing(std::move(field)), f) {}

  const PolyRing& ring() const;
  const Modulus& modulus() const;
  const FieldSpec& field() const { return ring().field(); }
  unsigned p() const { return field().p(); }
  unsigned q() const { return field().q(); }
  int r() const { return modulus().degree(); }
  /// q^r
  Res size() const;

  Res res(const Poly& x) const;
  Poly poly(Res i) const;
  /// deg_F of a residue; NEG_INF for 0.
  Degree degree(Res i) const;

  /// Exponent of e_F(x) = zeta_p^{psi(x)}.
  unsigned psi(Res i) const;
  unsigned psi(const Poly& x) const { return psi(res(x)); }

  Res add(Res a, Res b) const;
  Res neg(Res a) const;
  Res sub(Res a, Res b) const { return add(a, neg(b)); }
  Res mul(Res a, Res b) const;
  /// Row a of the product table (entry b is a*b), or nullptr when q^r is
  /// above kMaxTable.
  const std::uint16_t* mul_row(Res a) const;
  /// kNoRes for non-units.
  Res inv(Res a) const;
  bool is_unit(Res a) const { return inv(a) != kNoRes; }
  Res sq(Res a) const;
  /// Smallest unit c (by index) with c^2 = a, or kNoRes.
  Res sqrt_unit(Res a) const;
  /// Unit residues in increasing index order.
  const std::vector<Res>& units() const;
  /// inv(units()[i]) for each i.
  const std::vector<Res>& unit_inverses() const;

  CycValue zeta(long long e) const { return CycValue::zeta_pow(p(), e); }
  CycValue e_F(const Poly& x) const;
  /// e_F(lambda x).
  CycValue e_F_lambda(const Poly& lambda, const Poly& x) const;
  /// sum over deg x < m of e_F(x u); closed form (q^m or 0), 1 <= m <= r.
  CycValue interval_char_sum(const Poly& u, unsigned m) const;

  struct Impl;

 private:
  std::shared_ptr<Impl> impl_;
};

}  // namespace ffk
