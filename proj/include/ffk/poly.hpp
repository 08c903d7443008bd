#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffk/degree.hpp"
#include "ffk/error.hpp"
#include "ffk/field.hpp"

namespace ffk {

/// Element of F_q[T]: little-endian coefficients with no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(FieldElem c) { return Poly(std::vector<FieldElem>{c}); }
  static Poly monomial(FieldElem c, unsigned k) {
    std::vector<FieldElem> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  Degree degree() const { return c_.empty() ? NEG_INF : Degree(static_cast<int>(c_.size()) - 1); }
  FieldElem lead() const { return c_.empty() ? FieldElem{} : c_.back(); }
  FieldElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElem{}; }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

  friend bool operator==(const Poly&, const Poly&) = default;
  friend auto operator<=>(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<FieldElem> c_;
};

struct Factorization {
  FieldElem lead;
  /// Monic irreducible factors with multiplicity, sorted by (degree, index).
  std::vector<std::pair<Poly, unsigned>> factors;
};

class Modulus;

/// Raised by inv_mod when gcd(x, F) != 1.
class NotInvertible : public Error {
 public:
  explicit NotInvertible(Poly gcd) : Error("element is not invertible modulo F"), gcd_(std::move(gcd)) {}
  const Poly& gcd() const { return gcd_; }

 private:
  Poly gcd_;
};

/// Arithmetic and number-theoretic structure of F_q[T].
class PolyRing {
 public:
  explicit PolyRing(FieldPtr field);

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned q() const { return field_->q(); }

  Poly constant(long long c) const { return Poly::constant(field_->from_int(c)); }
  Poly one() const { return constant(1); }
  /// T^k
  Poly t_pow(unsigned k) const { return Poly::monomial(field_->one(), k); }

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(FieldElem c, const Poly& a) const;
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  /// Exact quotient; throws InvalidParameter when b does not divide a.
  Poly exact_div(const Poly& a, const Poly& b) const;
  bool divides(const Poly& d, const Poly& a) const { return rem(a, d).is_zero(); }
  Poly monic(const Poly& a) const;
  Poly pow(const Poly& a, unsigned e) const;
  Poly pow_mod(const Poly& a, std::uint64_t e, const Poly& f) const;

  /// Monic gcd; gcd(0, b) = monic(b); gcd(0, 0) throws UndefinedGcd.
  Poly gcd_monic(const Poly& a, const Poly& b) const;
  /// Returns (g, u, v) with u a + v b = g, g monic.
  struct Bezout {
    Poly g, u, v;
  };
  Bezout ext_gcd(const Poly& a, const Poly& b) const;

  /// Canonical representative modulo F (degree < r).
  Poly canonical_rep(const Poly& x, const Modulus& f) const;
  Degree deg_f(const Poly& x, const Modulus& f) const { return canonical_rep(x, f).degree(); }
  /// The unique x' of degree < r with x x' = 1 (mod F).
  Poly inv_mod(const Poly& x, const Modulus& f) const;
  Poly inv_mod(const Poly& x, const Poly& f) const;

  Factorization factor(const Poly& f) const;
  int mobius(const Poly& f) const;
  unsigned omega(const Poly& f) const;
  std::vector<Poly> monic_divisors(const Poly& f) const;
  /// Number of monic divisors, prod(e_i + 1).
  std::uint64_t divisor_count(const Poly& f) const;
  /// Legendre-Jacobi symbol (t / F)_q; q must be odd.
  int jacobi(const Poly& t, const Modulus& f) const;
  int jacobi(const Poly& t, const Poly& f) const;
  bool is_irreducible(const Poly& f) const;

  /// Index sum_k c_k q^k, coefficients c_k as element indices.
  std::uint64_t index_of(const Poly& a) const;
  Poly from_index(std::uint64_t idx) const;
  /// All polynomials of degree < m in index order.
  std::vector<Poly> all_below(unsigned m) const;
  /// All monic polynomials of exact degree d in index order.
  std::vector<Poly> monic_of_degree(unsigned d) const;

  /// "c0,c1,...,cd" (coefficients as element strings); zero is "0".
  std::string format(const Poly& a) const;
  /// Accepts the format() output; for ell > 1 coefficients may also be
  /// separated by ';' so that each may use the short element form.
  Poly parse(std::string_view text) const;
  /// Human-readable "T^2+2*T+1".
  std::string pretty(const Poly& a) const;

 private:
  FieldPtr field_;
};

/// A nonconstant modulus F with cached degree, leading coefficient and
/// factorisation.
class Modulus {
 public:
  Modulus(const PolyRing& ring, Poly f);

  const Poly& poly() const { return f_; }
  int degree() const { return r_; }
  FieldElem lead() const { return lead_; }
  FieldElem lead_inv() const { return lead_inv_; }
  const Factorization& factorization() const { return factors_; }
  unsigned omega() const { return static_cast<unsigned>(factors_.factors.size()); }
  bool is_irreducible() const {
    return factors_.factors.size() == 1 && factors_.factors.front().second == 1;
  }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.f_ == b.f_; }

 private:
  Poly f_;
  int r_;
  FieldElem lead_;
  FieldElem lead_inv_;
  Factorization factors_;
};

}  // namespace ffk
