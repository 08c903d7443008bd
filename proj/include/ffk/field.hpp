#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffk {

/// Element of F_q stored as its index sum_j a_j p^j, where a_j are the
/// coordinates in the power basis of the extension modulus.
struct FieldElem {
  std::uint8_t v = 0;

  constexpr bool is_zero() const { return v == 0; }
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// The finite field F_q, q = p^ell, p <= 13 and q <= 169. Immutable; all
/// arithmetic goes through precomputed tables.
class FieldSpec {
 public:
  static constexpr unsigned kMaxPrime = 13;
  static constexpr unsigned kMaxOrder = 169;

  /// Prime field (ell = 1) or extension of degree ell. Without an explicit
  /// modulus the lexicographically smallest monic irreducible (compared on
  /// c0, c1, ... in that order) is used. An explicit modulus is normalised to
  /// be monic.
  static std::shared_ptr<const FieldSpec> create(
      unsigned p, unsigned ell = 1, std::optional<std::vector<unsigned>> ext_modulus = std::nullopt);

  /// Parses "p", "p^l" or "p^l:c0,c1,...,cl".
  static std::shared_ptr<const FieldSpec> parse(std::string_view text);

  unsigned p() const { return p_; }
  unsigned ell() const { return ell_; }
  unsigned q() const { return q_; }
  /// Monic, little-endian, length ell + 1. Empty for a prime field.
  const std::vector<unsigned>& ext_modulus() const { return ext_modulus_; }

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  /// Image of an integer in the prime subfield.
  FieldElem from_int(long long c) const;
  FieldElem from_index(unsigned idx) const;
  FieldElem from_coeffs(std::span<const unsigned> coeffs) const;
  std::vector<unsigned> coeffs(FieldElem x) const;
  /// Index of a prime-subfield element, or nullopt when x is not in F_p.
  std::optional<unsigned> prime_value(FieldElem x) const;

  FieldElem add(FieldElem a, FieldElem b) const { return FieldElem{add_[idx(a, b)]}; }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem neg(FieldElem a) const { return FieldElem{neg_[a.v]}; }
  FieldElem mul(FieldElem a, FieldElem b) const { return FieldElem{mul_[idx(a, b)]}; }
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const;

  /// Absolute trace F_q -> F_p, returned as an integer in [0, p).
  unsigned trace(FieldElem x) const { return trace_[x.v]; }
  /// Quadratic character via Euler's criterion; q must be odd.
  int quad_char(FieldElem x) const;

  /// Text form accepted by parse().
  std::string to_string() const;
  std::string format(FieldElem x) const;
  FieldElem parse_elem(std::string_view text) const;

  bool operator==(const FieldSpec& other) const {
    return p_ == other.p_ && ell_ == other.ell_ && ext_modulus_ == other.ext_modulus_;
  }

  FieldSpec(unsigned p, unsigned ell, std::vector<unsigned> ext_modulus);

 private:
  std::size_t idx(FieldElem a, FieldElem b) const { return std::size_t{a.v} * q_ + b.v; }

  unsigned p_;
  unsigned ell_;
  unsigned q_;
  std::vector<unsigned> ext_modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
  std::vector<std::uint8_t> inv_;
  std::vector<std::uint8_t> trace_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

bool is_prime(unsigned n);

/// Smallest monic irreducible of degree ell over F_p (little-endian
/// lexicographic order on the non-leading coefficients).
std::vector<unsigned> default_ext_modulus(unsigned p, unsigned ell);

/// Trial division by every monic polynomial of degree <= deg/2 over F_p.
bool is_irreducible_over_prime_field(unsigned p, const std::vector<unsigned>& poly);

}  // namespace ffk
