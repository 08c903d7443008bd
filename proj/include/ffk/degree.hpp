#pragma once

#include <climits>
#include <compare>
#include <string>

namespace ffk {

/// Degree of a polynomial. The zero polynomial has degree NEG_INF, which
/// compares below every integer and absorbs addition (NEG_INF + k == NEG_INF).
class Degree {
 public:
  constexpr Degree(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Degree neg_inf() { return Degree(kNegInf, Tag{}); }

  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  constexpr int value() const { return v_; }

  friend constexpr Degree operator+(Degree d, int k) {
    return d.is_neg_inf() ? d : Degree(d.v_ + k);
  }
  friend constexpr Degree operator+(int k, Degree d) { return d + k; }
  friend constexpr Degree operator-(Degree d, int k) { return d + (-k); }

  friend constexpr bool operator==(Degree a, Degree b) = default;
  friend constexpr auto operator<=>(Degree a, Degree b) { return a.v_ <=> b.v_; }

  std::string to_string() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

 private:
  struct Tag {};
  static constexpr int kNegInf = INT_MIN;
  constexpr Degree(int v, Tag) : v_(v) {}
  int v_;
};

inline constexpr Degree NEG_INF = Degree::neg_inf();

}  // namespace ffk
