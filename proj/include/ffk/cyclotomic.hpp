#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffk {

using BigInt = boost::multiprecision::cpp_int;

/// Exact element of Z[zeta_p], stored in the basis 1, zeta, ..., zeta^{p-2}.
class CycValue {
 public:
  CycValue() = default;
  explicit CycValue(unsigned p);

  static CycValue from_int(unsigned p, const BigInt& n);
  static CycValue zeta_pow(unsigned p, long long k);
  /// sum_j bins[j] zeta^j for a histogram of p exponent bins.
  template <class Int>
  static CycValue from_bins(unsigned p, const std::vector<Int>& bins) {
    CycValue z(p);
    const BigInt top = p ? BigInt(bins.at(p - 1)) : BigInt(0);
    for (unsigned j = 0; j + 1 < p; ++j) z.c_[j] = BigInt(bins.at(j)) - top;
    return z;
  }

  unsigned p() const { return p_; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const;

  CycValue operator+(const CycValue& o) const;
  CycValue operator-(const CycValue& o) const;
  CycValue operator-() const;
  CycValue operator*(const CycValue& o) const;
  CycValue operator*(const BigInt& k) const;
  CycValue& operator+=(const CycValue& o) { return *this = *this + o; }
  CycValue& operator*=(const CycValue& o) { return *this = *this * o; }

  /// zeta^j -> zeta^{-j}.
  CycValue conj() const;
  /// z * conj(z), an element of the real subring.
  CycValue abs_sq() const;
  /// The value when it lies in Z.
  std::optional<BigInt> as_integer() const;
  std::complex<long double> to_complex() const;
  std::complex<double> to_complex_d() const {
    const auto z = to_complex();
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }

  /// "2+z^2+z^3"; zero prints as "0".
  std::string to_string() const;

  bool operator==(const CycValue& o) const;

 private:
  void check_same(const CycValue& o) const;
  unsigned p_ = 0;
  std::vector<BigInt> c_;
};

}  // namespace ffk
