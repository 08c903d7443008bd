#include "ffk/cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "ffk/error.hpp"

namespace ffk {
namespace {

// Reduces p exponent bins to basis coordinates.
std::vector<BigInt> reduce(std::vector<BigInt> bins) {
  const std::size_t p = bins.size();
  std::vector<BigInt> c(p - 1);
  for (std::size_t j = 0; j + 1 < p; ++j) c[j] = bins[j] - bins[p - 1];
  return c;
}

}  // namespace

CycValue::CycValue(unsigned p) : p_(p), c_(p ? p - 1 : 0) {
  if (p < 2) throw InvalidParameter("cyclotomic order must be a prime");
}

CycValue CycValue::from_int(unsigned p, const BigInt& n) {
  CycValue z(p);
  z.c_[0] = n;
  return z;
}

CycValue CycValue::zeta_pow(unsigned p, long long k) {
  std::vector<BigInt> bins(p);
  long long e = k % static_cast<long long>(p);
  if (e < 0) e += p;
  bins[static_cast<std::size_t>(e)] = 1;
  CycValue z(p);
  z.c_ = reduce(std::move(bins));
  return z;
}

bool CycValue::is_zero() const {
  for (const auto& x : c_) {
    if (x != 0) return false;
  }
  return true;
}

void CycValue::check_same(const CycValue& o) const {
  if (p_ != o.p_) throw IncompatibleCyclotomicOrder(p_, o.p_);
}

CycValue CycValue::operator+(const CycValue& o) const {
  check_same(o);
  CycValue z(*this);
  for (std::size_t j = 0; j < c_.size(); ++j) z.c_[j] += o.c_[j];
  return z;
}

CycValue CycValue::operator-(const CycValue& o) const {
  check_same(o);
  CycValue z(*this);
  for (std::size_t j = 0; j < c_.size(); ++j) z.c_[j] -= o.c_[j];
  return z;
}

CycValue CycValue::operator-() const {
  CycValue z(*this);
  for (auto& x : z.c_) x = -x;
  return z;
}

CycValue CycValue::operator*(const CycValue& o) const {
  check_same(o);
  std::vector<BigInt> bins(p_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      bins[(i + j) % p_] += c_[i] * o.c_[j];
    }
  }
  CycValue z(p_);
  z.c_ = reduce(std::move(bins));
  return z;
}

CycValue CycValue::operator*(const BigInt& k) const {
  CycValue z(*this);
  for (auto& x : z.c_) x *= k;
  return z;
}

CycValue CycValue::conj() const {
  std::vector<BigInt> bins(p_);
  for (std::size_t j = 0; j < c_.size(); ++j) bins[(p_ - j) % p_] = c_[j];
  CycValue z(p_);
  z.c_ = reduce(std::move(bins));
  return z;
}

CycValue CycValue::abs_sq() const { return *this * conj(); }

std::optional<BigInt> CycValue::as_integer() const {
  for (std::size_t j = 1; j < c_.size(); ++j) {
    if (c_[j] != 0) return std::nullopt;
  }
  return c_.empty() ? BigInt(0) : c_[0];
}

std::complex<long double> CycValue::to_complex() const {
  long double re = 0, im = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const long double a = 2 * std::numbers::pi_v<long double> * j / p_;
    const long double c = c_[j].convert_to<long double>();
    re += c * std::cos(a);
    im += c * std::sin(a);
  }
  return {re, im};
}

std::string CycValue::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const BigInt& c = c_[j];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (negative) {
      s += "-";
    } else if (!s.empty()) {
      s += "+";
    }
    if (j == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += "z";
    if (j > 1) s += "^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

bool CycValue::operator==(const CycValue& o) const {
  check_same(o);
  return c_ == o.c_;
}

}  // namespace ffk
