#include "ffk/field.hpp"

#include <algorithm>

#include "ffk/error.hpp"
#include "text_util.hpp"

namespace ffk {
namespace {

using PrimePoly = std::vector<unsigned>;

void trim_poly(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

unsigned inv_mod_prime(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  throw DivisionByZero("inverse of zero in F_p");
}

// Remainder of f modulo g over F_p; g nonzero.
PrimePoly rem_prime(PrimePoly f, const PrimePoly& g, unsigned p) {
  trim_poly(f);
  const std::size_t dg = g.size() - 1;
  const unsigned lead_inv = inv_mod_prime(g.back(), p);
  while (f.size() > dg) {
    const unsigned c = f.back() * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
    }
    trim_poly(f);
  }
  return f;
}

PrimePoly digits(unsigned idx, unsigned p, unsigned len) {
  PrimePoly d(len);
  for (unsigned i = 0; i < len; ++i) {
    d[i] = idx % p;
    idx /= p;
  }
  return d;
}

unsigned undigits(const PrimePoly& d, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_over_prime_field(unsigned p, const PrimePoly& poly) {
  PrimePoly f = poly;
  trim_poly(f);
  if (f.size() < 2) return false;
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned idx = 0; idx < count; ++idx) {
      PrimePoly g = digits(idx, p, d);
      g.push_back(1);
      if (rem_prime(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<unsigned> default_ext_modulus(unsigned p, unsigned ell) {
  unsigned count = 1;
  for (unsigned i = 0; i < ell; ++i) count *= p;
  PrimePoly best;
  for (unsigned idx = 0; idx < count; ++idx) {
    PrimePoly cand = digits(idx, p, ell);
    cand.push_back(1);
    if (!is_irreducible_over_prime_field(p, cand)) continue;
    if (best.empty() || std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end())) {
      best = cand;
    }
  }
  if (best.empty()) throw InvalidField("no irreducible polynomial of requested degree");
  return best;
}

FieldSpec::FieldSpec(unsigned p, unsigned ell, std::vector<unsigned> ext_modulus)
    : p_(p), ell_(ell), q_(1), ext_modulus_(std::move(ext_modulus)) {
  for (unsigned i = 0; i < ell_; ++i) q_ *= p_;

  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  trace_.resize(q_);

  for (unsigned a = 0; a < q_; ++a) {
    const PrimePoly da = digits(a, p_, ell_);
    PrimePoly dn(ell_);
    for (unsigned i = 0; i < ell_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<std::uint8_t>(undigits(dn, p_));
    for (unsigned b = 0; b < q_; ++b) {
      const PrimePoly db = digits(b, p_, ell_);
      PrimePoly s(ell_);
      for (unsigned i = 0; i < ell_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[std::size_t{a} * q_ + b] = static_cast<std::uint8_t>(undigits(s, p_));

      PrimePoly prod(2 * ell_, 0);
      for (unsigned i = 0; i < ell_; ++i) {
        for (unsigned j = 0; j < ell_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      }
      if (ell_ > 1) prod = rem_prime(prod, ext_modulus_, p_);
      prod.resize(ell_, 0);
      mul_[std::size_t{a} * q_ + b] = static_cast<std::uint8_t>(undigits(prod, p_) % q_);
    }
  }
  for (unsigned a = 1; a < q_; ++a) {
    for (unsigned b = 1; b < q_; ++b) {
      if (mul_[std::size_t{a} * q_ + b] == 1) {
        inv_[a] = static_cast<std::uint8_t>(b);
        break;
      }
    }
  }
  // Tr(x) = x + x^p + ... + x^{p^{ell-1}}; the sum lands in the prime subfield.
  for (unsigned a = 0; a < q_; ++a) {
    FieldElem x{static_cast<std::uint8_t>(a)};
    FieldElem acc = zero();
    FieldElem frob = x;
    for (unsigned i = 0; i < ell_; ++i) {
      acc = add(acc, frob);
      frob = pow(frob, p_);
    }
    const auto v = prime_value(acc);
    if (!v) throw InvalidField("trace left the prime subfield; modulus is not irreducible");
    trace_[a] = static_cast<std::uint8_t>(*v);
  }
}

std::shared_ptr<const FieldSpec> FieldSpec::create(unsigned p, unsigned ell,
                                                   std::optional<std::vector<unsigned>> ext_modulus) {
  if (!is_prime(p)) throw InvalidField(std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw InvalidField("characteristic above supported range (p <= 13)");
  if (ell == 0) throw InvalidField("extension degree must be positive");
  unsigned q = 1;
  for (unsigned i = 0; i < ell; ++i) {
    q *= p;
    if (q > kMaxOrder) throw InvalidField("field order above supported range (q <= 169)");
  }
  std::vector<unsigned> modulus;
  if (ell > 1) {
    if (ext_modulus) {
      modulus = *ext_modulus;
      for (auto& c : modulus) c %= p;
      trim_poly(modulus);
      if (modulus.size() != ell + 1) throw InvalidField("extension modulus must have degree ell");
      const unsigned li = inv_mod_prime(modulus.back(), p);
      for (auto& c : modulus) c = c * li % p;
      if (!is_irreducible_over_prime_field(p, modulus)) {
        throw InvalidField("extension modulus is reducible over F_p");
      }
    } else {
      modulus = default_ext_modulus(p, ell);
    }
  } else if (ext_modulus && !ext_modulus->empty()) {
    auto m = *ext_modulus;
    trim_poly(m);
    if (m.size() != 2) throw InvalidField("a prime field takes no extension modulus");
  }
  return std::make_shared<const FieldSpec>(p, ell, std::move(modulus));
}

std::shared_ptr<const FieldSpec> FieldSpec::parse(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const auto caret = head.find('^');
  long long p = detail::parse_int(head.substr(0, caret));
  long long ell = caret == std::string_view::npos ? 1 : detail::parse_int(head.substr(caret + 1));
  if (p <= 0 || ell <= 0) throw ParseError("field spec needs positive p and l");
  // A bare prime power such as "9" means p^ell.
  if (caret == std::string_view::npos && p > 1) {
    long long base = 2;
    while (p % base != 0) ++base;
    long long rest = p;
    unsigned e = 0;
    while (rest % base == 0) {
      rest /= base;
      ++e;
    }
    if (rest == 1 && e > 1) {
      p = base;
      ell = e;
    }
  }
  std::optional<std::vector<unsigned>> modulus;
  if (colon != std::string_view::npos) {
    std::vector<unsigned> m;
    for (auto part : detail::split(text.substr(colon + 1), ',')) {
      const long long c = detail::parse_int(part);
      if (c < 0) throw ParseError("negative modulus coefficient");
      m.push_back(static_cast<unsigned>(c));
    }
    modulus = std::move(m);
  }
  return create(static_cast<unsigned>(p), static_cast<unsigned>(ell), std::move(modulus));
}

FieldElem FieldSpec::from_int(long long c) const {
  long long r = c % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return FieldElem{static_cast<std::uint8_t>(r)};
}

FieldElem FieldSpec::from_index(unsigned idx) const {
  if (idx >= q_) throw InvalidParameter("field element index out of range");
  return FieldElem{static_cast<std::uint8_t>(idx)};
}

FieldElem FieldSpec::from_coeffs(std::span<const unsigned> coeffs) const {
  if (coeffs.size() > ell_) throw InvalidParameter("too many field element coordinates");
  PrimePoly d(ell_, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) d[i] = coeffs[i] % p_;
  return FieldElem{static_cast<std::uint8_t>(undigits(d, p_))};
}

std::vector<unsigned> FieldSpec::coeffs(FieldElem x) const { return digits(x.v, p_, ell_); }

std::optional<unsigned> FieldSpec::prime_value(FieldElem x) const {
  if (x.v < p_) return x.v;
  return std::nullopt;
}

FieldElem FieldSpec::inv(FieldElem a) const {
  if (a.is_zero()) throw DivisionByZero("inverse of zero field element");
  return FieldElem{inv_[a.v]};
}

FieldElem FieldSpec::pow(FieldElem a, std::uint64_t e) const {
  FieldElem result = one();
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return result;
}

int FieldSpec::quad_char(FieldElem x) const {
  if (p_ == 2) throw UnsupportedCharacteristic("quadratic character needs odd q");
  if (x.is_zero()) return 0;
  return pow(x, (q_ - 1) / 2) == one() ? 1 : -1;
}

std::string FieldSpec::to_string() const {
  std::string s = std::to_string(p_);
  if (ell_ > 1) {
    s += "^" + std::to_string(ell_) + ":";
    for (std::size_t i = 0; i < ext_modulus_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(ext_modulus_[i]);
    }
  }
  return s;
}

std::string FieldSpec::format(FieldElem x) const {
  if (ell_ == 1) return std::to_string(x.v);
  std::string s;
  const auto d = coeffs(x);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s;
}

FieldElem FieldSpec::parse_elem(std::string_view text) const {
  std::vector<unsigned> d;
  for (auto part : detail::split(text, ',')) {
    const long long c = detail::parse_int(part);
    long long r = c % static_cast<long long>(p_);
    if (r < 0) r += p_;
    d.push_back(static_cast<unsigned>(r));
  }
  if (d.size() > ell_) throw ParseError("field element has more than l coordinates");
  return from_coeffs(d);
}

}  // namespace ffk
