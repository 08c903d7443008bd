#include "ffk/poly.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace ffk {

PolyRing::PolyRing(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw InvalidField("null field");
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const auto& F = *field_;
  std::vector<FieldElem> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  const auto& F = *field_;
  std::vector<FieldElem> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly PolyRing::neg(const Poly& a) const {
  std::vector<FieldElem> c(a.coeffs());
  for (auto& x : c) x = field_->neg(x);
  return Poly(std::move(c));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& F = *field_;
  std::vector<FieldElem> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = F.add(c[i + j], F.mul(a.coeff(i), b.coeff(j)));
    }
  }
  return Poly(std::move(c));
}

Poly PolyRing::scale(FieldElem c, const Poly& a) const {
  std::vector<FieldElem> v(a.coeffs());
  for (auto& x : v) x = field_->mul(c, x);
  return Poly(std::move(v));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const auto& F = *field_;
  if (a.size() < b.size()) return {Poly{}, a};
  std::vector<FieldElem> r(a.coeffs());
  std::vector<FieldElem> quo(a.size() - b.size() + 1);
  const FieldElem li = F.inv(b.lead());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    const FieldElem c = F.mul(r[k], li);
    if (c.is_zero()) continue;
    const std::size_t shift = k - db;
    quo[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b.coeff(i)));
  }
  r.resize(db);
  return {Poly(std::move(quo)), Poly(std::move(r))};
}

Poly PolyRing::exact_div(const Poly& a, const Poly& b) const {
  auto [quo, rem] = divmod(a, b);
  if (!rem.is_zero()) throw InvalidParameter("exact division with nonzero remainder");
  return quo;
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(field_->inv(a.lead()), a);
}

Poly PolyRing::pow(const Poly& a, unsigned e) const {
  Poly result = one();
  Poly base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e) base = mul(base, base);
  }
  return result;
}

Poly PolyRing::pow_mod(const Poly& a, std::uint64_t e, const Poly& f) const {
  Poly result = rem(one(), f);
  Poly base = rem(a, f);
  while (e > 0) {
    if (e & 1U) result = rem(mul(result, base), f);
    e >>= 1U;
    if (e) base = rem(mul(base, base), f);
  }
  return result;
}

Poly PolyRing::gcd_monic(const Poly& a, const Poly& b) const {
  if (a.is_zero() && b.is_zero()) throw UndefinedGcd();
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

PolyRing::Bezout PolyRing::ext_gcd(const Poly& a, const Poly& b) const {
  if (a.is_zero() && b.is_zero()) throw UndefinedGcd();
  Poly r0 = a, r1 = b;
  Poly u0 = one(), u1{};
  Poly v0{}, v1 = one();
  while (!r1.is_zero()) {
    auto [quo, r2] = divmod(r0, r1);
    Poly u2 = sub(u0, mul(quo, u1));
    Poly v2 = sub(v0, mul(quo, v1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  const FieldElem li = field_->inv(r0.lead());
  return {scale(li, r0), scale(li, u0), scale(li, v0)};
}

Poly PolyRing::canonical_rep(const Poly& x, const Modulus& f) const { return rem(x, f.poly()); }

Poly PolyRing::inv_mod(const Poly& x, const Poly& f) const {
  const Poly xr = rem(x, f);
  if (xr.is_zero()) throw NotInvertible(monic(f));
  auto bz = ext_gcd(xr, f);
  if (bz.g != one()) throw NotInvertible(bz.g);
  return rem(bz.u, f);
}

Poly PolyRing::inv_mod(const Poly& x, const Modulus& f) const { return inv_mod(x, f.poly()); }

std::uint64_t PolyRing::index_of(const Poly& a) const {
  std::uint64_t idx = 0;
  for (std::size_t i = a.size(); i-- > 0;) idx = idx * q() + a.coeff(i).v;
  return idx;
}

Poly PolyRing::from_index(std::uint64_t idx) const {
  std::vector<FieldElem> c;
  while (idx > 0) {
    c.push_back(FieldElem{static_cast<std::uint8_t>(idx % q())});
    idx /= q();
  }
  return Poly(std::move(c));
}

std::vector<Poly> PolyRing::all_below(unsigned m) const {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= q();
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(from_index(i));
  return out;
}

std::vector<Poly> PolyRing::monic_of_degree(unsigned d) const {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= q();
  std::uint64_t top = count;  // q^d, the index of T^d
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(from_index(top + i));
  return out;
}

Factorization PolyRing::factor(const Poly& f) const {
  if (f.is_zero() || f.degree() < Degree(1)) throw NotFactorable("factor needs a nonconstant polynomial");
  Factorization out;
  out.lead = f.lead();
  Poly rest = monic(f);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(rest.degree().value()); ++d) {
    for (const Poly& cand : monic_of_degree(d)) {
      if (2 * d > static_cast<unsigned>(rest.degree().value())) break;
      unsigned e = 0;
      for (;;) {
        auto [quo, r] = divmod(rest, cand);
        if (!r.is_zero()) break;
        rest = std::move(quo);
        ++e;
      }
      if (e) out.factors.emplace_back(cand, e);
    }
  }
  if (rest.degree() >= Degree(1)) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  Poly check = Poly::constant(out.lead);
  for (const auto& [p, e] : out.factors) check = mul(check, pow(p, e));
  if (check != f) throw Error("internal: factorisation does not reconstruct input");
  return out;
}

int PolyRing::mobius(const Poly& f) const {
  if (f.is_zero()) throw NotFactorable("mobius of zero");
  if (f.degree() == Degree(0)) return 1;
  const auto fac = factor(f);
  for (const auto& pe : fac.factors) {
    if (pe.second > 1) return 0;
  }
  return fac.factors.size() % 2 ? -1 : 1;
}

unsigned PolyRing::omega(const Poly& f) const {
  if (f.is_zero()) throw NotFactorable("omega of zero");
  if (f.degree() == Degree(0)) return 0;
  return static_cast<unsigned>(factor(f).factors.size());
}

std::vector<Poly> PolyRing::monic_divisors(const Poly& f) const {
  if (f.is_zero()) throw NotFactorable("divisors of zero");
  std::vector<Poly> out{one()};
  if (f.degree() == Degree(0)) return out;
  for (const auto& [p, e] : factor(f).factors) {
    std::vector<Poly> next;
    for (const Poly& d : out) {
      Poly acc = d;
      next.push_back(acc);
      for (unsigned i = 0; i < e; ++i) {
        acc = mul(acc, p);
        next.push_back(acc);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t PolyRing::divisor_count(const Poly& f) const {
  if (f.is_zero()) throw NotFactorable("divisors of zero");
  if (f.degree() == Degree(0)) return 1;
  std::uint64_t n = 1;
  for (const auto& pe : factor(f).factors) n *= pe.second + 1;
  return n;
}

namespace {

int jacobi_from_factors(const PolyRing& R, const Poly& t, const Factorization& fac) {
  if (R.field().p() == 2) throw UnsupportedCharacteristic("Jacobi symbol needs odd q");
  int result = 1;
  for (const auto& [P, e] : fac.factors) {
    const Poly tr = R.rem(t, P);
    if (tr.is_zero()) return 0;
    std::uint64_t qd = 1;
    for (int i = 0; i < P.degree().value(); ++i) qd *= R.q();
    const Poly euler = R.pow_mod(tr, (qd - 1) / 2, P);
    int sym;
    if (euler == R.one()) {
      sym = 1;
    } else if (euler == R.constant(-1)) {
      sym = -1;
    } else {
      throw Error("internal: Euler criterion produced a non-sign value");
    }
    if (e % 2 == 1) result *= sym;
  }
  return result;
}

}  // namespace

int PolyRing::jacobi(const Poly& t, const Modulus& f) const {
  return jacobi_from_factors(*this, t, f.factorization());
}

int PolyRing::jacobi(const Poly& t, const Poly& f) const { return jacobi_from_factors(*this, t, factor(f)); }

bool PolyRing::is_irreducible(const Poly& f) const {
  if (f.is_zero() || f.degree() < Degree(1)) return false;
  const auto fac = factor(f);
  return fac.factors.size() == 1 && fac.factors.front().second == 1;
}

std::string PolyRing::format(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += field_->format(a.coeff(i));
  }
  return s;
}

Poly PolyRing::parse(std::string_view text) const {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("empty polynomial");
  std::vector<FieldElem> c;
  if (text.find(';') != std::string_view::npos) {
    for (auto part : detail::split(text, ';')) c.push_back(field_->parse_elem(part));
    return Poly(std::move(c));
  }
  const auto parts = detail::split(text, ',');
  const unsigned ell = field_->ell();
  if (ell == 1 || parts.size() == 1) {
    for (auto part : parts) c.push_back(field_->parse_elem(part));
    return Poly(std::move(c));
  }
  if (parts.size() % ell != 0) {
    throw ParseError("flat coefficient list length must be a multiple of l (or use ';' between coefficients)");
  }
  for (std::size_t i = 0; i < parts.size(); i += ell) {
    std::vector<unsigned> d;
    for (unsigned j = 0; j < ell; ++j) {
      long long v = detail::parse_int(parts[i + j]) % static_cast<long long>(field_->p());
      if (v < 0) v += field_->p();
      d.push_back(static_cast<unsigned>(v));
    }
    c.push_back(field_->from_coeffs(d));
  }
  return Poly(std::move(c));
}

std::string PolyRing::pretty(const Poly& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    const FieldElem c = a.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += "+";
    std::string cs = field_->format(c);
    if (field_->ell() > 1) cs = "(" + cs + ")";
    const bool unit = c == field_->one();
    if (i == 0) {
      s += cs;
      continue;
    }
    if (!unit) s += cs + "*";
    s += "T";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Modulus::Modulus(const PolyRing& ring, Poly f) : f_(std::move(f)) {
  if (f_.is_zero() || f_.degree() < Degree(1)) throw InvalidParameter("modulus must be nonconstant");
  r_ = f_.degree().value();
  lead_ = f_.lead();
  lead_inv_ = ring.field().inv(lead_);
  factors_ = ring.factor(f_);
}

}  // namespace ffk
