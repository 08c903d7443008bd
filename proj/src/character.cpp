#include "ffk/character.hpp"

#include <mutex>

namespace ffk {

FieldElem residue_coeff(const PolyRing& ring, const Poly& g, const Poly& h) {
  if (h.is_zero()) throw DivisionByZero("residue_coeff with h = 0");
  const int d = h.degree().value();
  if (d == 0) return FieldElem{};
  const Poly rem = ring.rem(g, h);
  const auto& F = ring.field();
  return F.div(rem.coeff(static_cast<std::size_t>(d - 1)), h.lead());
}

CycValue cyc_from_bins(unsigned p, const std::vector<std::int64_t>& bins) {
  return CycValue::from_bins(p, bins);
}

struct CharContext::Impl {
  PolyRing ring;
  Modulus mod;
  unsigned p, q;
  int r;
  Res n;
  unsigned digits;  // r * ell base-p digits per residue index
  std::vector<Res> pow_p;
  std::vector<std::uint8_t> psi;
  std::vector<Res> neg;

  std::once_flag table_once, inv_once, sq_once;
  std::vector<std::uint16_t> add_tab, mul_tab;
  std::vector<Res> inv_tab, sq_tab, sqrt_tab, units, unit_inv;

  Impl(const PolyRing& R, const Poly& f) : ring(R), mod(R, f) {
    p = R.field().p();
    q = R.q();
    r = mod.degree();
    std::uint64_t total = 1;
    for (int i = 0; i < r; ++i) {
      total *= q;
      if (total > kMaxResidues) throw InvalidParameter("residue ring too large (q^r above 2^22)");
    }
    n = static_cast<Res>(total);
    digits = static_cast<unsigned>(r) * R.field().ell();
    pow_p.resize(digits + 1);
    pow_p[0] = 1;
    for (unsigned i = 1; i <= digits; ++i) pow_p[i] = pow_p[i - 1] * p;

    const auto& F = R.field();
    const Res top = n / q;  // q^{r-1}
    psi.resize(n);
    neg.resize(n);
    for (Res i = 0; i < n; ++i) {
      const FieldElem c{static_cast<std::uint8_t>((i / top) % q)};
      psi[i] = static_cast<std::uint8_t>(F.trace(F.mul(c, mod.lead_inv())));
      Res v = 0;
      Res x = i;
      for (unsigned k = 0; k < digits; ++k) {
        v += ((p - x % p) % p) * pow_p[k];
        x /= p;
      }
      neg[i] = v;
    }
  }

  Res add_slow(Res a, Res b) const {
    Res v = 0;
    for (unsigned k = 0; k < digits; ++k) {
      v += ((a % p + b % p) % p) * pow_p[k];
      a /= p;
      b /= p;
    }
    return v;
  }

  Res res(const Poly& x) const { return static_cast<Res>(ring.index_of(ring.rem(x, mod.poly()))); }

  Res mul_slow(Res a, Res b) const { return res(ring.mul(ring.from_index(a), ring.from_index(b))); }

  bool tabled() const { return n <= kMaxTable; }

  void build_tables() {
    std::call_once(table_once, [this] {
      if (!tabled()) return;
      const std::size_t N = n;
      add_tab.resize(N * N);
      for (Res a = 0; a < n; ++a) {
        for (Res b = 0; b < n; ++b) add_tab[a * N + b] = static_cast<std::uint16_t>(add_slow(a, b));
      }
      // Row x of the product table by linearity in the second argument:
      // y = y_low + c T^k with c its leading coefficient.
      mul_tab.resize(N * N);
      std::vector<Res> scaled(static_cast<std::size_t>(r) * q);
      for (Res x = 0; x < n; ++x) {
        Poly xt = ring.from_index(x);
        for (int k = 0; k < r; ++k) {
          for (unsigned c = 0; c < q; ++c) {
            scaled[k * q + c] = res(ring.scale(FieldElem{static_cast<std::uint8_t>(c)}, xt));
          }
          xt = ring.rem(ring.mul(xt, ring.t_pow(1)), mod.poly());
        }
        std::uint16_t* row = &mul_tab[x * N];
        row[0] = 0;
        Res qk = 1;
        int k = 0;
        for (Res y = 1; y < n; ++y) {
          if (y == qk * q) {
            qk *= q;
            ++k;
          }
          const Res c = y / qk;
          const Res low = y - c * qk;
          row[y] = add_tab[row[low] * N + scaled[k * q + c]];
        }
      }
    });
  }

  void build_squares() {
    std::call_once(sq_once, [this] {
      sq_tab.resize(n);
      for (Res a = 0; a < n; ++a) {
        const Poly x = ring.from_index(a);
        sq_tab[a] = res(ring.mul(x, x));
      }
    });
  }

  void build_inverses() {
    std::call_once(inv_once, [this] {
      build_squares();
      inv_tab.assign(n, kNoRes);
      sqrt_tab.assign(n, kNoRes);
      for (Res a = 1; a < n; ++a) {
        const Poly x = ring.from_index(a);
        if (ring.gcd_monic(x, mod.poly()) != ring.one()) continue;
        inv_tab[a] = res(ring.inv_mod(x, mod.poly()));
        units.push_back(a);
        unit_inv.push_back(inv_tab[a]);
        if (sqrt_tab[sq_tab[a]] == kNoRes) sqrt_tab[sq_tab[a]] = a;
      }
    });
  }
};

CharContext::CharContext(const PolyRing& ring, const Poly& f) : impl_(std::make_shared<Impl>(ring, f)) {}

const PolyRing& CharContext::ring() const { return impl_->ring; }
const Modulus& CharContext::modulus() const { return impl_->mod; }
Res CharContext::size() const { return impl_->n; }

Res CharContext::res(const Poly& x) const { return impl_->res(x); }
Poly CharContext::poly(Res i) const { return impl_->ring.from_index(i); }

Degree CharContext::degree(Res i) const {
  if (i == 0) return NEG_INF;
  int d = -1;
  while (i > 0) {
    i /= impl_->q;
    ++d;
  }
  return d;
}

unsigned CharContext::psi(Res i) const { return impl_->psi[i]; }

Res CharContext::add(Res a, Res b) const {
  if (impl_->tabled()) {
    impl_->build_tables();
    return impl_->add_tab[std::size_t{a} * impl_->n + b];
  }
  return impl_->add_slow(a, b);
}

Res CharContext::neg(Res a) const { return impl_->neg[a]; }

Res CharContext::mul(Res a, Res b) const {
  if (impl_->tabled()) {
    impl_->build_tables();
    return impl_->mul_tab[std::size_t{a} * impl_->n + b];
  }
  return impl_->mul_slow(a, b);
}

const std::uint16_t* CharContext::mul_row(Res a) const {
  if (!impl_->tabled()) return nullptr;
  impl_->build_tables();
  return &impl_->mul_tab[std::size_t{a} * impl_->n];
}

Res CharContext::inv(Res a) const {
  impl_->build_inverses();
  return impl_->inv_tab[a];
}

Res CharContext::sq(Res a) const {
  impl_->build_squares();
  return impl_->sq_tab[a];
}

Res CharContext::sqrt_unit(Res a) const {
  impl_->build_inverses();
  return impl_->sqrt_tab[a];
}

const std::vector<Res>& CharContext::units() const {
  impl_->build_inverses();
  return impl_->units;
}

const std::vector<Res>& CharContext::unit_inverses() const {
  impl_->build_inverses();
  return impl_->unit_inv;
}

CycValue CharContext::e_F(const Poly& x) const { return zeta(psi(res(x))); }

CycValue CharContext::e_F_lambda(const Poly& lambda, const Poly& x) const {
  return e_F(ring().mul(lambda, x));
}

CycValue CharContext::interval_char_sum(const Poly& u, unsigned m) const {
  if (m < 1 || static_cast<int>(m) > r()) throw InvalidParameter("interval_char_sum needs 1 <= m <= r");
  if (degree(res(u)) < Degree(r() - static_cast<int>(m))) {
    BigInt qm = 1;
    for (unsigned i = 0; i < m; ++i) qm *= q();
    return CycValue::from_int(p(), qm);
  }
  return CycValue::from_int(p(), 0);
}

}  // namespace ffk
