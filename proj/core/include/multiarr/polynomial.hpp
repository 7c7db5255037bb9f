#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multiarr/errors.hpp"
#include "multiarr/monomial.hpp"
#include "multiarr/rings.hpp"

namespace multiarr {

/// Sparse multivariate polynomial over an exact coefficient ring R.
/// Terms are kept strictly sorted, leading term first, under the stored
/// monomial order; no zero coefficients are stored. Values are immutable in
/// spirit: every operation returns a fresh polynomial.
template <class R>
class Polynomial {
 public:
  using Elem = typename R::Elem;
  struct Term {
    Monomial mono;
    Elem coeff;
  };

  Polynomial(R ring, std::size_t nvars, MonomialOrder order = MonomialOrder::grevlex())
      : ring_(ring), nvars_(nvars), order_(order) {}

  static Polynomial zero(R ring, std::size_t nvars,
                         MonomialOrder order = MonomialOrder::grevlex()) {
    return Polynomial(ring, nvars, order);
  }

  static Polynomial constant(R ring, std::size_t nvars, Elem c,
                             MonomialOrder order = MonomialOrder::grevlex()) {
    Polynomial p(ring, nvars, order);
    if (!ring.is_zero(c)) p.terms_.push_back({Monomial(nvars), std::move(c)});
    return p;
  }

  static Polynomial variable(R ring, std::size_t nvars, std::size_t i,
                             MonomialOrder order = MonomialOrder::grevlex()) {
    if (i >= nvars) throw DomainError("variable index out of range");
    Monomial m(nvars);
    m[i] = 1;
    Polynomial p(ring, nvars, order);
    p.terms_.push_back({std::move(m), ring.one()});
    return p;
  }

  static Polynomial from_term(R ring, Monomial m, Elem c,
                              MonomialOrder order = MonomialOrder::grevlex()) {
    Polynomial p(ring, m.nvars(), order);
    if (!ring.is_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  /// Build from arbitrary (monomial, coefficient) pairs: sorts and combines.
  static Polynomial from_terms(R ring, std::size_t nvars, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::grevlex()) {
    Polynomial p(ring, nvars, order);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const R& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const Term& leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }

  /// Total degree (of the highest-degree term; equals every term's degree for
  /// homogeneous polynomials). Zero polynomial has degree 0 by convention.
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const std::uint32_t d = terms_.front().mono.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const Term& t) { return t.mono.degree() == d; });
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  /// Coefficient of the constant term (ring zero if absent).
  Elem constant_coefficient() const {
    for (const auto& t : terms_)
      if (t.mono.is_one()) return t.coeff;
    return ring_.zero();
  }

  Elem coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return ring_.zero();
  }

  bool operator==(const Polynomial& o) const {
    if (!ring_.same(o.ring_) || nvars_ != o.nvars_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].mono != o.terms_[i].mono) return false;
      if (!ring_.eq(terms_[i].coeff, o.terms_[i].coeff)) return false;
    }
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = ring_.neg(t.coeff);
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    require_compatible(o, "poly_add");
    Polynomial r(ring_, nvars_, order_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = order_.cmp(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Elem s = ring_.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!ring_.is_zero(s)) r.terms_.push_back({terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    require_compatible(o, "poly_mul");
    Polynomial r(ring_, nvars_, order_);
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        r.terms_.push_back({a.mono.mul(b.mono), ring_.mul(a.coeff, b.coeff)});
    r.normalize();
    return r;
  }

  Polynomial mul_term(const Monomial& m, const Elem& c) const {
    Polynomial r(ring_, nvars_, order_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Elem p = ring_.mul(t.coeff, c);
      if (!ring_.is_zero(p)) r.terms_.push_back({t.mono.mul(m), std::move(p)});
    }
    return r;  // multiplying by a monomial preserves the term ordering
  }

  Polynomial scale(const Elem& c) const { return mul_term(Monomial(nvars_), c); }

  Polynomial pow(std::uint32_t e) const {
    Polynomial r = constant(ring_, nvars_, ring_.one(), order_);
    Polynomial b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Formal partial derivative. Over GF(p), exponents divisible by p vanish.
  Polynomial derivative(std::size_t var) const {
    if (var >= nvars_) throw DomainError("poly_derivative: variable index out of range");
    Polynomial r(ring_, nvars_, order_);
    for (const auto& t : terms_) {
      const std::uint32_t e = t.mono[var];
      if (e == 0) continue;
      Elem c = ring_.mul(t.coeff, ring_.from_int(static_cast<long>(e)));
      if (ring_.is_zero(c)) continue;
      Monomial m = t.mono;
      m[var] = e - 1;
      r.terms_.push_back({std::move(m), std::move(c)});
    }
    r.normalize();
    return r;
  }

  /// Re-sort the terms under a different monomial order.
  Polynomial with_order(MonomialOrder order) const {
    if (order == order_) return *this;
    Polynomial r(ring_, nvars_, order);
    r.terms_ = terms_;
    r.sort_terms();
    return r;
  }

  /// Lift into a ring context with one extra (front) variable.
  Polynomial prepend_var(MonomialOrder order) const {
    Polynomial r(ring_, nvars_ + 1, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.prepend_var(), t.coeff});
    r.sort_terms();
    return r;
  }

  /// Inverse of prepend_var; every term must be free of the front variable.
  Polynomial drop_front_var(MonomialOrder order) const {
    Polynomial r(ring_, nvars_ - 1, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.drop_front_var(), t.coeff});
    r.sort_terms();
    return r;
  }

  std::string to_string(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      std::string c = ring_.to_string(terms_[i].coeff);
      bool negative = !c.empty() && c[0] == '-';
      if (i == 0) {
        if (negative) {
          s += "-";
          c = c.substr(1);
        }
      } else {
        s += negative ? " - " : " + ";
        if (negative) c = c.substr(1);
      }
      const std::string m = terms_[i].mono.to_string(vars);
      if (m == "1") {
        s += c;
      } else if (c == "1") {
        s += m;
      } else {
        s += c + "*" + m;
      }
    }
    return s;
  }

  void check_same_context(const Polynomial& o, const char* op) const { require_compatible(o, op); }

 private:
  void require_compatible(const Polynomial& o, const char* op) const {
    if (!ring_.same(o.ring_)) throw DomainError(std::string(op) + ": coefficient domain mismatch");
    if (nvars_ != o.nvars_) throw DomainError(std::string(op) + ": variable count mismatch");
    if (!(order_ == o.order_)) throw DomainError(std::string(op) + ": monomial order mismatch");
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [this](const Term& a, const Term& b) { return order_.cmp(a.mono, b.mono) > 0; });
  }

  void normalize() {
    sort_terms();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = ring_.add(out.back().coeff, t.coeff);
      } else {
        out.push_back(std::move(t));
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [this](const Term& t) { return ring_.is_zero(t.coeff); }),
              out.end());
    terms_ = std::move(out);
  }

  R ring_;
  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

using PolyQ = Polynomial<RationalField>;
using PolyZ = Polynomial<IntegerRing>;
using PolyFp = Polynomial<PrimeField>;

/// content >= 1 and primitive part with f = content * primitive. The content
/// carries no sign: -2x -> (2, -x).
inline std::pair<mpz_class, PolyZ> poly_content_and_primitive(const PolyZ& f) {
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  IntegerRing zz;
  mpz_class g = 0;
  for (const auto& t : f.terms()) g = zz.gcd(g, t.coeff);
  std::vector<PolyZ::Term> terms;
  terms.reserve(f.term_count());
  for (const auto& t : f.terms()) terms.push_back({t.mono, zz.divexact(t.coeff, g)});
  return {g, PolyZ::from_terms(zz, f.nvars(), std::move(terms), f.order())};
}

/// Coefficientwise reduction ZZ -> GF(p).
inline PolyFp poly_reduce_mod_p(const PolyZ& f, std::uint64_t p) {
  PrimeField fp(p);
  std::vector<PolyFp::Term> terms;
  terms.reserve(f.term_count());
  for (const auto& t : f.terms()) {
    auto c = fp.from_mpz(t.coeff);
    if (c != 0) terms.push_back({t.mono, c});
  }
  return PolyFp::from_terms(fp, f.nvars(), std::move(terms), f.order());
}

inline PolyQ poly_to_rational(const PolyZ& f) {
  RationalField qq;
  std::vector<PolyQ::Term> terms;
  terms.reserve(f.term_count());
  for (const auto& t : f.terms()) terms.push_back({t.mono, mpq_class(t.coeff)});
  return PolyQ::from_terms(qq, f.nvars(), std::move(terms), f.order());
}

/// Clears denominators and content: returns (primitive integer polynomial g,
/// positive rational s) with f = s * g.
inline std::pair<PolyZ, mpq_class> poly_to_integer_primitive(const PolyQ& f) {
  IntegerRing zz;
  if (f.is_zero()) return {PolyZ::zero(zz, f.nvars(), f.order()), mpq_class(1)};
  mpz_class den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  std::vector<PolyZ::Term> terms;
  terms.reserve(f.term_count());
  for (const auto& t : f.terms()) {
    mpq_class scaled = t.coeff * mpq_class(den);
    terms.push_back({t.mono, scaled.get_num()});
  }
  PolyZ g = PolyZ::from_terms(zz, f.nvars(), std::move(terms), f.order());
  auto [content, primitive] = poly_content_and_primitive(g);
  return {primitive, mpq_class(content) / mpq_class(den)};
}

/// Exact division: q with f = d * q, or nullopt when d does not divide f.
/// Works over any integral domain; over ZZ leading coefficients must divide.
template <class R>
std::optional<Polynomial<R>> poly_divides_exact(const Polynomial<R>& d, const Polynomial<R>& f) {
  if (d.is_zero()) throw DomainError("poly_divides_exact: division by zero polynomial");
  f.check_same_context(d, "poly_divides_exact");
  const R& ring = f.ring();
  Polynomial<R> rem = f;
  std::vector<typename Polynomial<R>::Term> qterms;
  const auto& dlt = d.leading_term();
  while (!rem.is_zero()) {
    const auto& rlt = rem.leading_term();
    if (!dlt.mono.divides(rlt.mono)) return std::nullopt;
    typename R::Elem c;
    if constexpr (R::is_field) {
      c = ring.div(rlt.coeff, dlt.coeff);
    } else {
      if (!ring.divides(dlt.coeff, rlt.coeff)) return std::nullopt;
      c = ring.divexact(rlt.coeff, dlt.coeff);
    }
    Monomial m = rlt.mono.quotient(dlt.mono);
    rem = rem - d.mul_term(m, c);
    qterms.push_back({std::move(m), std::move(c)});
  }
  return Polynomial<R>::from_terms(ring, f.nvars(), std::move(qterms), f.order());
}

/// Substitute x_k -> sum_j W[k][j] * y_j for an integer matrix W.
template <class R>
Polynomial<R> poly_substitute_linear(const Polynomial<R>& f,
                                     const std::vector<std::vector<mpz_class>>& w) {
  const R& ring = f.ring();
  const std::size_t n = f.nvars();
  std::vector<Polynomial<R>> images;
  images.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Polynomial<R> img(ring, n, f.order());
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(w[k][j]) == 0) continue;
      img = img + Polynomial<R>::variable(ring, n, j, f.order()).scale(ring.from_mpz(w[k][j]));
    }
    images.push_back(std::move(img));
  }
  Polynomial<R> out(ring, n, f.order());
  for (const auto& t : f.terms()) {
    Polynomial<R> prod = Polynomial<R>::constant(ring, n, t.coeff, f.order());
    for (std::size_t k = 0; k < n; ++k)
      if (t.mono[k] > 0) prod = prod * images[k].pow(t.mono[k]);
    out = out + prod;
  }
  return out;
}

}  // namespace multiarr
