#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "multiarr/errors.hpp"
#include "multiarr/polynomial.hpp"

namespace multiarr {

/// Element of a free module S^k. Terms are (monomial, component, coefficient)
/// triples kept strictly sorted, leading term first, under a ModuleOrder.
template <class R>
class ModuleElement {
 public:
  using Elem = typename R::Elem;
  struct MTerm {
    Monomial mono;
    std::size_t comp;
    Elem coeff;
  };

  ModuleElement(R ring, std::size_t nvars, std::size_t rank, ModuleOrder order)
      : ring_(ring), nvars_(nvars), rank_(rank), order_(order) {}

  static ModuleElement zero(R ring, std::size_t nvars, std::size_t rank, ModuleOrder order) {
    return ModuleElement(ring, nvars, rank, order);
  }

  static ModuleElement basis_vector(R ring, std::size_t nvars, std::size_t rank, std::size_t comp,
                                    ModuleOrder order) {
    ModuleElement v(ring, nvars, rank, order);
    if (comp >= rank) throw DomainError("basis_vector: component out of range");
    v.terms_.push_back({Monomial(nvars), comp, ring.one()});
    return v;
  }

  static ModuleElement from_components(const std::vector<Polynomial<R>>& comps, ModuleOrder order) {
    if (comps.empty()) throw DomainError("from_components: empty component list");
    ModuleElement v(comps[0].ring(), comps[0].nvars(), comps.size(), order);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      comps[c].check_same_context(comps[0], "from_components");
      for (const auto& t : comps[c].terms()) v.terms_.push_back({t.mono, c, t.coeff});
    }
    v.normalize();
    return v;
  }

  static ModuleElement from_terms(R ring, std::size_t nvars, std::size_t rank, ModuleOrder order,
                                  std::vector<MTerm> terms) {
    ModuleElement v(ring, nvars, rank, order);
    v.terms_ = std::move(terms);
    v.normalize();
    return v;
  }

  const R& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_; }
  const ModuleOrder& order() const { return order_; }
  const std::vector<MTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  const MTerm& leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero module element");
    return terms_.front();
  }

  Polynomial<R> component(std::size_t c, MonomialOrder poly_order = MonomialOrder::grevlex()) const {
    std::vector<typename Polynomial<R>::Term> ts;
    for (const auto& t : terms_)
      if (t.comp == c) ts.push_back({t.mono, t.coeff});
    return Polynomial<R>::from_terms(ring_, nvars_, std::move(ts), poly_order);
  }

  std::vector<Polynomial<R>> components(MonomialOrder poly_order = MonomialOrder::grevlex()) const {
    std::vector<Polynomial<R>> out;
    out.reserve(rank_);
    for (std::size_t c = 0; c < rank_; ++c) out.push_back(component(c, poly_order));
    return out;
  }

  /// Degree of the highest-degree term with respect to the shifts
  /// (deg mono + shift[comp]); shifts default to zero.
  std::uint32_t degree(const std::vector<std::uint32_t>& shifts = {}) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) {
      std::uint32_t s = shifts.empty() ? 0 : shifts[t.comp];
      d = std::max(d, t.mono.degree() + s);
    }
    return d;
  }

  bool is_homogeneous(const std::vector<std::uint32_t>& shifts = {}) const {
    if (terms_.empty()) return true;
    std::uint32_t d = terms_.front().mono.degree() +
                      (shifts.empty() ? 0 : shifts[terms_.front().comp]);
    for (const auto& t : terms_) {
      std::uint32_t s = shifts.empty() ? 0 : shifts[t.comp];
      if (t.mono.degree() + s != d) return false;
    }
    return true;
  }

  bool operator==(const ModuleElement& o) const {
    if (!ring_.same(o.ring_) || nvars_ != o.nvars_ || rank_ != o.rank_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].mono != o.terms_[i].mono || terms_[i].comp != o.terms_[i].comp) return false;
      if (!ring_.eq(terms_[i].coeff, o.terms_[i].coeff)) return false;
    }
    return true;
  }
  bool operator!=(const ModuleElement& o) const { return !(*this == o); }

  ModuleElement operator-() const {
    ModuleElement r(*this);
    for (auto& t : r.terms_) t.coeff = ring_.neg(t.coeff);
    return r;
  }

  ModuleElement operator+(const ModuleElement& o) const {
    require_compatible(o, "module add");
    ModuleElement r(ring_, nvars_, rank_, order_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = order_.cmp(terms_[i].mono, terms_[i].comp, o.terms_[j].mono, o.terms_[j].comp);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Elem s = ring_.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!ring_.is_zero(s)) r.terms_.push_back({terms_[i].mono, terms_[i].comp, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
  }

  ModuleElement operator-(const ModuleElement& o) const { return *this + (-o); }

  /// this - c * x^m * g, the reduction workhorse.
  ModuleElement submul(const Elem& c, const Monomial& m, const ModuleElement& g) const {
    return *this + g.scaled_shift(ring_.neg(c), m);
  }

  /// c * x^m * (*this); term order is preserved by monomial shifts.
  ModuleElement scaled_shift(const Elem& c, const Monomial& m) const {
    ModuleElement r(ring_, nvars_, rank_, order_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Elem p = ring_.mul(t.coeff, c);
      if (!ring_.is_zero(p)) r.terms_.push_back({t.mono.mul(m), t.comp, std::move(p)});
    }
    return r;
  }

  ModuleElement scale(const Elem& c) const { return scaled_shift(c, Monomial(nvars_)); }

  ModuleElement mul_poly(const Polynomial<R>& f) const {
    ModuleElement r(ring_, nvars_, rank_, order_);
    for (const auto& t : f.terms()) r = r + scaled_shift(t.coeff, t.mono);
    return r;
  }

  /// Embed into a larger ambient, shifting components by `offset`.
  ModuleElement embed(std::size_t new_rank, std::size_t offset, ModuleOrder order) const {
    ModuleElement r(ring_, nvars_, new_rank, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.comp + offset >= new_rank) throw DomainError("embed: component out of range");
      r.terms_.push_back({t.mono, t.comp + offset, t.coeff});
    }
    r.sort_terms();
    return r;
  }

  /// Keep components [from, from+new_rank), renumbering to [0, new_rank);
  /// all other components must be zero.
  ModuleElement project(std::size_t from, std::size_t new_rank, ModuleOrder order) const {
    ModuleElement r(ring_, nvars_, new_rank, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.comp < from || t.comp >= from + new_rank)
        throw DomainError("project: element not supported on the target block");
      r.terms_.push_back({t.mono, t.comp - from, t.coeff});
    }
    r.sort_terms();
    return r;
  }

  bool supported_on(std::size_t from, std::size_t count) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const MTerm& t) {
      return t.comp >= from && t.comp < from + count;
    });
  }

  ModuleElement with_order(ModuleOrder order) const {
    ModuleElement r(ring_, nvars_, rank_, order);
    r.terms_ = terms_;
    r.sort_terms();
    return r;
  }

  ModuleElement prepend_var(ModuleOrder order) const {
    ModuleElement r(ring_, nvars_ + 1, rank_, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.prepend_var(), t.comp, t.coeff});
    r.sort_terms();
    return r;
  }

  ModuleElement drop_front_var(ModuleOrder order) const {
    ModuleElement r(ring_, nvars_ - 1, rank_, order);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono.drop_front_var(), t.comp, t.coeff});
    r.sort_terms();
    return r;
  }

  std::string to_string(const std::vector<std::string>& vars) const {
    std::string s = "(";
    for (std::size_t c = 0; c < rank_; ++c) {
      if (c) s += ", ";
      s += component(c).to_string(vars);
    }
    return s + ")";
  }

  void check_same_ambient(const ModuleElement& o, const char* op) const {
    require_compatible(o, op);
  }

 private:
  void require_compatible(const ModuleElement& o, const char* op) const {
    if (!ring_.same(o.ring_)) throw DomainError(std::string(op) + ": coefficient domain mismatch");
    if (nvars_ != o.nvars_) throw DomainError(std::string(op) + ": variable count mismatch");
    if (rank_ != o.rank_) throw DomainError(std::string(op) + ": ambient rank mismatch");
    if (!(order_ == o.order_)) throw DomainError(std::string(op) + ": module order mismatch");
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(), [this](const MTerm& a, const MTerm& b) {
      return order_.cmp(a.mono, a.comp, b.mono, b.comp) > 0;
    });
  }

  void normalize() {
    sort_terms();
    std::vector<MTerm> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (t.comp >= rank_) throw DomainError("module term component out of range");
      if (!out.empty() && out.back().mono == t.mono && out.back().comp == t.comp) {
        out.back().coeff = ring_.add(out.back().coeff, t.coeff);
      } else {
        out.push_back(std::move(t));
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [this](const MTerm& t) { return ring_.is_zero(t.coeff); }),
              out.end());
    terms_ = std::move(out);
  }

  R ring_;
  std::size_t nvars_;
  std::size_t rank_;
  ModuleOrder order_;
  std::vector<MTerm> terms_;
};

/// A map S^l -> S^n / M given by an n x l polynomial matrix together with
/// generators of the submodule M of S^n to quotient by.
template <class R>
struct PresentedMap {
  std::vector<std::vector<Polynomial<R>>> matrix;  // n rows, l columns
  std::vector<ModuleElement<R>> relations;         // generators of M in S^n
  std::size_t source_rank() const { return matrix.empty() ? 0 : matrix[0].size(); }
  std::size_t target_rank() const { return matrix.size(); }
};

}  // namespace multiarr
