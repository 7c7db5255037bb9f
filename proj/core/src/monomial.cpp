#include "multiarr/monomial.hpp"

#include <algorithm>

#include "multiarr/errors.hpp"

namespace multiarr {

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

std::uint32_t Monomial::degree_front(std::size_t split) const {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < split && i < exps_.size(); ++i) d += exps_[i];
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e == 0; });
}

bool Monomial::divides(const Monomial& m) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > m.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& d) const {
  Monomial q(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] -= d.exps_[i];
  return q;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], o.exps_[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::min(exps_[i], o.exps_[i]);
  return r;
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && o.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::prepend_var() const {
  std::vector<std::uint32_t> e;
  e.reserve(exps_.size() + 1);
  e.push_back(0);
  e.insert(e.end(), exps_.begin(), exps_.end());
  return Monomial(std::move(e));
}

Monomial Monomial::drop_front_var() const {
  if (exps_.empty() || exps_[0] != 0)
    throw DomainError("drop_front_var: front exponent is nonzero");
  return Monomial(std::vector<std::uint32_t>(exps_.begin() + 1, exps_.end()));
}

std::string Monomial::to_string(const std::vector<std::string>& vars) const {
  std::string s;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

// grevlex: higher total degree wins; on ties the monomial whose exponent is
// smaller at the last differing position wins.
int cmp_grevlex(const std::uint32_t* a, const std::uint32_t* b, std::size_t n,
                std::uint32_t da, std::uint32_t db) {
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  switch (kind_) {
    case OrderKind::grevlex:
      return cmp_grevlex(ea.data(), eb.data(), ea.size(), a.degree(), b.degree());
    case OrderKind::lex:
      for (std::size_t i = 0; i < ea.size(); ++i)
        if (ea[i] != eb[i]) return ea[i] < eb[i] ? -1 : 1;
      return 0;
    case OrderKind::elimination: {
      const std::size_t s = std::min(split_, ea.size());
      if (int c = cmp_grevlex(ea.data(), eb.data(), s, a.degree_front(s), b.degree_front(s)); c != 0)
        return c;
      return cmp_grevlex(ea.data() + s, eb.data() + s, ea.size() - s,
                         a.degree() - a.degree_front(s), b.degree() - b.degree_front(s));
    }
  }
  return 0;
}

}  // namespace multiarr
