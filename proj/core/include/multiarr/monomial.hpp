#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace multiarr {

/// Exponent vector of a power product. The variable count is fixed by the
/// surrounding ring context; operations assume equal lengths.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint32_t degree() const;
  /// Total degree of the first `split` variables.
  std::uint32_t degree_front(std::size_t split) const;

  bool is_one() const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }

  bool divides(const Monomial& m) const;
  Monomial quotient(const Monomial& d) const;  // *this / d, requires d | *this
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  Monomial mul(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  /// Insert a fresh variable with exponent 0 at the front (tag variable slot).
  Monomial prepend_var() const;
  /// Drop the front variable; its exponent must be 0.
  Monomial drop_front_var() const;

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  std::vector<std::uint32_t> exps_;
};

enum class OrderKind { grevlex, lex, elimination };

/// Total order on monomials. grevlex and lex are standard; elimination(split)
/// compares grevlex on the first `split` variables, then grevlex on the rest,
/// so block-1 variables dominate every power of block-2 variables.
class MonomialOrder {
 public:
  MonomialOrder() : kind_(OrderKind::grevlex), split_(0) {}
  static MonomialOrder grevlex() { return MonomialOrder(OrderKind::grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(OrderKind::lex, 0); }
  static MonomialOrder elimination(std::size_t split) {
    return MonomialOrder(OrderKind::elimination, split);
  }

  OrderKind kind() const { return kind_; }
  std::size_t split() const { return split_; }
  bool degree_compatible() const { return kind_ == OrderKind::grevlex; }
  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && split_ == o.split_;
  }

  /// <0 if a < b, 0 if equal, >0 if a > b.
  int cmp(const Monomial& a, const Monomial& b) const;

 private:
  MonomialOrder(OrderKind k, std::size_t s) : kind_(k), split_(s) {}
  OrderKind kind_;
  std::size_t split_;
};

/// Order on module terms (monomial, component). Term-over-position with the
/// lower component index winning ties. An optional component block makes the
/// first `elim_components` components dominate the rest, which is how kernels
/// and syzygies are projected out.
class ModuleOrder {
 public:
  ModuleOrder() = default;
  explicit ModuleOrder(MonomialOrder base, std::size_t elim_components = 0)
      : base_(base), elim_(elim_components) {}

  const MonomialOrder& base() const { return base_; }
  std::size_t elim_components() const { return elim_; }
  bool operator==(const ModuleOrder& o) const {
    return base_ == o.base_ && elim_ == o.elim_;
  }

  int cmp(const Monomial& ma, std::size_t ca, const Monomial& mb, std::size_t cb) const {
    if (elim_ > 0) {
      const bool ea = ca < elim_, eb = cb < elim_;
      if (ea != eb) return ea ? 1 : -1;
    }
    if (int c = base_.cmp(ma, mb); c != 0) return c;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }

 private:
  MonomialOrder base_{};
  std::size_t elim_ = 0;
};

}  // namespace multiarr
