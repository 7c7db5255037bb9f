#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multiarr/errors.hpp"
#include "multiarr/module_element.hpp"
#include "multiarr/polynomial.hpp"

namespace multiarr {

/// Defining equation of a hyperplane: an integer coefficient vector.
/// Canonical form in characteristic 0: primitive, first nonzero entry
/// positive. Canonical form mod p: entries in [0, p), first nonzero entry 1.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Clears denominators, removes content, fixes the sign.
  static LinearForm canonical_char0(const std::vector<mpq_class>& raw);
  /// Reduces mod p and scales the first nonzero coefficient to 1.
  LinearForm canonical_mod_p(std::uint64_t p) const;

  std::size_t dim() const { return coeffs_.size(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  bool operator==(const LinearForm& o) const { return coeffs_ == o.coeffs_; }
  bool operator<(const LinearForm& o) const;  // lexicographic, for canonical ordering

  bool is_zero() const;

  template <class R>
  Polynomial<R> to_polynomial(R ring, MonomialOrder order = MonomialOrder::grevlex()) const {
    Polynomial<R> f(ring, coeffs_.size(), order);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (sgn(coeffs_[j]) == 0) continue;
      f = f + Polynomial<R>::variable(ring, coeffs_.size(), j, order).scale(ring.from_mpz(coeffs_[j]));
    }
    return f;
  }

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  std::vector<mpz_class> coeffs_;
};

enum class GoodnessSemantics {
  proportional,  // p collides two hyperplanes if the reduced forms are proportional
  literal,       // only literal equality of the reduced integer vectors counts
};

struct GoodPrimeReport {
  std::vector<std::uint64_t> non_good;  // the complete finite set
  std::vector<std::string> collisions;  // one line per non-good prime
};

/// A central multiarrangement: pairwise distinct hyperplanes with
/// multiplicities >= 1. Immutable after construction. `characteristic` is 0
/// for the rational/integer model and p for an already-reduced arrangement.
class Multiarrangement {
 public:
  Multiarrangement(std::size_t dim, std::uint64_t characteristic,
                   std::vector<LinearForm> forms, std::vector<std::uint32_t> mults,
                   std::vector<std::string> notes = {});

  std::size_t dim() const { return dim_; }  // l
  std::uint64_t characteristic() const { return characteristic_; }
  std::size_t size() const { return forms_.size(); }  // n
  const std::vector<LinearForm>& forms() const { return forms_; }
  const std::vector<std::uint32_t>& mults() const { return mults_; }
  const std::vector<std::string>& notes() const { return notes_; }

  std::uint32_t total_multiplicity() const;  // |m|
  bool is_simple() const;

  bool operator==(const Multiarrangement& o) const {
    return dim_ == o.dim_ && characteristic_ == o.characteristic_ && forms_ == o.forms_ &&
           mults_ == o.mults_;
  }

  /// Q(A,m) = prod alpha_i^(m_i) over the requested domain.
  template <class R>
  Polynomial<R> defining_polynomial(R ring, MonomialOrder order = MonomialOrder::grevlex()) const {
    Polynomial<R> q = Polynomial<R>::constant(ring, dim_, ring.one(), order);
    for (std::size_t i = 0; i < forms_.size(); ++i)
      q = q * forms_[i].to_polynomial(ring, order).pow(mults_[i]);
    return q;
  }

  /// The map S^l -> S^n/M: matrix rows are the (constant) gradients of the
  /// forms; the relation generators are alpha_i^(m_i) e_i.
  template <class R>
  PresentedMap<R> presentation(R ring) const {
    const MonomialOrder mono = MonomialOrder::grevlex();
    const ModuleOrder mord(mono, 0);
    PresentedMap<R> out;
    out.matrix.resize(forms_.size());
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      out.matrix[i].reserve(dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        out.matrix[i].push_back(
            Polynomial<R>::constant(ring, dim_, ring.from_mpz(forms_[i].coeffs()[j]), mono));
    }
    for (std::size_t i = 0; i < forms_.size(); ++i) {
      Polynomial<R> power = forms_[i].to_polynomial(ring, mono).pow(mults_[i]);
      out.relations.push_back(
          ModuleElement<R>::basis_vector(ring, dim_, forms_.size(), i, mord).mul_poly(power));
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::uint64_t characteristic_;
  std::vector<LinearForm> forms_;
  std::vector<std::uint32_t> mults_;
  std::vector<std::string> notes_;
};

/// Canonicalize raw rational forms into a characteristic-0 multiarrangement.
/// Hyperplanes that canonicalize identically are merged (their multiplicities
/// add, with a note); multiplicity-0 hyperplanes are dropped with a note.
Multiarrangement normalize(const std::vector<std::vector<mpq_class>>& raw_forms,
                           const std::vector<std::uint32_t>& mults, std::size_t dim);

/// Coefficientwise reduction of a characteristic-0 arrangement mod a good
/// prime. A non-good prime throws BadPrimeError unless `force` is set, in
/// which case colliding hyperplanes are merged by adding multiplicities (the
/// result is labeled with a note and is outside the model).
Multiarrangement reduce_mod_p(const Multiarrangement& a, std::uint64_t p, bool force = false);

/// The complete finite set of primes whose reduction collides hyperplanes.
/// Exact for either semantics: candidate primes divide 2x2 coefficient minors
/// (proportional) or coefficient differences (literal).
GoodPrimeReport good_primes_analysis(const Multiarrangement& a,
                                     GoodnessSemantics semantics = GoodnessSemantics::proportional);

bool is_good_prime(const Multiarrangement& a, std::uint64_t p,
                   GoodnessSemantics semantics = GoodnessSemantics::proportional);

}  // namespace multiarr
