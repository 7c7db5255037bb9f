#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "multiarr/arrangement.hpp"
#include "multiarr/module_element.hpp"

namespace multiarr {

using ModuleElementZ = ModuleElement<IntegerRing>;

/// Strong Groebner basis of a submodule of ZZ[x]^rank: for every element of
/// the submodule some basis leading term divides its leading term, monomial
/// and integer coefficient both. Elements carry positive leading coefficients;
/// the basis is minimal and tail-reduced, so it is canonical for the order.
struct StrongGroebnerBasis {
  std::size_t nvars = 0;
  std::size_t rank = 0;
  ModuleOrder order;
  std::vector<ModuleElementZ> elements;
};

/// Canonical remainder: repeatedly divides each term's coefficient with
/// remainder by every applicable leading coefficient, leaving every surviving
/// term with 0 <= coefficient < every applicable leading coefficient.
/// Zero iff v lies in the submodule (G strong).
ModuleElementZ strong_normal_form(const ModuleElementZ& v, const std::vector<ModuleElementZ>& gens);
ModuleElementZ strong_normal_form(const ModuleElementZ& v, const StrongGroebnerBasis& gb);

/// Euclidean-domain Buchberger with S-polynomials and gcd-polynomials.
StrongGroebnerBasis strong_buchberger(const std::vector<ModuleElementZ>& gens, ModuleOrder order);

/// Strong basis of (N : p) = { v : p*v in N }, via the tag-variable
/// construction t*N + (1-t)*p*ZZ[x]^rank with t eliminated, then exact
/// division by p. Always contains N.
StrongGroebnerBasis colon_by_integer(const StrongGroebnerBasis& n, std::uint64_t p);

/// Relation module of coker(phi_ZZ): the columns of the coefficient matrix
/// together with the alpha_i^(m_i) e_i, inside ZZ[x]^n.
struct CokernelPresentation {
  std::size_t nvars = 0;
  std::size_t ambient_rank = 0;
  std::vector<ModuleElementZ> relation_gens;
};

CokernelPresentation cokernel_presentation(const Multiarrangement& a);

struct ZeroDivisorReport {
  std::vector<std::uint64_t> primes;                    // ascending
  std::map<std::uint64_t, ModuleElementZ> witnesses;    // p -> v with p*v in N, v not in N
};

/// Exact set of primes that are zero divisors on ZZ[x]^rank / N. Candidates
/// are the primes dividing a leading coefficient of the minimal strong basis
/// (any other prime preserves the staircase under reduction, so multiplication
/// by it is injective on normal forms); each candidate is then settled by the
/// colon computation.
ZeroDivisorReport zero_divisor_primes(const std::vector<ModuleElementZ>& gens);
ZeroDivisorReport zero_divisor_primes(const CokernelPresentation& c);

/// Zero-divisor primes of ZZ[x]/J for the ideal generated by the defining
/// polynomial and its partial derivatives. Simple arrangements only.
ZeroDivisorReport jacobian_coker_primes(const Multiarrangement& a);

}  // namespace multiarr
