#include "multiarr/groebner_integer.hpp"

#include <algorithm>
#include <set>

#include "multiarr/errors.hpp"
#include "multiarr/primes.hpp"

namespace multiarr {

namespace {

const IntegerRing kZZ;

ModuleElementZ positive_lead(const ModuleElementZ& v) {
  if (v.is_zero() || sgn(v.leading_term().coeff) > 0) return v;
  return -v;
}

ModuleElementZ delete_leading_term(const ModuleElementZ& v) {
  const auto& lt = v.leading_term();
  return v.submul(lt.coeff, lt.mono,
                  ModuleElementZ::basis_vector(kZZ, v.nvars(), v.rank(), lt.comp, v.order()));
}

}  // namespace

ModuleElementZ strong_normal_form(const ModuleElementZ& v, const std::vector<ModuleElementZ>& gens) {
  for (const auto& g : gens)
    if (!g.is_zero()) v.check_same_ambient(g, "strong_normal_form");
  ModuleElementZ rem = v;
  std::vector<ModuleElementZ::MTerm> done;
  while (!rem.is_zero()) {
    const auto lt = rem.leading_term();
    bool applied = false;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      const auto& glt = g.leading_term();
      if (glt.comp != lt.comp || !glt.mono.divides(lt.mono)) continue;
      mpz_class q, r;
      kZZ.divmod(lt.coeff, glt.coeff, q, r);
      if (sgn(q) == 0) continue;
      rem = rem.submul(q, lt.mono.quotient(glt.mono), g);
      applied = true;
      break;
    }
    if (!applied) {
      done.push_back(lt);
      rem = delete_leading_term(rem);
    }
  }
  return ModuleElementZ::from_terms(kZZ, v.nvars(), v.rank(), v.order(), std::move(done));
}

ModuleElementZ strong_normal_form(const ModuleElementZ& v, const StrongGroebnerBasis& gb) {
  if (v.rank() != gb.rank || v.nvars() != gb.nvars || !(v.order() == gb.order))
    throw DomainError("strong_normal_form: ambient mismatch");
  return strong_normal_form(v, gb.elements);
}

namespace {

struct ZPair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t degree;
};

// S-polynomial: cross-multiply to the coefficient lcm and cancel the lead.
ModuleElementZ s_polynomial(const ModuleElementZ& f, const ModuleElementZ& g, const Monomial& l) {
  const auto& ft = f.leading_term();
  const auto& gt = g.leading_term();
  mpz_class cl;
  mpz_lcm(cl.get_mpz_t(), ft.coeff.get_mpz_t(), gt.coeff.get_mpz_t());
  return f.scaled_shift(kZZ.divexact(cl, ft.coeff), l.quotient(ft.mono)) -
         g.scaled_shift(kZZ.divexact(cl, gt.coeff), l.quotient(gt.mono));
}

// gcd-polynomial: Bezout combination with leading term gcd(a,b) * lcm-monomial.
// Only needed when neither leading coefficient divides the other.
ModuleElementZ g_polynomial(const ModuleElementZ& f, const ModuleElementZ& g, const Monomial& l) {
  const auto& ft = f.leading_term();
  const auto& gt = g.leading_term();
  mpz_class u, v;
  kZZ.xgcd(ft.coeff, gt.coeff, u, v);
  return f.scaled_shift(u, l.quotient(ft.mono)) + g.scaled_shift(v, l.quotient(gt.mono));
}

std::vector<ModuleElementZ> minimalize_and_reduce(std::vector<ModuleElementZ> basis,
                                                  const ModuleOrder& order) {
  // drop elements whose leading term is strongly divisible by another's
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      const auto& ilt = basis[i].leading_term();
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        const auto& jlt = basis[j].leading_term();
        if (jlt.comp == ilt.comp && jlt.mono.divides(ilt.mono) &&
            kZZ.divides(jlt.coeff, ilt.coeff)) {
          // on mutual divisibility keep the later element
          if (jlt.mono == ilt.mono && jlt.coeff == ilt.coeff && j > i) continue;
          basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<ModuleElementZ> reduced;
  reduced.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<ModuleElementZ> others;
    others.reserve(basis.size() - 1);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (j != i) others.push_back(basis[j]);
    reduced.push_back(positive_lead(strong_normal_form(basis[i], others)));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const ModuleElementZ& a, const ModuleElementZ& b) {
    const auto& la = a.leading_term();
    const auto& lb = b.leading_term();
    if (int c = order.cmp(la.mono, la.comp, lb.mono, lb.comp); c != 0) return c < 0;
    return la.coeff < lb.coeff;
  });
  return reduced;
}

}  // namespace

StrongGroebnerBasis strong_buchberger(const std::vector<ModuleElementZ>& gens, ModuleOrder order) {
  if (gens.empty()) throw DomainError("strong_buchberger: empty generator list");
  const std::size_t nvars = gens[0].nvars();
  const std::size_t rank = gens[0].rank();

  std::vector<ModuleElementZ> basis;
  std::vector<ZPair> pairs;

  auto add_element = [&](const ModuleElementZ& h) {
    const std::size_t t = basis.size();
    basis.push_back(positive_lead(h));
    const auto& hlt = basis[t].leading_term();
    for (std::size_t i = 0; i < t; ++i) {
      const auto& ilt = basis[i].leading_term();
      if (ilt.comp != hlt.comp) continue;
      Monomial l = ilt.mono.lcm(hlt.mono);
      pairs.push_back({i, t, l, l.degree()});
    }
  };

  for (const auto& g : gens) {
    if (g.nvars() != nvars || g.rank() != rank || !(g.order() == order))
      throw DomainError("strong_buchberger: inconsistent ambients");
    ModuleElementZ h = strong_normal_form(g.with_order(order), basis);
    if (!h.is_zero()) add_element(h);
  }

  std::size_t guard = 0;
  while (!pairs.empty()) {
    if (++guard > 500000) throw InternalError("strong_buchberger: pair budget exceeded");
    std::size_t pick = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const auto& a = pairs[k];
      const auto& b = pairs[pick];
      int c;
      if (a.degree != b.degree) {
        c = a.degree < b.degree ? -1 : 1;
      } else if ((c = order.base().cmp(a.lcm, b.lcm)) == 0) {
        if (a.i != b.i)
          c = a.i < b.i ? -1 : 1;
        else
          c = a.j < b.j ? -1 : 1;
      }
      if (c < 0) pick = k;
    }
    ZPair p = pairs[pick];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(pick));

    const ModuleElementZ& f = basis[p.i];
    const ModuleElementZ& g = basis[p.j];
    ModuleElementZ s = strong_normal_form(s_polynomial(f, g, p.lcm), basis);
    if (!s.is_zero()) add_element(s);

    const mpz_class& a = basis[p.i].leading_term().coeff;
    const mpz_class& b = basis[p.j].leading_term().coeff;
    if (!kZZ.divides(a, b) && !kZZ.divides(b, a)) {
      ModuleElementZ gp = strong_normal_form(g_polynomial(basis[p.i], basis[p.j], p.lcm), basis);
      if (!gp.is_zero()) add_element(gp);
    }
  }

  StrongGroebnerBasis out;
  out.nvars = nvars;
  out.rank = rank;
  out.order = order;
  out.elements = minimalize_and_reduce(std::move(basis), order);
  return out;
}

StrongGroebnerBasis colon_by_integer(const StrongGroebnerBasis& n, std::uint64_t p) {
  if (!is_prime_u64(p)) throw InputError("colon_by_integer: " + std::to_string(p) + " is not prime");
  const std::size_t nvars = n.nvars;
  const std::size_t rank = n.rank;
  const ModuleOrder elim_order(MonomialOrder::elimination(1), 0);
  const mpz_class pz(static_cast<unsigned long>(p));

  // t * N + (1 - t) * p * S^rank inside ZZ[t, x]^rank
  PolyZ t_poly = PolyZ::variable(kZZ, nvars + 1, 0, MonomialOrder::elimination(1));
  std::vector<ModuleElementZ> lifted;
  for (const auto& g : n.elements) lifted.push_back(g.prepend_var(elim_order).mul_poly(t_poly));
  PolyZ one_minus_t =
      PolyZ::constant(kZZ, nvars + 1, mpz_class(1), MonomialOrder::elimination(1)) - t_poly;
  for (std::size_t c = 0; c < rank; ++c) {
    lifted.push_back(ModuleElementZ::basis_vector(kZZ, nvars + 1, rank, c, elim_order)
                         .mul_poly(one_minus_t.scale(pz)));
  }
  StrongGroebnerBasis big = strong_buchberger(lifted, elim_order);

  std::vector<ModuleElementZ> quotient_gens;
  for (const auto& g : big.elements) {
    bool t_free = std::all_of(g.terms().begin(), g.terms().end(),
                              [](const ModuleElementZ::MTerm& t) { return t.mono[0] == 0; });
    if (!t_free) continue;
    ModuleElementZ h = g.drop_front_var(n.order);
    // members of N /\ p*S^rank have every coefficient divisible by p
    std::vector<ModuleElementZ::MTerm> scaled;
    for (const auto& t : h.terms()) {
      if (!kZZ.divides(pz, t.coeff))
        throw InternalError("colon_by_integer: intersection element not divisible by p");
      scaled.push_back({t.mono, t.comp, kZZ.divexact(t.coeff, pz)});
    }
    quotient_gens.push_back(
        ModuleElementZ::from_terms(kZZ, nvars, rank, n.order, std::move(scaled)));
  }
  if (quotient_gens.empty())
    throw InternalError("colon_by_integer: empty intersection basis");  // contains N, never empty
  return strong_buchberger(quotient_gens, n.order);
}

CokernelPresentation cokernel_presentation(const Multiarrangement& a) {
  if (a.characteristic() != 0)
    throw DomainError("cokernel_presentation: arrangement must be in characteristic 0");
  const std::size_t n = a.size();
  const std::size_t l = a.dim();
  const ModuleOrder order(MonomialOrder::grevlex(), 0);
  CokernelPresentation out;
  out.nvars = l;
  out.ambient_rank = n;
  PresentedMap<IntegerRing> phi = a.presentation(kZZ);
  for (std::size_t j = 0; j < l; ++j) {
    ModuleElementZ col = ModuleElementZ::zero(kZZ, l, n, order);
    for (std::size_t i = 0; i < n; ++i)
      col = col + ModuleElementZ::basis_vector(kZZ, l, n, i, order).mul_poly(phi.matrix[i][j]);
    if (!col.is_zero()) out.relation_gens.push_back(std::move(col));
  }
  for (auto& r : phi.relations) out.relation_gens.push_back(std::move(r));
  return out;
}

ZeroDivisorReport zero_divisor_primes(const std::vector<ModuleElementZ>& gens) {
  ZeroDivisorReport out;
  if (gens.empty()) return out;
  StrongGroebnerBasis gb = strong_buchberger(gens, gens[0].order());
  std::set<std::uint64_t> candidates;
  for (const auto& g : gb.elements)
    for (std::uint64_t p : prime_factors_u64(g.leading_term().coeff)) candidates.insert(p);
  for (std::uint64_t p : candidates) {
    StrongGroebnerBasis colon = colon_by_integer(gb, p);
    // witness: minimal-degree colon generator outside N, deterministic pick
    const ModuleElementZ* witness = nullptr;
    ModuleElementZ witness_nf = ModuleElementZ::zero(kZZ, gb.nvars, gb.rank, gb.order);
    for (const auto& w : colon.elements) {
      ModuleElementZ nf = strong_normal_form(w, gb);
      if (nf.is_zero()) continue;
      if (witness == nullptr || w.degree() < witness->degree()) {
        witness = &w;
        witness_nf = nf;
      }
    }
    if (witness != nullptr) {
      out.primes.push_back(p);
      out.witnesses.emplace(p, witness_nf);
    }
  }
  return out;
}

ZeroDivisorReport zero_divisor_primes(const CokernelPresentation& c) {
  return zero_divisor_primes(c.relation_gens);
}

ZeroDivisorReport jacobian_coker_primes(const Multiarrangement& a) {
  if (a.characteristic() != 0)
    throw DomainError("jacobian_coker_primes: arrangement must be in characteristic 0");
  if (!a.is_simple())
    throw InputError("jacobian_coker_primes: arrangement must be simple (all multiplicities 1)");
  const std::size_t l = a.dim();
  const ModuleOrder order(MonomialOrder::grevlex(), 0);
  PolyZ q = a.defining_polynomial(kZZ);
  std::vector<ModuleElementZ> gens;
  auto push_poly = [&](const PolyZ& f) {
    if (!f.is_zero())
      gens.push_back(ModuleElementZ::basis_vector(kZZ, l, 1, 0, order).mul_poly(f));
  };
  push_poly(q);
  for (std::size_t j = 0; j < l; ++j) push_poly(q.derivative(j));
  return zero_divisor_primes(gens);
}

}  // namespace multiarr
