#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "multiarr/errors.hpp"
#include "multiarr/module_element.hpp"

namespace multiarr {

/// Reduced Groebner basis of a submodule of S^rank over a field. Elements are
/// monic, leading terms pairwise non-divisible, tails fully reduced, sorted
/// ascending by leading term; for a fixed order this representation is unique.
template <class R>
struct GroebnerBasis {
  static_assert(R::is_field, "GroebnerBasis requires field coefficients");
  R ring;
  std::size_t nvars = 0;
  std::size_t rank = 0;
  ModuleOrder order;
  std::vector<ModuleElement<R>> elements;
  bool reduced = false;
};

/// Fully reduced remainder of v modulo the (partial) basis `gens`:
/// no term of the result is divisible by any leading term.
template <class R>
ModuleElement<R> normal_form(const ModuleElement<R>& v, const std::vector<ModuleElement<R>>& gens) {
  const R& ring = v.ring();
  for (const auto& g : gens)
    if (!g.is_zero()) v.check_same_ambient(g, "normal_form");
  ModuleElement<R> rem = v;
  std::vector<typename ModuleElement<R>::MTerm> done;
  while (!rem.is_zero()) {
    const auto lt = rem.leading_term();
    bool reduced_step = false;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      const auto& glt = g.leading_term();
      if (glt.comp == lt.comp && glt.mono.divides(lt.mono)) {
        typename R::Elem c = ring.div(lt.coeff, glt.coeff);
        rem = rem.submul(c, lt.mono.quotient(glt.mono), g);
        reduced_step = true;
        break;
      }
    }
    if (!reduced_step) {
      done.push_back(lt);
      rem = rem.submul(lt.coeff, lt.mono, ModuleElement<R>::basis_vector(
                                              ring, v.nvars(), v.rank(), lt.comp, v.order()));
    }
  }
  return ModuleElement<R>::from_terms(ring, v.nvars(), v.rank(), v.order(), std::move(done));
}

template <class R>
ModuleElement<R> normal_form(const ModuleElement<R>& v, const GroebnerBasis<R>& gb) {
  if (v.rank() != gb.rank || v.nvars() != gb.nvars || !(v.order() == gb.order))
    throw DomainError("normal_form: ambient mismatch");
  return normal_form(v, gb.elements);
}

namespace detail {

template <class R>
ModuleElement<R> make_monic(const ModuleElement<R>& v) {
  const R& ring = v.ring();
  if (v.is_zero() || ring.is_one(v.leading_term().coeff)) return v;
  return v.scale(ring.inv(v.leading_term().coeff));
}

struct SPairEntry {
  std::size_t i, j;
  Monomial lcm;
  std::size_t comp;
  std::uint32_t degree;
};

}  // namespace detail

/// Buchberger with the normal selection strategy (lowest lcm degree first) and
/// the Gebauer-Moller chain criteria. The product criterion is applied only in
/// rank-1 ambients; for modules of higher rank it is not sound (an S-pair of
/// elements with coprime leading monomials need not reduce to zero once other
/// components are involved).
template <class R>
GroebnerBasis<R> buchberger(const std::vector<ModuleElement<R>>& gens, ModuleOrder order) {
  if (gens.empty()) throw DomainError("buchberger: empty generator list");
  const R ring = gens[0].ring();
  const std::size_t nvars = gens[0].nvars();
  const std::size_t rank = gens[0].rank();

  std::vector<ModuleElement<R>> basis;
  std::vector<detail::SPairEntry> pairs;

  auto lcm_of = [&](std::size_t i, std::size_t j) {
    return basis[i].leading_term().mono.lcm(basis[j].leading_term().mono);
  };

  auto add_element = [&](const ModuleElement<R>& h) {
    const std::size_t t = basis.size();
    basis.push_back(detail::make_monic(h));
    const auto& hlt = basis[t].leading_term();

    // drop old pairs covered by the new leading term (chain criterion)
    std::vector<detail::SPairEntry> surviving;
    surviving.reserve(pairs.size());
    for (auto& p : pairs) {
      if (p.comp == hlt.comp && hlt.mono.divides(p.lcm) &&
          !(lcm_of(p.i, t) == p.lcm) && !(lcm_of(p.j, t) == p.lcm)) {
        continue;
      }
      surviving.push_back(std::move(p));
    }
    pairs = std::move(surviving);

    std::vector<detail::SPairEntry> cand;
    for (std::size_t i = 0; i < t; ++i) {
      const auto& ilt = basis[i].leading_term();
      if (ilt.comp != hlt.comp) continue;
      Monomial l = ilt.mono.lcm(hlt.mono);
      cand.push_back({i, t, std::move(l), hlt.comp, 0});
    }
    // Gebauer-Moller M: drop candidates with a strictly smaller lcm below them
    std::vector<detail::SPairEntry> kept;
    for (const auto& p : cand) {
      bool dominated = false;
      for (const auto& q : cand) {
        if (q.i == p.i) continue;
        if (q.lcm.divides(p.lcm) && !(q.lcm == p.lcm)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(p);
    }
    // Gebauer-Moller F: one representative per lcm value; B: coprime leading
    // monomials kill the class, rank-1 ambients only.
    std::vector<detail::SPairEntry> result;
    std::vector<bool> used(kept.size(), false);
    for (std::size_t a = 0; a < kept.size(); ++a) {
      if (used[a]) continue;
      std::size_t best = a;
      bool coprime_hit = false;
      for (std::size_t b = a; b < kept.size(); ++b) {
        if (used[b] || !(kept[b].lcm == kept[a].lcm)) continue;
        used[b] = true;
        if (rank == 1 &&
            basis[kept[b].i].leading_term().mono.coprime(hlt.mono))
          coprime_hit = true;
        if (kept[b].i < kept[best].i) best = b;
      }
      if (!coprime_hit) result.push_back(kept[best]);
    }
    for (auto& p : result) {
      p.degree = p.lcm.degree();
      pairs.push_back(std::move(p));
    }
  };

  for (const auto& g : gens) {
    if (g.nvars() != nvars || g.rank() != rank || !g.ring().same(ring) || !(g.order() == order))
      throw DomainError("buchberger: inconsistent ambients");
    ModuleElement<R> h = normal_form(g.with_order(order), basis);
    if (!h.is_zero()) add_element(h);
  }

  while (!pairs.empty()) {
    // normal strategy: smallest lcm degree, deterministic tie-breaks
    std::size_t pick = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const auto& a = pairs[k];
      const auto& b = pairs[pick];
      int c;
      if (a.degree != b.degree) {
        c = a.degree < b.degree ? -1 : 1;
      } else if ((c = order.base().cmp(a.lcm, b.lcm)) == 0) {
        if (a.comp != b.comp)
          c = a.comp < b.comp ? -1 : 1;
        else if (a.i != b.i)
          c = a.i < b.i ? -1 : 1;
        else
          c = a.j < b.j ? -1 : 1;
      }
      if (c < 0) pick = k;
    }
    detail::SPairEntry p = pairs[pick];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(pick));

    const auto& f = basis[p.i];
    const auto& g = basis[p.j];
    ModuleElement<R> s =
        f.scaled_shift(ring.one(), p.lcm.quotient(f.leading_term().mono)) -
        g.scaled_shift(ring.one(), p.lcm.quotient(g.leading_term().mono));
    ModuleElement<R> r = normal_form(s, basis);
    if (!r.is_zero()) add_element(r);
  }

  // interreduce: minimal leading terms, then reduced tails, sorted ascending
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& ilt = basis[i].leading_term();
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& jlt = basis[j].leading_term();
      if (jlt.comp == ilt.comp && jlt.mono.divides(ilt.mono)) {
        // prefer the later element on equal leading terms; equal lts cannot
        // happen here because insertions are normal forms
        redundant = !(jlt.mono == ilt.mono);
      }
    }
    if (!redundant) kept.push_back(i);
  }
  std::vector<ModuleElement<R>> minimal;
  minimal.reserve(kept.size());
  for (std::size_t i : kept) minimal.push_back(basis[i]);
  std::vector<ModuleElement<R>> final_elems;
  final_elems.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModuleElement<R>> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    final_elems.push_back(detail::make_monic(normal_form(minimal[i], others)));
  }
  std::sort(final_elems.begin(), final_elems.end(),
            [&order](const ModuleElement<R>& a, const ModuleElement<R>& b) {
              const auto& la = a.leading_term();
              const auto& lb = b.leading_term();
              return order.cmp(la.mono, la.comp, lb.mono, lb.comp) < 0;
            });

  GroebnerBasis<R> gb;
  gb.ring = ring;
  gb.nvars = nvars;
  gb.rank = rank;
  gb.order = order;
  gb.elements = std::move(final_elems);
  gb.reduced = true;
  return gb;
}

/// Groebner basis of Ker(S^l -> S^n/M) for a presented map. The columns of
/// the matrix are tagged with source basis vectors in S^(n+l), the relation
/// generators are thrown in untagged, and the target block is eliminated.
template <class R>
GroebnerBasis<R> kernel_of_presented_map(const PresentedMap<R>& f, R ring, std::size_t nvars) {
  const std::size_t n = f.target_rank();
  const std::size_t l = f.source_rank();
  if (l == 0) throw DomainError("kernel_of_presented_map: empty source");
  const ModuleOrder big_order(MonomialOrder::grevlex(), n);
  const ModuleOrder kernel_order(MonomialOrder::grevlex(), 0);

  std::vector<ModuleElement<R>> gens;
  for (std::size_t j = 0; j < l; ++j) {
    ModuleElement<R> u = ModuleElement<R>::basis_vector(ring, nvars, n + l, n + j, big_order);
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial<R>& a = f.matrix[i][j];
      if (a.is_zero()) continue;
      u = u + ModuleElement<R>::basis_vector(ring, nvars, n + l, i, big_order).mul_poly(a);
    }
    gens.push_back(std::move(u));
  }
  for (const auto& r : f.relations) {
    if (r.rank() != n) throw DomainError("kernel_of_presented_map: relation rank mismatch");
    gens.push_back(r.embed(n + l, 0, big_order));
  }

  GroebnerBasis<R> big = buchberger(gens, big_order);
  GroebnerBasis<R> out;
  out.ring = ring;
  out.nvars = nvars;
  out.rank = l;
  out.order = kernel_order;
  for (const auto& g : big.elements) {
    if (g.supported_on(n, l)) out.elements.push_back(g.project(n, l, kernel_order));
  }
  std::sort(out.elements.begin(), out.elements.end(),
            [&](const ModuleElement<R>& a, const ModuleElement<R>& b) {
              const auto& la = a.leading_term();
              const auto& lb = b.leading_term();
              return kernel_order.cmp(la.mono, la.comp, lb.mono, lb.comp) < 0;
            });
  out.reduced = true;
  return out;
}

/// Homogeneous minimal generating set by graded Nakayama: walk candidates by
/// ascending degree and keep those not generated by what came before. The
/// degree multiset of the result is basis independent.
template <class R>
std::vector<std::pair<ModuleElement<R>, std::uint32_t>> minimal_generators(
    const GroebnerBasis<R>& gb, const std::vector<std::uint32_t>& shifts = {}) {
  std::vector<std::pair<ModuleElement<R>, std::uint32_t>> out;
  std::vector<ModuleElement<R>> cands = gb.elements;
  for (const auto& c : cands) {
    if (!c.is_homogeneous(shifts))
      throw DomainError("minimal_generators: submodule is not graded (non-homogeneous generator)");
  }
  std::sort(cands.begin(), cands.end(),
            [&](const ModuleElement<R>& a, const ModuleElement<R>& b) {
              const std::uint32_t da = a.degree(shifts), db = b.degree(shifts);
              if (da != db) return da < db;
              const auto& la = a.leading_term();
              const auto& lb = b.leading_term();
              return gb.order.cmp(la.mono, la.comp, lb.mono, lb.comp) < 0;
            });
  std::vector<ModuleElement<R>> retained;
  std::optional<GroebnerBasis<R>> retained_gb;
  for (const auto& c : cands) {
    ModuleElement<R> nf = retained_gb ? normal_form(c, *retained_gb) : c;
    if (nf.is_zero()) continue;
    retained.push_back(detail::make_monic(nf));
    out.emplace_back(retained.back(), retained.back().degree(shifts));
    retained_gb = buchberger(retained, gb.order);
  }
  return out;
}

namespace detail {

inline void enumerate_monomials_rec(std::size_t nvars, std::uint32_t degree, std::size_t pos,
                                    Monomial& scratch, std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    scratch[pos] = degree;
    out.push_back(scratch);
    scratch[pos] = 0;
    return;
  }
  for (std::uint32_t e = 0; e <= degree; ++e) {
    scratch[pos] = e;
    enumerate_monomials_rec(nvars, degree - e, pos + 1, scratch, out);
  }
  scratch[pos] = 0;
}

}  // namespace detail

/// All monomials of the given total degree, deterministic order.
inline std::vector<Monomial> enumerate_monomials(std::size_t nvars, std::uint32_t degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.push_back(Monomial(0));
    return out;
  }
  Monomial scratch(nvars);
  detail::enumerate_monomials_rec(nvars, degree, 0, scratch, out);
  return out;
}

/// Dimension over the base field of the degree-d graded piece of the
/// submodule, counted from the leading-term staircase.
template <class R>
std::size_t hilbert_dimension(const GroebnerBasis<R>& gb, const std::vector<std::uint32_t>& shifts,
                              std::uint32_t d) {
  std::size_t count = 0;
  for (std::size_t c = 0; c < gb.rank; ++c) {
    const std::uint32_t shift = shifts.empty() ? 0 : shifts[c];
    if (shift > d) continue;
    for (const Monomial& m : enumerate_monomials(gb.nvars, d - shift)) {
      for (const auto& g : gb.elements) {
        const auto& lt = g.leading_term();
        if (lt.comp == c && lt.mono.divides(m)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

/// Exact determinant of a square polynomial matrix by cofactor expansion;
/// fine for the small ranks that arrangements produce.
template <class R>
Polynomial<R> determinant(const std::vector<std::vector<Polynomial<R>>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("determinant: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("determinant: matrix is not square");
  const R ring = m[0][0].ring();
  const std::size_t nvars = m[0][0].nvars();
  const MonomialOrder order = m[0][0].order();

  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;

  auto rec = [&](auto&& self, std::vector<std::size_t>& active, std::size_t col) -> Polynomial<R> {
    if (active.size() == 1) return m[active[0]][col];
    Polynomial<R> acc(ring, nvars, order);
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Polynomial<R>& pivot = m[active[k]][col];
      if (pivot.is_zero()) continue;
      std::vector<std::size_t> rest;
      rest.reserve(active.size() - 1);
      for (std::size_t t = 0; t < active.size(); ++t)
        if (t != k) rest.push_back(active[t]);
      Polynomial<R> minor = self(self, rest, col + 1);
      Polynomial<R> contrib = pivot * minor;
      acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
    }
    return acc;
  };
  return rec(rec, rows, 0);
}

}  // namespace multiarr
