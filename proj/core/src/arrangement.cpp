#include "multiarr/arrangement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "multiarr/primes.hpp"

namespace multiarr {

LinearForm LinearForm::canonical_char0(const std::vector<mpq_class>& raw) {
  if (raw.empty()) throw InputError("linear form with no coefficients");
  mpz_class den = 1;
  for (const auto& c : raw) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(raw.size());
  mpz_class content = 0;
  for (const auto& c : raw) {
    mpq_class scaled = c * mpq_class(den);
    ints.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints.back().get_mpz_t());
  }
  if (content == 0) throw InputError("zero linear form");
  int sign = 0;
  for (auto& c : ints) {
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    if (sign == 0) sign = sgn(c);
  }
  if (sign < 0)
    for (auto& c : ints) c = -c;
  return LinearForm(std::move(ints));
}

LinearForm LinearForm::canonical_mod_p(std::uint64_t p) const {
  PrimeField fp(p);
  std::vector<std::uint64_t> red(coeffs_.size());
  std::uint64_t lead = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    red[i] = fp.from_mpz(coeffs_[i]);
    if (lead == 0 && red[i] != 0) lead = red[i];
  }
  if (lead == 0) throw InternalError("primitive form reduced to zero mod p");
  const std::uint64_t scale = fp.inv(lead);
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[i] = mpz_class(static_cast<unsigned long>(fp.mul(red[i], scale)));
  return LinearForm(std::move(out));
}

bool LinearForm::operator<(const LinearForm& o) const {
  for (std::size_t i = 0; i < coeffs_.size() && i < o.coeffs_.size(); ++i) {
    if (coeffs_[i] != o.coeffs_[i]) return coeffs_[i] < o.coeffs_[i];
  }
  return coeffs_.size() < o.coeffs_.size();
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpz_class& c) { return sgn(c) == 0; });
}

std::string LinearForm::to_string(const std::vector<std::string>& vars) const {
  IntegerRing zz;
  return to_polynomial(zz).to_string(vars);
}

Multiarrangement::Multiarrangement(std::size_t dim, std::uint64_t characteristic,
                                   std::vector<LinearForm> forms, std::vector<std::uint32_t> mults,
                                   std::vector<std::string> notes)
    : dim_(dim),
      characteristic_(characteristic),
      forms_(std::move(forms)),
      mults_(std::move(mults)),
      notes_(std::move(notes)) {
  if (forms_.size() != mults_.size())
    throw InputError("arrangement: form and multiplicity counts differ");
  for (const auto& f : forms_) {
    if (f.dim() != dim_) throw InputError("arrangement: inconsistent dimension");
    if (f.is_zero()) throw InputError("arrangement: zero form");
  }
  for (auto m : mults_)
    if (m == 0) throw InputError("arrangement: zero multiplicity must be dropped by normalize");
  for (std::size_t i = 0; i < forms_.size(); ++i)
    for (std::size_t j = i + 1; j < forms_.size(); ++j)
      if (forms_[i] == forms_[j]) throw InputError("arrangement: duplicate hyperplane");
}

std::uint32_t Multiarrangement::total_multiplicity() const {
  return std::accumulate(mults_.begin(), mults_.end(), 0u);
}

bool Multiarrangement::is_simple() const {
  return std::all_of(mults_.begin(), mults_.end(), [](std::uint32_t m) { return m == 1; });
}

Multiarrangement normalize(const std::vector<std::vector<mpq_class>>& raw_forms,
                           const std::vector<std::uint32_t>& mults, std::size_t dim) {
  if (raw_forms.size() != mults.size())
    throw InputError("normalize: form and multiplicity counts differ");
  std::vector<std::string> notes;
  std::map<LinearForm, std::uint32_t> merged;
  for (std::size_t i = 0; i < raw_forms.size(); ++i) {
    if (raw_forms[i].size() != dim) throw InputError("normalize: coefficient count mismatch");
    if (mults[i] == 0) {
      notes.push_back("dropped multiplicity-0 hyperplane at input index " + std::to_string(i));
      continue;
    }
    LinearForm f = LinearForm::canonical_char0(raw_forms[i]);
    auto it = merged.find(f);
    if (it != merged.end()) {
      it->second += mults[i];
      notes.push_back("merged input form at index " + std::to_string(i) +
                      " into an earlier hyperplane defining the same set");
    } else {
      merged.emplace(std::move(f), mults[i]);
    }
  }
  std::vector<LinearForm> forms;
  std::vector<std::uint32_t> out_mults;
  // canonical report order: lexicographic on coefficient vectors
  for (auto& [form, mult] : merged) {
    forms.push_back(form);
    out_mults.push_back(mult);
  }
  return Multiarrangement(dim, 0, std::move(forms), std::move(out_mults), std::move(notes));
}

Multiarrangement reduce_mod_p(const Multiarrangement& a, std::uint64_t p, bool force) {
  if (a.characteristic() != 0)
    throw DomainError("reduce_mod_p: arrangement is already in positive characteristic");
  if (!is_prime_u64(p)) throw InputError("reduce_mod_p: " + std::to_string(p) + " is not prime");
  std::map<LinearForm, std::uint32_t> merged;
  bool collision = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    LinearForm f = a.forms()[i].canonical_mod_p(p);
    auto it = merged.find(f);
    if (it != merged.end()) {
      collision = true;
      it->second += a.mults()[i];
    } else {
      merged.emplace(std::move(f), a.mults()[i]);
    }
  }
  if (collision && !force)
    throw BadPrimeError("prime " + std::to_string(p) +
                        " is not good for this arrangement (hyperplanes collide)");
  std::vector<LinearForm> forms;
  std::vector<std::uint32_t> mults;
  for (auto& [form, mult] : merged) {
    forms.push_back(form);
    mults.push_back(mult);
  }
  std::vector<std::string> notes;
  if (collision)
    notes.push_back("forced reduction mod " + std::to_string(p) +
                    ": hyperplanes collided and were merged; outside the good-prime model");
  return Multiarrangement(a.dim(), p, std::move(forms), std::move(mults), std::move(notes));
}

namespace {

// gcd of all 2x2 minors of the pair of coefficient vectors
mpz_class pair_minor_gcd(const LinearForm& a, const LinearForm& b) {
  mpz_class g = 0;
  const auto& u = a.coeffs();
  const auto& v = b.coeffs();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      mpz_class minor = u[i] * v[j] - u[j] * v[i];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
    }
  return g;
}

mpz_class pair_difference_gcd(const LinearForm& a, const LinearForm& b) {
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    mpz_class d = a.coeffs()[i] - b.coeffs()[i];
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  }
  return g;
}

}  // namespace

GoodPrimeReport good_primes_analysis(const Multiarrangement& a, GoodnessSemantics semantics) {
  if (a.characteristic() != 0)
    throw DomainError("good_primes_analysis: arrangement must be in characteristic 0");
  std::map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> hits;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      // p collides the pair iff p divides every 2x2 minor (proportional
      // semantics) resp. every coefficient difference (literal semantics),
      // so the divisor sets below are exact, not just candidates.
      mpz_class g = semantics == GoodnessSemantics::proportional
                        ? pair_minor_gcd(a.forms()[i], a.forms()[j])
                        : pair_difference_gcd(a.forms()[i], a.forms()[j]);
      if (g == 0) throw InternalError("distinct canonical forms with proportional coefficients");
      for (std::uint64_t p : prime_factors_u64(g)) hits[p].push_back({i, j});
    }
  }
  GoodPrimeReport out;
  const std::vector<std::string> vars = [&] {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < a.dim(); ++i) v.push_back("x" + std::to_string(i + 1));
    return v;
  }();
  for (const auto& [p, pairs] : hits) {
    out.non_good.push_back(p);
    std::string line = "p=" + std::to_string(p) + ":";
    for (auto [i, j] : pairs)
      line += " (" + a.forms()[i].to_string(vars) + ") ~ (" + a.forms()[j].to_string(vars) + ")";
    out.collisions.push_back(line);
  }
  return out;
}

bool is_good_prime(const Multiarrangement& a, std::uint64_t p, GoodnessSemantics semantics) {
  if (!is_prime_u64(p)) throw InputError("is_good_prime: " + std::to_string(p) + " is not prime");
  if (semantics == GoodnessSemantics::proportional) {
    std::set<LinearForm> seen;
    for (const auto& f : a.forms())
      if (!seen.insert(f.canonical_mod_p(p)).second) return false;
    return true;
  }
  PrimeField fp(p);
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& f : a.forms()) {
    std::vector<std::uint64_t> red;
    for (const auto& c : f.coeffs()) red.push_back(fp.from_mpz(c));
    if (!seen.insert(std::move(red)).second) return false;
  }
  return true;
}

}  // namespace multiarr
