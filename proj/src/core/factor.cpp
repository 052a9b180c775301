#include "core/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace modind {

namespace {

bool factor_less(const Polynomial& a, const Polynomial& b) {
  if (*a.degree() != *b.degree()) return *a.degree() < *b.degree();
  return a.str() < b.str();
}

void sort_factors(Factorization& fac) {
  std::sort(fac.factors.begin(), fac.factors.end(),
            [](const auto& x, const auto& y) {
              return factor_less(x.first, y.first);
            });
}

void merge_factor(std::vector<std::pair<Polynomial, int>>& out,
                  const Polynomial& g, int mult) {
  for (auto& [f, m] : out)
    if (f == g) {
      m += mult;
      return;
    }
  out.emplace_back(g, mult);
}

// p-th root of a polynomial that is literally a p-th power over its field
Polynomial poly_pth_root(const Polynomial& f) {
  const FieldPtr F = f.field();
  const long p = F->characteristic();
  std::vector<FieldElement> cs;
  for (std::size_t i = 0; i < f.size(); i += p)
    cs.push_back(F->frobenius_root(f.coeff(i), false).root);
  return Polynomial::from_coeffs(F, std::move(cs));
}

// f = product g_i^i with g_i squarefree and pairwise coprime; monic input,
// perfect coefficient field (finite), or a p-th-power tail as argued below.
std::vector<std::pair<Polynomial, int>> squarefree_decomp_finite(
    const Polynomial& f) {
  std::vector<std::pair<Polynomial, int>> out;
  if (f.is_constant()) return out;
  const Polynomial df = f.derivative();
  if (df.is_zero()) {
    // perfect field: f = h^p exactly
    auto sub = squarefree_decomp_finite(poly_pth_root(f));
    for (auto& [g, m] : sub) out.emplace_back(g, m * f.field()->characteristic());
    return out;
  }
  Polynomial d = Polynomial::gcd(f, df);
  Polynomial w = f / d;
  int i = 1;
  while (!w.is_constant()) {
    Polynomial y = Polynomial::gcd(w, d);
    Polynomial z = w / y;
    if (!z.is_constant()) out.emplace_back(z.monic(), i);
    w = std::move(y);
    d = d / w;
    ++i;
  }
  if (!d.is_constant()) {
    auto sub = squarefree_decomp_finite(poly_pth_root(d.monic()));
    for (auto& [g, m] : sub) out.emplace_back(g, m * f.field()->characteristic());
  }
  return out;
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void edf(const Polynomial& f, std::size_t d, Rng& rng,
         std::vector<Polynomial>& out) {
  const std::size_t n = *f.degree();
  if (n == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldPtr F = f.field();
  const unsigned long long q = *F->size();
  if (q % 2 == 1) {
    // Cantor-Zassenhaus
    unsigned long long qd = 1;
    for (std::size_t i = 0; i < d; ++i) qd *= q;
    const unsigned long long e = (qd - 1) / 2;
    while (true) {
      std::vector<FieldElement> cs;
      for (std::size_t i = 0; i < n; ++i) cs.push_back(F->element_at(rng() % q));
      Polynomial u = Polynomial::from_coeffs(F, std::move(cs));
      if (u.is_constant()) continue;
      Polynomial w = u.pow_mod(e, f) - Polynomial::one(F);
      Polynomial g = Polynomial::gcd(w, f);
      if (!g.is_constant() && *g.degree() < n) {
        edf(g, d, rng, out);
        edf(f / g, d, rng, out);
        return;
      }
    }
  }
  // small even-order fields: trial division over all monic degree-d polys
  unsigned long long qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd *= q;
  Polynomial rest = f;
  for (unsigned long long idx = 0; idx < qd && !rest.is_constant(); ++idx) {
    std::vector<FieldElement> cs;
    unsigned long long v = idx;
    for (std::size_t i = 0; i < d; ++i) {
      cs.push_back(F->element_at(v % q));
      v /= q;
    }
    cs.push_back(F->one());
    Polynomial cand = Polynomial::from_coeffs(F, std::move(cs));
    if (cand.divides(rest) && rabin_irreducible(cand)) {
      out.push_back(cand);
      rest = rest / cand;
    }
  }
  if (!rest.is_constant())
    throw invariant_violation("equal-degree split failed");
}

// distinct-degree then equal-degree factorization of a squarefree monic poly
std::vector<Polynomial> factor_squarefree_finite(const Polynomial& f, Rng& rng) {
  std::vector<Polynomial> out;
  const FieldPtr F = f.field();
  const unsigned long long q = *F->size();
  Polynomial rest = f;
  Polynomial t = Polynomial::variable(F);
  Polynomial h = t;
  std::size_t d = 0;
  while (!rest.is_constant() && 2 * (d + 1) <= *rest.degree()) {
    ++d;
    h = h.pow_mod(q, rest);
    Polynomial g = Polynomial::gcd(h - t, rest);
    if (!g.is_constant()) {
      edf(g, d, rng, out);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (!rest.is_constant()) out.push_back(rest.monic());
  return out;
}

Factorization factor_finite(const Polynomial& f, Rng& rng) {
  Factorization fac;
  fac.unit = f.leading();
  const Polynomial fm = f.monic();
  for (const auto& [g, mult] : squarefree_decomp_finite(fm))
    for (const auto& irr : factor_squarefree_finite(g, rng))
      merge_factor(fac.factors, irr, mult);
  sort_factors(fac);
  return fac;
}

// --------------------------------------------------------------------------
// rational function towers
// --------------------------------------------------------------------------

// coefficients of f as polynomials over the constants (requires den == 1
// after clearing); returns the primitive associate
std::vector<Polynomial> clear_denominators(const Polynomial& f) {
  const FieldPtr F = f.field();
  const FieldPtr E = F->base();
  Polynomial lcm = Polynomial::one(E);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& fr = f.coeff(i).frac_rep();
    lcm = lcm * (fr.den / Polynomial::gcd(lcm, fr.den));
  }
  std::vector<Polynomial> cs;
  cs.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& fr = f.coeff(i).frac_rep();
    cs.push_back(fr.num * (lcm / fr.den));
  }
  Polynomial content = Polynomial::zero(E);
  for (const auto& c : cs) content = Polynomial::gcd(content, c);
  if (!content.is_constant())
    for (auto& c : cs) c = c / content;
  return cs;
}

bool has_constant_coeffs(const Polynomial& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& fr = f.coeff(i).frac_rep();
    if (!fr.den.is_constant() || !fr.num.is_constant()) return false;
  }
  return true;
}

Polynomial to_constant_poly(const Polynomial& f) {
  const FieldPtr E = f.field()->base();
  std::vector<FieldElement> cs;
  for (std::size_t i = 0; i < f.size(); ++i)
    cs.push_back(f.coeff(i).frac_rep().num.coeff(0));
  return Polynomial::from_coeffs(E, std::move(cs));
}

Polynomial lift_constant_poly(const Polynomial& g, const FieldPtr& F) {
  return g.map_coeffs(F, [&](const FieldElement& c) {
    return Field::embed(c, F);
  });
}

// all monic divisors of a polynomial over a finite field
std::vector<Polynomial> monic_divisors(const Polynomial& f, Rng& rng) {
  Factorization fac = factor_finite(f, rng);
  std::vector<Polynomial> divs{Polynomial::one(f.field())};
  for (const auto& [g, mult] : fac.factors) {
    std::vector<Polynomial> next;
    for (const auto& d : divs) {
      Polynomial acc = d;
      next.push_back(acc);
      for (int i = 0; i < mult; ++i) {
        acc = acc * g;
        next.push_back(acc);
      }
    }
    divs = std::move(next);
  }
  return divs;
}

std::vector<FieldElement> ratfun_roots(const Polynomial& h, Rng& rng) {
  const FieldPtr F = h.field();
  const FieldPtr E = F->base();
  std::vector<FieldElement> roots;
  std::vector<Polynomial> cs = clear_denominators(h);
  const std::size_t n = cs.size() - 1;
  if (cs[0].is_zero()) {
    roots.push_back(F->zero());
    if (n >= 1) {
      Polynomial reduced = h / Polynomial::variable(F);
      if (!reduced.is_constant())
        for (const auto& r : ratfun_roots(reduced, rng))
          if (!r.is_zero()) roots.push_back(r);
    }
    return roots;
  }
  const unsigned long long qe = *E->size();
  std::vector<Polynomial> u_divs = monic_divisors(cs[0], rng);
  std::vector<Polynomial> v_divs = monic_divisors(cs[n], rng);
  for (const auto& u : u_divs)
    for (const auto& v : v_divs) {
      if (!Polynomial::gcd(u, v).is_constant()) continue;
      for (unsigned long long li = 1; li < qe; ++li) {
        const FieldElement lambda = E->element_at(li);
        FieldElement cand =
            F->make_fraction(u.scale(lambda), v);
        if (h.eval(cand).is_zero()) roots.push_back(cand);
      }
    }
  std::sort(roots.begin(), roots.end(),
            [](const FieldElement& a, const FieldElement& b) {
              return a.str() < b.str();
            });
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

using Pattern = std::vector<std::size_t>;  // sorted multiset of degrees

void coarsenings_rec(const Pattern& rest, Pattern acc, std::set<Pattern>& out) {
  if (rest.empty()) {
    std::sort(acc.begin(), acc.end());
    out.insert(acc);
    return;
  }
  Pattern tail(rest.begin() + 1, rest.end());
  // first element joins an existing block or starts a new one
  for (std::size_t i = 0; i < acc.size(); ++i) {
    Pattern a2 = acc;
    a2[i] += rest[0];
    coarsenings_rec(tail, std::move(a2), out);
  }
  Pattern a3 = acc;
  a3.push_back(rest[0]);
  coarsenings_rec(tail, std::move(a3), out);
}

std::set<Pattern> coarsenings(const Pattern& p) {
  std::set<Pattern> out;
  coarsenings_rec(p, {}, out);
  return out;
}

// Degree patterns of specializations constrain the true factor degrees: each
// true factor specializes to a product, so the true degree multiset is a
// coarsening of every observed pattern.  If {n} is the only common
// coarsening, h is irreducible.
bool specialization_irreducible(const Polynomial& h, Rng& rng) {
  const FieldPtr F = h.field();
  std::vector<Polynomial> cur = clear_denominators(h);
  const std::size_t n = cur.size() - 1;
  FieldPtr E = F->base();
  std::optional<std::set<Pattern>> candidates;
  int used = 0;
  for (int round = 0; round < 3 && used < 12; ++round) {
    if (round > 0) {
      FieldPtr E2 = Field::extension(E, find_irreducible(E, 2),
                                     "_s" + std::to_string(round));
      for (auto& c : cur)
        c = c.map_coeffs(E2,
                         [&](const FieldElement& x) { return Field::embed(x, E2); });
      E = E2;
    }
    const unsigned long long qe = *E->size();
    for (unsigned long long idx = 0; idx < qe && used < 12; ++idx) {
      const FieldElement sigma = E->element_at(idx);
      if (cur[n].eval(sigma).is_zero()) continue;  // degree would drop
      std::vector<FieldElement> vals;
      vals.reserve(cur.size());
      for (const auto& c : cur) vals.push_back(c.eval(sigma));
      Polynomial spec = Polynomial::from_coeffs(E, std::move(vals));
      ++used;
      Factorization sf = factor_finite(spec, rng);
      Pattern pat;
      for (const auto& [g, m] : sf.factors)
        for (int i = 0; i < m; ++i) pat.push_back(*g.degree());
      std::sort(pat.begin(), pat.end());
      std::set<Pattern> co = coarsenings(pat);
      if (!candidates) {
        candidates = std::move(co);
      } else {
        std::set<Pattern> inter;
        std::set_intersection(candidates->begin(), candidates->end(),
                              co.begin(), co.end(),
                              std::inserter(inter, inter.begin()));
        candidates = std::move(inter);
      }
      if (candidates->size() == 1 && *candidates->begin() == Pattern{n})
        return true;
    }
  }
  return false;
}

Factorization factor_ratfun(const Polynomial& f, Rng& rng);

// squarefree, separable, monic, degree >= 1, over a function field
void factor_sep_squarefree(const Polynomial& h0, Rng& rng,
                           std::vector<std::pair<Polynomial, int>>& out,
                           int mult);

Factorization factor_ratfun(const Polynomial& f, Rng& rng) {
  Factorization fac;
  fac.unit = f.leading();
  const FieldPtr F = f.field();
  const long p = F->characteristic();
  Polynomial g = f.monic();
  if (g.is_constant()) return fac;

  const Polynomial dg = g.derivative();
  if (dg.is_zero()) {
    // g = h(t^p); factor h, then decide each factor q(t^p)
    std::vector<FieldElement> hc;
    for (std::size_t i = 0; i < g.size(); i += p) hc.push_back(g.coeff(i));
    Polynomial h = Polynomial::from_coeffs(F, std::move(hc));
    Factorization hf = factor_ratfun(h, rng);
    for (const auto& [q, m] : hf.factors) {
      bool rootable = true;
      std::vector<FieldElement> rc;
      for (std::size_t i = 0; i < q.size(); ++i) {
        try {
          rc.push_back(F->frobenius_root(q.coeff(i), false).root);
        } catch (const math_error&) {
          rootable = false;
          break;
        }
      }
      if (rootable) {
        // q(t^p) = qhat(t)^p with qhat irreducible
        Polynomial qhat = Polynomial::from_coeffs(F, std::move(rc));
        merge_factor(fac.factors, qhat, m * static_cast<int>(p));
      } else {
        merge_factor(fac.factors, q.compose_xk(p), m);
      }
    }
    sort_factors(fac);
    return fac;
  }

  Polynomial d = Polynomial::gcd(g, dg);
  if (d.is_constant()) {
    factor_sep_squarefree(g, rng, fac.factors, 1);
    sort_factors(fac);
    return fac;
  }
  Factorization f1 = factor_ratfun(g / d, rng);
  Factorization f2 = factor_ratfun(d, rng);
  for (const auto& [q, m] : f1.factors) merge_factor(fac.factors, q, m);
  for (const auto& [q, m] : f2.factors) merge_factor(fac.factors, q, m);
  sort_factors(fac);
  return fac;
}

void factor_sep_squarefree(const Polynomial& h0, Rng& rng,
                           std::vector<std::pair<Polynomial, int>>& out,
                           int mult) {
  const FieldPtr F = h0.field();
  Polynomial h = h0;
  for (const FieldElement& r : ratfun_roots(h, rng)) {
    Polynomial lin = Polynomial::variable(F) - Polynomial::constant(r);
    merge_factor(out, lin, mult);
    h = h / lin;
  }
  if (h.is_constant()) return;
  if (*h.degree() == 1) {
    merge_factor(out, h.monic(), mult);
    return;
  }
  if (has_constant_coeffs(h)) {
    Factorization cf = factor(to_constant_poly(h), rng());
    for (const auto& [q, m] : cf.factors)
      merge_factor(out, lift_constant_poly(q, F), mult * m);
    return;
  }
  if (*h.degree() <= 3) {
    // no roots and squarefree: degree 2 or 3 without linear factors
    merge_factor(out, h.monic(), mult);
    return;
  }
  if (specialization_irreducible(h, rng)) {
    merge_factor(out, h.monic(), mult);
    return;
  }
  throw unsupported_computation(
      "factorization over " + F->describe() +
      " not supported for this input: " + h.str());
}

}  // namespace

Polynomial Factorization::expand() const {
  Polynomial acc = Polynomial::constant(unit);
  for (const auto& [g, m] : factors)
    acc = acc * g.pow(static_cast<unsigned long long>(m));
  return acc;
}

Factorization factor(const Polynomial& f, unsigned long long seed) {
  if (f.is_zero()) throw math_error("cannot factor the zero polynomial");
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  const FieldPtr F = f.field();
  if (F->is_finite()) return factor_finite(f, rng);
  if (F->kind() == Field::Kind::RationalFunction ||
      F->kind() == Field::Kind::Inseparable)
    return factor_ratfun(f, rng);
  throw unsupported_computation("factorization over " + F->describe());
}

bool is_irreducible(const Polynomial& f, unsigned long long seed) {
  if (f.is_zero() || f.is_constant()) return false;
  if (f.field()->is_finite()) return rabin_irreducible(f.monic());
  Factorization fac = factor(f, seed);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<FieldElement> roots_in_field(const Polynomial& f,
                                         unsigned long long seed) {
  std::vector<FieldElement> out;
  for (const auto& [g, m] : factor(f, seed).factors)
    if (*g.degree() == 1)
      for (int i = 0; i < m; ++i) out.push_back(-g.coeff(0));
  return out;
}

Polynomial find_irreducible(const FieldPtr& field, std::size_t degree) {
  if (!field->is_finite())
    throw unsupported_computation("irreducible search needs a finite field");
  if (degree == 0) throw math_error("irreducible of degree zero");
  const unsigned long long q = *field->size();
  unsigned long long total = 1;
  for (std::size_t i = 0; i < degree; ++i) total *= q;
  for (unsigned long long idx = 0; idx < total; ++idx) {
    std::vector<FieldElement> cs;
    unsigned long long v = idx;
    for (std::size_t i = 0; i < degree; ++i) {
      cs.push_back(field->element_at(v % q));
      v /= q;
    }
    cs.push_back(field->one());
    Polynomial cand = Polynomial::from_coeffs(field, std::move(cs));
    if (rabin_irreducible(cand)) return cand;
  }
  throw invariant_violation("no irreducible polynomial found");
}

SplittingData splitting_extension(const Polynomial& f, unsigned long long seed,
                                  const std::string& var_hint) {
  if (f.is_zero()) throw math_error("cannot split the zero polynomial");
  const FieldPtr F = f.field();
  Factorization fac = factor(f, seed);

  if (F->is_finite()) {
    std::size_t m = 1;
    for (const auto& [g, mult] : fac.factors) m = std::lcm(m, *g.degree());
    FieldPtr E = F;
    if (m > 1) {
      // prefer a factor of the full degree as the modulus so the adjoined
      // root is a root of f itself
      Polynomial mod;
      bool found = false;
      for (const auto& [g, mult] : fac.factors)
        if (*g.degree() == m) {
          mod = g;
          found = true;
          break;
        }
      if (!found) mod = find_irreducible(F, m);
      E = Field::extension(F, mod,
                           var_hint.empty() ? "w" + std::to_string(m)
                                            : var_hint);
    }
    SplittingData sd;
    sd.field = E;
    for (const auto& [g, mult] : fac.factors) {
      Polynomial ge = lift_constant_poly(g, E);
      const auto rs = roots_in_field(ge, seed);
      if (rs.size() != *g.degree())
        throw invariant_violation("factor failed to split over the extension");
      for (const auto& r : rs) sd.roots.emplace_back(r, mult);
    }
    return sd;
  }

  // function-field towers: combine a constants extension with a deeper
  // inseparable root tower, as the factors demand
  std::size_t const_deg = 1;
  long extra_levels = 0;
  const long p = F->characteristic();
  for (const auto& [g, mult] : fac.factors) {
    if (*g.degree() == 1) continue;
    if (has_constant_coeffs(g)) {
      const_deg = std::lcm(const_deg, *g.degree());
      continue;
    }
    // purely inseparable shape: g = q(t^{p^k}) with q linear
    Polynomial q = g;
    long k = 0;
    while (*q.degree() > 1 && *q.degree() % p == 0) {
      bool shape = true;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (i % p != 0 && !q.coeff(i).is_zero()) {
          shape = false;
          break;
        }
      if (!shape) break;
      std::vector<FieldElement> hc;
      for (std::size_t i = 0; i < q.size(); i += p) hc.push_back(q.coeff(i));
      q = Polynomial::from_coeffs(F, std::move(hc));
      ++k;
    }
    if (*q.degree() == 1 && k > 0) {
      extra_levels = std::max(extra_levels, k);
      continue;
    }
    throw unsupported_computation(
        "splitting field construction not supported for factor " + g.str());
  }

  FieldPtr target = F;
  if (const_deg > 1) {
    FieldPtr E0 = F->base();
    FieldPtr E1 = Field::extension(
        E0, find_irreducible(E0, const_deg),
        var_hint.empty() ? "w" + std::to_string(const_deg) : var_hint);
    if (F->kind() == Field::Kind::RationalFunction) {
      target = Field::rational_function(E1, F->var());
    } else {
      FieldPtr root = Field::rational_function(E1, F->root_field()->var());
      target = Field::inseparable_root(root, F->insep_level());
    }
  }
  if (extra_levels > 0) target = Field::inseparable_root(target, extra_levels);

  SplittingData sd;
  sd.field = target;
  if (target->equals(*F)) {
    for (const auto& [g, mult] : fac.factors) {
      if (*g.degree() != 1)
        throw unsupported_computation("polynomial does not split where claimed");
      sd.roots.emplace_back(-g.coeff(0), mult);
    }
    return sd;
  }
  Polynomial lifted = f.map_coeffs(
      target, [&](const FieldElement& c) { return Field::embed(c, target); });
  return splitting_extension(lifted, seed, var_hint);
}

std::vector<FieldElement> galois_orbit(const FieldElement& a,
                                       const FieldPtr& base) {
  const FieldPtr F = a.field();
  if (F->equals(*base)) return {a};
  if (!Field::embeds(base, F))
    throw incompatible_fields("base does not embed into the element's field");

  if (F->is_finite()) {
    if (!base->is_finite())
      throw incompatible_fields("finite element over an infinite base");
    const unsigned long long q0 = *base->size();
    std::vector<FieldElement> orbit;
    FieldElement b = a;
    do {
      orbit.push_back(b);
      b = b.pow(static_cast<long long>(q0));
    } while (!(b == a));
    return orbit;
  }

  // function field towers
  if (base->kind() == Field::Kind::RationalFunction ||
      base->kind() == Field::Kind::Inseparable) {
    const FieldPtr cb = base->base();  // constants of the base
    const FieldPtr cf = F->base();     // constants of the element's field
    if (cb->equals(*cf)) {
      // purely inseparable step: unique p^k-th roots, trivial orbit
      return {a};
    }
    // constants grew: conjugate coefficientwise
    const unsigned long long q0 = *cb->size();
    auto conj = [&](const FieldElement& x) {
      const auto& fr = x.frac_rep();
      auto fn = [&](const FieldElement& c) {
        return c.pow(static_cast<long long>(q0));
      };
      return F->make_fraction(fr.num.map_coeffs(cf, fn),
                              fr.den.map_coeffs(cf, fn));
    };
    std::vector<FieldElement> orbit;
    FieldElement b = a;
    do {
      orbit.push_back(b);
      b = conj(b);
    } while (!(b == a));
    return orbit;
  }

  // base finite, element in a function field: algebraic only for constants
  const auto& fr = a.frac_rep();
  if (fr.den.is_constant() && fr.num.is_constant()) {
    FieldElement c = fr.num.coeff(0);
    std::vector<FieldElement> orbit;
    for (const auto& x : galois_orbit(c, base))
      orbit.push_back(Field::embed(x, F));
    return orbit;
  }
  throw math_error("element is not algebraic over the base field");
}

}  // namespace modind
