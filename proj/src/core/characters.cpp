#include "core/characters.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "core/factor.hpp"

namespace modind {

namespace {

FieldElement random_field_element(const FieldPtr& f, std::mt19937_64& rng) {
  if (f->is_finite()) return f->element_at(rng() % *f->size());
  const FieldPtr e = f->base();
  auto rand_poly = [&](bool nonzero) {
    std::vector<FieldElement> cs;
    const std::size_t d = rng() % 3;
    for (std::size_t i = 0; i <= d; ++i)
      cs.push_back(e->element_at(rng() % *e->size()));
    Polynomial p = Polynomial::from_coeffs(e, std::move(cs));
    if (nonzero && p.is_zero()) p = Polynomial::one(e);
    return p;
  };
  return f->make_fraction(rand_poly(false), rand_poly(true));
}

// descend a value through the tower while it is representable below, but
// never below `floor`
FieldElement descend_value(FieldElement x, const FieldPtr& floor) {
  for (;;) {
    const FieldPtr f = x.field();
    if (f->equals(*floor)) return x;
    if (f->kind() == Field::Kind::Extension) {
      const auto& rep = x.ext_rep();
      bool constant = true;
      for (std::size_t i = 1; i < rep.size(); ++i)
        if (!rep[i].is_zero()) constant = false;
      if (!constant || !Field::embeds(floor, f->base())) return x;
      x = rep[0];
      continue;
    }
    if (f->kind() == Field::Kind::Inseparable) {
      const long p = f->characteristic();
      const auto& fr = x.frac_rep();
      auto divisible = [&](const Polynomial& q) {
        for (std::size_t i = 0; i < q.size(); ++i)
          if (i % p != 0 && !q.coeff(i).is_zero()) return false;
        return true;
      };
      if (!divisible(fr.num) || !divisible(fr.den)) return x;
      FieldPtr lower = f->insep_level() == 1
                           ? f->root_field()
                           : Field::inseparable_root(f->root_field(),
                                                     f->insep_level() - 1);
      if (!Field::embeds(floor, lower)) return x;
      auto compress = [&](const Polynomial& q) {
        std::vector<FieldElement> cs;
        for (std::size_t i = 0; i < q.size(); i += p) cs.push_back(q.coeff(i));
        return Polynomial::from_coeffs(f->base(), std::move(cs));
      };
      x = lower->make_fraction(compress(fr.num), compress(fr.den));
      continue;
    }
    if (f->kind() == Field::Kind::RationalFunction &&
        f->base()->kind() == Field::Kind::Extension) {
      // constants may shrink: F_9(t) -> F_3(t)
      const FieldPtr smaller =
          Field::rational_function(f->base()->base(), f->var());
      if (!Field::embeds(floor, smaller)) return x;
      const auto& fr = x.frac_rep();
      bool ok = true;
      auto shrink = [&](const Polynomial& q) {
        std::vector<FieldElement> cs;
        for (std::size_t i = 0; i < q.size(); ++i) {
          FieldElement c = descend_value(q.coeff(i), f->base()->base());
          if (!c.field()->equals(*f->base()->base())) ok = false;
          cs.push_back(c);
        }
        return ok ? Polynomial::from_coeffs(smaller->base(), std::move(cs))
                  : Polynomial();
      };
      Polynomial num = shrink(fr.num);
      Polynomial den = ok ? shrink(fr.den) : Polynomial();
      if (!ok) return x;
      x = smaller->make_fraction(std::move(num), std::move(den));
      continue;
    }
    return x;
  }
}

FieldElement conjugate_once(const FieldElement& a, const FieldPtr& base) {
  const FieldPtr f = a.field();
  if (f->equals(*base)) return a;
  if (f->is_finite()) {
    if (!base->is_finite())
      throw incompatible_fields("conjugation base does not fit the tower");
    return a.pow(static_cast<long long>(*base->size()));
  }
  // function field towers
  if (base->kind() == Field::Kind::RationalFunction ||
      base->kind() == Field::Kind::Inseparable) {
    const FieldPtr cb = base->base();
    const FieldPtr cf = f->base();
    if (cb->equals(*cf)) return a;  // purely inseparable step
    const unsigned long long q0 = *cb->size();
    const auto& fr = a.frac_rep();
    auto fn = [&](const FieldElement& c) {
      return c.pow(static_cast<long long>(q0));
    };
    return f->make_fraction(fr.num.map_coeffs(cf, fn),
                            fr.den.map_coeffs(cf, fn));
  }
  throw unsupported_computation("conjugation over this base");
}

}  // namespace

std::string Character::str(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << names[i] << " -> " << values[i].str();
  }
  os << ")";
  return os.str();
}

bool same_character(const Character& a, const Character& b) {
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!(a.values[i] == b.values[i])) return false;
  return true;
}

Character conjugate_character(const Character& c, const FieldPtr& base) {
  Character out;
  out.tower = c.tower;
  for (const auto& v : c.values) out.values.push_back(conjugate_once(v, base));
  return out;
}

bool Cluster::contains(const Character& c) const {
  for (const auto& x : chars)
    if (same_character(x, c)) return true;
  return false;
}

bool Cluster::subset_of(const Cluster& o) const {
  for (const auto& x : chars)
    if (!o.contains(x)) return false;
  return true;
}

std::vector<Matrix> phi(const Representation& v) {
  if (!v.algebra->has_pmap()) throw math_error("phi needs a restricted algebra");
  const long p = v.algebra->p();
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < v.algebra->dim(); ++i)
    out.push_back(v.action[i].pow(static_cast<unsigned long long>(p)) -
                  v.action_of(v.algebra->pmap_basis(i)));
  return out;
}

ValidationReport check_p_semilinear(const Representation& v, int trials,
                                    unsigned long long seed) {
  ValidationReport rep;
  if (!v.algebra->has_pmap()) {
    rep.failures.push_back("no p-map");
    return rep;
  }
  const FieldPtr F = v.algebra->field();
  const long p = v.algebra->p();
  const std::size_t n = v.algebra->dim();
  std::mt19937_64 rng(seed * 0x6a09e667f3bcc909ULL + 3);
  auto phi_of = [&](const Vec& u) {
    return v.action_of(u).pow(static_cast<unsigned long long>(p)) -
           v.action_of(v.algebra->jacobson_p_power(u));
  };
  for (int t = 0; t < trials; ++t) {
    Vec u, w;
    for (std::size_t i = 0; i < n; ++i) {
      u.push_back(random_field_element(F, rng));
      w.push_back(random_field_element(F, rng));
    }
    const FieldElement lam = random_field_element(F, rng);
    if (phi_of(add(u, w)) != phi_of(u) + phi_of(w))
      rep.failures.push_back("additivity fails on trial " + std::to_string(t));
    if (phi_of(scale(u, lam)) != phi_of(u).scale(lam.pow(p)))
      rep.failures.push_back("p-semilinearity fails on trial " +
                             std::to_string(t));
  }
  return rep;
}

std::optional<Character> has_character(const Representation& v) {
  std::vector<Matrix> ph = phi(v);
  std::vector<FieldElement> scalars;
  for (const auto& m : ph) {
    auto s = m.as_scalar();
    if (!s) return std::nullopt;
    scalars.push_back(*s);
  }
  // extract p-th roots, growing the tower as needed until it stabilizes
  FieldPtr tower = v.field;
  for (;;) {
    bool grew = false;
    std::vector<FieldElement> roots;
    for (const auto& s : scalars) {
      FrobeniusRoot r = tower->frobenius_root(Field::embed(s, tower));
      if (r.enlarged) {
        tower = r.root.field();
        grew = true;
        break;
      }
      roots.push_back(r.root);
    }
    if (grew) continue;
    Character c;
    c.tower = tower;
    for (auto& r : roots) c.values.push_back(descend_value(r, v.field));
    // smallest common level
    FieldPtr lvl = v.field;
    for (const auto& val : c.values)
      if (Field::embeds(lvl, val.field())) lvl = val.field();
    c.tower = lvl;
    return c;
  }
}

namespace {

// refine a list of subspaces by the generalized kernels of op
std::vector<std::vector<Vec>> refine_by(const Representation& v,
                                        const std::vector<std::vector<Vec>>& comps,
                                        const Matrix& op,
                                        unsigned long long seed) {
  std::vector<std::vector<Vec>> out;
  for (const auto& comp : comps) {
    Matrix cols = Matrix::from_cols(v.field, comp, v.dim);
    // the operator restricted to the component
    Matrix a(v.field, comp.size(), comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) {
      Vec img = op.apply(comp[j]);
      auto c = solve(cols, img);
      if (!c || !eq_vec(cols.apply(*c), img))
        throw invariant_violation("component is not invariant");
      for (std::size_t i = 0; i < comp.size(); ++i) a.set(i, j, (*c)[i]);
    }
    Polynomial mp = minimal_polynomial(a);
    Factorization fac = factor(mp, seed);
    if (fac.factors.size() == 1) {
      out.push_back(comp);
      continue;
    }
    for (const auto& [q, mult] : fac.factors) {
      Matrix kerop = apply_poly(q, a).pow(static_cast<unsigned long long>(mult));
      std::vector<Vec> ker = nullspace(kerop);
      std::vector<Vec> lifted;
      for (const auto& k : ker) lifted.push_back(cols.apply(k));
      out.push_back(std::move(lifted));
    }
  }
  return out;
}

std::vector<Cluster> orbits_of(std::vector<Character> chars,
                               const FieldPtr& base) {
  std::vector<Cluster> orbits;
  while (!chars.empty()) {
    Cluster orb;
    Character cur = chars.front();
    for (;;) {
      orb.chars.push_back(cur);
      cur = conjugate_character(cur, base);
      bool seen = false;
      for (const auto& c : orb.chars)
        if (same_character(c, cur)) seen = true;
      if (seen) break;
    }
    std::vector<Character> rest;
    for (const auto& c : chars)
      if (!orb.contains(c)) rest.push_back(c);
    if (rest.size() == chars.size())
      throw invariant_violation("orbit extraction failed to shrink");
    chars = std::move(rest);
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace

Cluster cluster_of(const Representation& v, unsigned long long seed) {
  std::vector<Matrix> ph = phi(v);
  // splitting field of all the minimal polynomials
  FieldPtr e = v.field;
  for (const auto& m : ph) {
    Polynomial mp = minimal_polynomial(m);
    Polynomial lifted = mp.map_coeffs(
        e, [&](const FieldElement& c) { return Field::embed(c, e); });
    e = splitting_extension(lifted, seed, "i").field;
  }
  Representation ve = extend_scalars(v, e);
  std::vector<Matrix> phe = phi(ve);

  std::vector<std::vector<Vec>> comps{std::vector<Vec>()};
  for (std::size_t i = 0; i < ve.dim; ++i)
    comps[0].push_back(unit_vec(e, ve.dim, i));
  for (const auto& m : phe) comps = refine_by(ve, comps, m, seed);

  // joint eigenvalue tuples -> characters via unique p-th roots
  std::vector<Character> chars;
  for (const auto& comp : comps) {
    Matrix cols = Matrix::from_cols(e, comp, ve.dim);
    std::vector<FieldElement> tuple;
    for (const auto& m : phe) {
      // eigenvalue on the component: coordinate of the image of the first
      // basis vector is not robust under nilpotents; use the minimal
      // polynomial of the restriction, which is (t - lambda)^k here
      Matrix a(e, comp.size(), comp.size());
      for (std::size_t j = 0; j < comp.size(); ++j) {
        Vec img = m.apply(comp[j]);
        auto c = solve(cols, img);
        for (std::size_t i2 = 0; i2 < comp.size(); ++i2)
          a.set(i2, j, (*c)[i2]);
      }
      Polynomial mp = minimal_polynomial(a);
      auto rs = roots_in_field(mp, seed);
      if (rs.empty())
        throw invariant_violation("component eigenvalue did not split");
      tuple.push_back(rs[0]);
    }
    FieldPtr tower = e;
    for (;;) {
      bool grew = false;
      std::vector<FieldElement> roots;
      for (const auto& s : tuple) {
        FrobeniusRoot r = tower->frobenius_root(Field::embed(s, tower));
        if (r.enlarged) {
          tower = r.root.field();
          grew = true;
          break;
        }
        roots.push_back(r.root);
      }
      if (grew) continue;
      Character c;
      for (auto& r : roots) c.values.push_back(descend_value(r, v.field));
      FieldPtr lvl = v.field;
      for (const auto& val : c.values)
        if (Field::embeds(lvl, val.field())) lvl = val.field();
      c.tower = lvl;
      chars.push_back(std::move(c));
      break;
    }
  }
  // dedupe and order deterministically
  std::vector<Character> uniq;
  for (auto& c : chars) {
    bool dup = false;
    for (const auto& u : uniq)
      if (same_character(u, c)) dup = true;
    if (!dup) uniq.push_back(std::move(c));
  }
  std::sort(uniq.begin(), uniq.end(), [&](const Character& a, const Character& b) {
    return a.str(v.algebra->names()) < b.str(v.algebra->names());
  });
  Cluster cl;
  cl.chars = std::move(uniq);
  return cl;
}

std::vector<ClusterComponent> cluster_decompose(const Representation& v,
                                                unsigned long long seed) {
  const FieldPtr F = v.field;
  std::vector<Matrix> ph = phi(v);

  std::vector<std::vector<Vec>> comps{std::vector<Vec>()};
  for (std::size_t i = 0; i < v.dim; ++i) comps[0].push_back(unit_vec(F, v.dim, i));
  for (const auto& m : ph) comps = refine_by(v, comps, m, seed);

  // split components that still hold several Galois orbits, using a
  // separating element of the commutative algebra generated by the phi_i
  std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + 11);
  std::vector<ClusterComponent> out;
  std::vector<std::vector<Vec>> work = std::move(comps);
  while (!work.empty()) {
    std::vector<Vec> comp = std::move(work.back());
    work.pop_back();
    Representation sub = subrepresentation(v, comp);
    Cluster cl = cluster_of(sub, seed);
    std::vector<Cluster> orbits = orbits_of(cl.chars, F);
    if (orbits.size() <= 1) {
      out.push_back({std::move(orbits.empty() ? cl : orbits[0]), std::move(comp)});
      continue;
    }
    // candidate separating elements: phi sums with small coefficients, then
    // seeded random combinations and products
    std::vector<Matrix> cands;
    const long p = v.algebra->p();
    const std::size_t n = ph.size();
    std::vector<FieldElement> pool;
    for (long k = 0; k < p; ++k) pool.push_back(F->from_int(k));
    if (!F->is_finite()) pool.push_back(F->generator());
    // deterministic small sums first
    std::vector<std::size_t> tuple(n, 0);
    for (int iter = 0; iter < 200; ++iter) {
      Matrix h(F, v.dim, v.dim);
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (tuple[i] == 0) continue;
        h = h + ph[i].scale(pool[tuple[i] % pool.size()]);
        nonzero = true;
      }
      if (nonzero) cands.push_back(h);
      std::size_t i = 0;
      while (i < n && ++tuple[i] == pool.size()) tuple[i++] = 0;
      if (i == n) break;
    }
    for (int extra = 0; extra < 40; ++extra) {
      Matrix h(F, v.dim, v.dim);
      for (std::size_t i = 0; i < n; ++i)
        h = h + ph[i].scale(random_field_element(F, rng));
      if (n >= 2 && rng() % 2) h = h + ph[rng() % n] * ph[rng() % n];
      cands.push_back(h);
    }
    bool split = false;
    for (const auto& h : cands) {
      Matrix cols = Matrix::from_cols(F, comp, v.dim);
      Matrix a(F, comp.size(), comp.size());
      bool invariant = true;
      for (std::size_t j = 0; j < comp.size() && invariant; ++j) {
        Vec img = h.apply(comp[j]);
        auto c = solve(cols, img);
        if (!c || !eq_vec(cols.apply(*c), img)) {
          invariant = false;
          break;
        }
        for (std::size_t i2 = 0; i2 < comp.size(); ++i2) a.set(i2, j, (*c)[i2]);
      }
      if (!invariant) continue;
      Polynomial mp = minimal_polynomial(a);
      Factorization fac;
      try {
        fac = factor(mp, seed);
      } catch (const unsupported_computation&) {
        continue;
      }
      if (fac.factors.size() < 2) continue;
      for (const auto& [q, mult] : fac.factors) {
        Matrix kerop =
            apply_poly(q, a).pow(static_cast<unsigned long long>(mult));
        std::vector<Vec> ker = nullspace(kerop);
        std::vector<Vec> lifted;
        for (const auto& k : ker) lifted.push_back(cols.apply(k));
        work.push_back(std::move(lifted));
      }
      split = true;
      break;
    }
    if (!split)
      throw unsupported_computation(
          "no separating element found for a multi-orbit component");
  }

  // verification: the components form a direct sum decomposition
  std::size_t total = 0;
  SpanBasis all(F, v.dim);
  for (const auto& c : out) {
    total += c.basis.size();
    for (const auto& b : c.basis)
      if (!all.add(b))
        throw invariant_violation("cluster components are not independent");
  }
  if (total != v.dim)
    throw invariant_violation("cluster components do not fill the module");

  std::sort(out.begin(), out.end(),
            [&](const ClusterComponent& a, const ClusterComponent& b) {
              if (a.cluster.chars.empty() || b.cluster.chars.empty())
                return a.cluster.chars.size() < b.cluster.chars.size();
              return a.cluster.chars[0].str(v.algebra->names()) <
                     b.cluster.chars[0].str(v.algebra->names());
            });
  return out;
}

std::vector<Vec> cluster_project(const Representation& v, const Cluster& c,
                                 unsigned long long seed) {
  auto comps = cluster_decompose(v, seed);
  std::vector<Vec> basis;
  for (const auto& comp : comps)
    if (comp.cluster.subset_of(c))
      for (const auto& b : comp.basis) basis.push_back(b);
  return basis;
}

}  // namespace modind
