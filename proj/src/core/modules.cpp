#include "core/modules.hpp"

#include <random>
#include <sstream>

#include "core/factor.hpp"

namespace modind {

Matrix Representation::action_of(const Vec& u) const {
  Matrix acc(field, dim, dim);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    acc = acc + action[i].scale(Field::embed(u[i], field));
  }
  return acc;
}

Matrix Representation::action_of_monomial(const MultiIndex& a) const {
  Matrix acc = Matrix::identity(field, dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0) acc = acc * action[i].pow(a[i]);
  return acc;
}

Matrix Representation::action_of_element(const PBWElement& e) const {
  Matrix acc(field, dim, dim);
  for (const auto& [m, c] : e.terms())
    acc = acc + action_of_monomial(m).scale(Field::embed(c, field));
  return acc;
}

std::string Representation::label(std::size_t i) const {
  if (i < labels.size()) return labels[i];
  return "v" + std::to_string(i);
}

ValidationReport validate_rep(const Representation& v) {
  ValidationReport rep;
  const std::size_t n = v.algebra->dim();
  if (v.action.size() != n) {
    rep.failures.push_back("one action matrix per basis element is required");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (v.action[i].rows() != v.dim || v.action[i].cols() != v.dim)
      rep.failures.push_back("action matrix " + v.algebra->names()[i] +
                             " has the wrong shape");
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix lhs = v.action_of(v.algebra->bracket_basis(i, j));
      Matrix rhs = v.action[i] * v.action[j] - v.action[j] * v.action[i];
      if (lhs != rhs)
        rep.failures.push_back("action violates [" + v.algebra->names()[i] +
                               ", " + v.algebra->names()[j] + "]");
    }
  if (v.bound) {
    if (v.bound->algebra()->dim() != n)
      rep.failures.push_back("bound reduced algebra mismatches the algebra");
    const long p = v.algebra->p();
    for (std::size_t i = 0; i < n; ++i) {
      Matrix phi =
          v.action[i].pow(static_cast<unsigned long long>(p)) -
          v.action_of(v.algebra->pmap_basis(i));
      Matrix img = apply_poly(v.bound->f_family().polys[i], phi);
      if (!img.is_zero())
        rep.failures.push_back("f_" + v.algebra->names()[i] +
                               " does not annihilate the module");
    }
  }
  return rep;
}

std::vector<Matrix> hom_space(const Representation& v, const Representation& w) {
  if (!v.algebra->field()->equals(*w.algebra->field()) ||
      v.algebra->dim() != w.algebra->dim())
    throw math_error("hom_space needs modules over one algebra");
  FieldPtr F = Field::common_field(v.field, w.field);
  if (!F) throw incompatible_fields("hom_space over incomparable fields");
  const std::size_t n = v.algebra->dim();
  const std::size_t mv = v.dim, mw = w.dim;
  // unknowns theta_{a b}, a < mw, b < mv, row-major
  Matrix sys(F, n * mw * mv, mw * mv);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix av = v.action[i].map_entries(F);
    const Matrix aw = w.action[i].map_entries(F);
    for (std::size_t a = 0; a < mw; ++a)
      for (std::size_t b = 0; b < mv; ++b) {
        // (theta av)_{ab} - (aw theta)_{ab} = 0
        for (std::size_t c = 0; c < mv; ++c)
          sys.set(row, a * mv + c, sys.at(row, a * mv + c) + av.at(c, b));
        for (std::size_t c = 0; c < mw; ++c)
          sys.set(row, c * mv + b, sys.at(row, c * mv + b) - aw.at(a, c));
        ++row;
      }
  }
  std::vector<Matrix> basis;
  for (const Vec& x : nullspace(sys)) {
    Matrix theta(F, mw, mv);
    for (std::size_t a = 0; a < mw; ++a)
      for (std::size_t b = 0; b < mv; ++b) theta.set(a, b, x[a * mv + b]);
    basis.push_back(std::move(theta));
  }
  return basis;
}

Representation restrict_to(const Representation& v,
                           const SubalgebraAsAlgebra& s) {
  if (s.spec.parent.get() != v.algebra.get() &&
      !(s.spec.parent->dim() == v.algebra->dim()))
    throw math_error("subalgebra does not sit in the module's algebra");
  Representation r;
  r.algebra = s.algebra;
  r.dim = v.dim;
  r.field = v.field;
  r.labels = v.labels;
  for (const auto& b : s.spec.basis) r.action.push_back(v.action_of(b));
  return r;
}

Representation extend_scalars(const Representation& v, const FieldPtr& e) {
  if (!Field::embeds(v.field, e))
    throw incompatible_fields("extension field does not contain the base");
  Representation r = v;
  r.field = e;
  for (auto& m : r.action) m = m.map_entries(e);
  return r;
}

std::vector<Vec> spin(const Representation& v, const std::vector<Vec>& seeds) {
  SpanBasis span(v.field, v.dim);
  for (const auto& s : seeds) span.add(s);
  std::vector<Vec> queue = span.rows();
  while (!queue.empty()) {
    Vec cur = queue.back();
    queue.pop_back();
    for (const auto& m : v.action) {
      Vec img = m.apply(cur);
      if (span.add(img)) queue.push_back(img);
    }
  }
  return span.rows();
}

namespace {

// candidate elements of the acting associative algebra, deterministic first
std::vector<Matrix> irreducibility_candidates(const Representation& v,
                                              unsigned long long seed,
                                              std::size_t count) {
  std::vector<Matrix> out;
  const std::size_t n = v.algebra->dim();
  for (std::size_t i = 0; i < n; ++i) out.push_back(v.action[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back(v.action[i] + v.action[j]);
      out.push_back(v.action[i] * v.action[j]);
    }
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 7);
  const FieldPtr F = v.field;
  // small scalar pool: integers, plus tower generators when present
  std::vector<FieldElement> pool;
  for (long k = 1; k < std::min(v.algebra->p(), 5L); ++k)
    pool.push_back(F->from_int(k));
  if (F->kind() != Field::Kind::Prime) {
    pool.push_back(F->generator());
    pool.push_back(F->generator() + F->one());
  }
  while (out.size() < count) {
    Matrix acc(F, v.dim, v.dim);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2 == 0) continue;
      const FieldElement c = pool[rng() % pool.size()];
      acc = acc + v.action[i].scale(c);
    }
    if (rng() % 2 == 0 && n >= 2) {
      const std::size_t i = rng() % n, j = rng() % n;
      acc = acc + v.action[i] * v.action[j];
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<Vec> transpose_action_spin(const Representation& v,
                                       const Vec& seed) {
  Representation dual;
  dual.algebra = v.algebra;
  dual.dim = v.dim;
  dual.field = v.field;
  for (const auto& m : v.action) dual.action.push_back(m.transpose());
  return spin(dual, {seed});
}

}  // namespace

IrreducibilityResult is_irreducible(const Representation& v,
                                    unsigned long long seed) {
  if (v.dim == 0) throw math_error("irreducibility of the zero module");
  IrreducibilityResult res;
  if (v.dim == 1) {
    res.irreducible = true;
    res.certificate = "one-dimensional";
    return res;
  }
  const FieldPtr F = v.field;
  for (const Matrix& cand : irreducibility_candidates(v, seed, 40)) {
    if (cand.as_scalar()) continue;
    Polynomial mp = minimal_polynomial(cand);
    Factorization fac;
    try {
      fac = factor(mp, seed);
    } catch (const unsupported_computation&) {
      continue;  // try another element
    }
    for (const auto& [q, mult] : fac.factors) {
      Matrix b = apply_poly(q, cand);
      std::vector<Vec> ker = nullspace(b);
      if (ker.empty()) continue;
      for (const auto& x : ker) {
        std::vector<Vec> sp = spin(v, {x});
        if (sp.size() < v.dim) {
          res.irreducible = false;
          res.witness = sp;
          res.certificate = "proper submodule spun from ker q(A)";
          return res;
        }
      }
      if (ker.size() != *q.degree()) continue;  // Norton needs minimal nullity
      // dual side: one vector suffices when the nullity is minimal
      std::vector<Vec> kert = nullspace(b.transpose());
      if (kert.empty()) continue;
      std::vector<Vec> spt = transpose_action_spin(v, kert[0]);
      if (spt.size() < v.dim) {
        // perp of the dual submodule is a proper invariant subspace
        Matrix rows = Matrix::from_rows(F, spt, v.dim);
        res.irreducible = false;
        res.witness = nullspace(rows);
        res.certificate = "proper submodule from the transpose module";
        return res;
      }
      res.irreducible = true;
      std::ostringstream os;
      os << "Norton criterion with factor " << q.str()
         << " of the minimal polynomial";
      res.certificate = os.str();
      return res;
    }
  }
  throw unsupported_computation(
      "irreducibility test exhausted its candidate budget");
}

Representation subrepresentation(const Representation& v,
                                 const std::vector<Vec>& basis) {
  const FieldPtr F = v.field;
  Matrix cols = Matrix::from_cols(F, basis, v.dim);
  Representation r;
  r.algebra = v.algebra;
  r.dim = basis.size();
  r.field = F;
  for (const auto& m : v.action) {
    Matrix sub(F, r.dim, r.dim);
    for (std::size_t j = 0; j < r.dim; ++j) {
      Vec img = m.apply(basis[j]);
      auto c = solve(cols, img);
      if (!c || !eq_vec(cols.apply(*c), img))
        throw math_error("subspace is not invariant under the action");
      for (std::size_t i = 0; i < r.dim; ++i) sub.set(i, j, (*c)[i]);
    }
    r.action.push_back(std::move(sub));
  }
  return r;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.algebra.get() != b.algebra.get() &&
      a.algebra->dim() != b.algebra->dim())
    throw math_error("direct sum needs modules over one algebra");
  FieldPtr F = Field::common_field(a.field, b.field);
  Representation r;
  r.algebra = a.algebra;
  r.dim = a.dim + b.dim;
  r.field = F;
  for (std::size_t i = 0; i < a.action.size(); ++i) {
    Matrix m(F, r.dim, r.dim);
    for (std::size_t x = 0; x < a.dim; ++x)
      for (std::size_t y = 0; y < a.dim; ++y)
        m.set(x, y, Field::embed(a.action[i].at(x, y), F));
    for (std::size_t x = 0; x < b.dim; ++x)
      for (std::size_t y = 0; y < b.dim; ++y)
        m.set(a.dim + x, a.dim + y, Field::embed(b.action[i].at(x, y), F));
    r.action.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < a.dim; ++i) r.labels.push_back(a.label(i));
  for (std::size_t i = 0; i < b.dim; ++i) r.labels.push_back(b.label(i) + "'");
  return r;
}

}  // namespace modind
