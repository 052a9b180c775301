#include "core/liealg.hpp"

#include <sstream>

namespace modind {

std::string ValidationReport::str() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (const auto& f : failures) os << f << "\n";
  return os.str();
}

LiePtr LieAlgebra::create(FieldPtr field, std::vector<std::string> names,
                          const std::vector<BracketEntry>& brackets,
                          std::optional<std::vector<Vec>> pmap) {
  auto a = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  const std::size_t n = names.size();
  a->field_ = std::move(field);
  a->names_ = std::move(names);
  a->table_.assign(n, std::vector<Vec>(n, zero_vec(a->field_, n)));
  for (const auto& e : brackets) {
    if (e.i >= n || e.j >= n || e.i == e.j)
      throw invariant_violation("bad bracket entry indices");
    if (e.value.size() != n)
      throw invariant_violation("bracket value dimension mismatch");
    Vec v = e.value;
    for (auto& c : v)
      if (!c.field()->equals(*a->field_)) c = Field::embed(c, a->field_);
    a->table_[e.i][e.j] = v;
    a->table_[e.j][e.i] = scale(v, a->field_->from_int(-1));
  }
  if (pmap) {
    if (pmap->size() != n)
      throw invariant_violation("p-map must cover every basis element");
    for (auto& row : *pmap) {
      if (row.size() != n) throw invariant_violation("p-map row dimension");
      for (auto& c : row)
        if (!c.field()->equals(*a->field_)) c = Field::embed(c, a->field_);
    }
    a->pmap_ = std::move(pmap);
  }
  return a;
}

const Vec& LieAlgebra::pmap_basis(std::size_t i) const {
  if (!pmap_) throw math_error("algebra has no p-map");
  return (*pmap_)[i];
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
  const std::size_t n = dim();
  if (u.size() != n || v.size() != n)
    throw invariant_violation("bracket operand dimension mismatch");
  Vec r = zero_vec(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || i == j) continue;
      const FieldElement c = u[i] * v[j];
      r = add(r, scale(table_[i][j], c));
    }
  }
  return r;
}

Matrix LieAlgebra::ad(const Vec& u) const {
  const std::size_t n = dim();
  std::vector<Vec> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    cols.push_back(bracket(u, unit_vec(field_, n, j)));
  return Matrix::from_cols(field_, cols, n);
}

Matrix LieAlgebra::ad_basis(std::size_t i) const {
  return ad(unit_vec(field_, dim(), i));
}

namespace {

// element of L[t]: one polynomial per coordinate
using PolyVec = std::vector<Polynomial>;

PolyVec poly_bracket(const LieAlgebra& a, const PolyVec& u, const PolyVec& v) {
  const std::size_t n = a.dim();
  PolyVec r(n, Polynomial::zero(a.field()));
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || i == j) continue;
      const Polynomial c = u[i] * v[j];
      const Vec& b = a.bracket_basis(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!b[k].is_zero()) r[k] = r[k] + c.scale(b[k]);
    }
  }
  return r;
}

}  // namespace

Vec LieAlgebra::jacobson_p_power(const Vec& u) const {
  if (!pmap_) throw math_error("p-th power needs a p-map");
  const std::size_t n = dim();
  const long p = this->p();
  // last nonzero coordinate
  std::size_t last = n;
  for (std::size_t i = n; i-- > 0;)
    if (!u[i].is_zero()) {
      last = i;
      break;
    }
  if (last == n) return zero_vec(field_, n);
  // single term: (lambda e_i)^{[p]} = lambda^p e_i^{[p]}
  std::size_t support = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!u[i].is_zero()) ++support;
  if (support == 1)
    return scale((*pmap_)[last], u[last].pow(p));

  // split u = v + w with v the first term, recurse with Jacobson's formula
  std::size_t first = 0;
  while (u[first].is_zero()) ++first;
  Vec v = zero_vec(field_, n);
  v[first] = u[first];
  Vec w = u;
  w[first] = field_->zero();

  Vec result = add(jacobson_p_power(v), jacobson_p_power(w));

  // s_k terms: k s_k(v,w) = coefficient of t^{k-1} in ad(tv+w)^{p-1}(v)
  PolyVec tvw(n, Polynomial::zero(field_));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == first)
      tvw[i] = Polynomial::monomial(u[first], 1) + Polynomial::constant(w[i]);
    else
      tvw[i] = Polynomial::constant(w[i]);
  }
  PolyVec acc(n, Polynomial::zero(field_));
  acc[first] = Polynomial::constant(u[first]);
  for (long step = 0; step < p - 1; ++step) acc = poly_bracket(*this, tvw, acc);
  for (long k = 1; k <= p - 1; ++k) {
    const FieldElement kinv = field_->from_int(k).inv();
    Vec sk = zero_vec(field_, n);
    for (std::size_t i = 0; i < n; ++i)
      sk[i] = acc[i].coeff(static_cast<std::size_t>(k - 1)) * kinv;
    result = add(result, sk);
  }
  return result;
}

ValidationReport LieAlgebra::validate() const {
  ValidationReport rep;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero_vec(table_[i][i]))
      rep.failures.push_back("[e_" + names_[i] + ", e_" + names_[i] +
                             "] is nonzero");
    for (std::size_t j = 0; j < n; ++j)
      if (!is_zero_vec(add(table_[i][j], table_[j][i])))
        rep.failures.push_back("antisymmetry fails at (" + names_[i] + ", " +
                               names_[j] + ")");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec s = bracket(table_[i][j], unit_vec(field_, n, k));
        s = add(s, bracket(table_[j][k], unit_vec(field_, n, i)));
        s = add(s, bracket(table_[k][i], unit_vec(field_, n, j)));
        if (!is_zero_vec(s))
          rep.failures.push_back("Jacobi fails at (" + names_[i] + ", " +
                                 names_[j] + ", " + names_[k] + ")");
      }
  if (pmap_) {
    for (std::size_t i = 0; i < n; ++i) {
      Matrix lhs = ad((*pmap_)[i]);
      Matrix rhs = ad_basis(i).pow(static_cast<unsigned long long>(p()));
      if (lhs != rhs)
        rep.failures.push_back("ad(e_" + names_[i] +
                               "^[p]) differs from ad(e_" + names_[i] + ")^p");
    }
  }
  return rep;
}

std::vector<Vec> LieAlgebra::center() const {
  // stack the ad-action: rows index (j,k), columns index i
  const std::size_t n = dim();
  Matrix m(field_, n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix adi = ad_basis(i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m.set(j * n + k, i, adi.at(j, k));
  }
  return nullspace(m);
}

LiePtr LieAlgebra::transform_basis(const Matrix& new_basis_cols,
                                   std::vector<std::string> new_names) const {
  const std::size_t n = dim();
  if (new_basis_cols.rows() != n || new_basis_cols.cols() != n)
    throw invariant_violation("basis change must be square of the full dim");
  Matrix inv = inverse(new_basis_cols);
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vec br = bracket(new_basis_cols.col(a), new_basis_cols.col(b));
      entries.push_back({a, b, inv.apply(br)});
    }
  std::optional<std::vector<Vec>> pm;
  if (pmap_) {
    std::vector<Vec> rows;
    rows.reserve(n);
    for (std::size_t a = 0; a < n; ++a)
      rows.push_back(inv.apply(jacobson_p_power(new_basis_cols.col(a))));
    pm = std::move(rows);
  }
  return create(field_, std::move(new_names), entries, std::move(pm));
}

ValidationReport validate_subalgebra(const SubalgebraSpec& s,
                                     bool require_p_closed) {
  ValidationReport rep;
  const LiePtr L = s.parent;
  SpanBasis span(L->field(), L->dim());
  for (const auto& b : s.basis) span.add(b);
  if (span.size() != s.basis.size())
    rep.failures.push_back("subalgebra basis is linearly dependent");
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = i + 1; j < s.basis.size(); ++j)
      if (!span.contains(L->bracket(s.basis[i], s.basis[j])))
        rep.failures.push_back("not closed under the bracket at pair (" +
                               std::to_string(i) + ", " + std::to_string(j) +
                               ")");
  if (require_p_closed) {
    if (!L->has_pmap()) {
      rep.failures.push_back("parent has no p-map");
    } else {
      for (std::size_t i = 0; i < s.basis.size(); ++i)
        if (!span.contains(L->jacobson_p_power(s.basis[i])))
          rep.failures.push_back("not closed under the p-map at index " +
                                 std::to_string(i));
    }
  }
  return rep;
}

Vec SubalgebraAsAlgebra::to_parent(const Vec& sub_coords) const {
  return basis_cols.apply(sub_coords);
}

Vec SubalgebraAsAlgebra::to_sub(const Vec& parent_coords) const {
  auto sol = solve(basis_cols, parent_coords);
  if (!sol) throw math_error("vector lies outside the subalgebra");
  // confirm (solve ignores inconsistency only when it exists)
  if (!eq_vec(basis_cols.apply(*sol), parent_coords))
    throw math_error("vector lies outside the subalgebra");
  return *sol;
}

SubalgebraAsAlgebra subalgebra_as_algebra(const SubalgebraSpec& s) {
  ValidationReport rep = validate_subalgebra(s, false);
  if (!rep.ok())
    throw math_error("invalid subalgebra: " + rep.str());
  const LiePtr L = s.parent;
  const std::size_t m = s.basis.size();
  SubalgebraAsAlgebra out;
  out.spec = s;
  out.basis_cols = Matrix::from_cols(L->field(), s.basis, L->dim());

  std::vector<std::string> names = s.names;
  if (names.size() != m) {
    names.clear();
    for (std::size_t i = 0; i < m; ++i) names.push_back("s" + std::to_string(i));
  }

  std::vector<LieAlgebra::BracketEntry> entries;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Vec br = L->bracket(s.basis[i], s.basis[j]);
      auto sol = solve(out.basis_cols, br);
      if (!sol || !eq_vec(out.basis_cols.apply(*sol), br))
        throw math_error("subalgebra is not bracket-closed");
      entries.push_back({i, j, *sol});
    }

  std::optional<std::vector<Vec>> pm;
  if (L->has_pmap()) {
    // carry the p-map when S is p-closed; otherwise S is plain
    std::vector<Vec> rows;
    bool closed = true;
    for (std::size_t i = 0; i < m && closed; ++i) {
      Vec pp = L->jacobson_p_power(s.basis[i]);
      auto sol = solve(out.basis_cols, pp);
      if (sol && eq_vec(out.basis_cols.apply(*sol), pp))
        rows.push_back(*sol);
      else
        closed = false;
    }
    if (closed) pm = std::move(rows);
  }
  out.algebra = LieAlgebra::create(L->field(), std::move(names), entries,
                                   std::move(pm));
  return out;
}

std::vector<Matrix> p_closure_in_matrices(const std::vector<Matrix>& gens) {
  if (gens.empty()) return {};
  const FieldPtr F = gens[0].field();
  const std::size_t m = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != m || g.cols() != m || !g.field()->equals(*F))
      throw math_error("generators must be square matrices of one size");
  const long p = F->characteristic();

  auto flatten = [&](const Matrix& a) {
    Vec v;
    v.reserve(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) v.push_back(a.at(i, j));
    return v;
  };

  SpanBasis span(F, m * m);
  std::vector<Matrix> basis;
  for (const auto& g : gens)
    if (span.add(flatten(g))) basis.push_back(g);

  // the input span must itself be a Lie algebra
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
      if (!span.contains(flatten(c)))
        throw math_error("generators do not span a matrix Lie algebra");
    }

  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t cur = basis.size();
    for (std::size_t i = 0; i < cur; ++i) {
      Matrix pp = basis[i].pow(static_cast<unsigned long long>(p));
      if (span.add(flatten(pp))) {
        basis.push_back(pp);
        grew = true;
      }
    }
    // re-close under commutators
    bool bgrew = true;
    while (bgrew) {
      bgrew = false;
      const std::size_t cc = basis.size();
      for (std::size_t i = 0; i < cc; ++i)
        for (std::size_t j = i + 1; j < cc; ++j) {
          Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
          if (span.add(flatten(c))) {
            basis.push_back(c);
            bgrew = true;
            grew = true;
          }
        }
    }
  }
  return basis;
}

PClosure p_closure_of_subalgebra(const SubalgebraSpec& s) {
  const LiePtr L = s.parent;
  if (!L->has_pmap()) throw math_error("p-closure needs a restricted parent");
  ValidationReport rep = validate_subalgebra(s, false);
  if (!rep.ok()) throw math_error("p-closure of a non-subalgebra: " + rep.str());

  PClosure out;
  SpanBasis span(L->field(), L->dim());
  std::vector<Vec> members;
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    out.tower.push_back({i, 0, s.basis[i]});
    if (span.add(s.basis[i])) members.push_back(s.basis[i]);
  }

  // chains s_i^{[p]^k}; a level adding nothing anywhere ends the climb
  std::vector<std::pair<std::size_t, Vec>> frontier;
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    frontier.emplace_back(i, s.basis[i]);
  long level = 0;
  while (!frontier.empty()) {
    ++level;
    std::vector<std::pair<std::size_t, Vec>> next;
    bool grew = false;
    for (auto& [origin, v] : frontier) {
      Vec pp = L->jacobson_p_power(v);
      next.emplace_back(origin, pp);
      if (span.add(pp)) {
        out.tower.push_back({origin, level, pp});
        members.push_back(pp);
        grew = true;
      }
    }
    if (!grew) break;
    frontier = std::move(next);
    // keep the span bracket-closed as it grows (brackets of tower elements
    // land back in S, but verify rather than assume)
    bool bgrew = true;
    while (bgrew) {
      bgrew = false;
      const std::size_t cc = members.size();
      for (std::size_t i = 0; i < cc; ++i)
        for (std::size_t j = i + 1; j < cc; ++j) {
          Vec c = L->bracket(members[i], members[j]);
          if (span.add(c)) {
            members.push_back(c);
            bgrew = true;
          }
        }
    }
  }

  out.closed.parent = L;
  out.closed.basis = members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i < s.basis.size() && i < s.names.size())
      out.closed.names.push_back(s.names[i]);
    else
      out.closed.names.push_back("q" + std::to_string(i));
  }
  ValidationReport closed_rep = validate_subalgebra(out.closed, true);
  if (!closed_rep.ok())
    throw invariant_violation("p-closure failed to close: " + closed_rep.str());
  return out;
}

}  // namespace modind
