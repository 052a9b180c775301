#include "core/induction.hpp"

#include <algorithm>

namespace modind {

AdaptedBasis adapt_basis(const LiePtr& l, const SubalgebraSpec& s) {
  ValidationReport rep = validate_subalgebra(s, /*require_p_closed=*/true);
  if (!rep.ok())
    throw math_error("adapt_basis needs a p-closed subalgebra: " + rep.str());
  const FieldPtr F = l->field();
  const std::size_t n = l->dim();
  const std::size_t n2 = s.basis.size();

  // complement: standard basis vectors avoiding the pivot columns of S
  Matrix srows = Matrix::from_rows(F, s.basis, n);
  Echelon e = echelon(srows);
  std::vector<bool> pivot(n, false);
  for (std::size_t p : e.pivots) pivot[p] = true;

  std::vector<Vec> cols;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) {
      cols.push_back(unit_vec(F, n, i));
      names.push_back(l->names()[i]);
    }
  const std::size_t n1 = cols.size();
  if (n1 + n2 != n)
    throw invariant_violation("complement construction failed");
  for (std::size_t k = 0; k < n2; ++k) {
    cols.push_back(s.basis[k]);
    names.push_back(k < s.names.size() ? s.names[k]
                                       : "s" + std::to_string(k));
  }

  AdaptedBasis ab;
  ab.original = l;
  ab.new_in_old = Matrix::from_cols(F, cols, n);
  ab.old_in_new = inverse(ab.new_in_old);
  ab.n1 = n1;
  ab.adapted = l->transform_basis(ab.new_in_old, names);
  ab.sub = subalgebra_as_algebra(s);
  return ab;
}

std::vector<Polynomial> choose_f_for_s(const SubalgebraAsAlgebra& s,
                                       const std::vector<Representation>& y) {
  if (y.empty()) throw math_error("choose_f_for_s needs at least one module");
  if (!s.algebra->has_pmap())
    throw math_error("the subalgebra must be p-closed to choose f");
  std::vector<Polynomial> out;
  for (std::size_t k = 0; k < s.algebra->dim(); ++k) {
    Polynomial acc;
    for (const Representation& w : y) {
      const long p = w.algebra->p();
      Matrix phi = w.action[k].pow(static_cast<unsigned long long>(p)) -
                   w.action_of(s.algebra->pmap_basis(k));
      Polynomial mp = minimal_polynomial(phi);
      if (!acc.field())
        acc = mp;
      else
        acc = (acc * mp) / Polynomial::gcd(acc, mp);  // lcm
    }
    out.push_back(acc.monic());
  }
  return out;
}

Representation to_adapted(const AdaptedBasis& ab, const Representation& v) {
  if (v.algebra.get() != ab.original.get() &&
      v.algebra->dim() != ab.original->dim())
    throw math_error("module is not over the adapted basis' algebra");
  Representation r;
  r.algebra = ab.adapted;
  r.dim = v.dim;
  r.field = v.field;
  r.labels = v.labels;
  for (std::size_t k = 0; k < ab.dim(); ++k)
    r.action.push_back(v.action_of(ab.new_in_old.col(k)));
  return r;
}

ValidationReport check_category(const ReducedPtr& r, const Representation& v) {
  ValidationReport rep;
  const LiePtr l = r->algebra();
  if (v.algebra->dim() != l->dim()) {
    rep.failures.push_back("module algebra dimension mismatch");
    return rep;
  }
  const long p = l->p();
  for (std::size_t i = 0; i < l->dim(); ++i) {
    Matrix phi = v.action[i].pow(static_cast<unsigned long long>(p)) -
                 v.action_of(l->pmap_basis(i));
    if (!apply_poly(r->f_family().polys[i], phi).is_zero())
      rep.failures.push_back("f_" + l->names()[i] +
                             "(phi) does not annihilate the module");
  }
  return rep;
}

namespace {

std::vector<MultiIndex> enumerate_alpha(const ReducedPtr& r, std::size_t n1) {
  const std::size_t n = r->algebra()->dim();
  std::vector<MultiIndex> out;
  MultiIndex a(n, 0);
  while (true) {
    out.push_back(a);
    std::size_t i = n1;
    while (i-- > 0) {
      if (++a[i] < r->bound(i)) break;
      a[i] = 0;
      if (i == 0) return out;
    }
    if (n1 == 0) return out;
  }
}

std::string induced_label(const std::string& prefix, const MultiIndex& a,
                          std::size_t n1, std::size_t dim_w, std::size_t j,
                          const std::vector<std::string>& names) {
  if (n1 == 1) {
    if (dim_w == 1) return prefix + "_" + std::to_string(a[0]);
    return prefix + "_" + std::to_string(j + 1) + "^" + std::to_string(a[0]);
  }
  std::string mono;
  for (std::size_t i = 0; i < n1; ++i) {
    if (a[i] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += names[i];
    if (a[i] > 1) mono += "^" + std::to_string(a[i]);
  }
  if (mono.empty()) mono = "1";
  return mono + "(x)b" + std::to_string(j + 1);
}

}  // namespace

InducedModule induce(const LiePtr& l, const SubalgebraSpec& s,
                     const Representation& w, std::vector<Polynomial> f1,
                     std::optional<std::vector<Polynomial>> f2,
                     const std::string& label_prefix) {
  InducedModule im;
  im.adapted = adapt_basis(l, s);
  const std::size_t n1 = im.adapted.n1;
  const std::size_t n2 = im.adapted.n2();
  const std::size_t n = n1 + n2;
  if (w.algebra->dim() != n2)
    throw math_error("W is not a module over the subalgebra");
  if (f1.size() != n1)
    throw math_error("f1 must provide one polynomial per complement index");

  // choose or verify the subalgebra polynomials
  std::vector<Polynomial> fs =
      f2 ? std::move(*f2) : choose_f_for_s(im.adapted.sub, {w});
  if (fs.size() != n2)
    throw math_error("f2 must provide one polynomial per subalgebra index");
  const long p = l->p();
  for (std::size_t k = 0; k < n2; ++k) {
    Matrix phi = w.action[k].pow(static_cast<unsigned long long>(p)) -
                 w.action_of(im.adapted.sub.algebra->pmap_basis(k));
    if (!apply_poly(fs[k], phi).is_zero())
      throw math_error("f_" + im.adapted.sub.algebra->names()[k] +
                       "(z) does not annihilate W");
  }

  FFamily fam;
  fam.polys = std::move(f1);
  for (auto& q : fs) fam.polys.push_back(std::move(q));
  im.reduced = ReducedAlgebra::build(im.adapted.adapted, std::move(fam));

  im.w = w;
  im.alpha_basis = enumerate_alpha(im.reduced, n1);
  const std::size_t dim = im.alpha_basis.size() * w.dim;
  FieldPtr F = w.field;
  if (!Field::embeds(l->field(), F)) {
    FieldPtr c = Field::common_field(l->field(), F);
    if (!c) throw incompatible_fields("W's field does not fit the algebra's");
    F = c;
  }

  // position lookup for I1-supported multi-indices
  auto alpha_pos = [&](const MultiIndex& a) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n1; ++i) idx = idx * im.reduced->bound(i) + a[i];
    return idx;
  };

  Representation rep;
  rep.algebra = im.adapted.adapted;
  rep.bound = im.reduced;
  rep.dim = dim;
  rep.field = F;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix mk(F, dim, dim);
    PBWElement ek = PBWElement::generator(l->field(), n, k);
    for (std::size_t apos = 0; apos < im.alpha_basis.size(); ++apos) {
      const MultiIndex& a = im.alpha_basis[apos];
      PBWElement prod = im.reduced->multiply(
          ek, PBWElement::monomial(l->field(), a, l->field()->one()));
      for (const auto& [g, c] : prod.terms()) {
        MultiIndex g1 = g;
        MultiIndex g2(n2, 0);
        for (std::size_t i = 0; i < n2; ++i) {
          g2[i] = g[n1 + i];
          g1[n1 + i] = 0;
        }
        const std::size_t col_base = im.index_of(apos, 0);
        const std::size_t row_base = im.index_of(alpha_pos(g1), 0);
        Matrix ws = w.action_of_monomial(g2);
        const FieldElement ce = Field::embed(c, F);
        for (std::size_t j = 0; j < w.dim; ++j)
          for (std::size_t i2 = 0; i2 < w.dim; ++i2) {
            const FieldElement& entry = ws.at(i2, j);
            if (entry.is_zero()) continue;
            mk.set(row_base + i2, col_base + j,
                   mk.at(row_base + i2, col_base + j) + ce * entry);
          }
      }
    }
    rep.action.push_back(std::move(mk));
  }
  for (std::size_t apos = 0; apos < im.alpha_basis.size(); ++apos)
    for (std::size_t j = 0; j < w.dim; ++j)
      rep.labels.push_back(induced_label(label_prefix, im.alpha_basis[apos],
                                         n1, w.dim, j,
                                         im.adapted.adapted->names()));
  im.rep = std::move(rep);

  // unit: b_j -> 1 (x) b_j
  im.unit = Matrix(F, dim, w.dim);
  for (std::size_t j = 0; j < w.dim; ++j) im.unit.set(im.index_of(0, j), j, F->one());

  // original-order view of the action
  im.rep_original = im.rep;
  im.rep_original.algebra = l;
  im.rep_original.bound = nullptr;
  im.rep_original.action.clear();
  for (std::size_t i = 0; i < n; ++i)
    im.rep_original.action.push_back(im.rep.action_of(im.adapted.old_in_new.col(i)));

  // construction invariants: unit is injective, S-equivariant, and spins to
  // the whole module
  if (rank(im.unit) != w.dim)
    throw invariant_violation("unit of the adjunction is not injective");
  for (std::size_t k = 0; k < n2; ++k) {
    Matrix lhs = im.rep.action[n1 + k] * im.unit;
    Matrix rhs = im.unit * im.w.action[k].map_entries(F);
    if (lhs != rhs)
      throw invariant_violation("unit is not S-equivariant");
  }
  std::vector<Vec> seeds;
  for (std::size_t j = 0; j < w.dim; ++j) seeds.push_back(im.unit.col(j));
  if (spin(im.rep, seeds).size() != dim)
    throw invariant_violation("unit image does not generate the module");
  return im;
}

Matrix adjoint_forward(const InducedModule& im, const Matrix& theta,
                       const Representation& v) {
  const Representation va = v.algebra.get() == im.adapted.adapted.get()
                                ? v
                                : to_adapted(im.adapted, v);
  ValidationReport cat = check_category(im.reduced, va);
  if (!cat.ok())
    throw math_error("target module lies outside the category: " + cat.str());
  if (theta.rows() != v.dim || theta.cols() != im.w.dim)
    throw math_error("theta must map W into V");
  // theta must be S-equivariant
  const std::size_t n1 = im.adapted.n1;
  for (std::size_t k = 0; k < im.adapted.n2(); ++k) {
    Matrix lhs = va.action[n1 + k] * theta;
    Matrix rhs = theta * im.w.action[k].map_entries(va.field);
    if (lhs != rhs) throw math_error("theta is not S-equivariant");
  }
  Matrix psi(va.field, v.dim, im.dim());
  for (std::size_t apos = 0; apos < im.alpha_basis.size(); ++apos) {
    Matrix act = va.action_of_monomial(im.alpha_basis[apos]);
    Matrix block = act * theta;
    for (std::size_t j = 0; j < im.w.dim; ++j) {
      const std::size_t col = im.index_of(apos, j);
      for (std::size_t i = 0; i < v.dim; ++i) psi.set(i, col, block.at(i, j));
    }
  }
  return psi;
}

Matrix adjoint_backward(const InducedModule& im, const Matrix& psi) {
  if (psi.cols() != im.dim())
    throw math_error("psi must have the induced module as its source");
  return psi * im.unit.map_entries(psi.field());
}

ModuleEpi divisor_epi_module(const InducedModule& im,
                             std::vector<Polynomial> fstar) {
  const std::size_t n1 = im.adapted.n1;
  const std::size_t n2 = im.adapted.n2();
  if (fstar.size() != n1 + n2)
    throw math_error("f* must cover the whole adapted basis");
  std::vector<Polynomial> f1s(fstar.begin(), fstar.begin() + n1);
  std::vector<Polynomial> f2s(fstar.begin() + n1, fstar.end());
  for (std::size_t i = 0; i < n1 + n2; ++i) {
    if (!fstar[i].monic().divides(im.reduced->f_family().polys[i]))
      throw math_error("f*_" + im.adapted.adapted->names()[i] +
                       " does not divide f_" + im.adapted.adapted->names()[i]);
  }
  ModuleEpi epi;
  epi.target = induce(im.adapted.original, im.adapted.sub.spec, im.w, f1s, f2s);
  const InducedModule& tgt = epi.target;
  const FieldPtr F = im.rep.field;
  Matrix m(F, tgt.dim(), im.dim());
  auto alpha_pos = [&](const MultiIndex& a) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n1; ++i) idx = idx * tgt.reduced->bound(i) + a[i];
    return idx;
  };
  for (std::size_t apos = 0; apos < im.alpha_basis.size(); ++apos) {
    PBWElement img = tgt.reduced->reduce(PBWElement::monomial(
        im.adapted.original->field(), im.alpha_basis[apos],
        im.adapted.original->field()->one()));
    for (const auto& [g, c] : img.terms()) {
      MultiIndex g1 = g;
      MultiIndex g2(n2, 0);
      for (std::size_t i = 0; i < n2; ++i) {
        g2[i] = g[n1 + i];
        g1[n1 + i] = 0;
      }
      Matrix ws = im.w.action_of_monomial(g2);
      const std::size_t row_base = tgt.index_of(alpha_pos(g1), 0);
      const FieldElement ce = Field::embed(c, F);
      for (std::size_t j = 0; j < im.w.dim; ++j) {
        const std::size_t col = im.index_of(apos, j);
        for (std::size_t i2 = 0; i2 < im.w.dim; ++i2) {
          const FieldElement& entry = ws.at(i2, j);
          if (entry.is_zero()) continue;
          m.set(row_base + i2, col, m.at(row_base + i2, col) + ce * entry);
        }
      }
    }
  }
  epi.map = std::move(m);
  return epi;
}

}  // namespace modind
