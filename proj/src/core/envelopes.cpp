#include "core/envelopes.hpp"

namespace modind {

EnvelopeSpec build_envelope_adjoint(const LiePtr& l) {
  if (!l->center().empty())
    throw math_error(
        "adjoint envelope needs a trivial center; supply an envelope instead");
  const FieldPtr F = l->field();
  const std::size_t n = l->dim();
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(l->ad_basis(i));
  std::vector<Matrix> closure = p_closure_in_matrices(gens);
  const std::size_t m = closure.size();

  // coordinates inside the closure span
  auto flatten = [&](const Matrix& a) {
    Vec v;
    v.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(a.at(i, j));
    return v;
  };
  std::vector<Vec> cols;
  for (const auto& b : closure) cols.push_back(flatten(b));
  Matrix span_cols = Matrix::from_cols(F, cols, n * n);
  auto coords_of = [&](const Matrix& a) {
    auto sol = solve(span_cols, flatten(a));
    if (!sol || !eq_vec(span_cols.apply(*sol), flatten(a)))
      throw invariant_violation("closure span misses a required element");
    return *sol;
  };

  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(l->names()[i]);
  for (std::size_t i = n; i < m; ++i)
    names.push_back("d" + std::to_string(i - n));

  std::vector<LieAlgebra::BracketEntry> entries;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      entries.push_back(
          {i, j, coords_of(closure[i] * closure[j] - closure[j] * closure[i])});
  std::vector<Vec> pmap;
  const long p = F->characteristic();
  for (std::size_t i = 0; i < m; ++i)
    pmap.push_back(
        coords_of(closure[i].pow(static_cast<unsigned long long>(p))));

  EnvelopeSpec env;
  env.l = l;
  env.lstar = LieAlgebra::create(F, std::move(names), entries, std::move(pmap));
  env.embed = Matrix(F, m, n);
  for (std::size_t i = 0; i < n; ++i) env.embed.set(i, i, F->one());

  ValidationReport rep = validate_envelope(env);
  if (!rep.ok())
    throw invariant_violation("adjoint envelope failed validation: " +
                              rep.str());
  return env;
}

ValidationReport validate_envelope(const EnvelopeSpec& e) {
  ValidationReport rep;
  const std::size_t n = e.l->dim();
  if (rank(e.embed) != n) rep.failures.push_back("embedding is not injective");
  ValidationReport star = e.lstar->validate();
  for (const auto& f : star.failures)
    rep.failures.push_back("envelope algebra: " + f);
  // bracket preservation
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec lhs = e.embed.apply(e.l->bracket_basis(i, j));
      Vec rhs = e.lstar->bracket(e.embed.col(i), e.embed.col(j));
      if (!eq_vec(lhs, rhs))
        rep.failures.push_back("embedding breaks the bracket at (" +
                               e.l->names()[i] + ", " + e.l->names()[j] + ")");
    }
  // p-closure of the image is everything
  SubalgebraSpec img{e.lstar, {}, e.l->names()};
  for (std::size_t i = 0; i < n; ++i) img.basis.push_back(e.embed.col(i));
  try {
    PClosure pc = p_closure_of_subalgebra(img);
    if (pc.closed.basis.size() != e.lstar->dim())
      rep.failures.push_back("the image does not p-close to the envelope");
  } catch (const math_error& ex) {
    rep.failures.push_back(std::string("p-closure failed: ") + ex.what());
  }
  return rep;
}

Representation j_extend(const Representation& w, const PClosure& sp) {
  const std::size_t s_dim = w.algebra->dim();
  const LiePtr lstar = sp.closed.parent;
  const FieldPtr F = w.field;
  // actions of the tower generators
  std::vector<Vec> tower_vecs;
  std::vector<Matrix> tower_acts;
  for (const auto& t : sp.tower) {
    if (t.origin >= s_dim)
      throw invariant_violation("tower origin outside the S basis");
    unsigned long long e = 1;
    for (long k = 0; k < t.k; ++k)
      e *= static_cast<unsigned long long>(lstar->p());
    tower_vecs.push_back(t.vec);
    tower_acts.push_back(w.action[t.origin].pow(e));
  }
  Matrix tcols = Matrix::from_cols(lstar->field(), tower_vecs, lstar->dim());

  SubalgebraAsAlgebra spa = subalgebra_as_algebra(sp.closed);
  Representation out;
  out.algebra = spa.algebra;
  out.dim = w.dim;
  out.field = F;
  out.labels = w.labels;
  for (const auto& b : sp.closed.basis) {
    auto c = solve(tcols, b);
    if (!c || !eq_vec(tcols.apply(*c), b))
      throw invariant_violation("tower does not span the p-closure");
    Matrix act(F, w.dim, w.dim);
    for (std::size_t k = 0; k < tower_acts.size(); ++k) {
      if ((*c)[k].is_zero()) continue;
      act = act + tower_acts[k].scale(Field::embed((*c)[k], F));
    }
    out.action.push_back(std::move(act));
  }
  ValidationReport rep = validate_rep(out);
  if (!rep.ok())
    throw math_error("J extension is not a representation: " + rep.str());
  return out;
}

TFunctorResult t_functor(const EnvelopeSpec& env, const SubalgebraSpec& s_in_l,
                         const Representation& w, std::vector<Polynomial> f1,
                         std::optional<std::vector<Polynomial>> f2) {
  TFunctorResult out;
  out.envelope = env;
  // S inside L*
  SubalgebraSpec s_star{env.lstar, {}, s_in_l.names};
  for (const auto& b : s_in_l.basis) s_star.basis.push_back(env.embed.apply(b));
  out.sp = p_closure_of_subalgebra(s_star);
  out.jw = j_extend(w, out.sp);
  out.star = induce(env.lstar, out.sp.closed, out.jw, std::move(f1),
                    std::move(f2));
  out.over_l = Representation{};
  out.over_l.algebra = env.l;
  out.over_l.dim = out.star.dim();
  out.over_l.field = out.star.rep.field;
  out.over_l.labels = out.star.rep.labels;
  for (std::size_t i = 0; i < env.l->dim(); ++i)
    out.over_l.action.push_back(
        out.star.rep_original.action_of(env.embed.col(i)));
  return out;
}

ExtensionFamily extend_action_to(const EnvelopeSpec& env,
                                 const Representation& v_over_l,
                                 const Vec& gstar) {
  const FieldPtr F = v_over_l.field;
  const std::size_t m = v_over_l.dim;
  const std::size_t n = env.l->dim();
  // right-hand sides rho([g, e_i]); the brackets must land inside L
  std::vector<Matrix> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    Vec br = env.lstar->bracket(gstar, env.embed.col(i));
    auto in_l = solve(env.embed, br);
    if (!in_l || !eq_vec(env.embed.apply(*in_l), br))
      throw math_error("[g, L] does not lie inside L; cannot extend");
    rhs.push_back(v_over_l.action_of(*in_l));
  }
  // solve [D, A_i] = R_i as a stacked linear system in the entries of D
  Matrix sys(F, n * m * m, m * m);
  Vec b = zero_vec(F, n * m * m);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& a = v_over_l.action[i];
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t k = 0; k < m; ++k) {
          sys.set(row, r * m + k, sys.at(row, r * m + k) + a.at(k, c));
          sys.set(row, k * m + c, sys.at(row, k * m + c) - a.at(r, k));
        }
        b[row] = rhs[i].at(r, c);
        ++row;
      }
  }
  ExtensionFamily fam;
  auto sol = solve(sys, b);
  if (!sol || !eq_vec(sys.apply(*sol), b)) return fam;
  fam.solvable = true;
  fam.particular = Matrix(F, m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      fam.particular.set(r, c, (*sol)[r * m + c]);
  for (const auto& h : nullspace(sys)) {
    Matrix hm(F, m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) hm.set(r, c, h[r * m + c]);
    fam.homogeneous.push_back(std::move(hm));
  }
  return fam;
}

Matrix lemma_psi(const TFunctorResult& t, const Matrix& theta,
                 const Representation& vstar) {
  if (vstar.algebra->dim() != t.envelope.lstar->dim())
    throw math_error("the extension must be a module over the envelope");
  return adjoint_forward(t.star, theta, vstar);
}

TrueInduced true_induce(const TFunctorResult& t) {
  std::vector<Vec> seeds;
  for (std::size_t j = 0; j < t.star.w.dim; ++j)
    seeds.push_back(t.star.unit.col(j));
  TrueInduced ti;
  ti.basis = spin(t.over_l, seeds);
  ti.rep = subrepresentation(t.over_l, ti.basis);
  Matrix cols = Matrix::from_cols(t.over_l.field, ti.basis, t.over_l.dim);
  ti.unit = Matrix(t.over_l.field, ti.basis.size(), t.star.w.dim);
  for (std::size_t j = 0; j < t.star.w.dim; ++j) {
    auto c = solve(cols, t.star.unit.col(j));
    if (!c)
      throw invariant_violation("unit image escaped its own span");
    for (std::size_t i = 0; i < ti.basis.size(); ++i) ti.unit.set(i, j, (*c)[i]);
  }
  return ti;
}

Matrix restrict_map_to(const TrueInduced& ti, const Matrix& psi) {
  Matrix cols = Matrix::from_cols(psi.field(), ti.basis, psi.cols());
  return psi * cols;
}

}  // namespace modind
