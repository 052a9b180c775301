// Acceptance suite: one line per criterion, exact arithmetic throughout.
// Usage: acceptance <fixtures-dir>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "core/envelopes.hpp"
#include "core/fixtures.hpp"
#include "core/factor.hpp"
#include "core/run.hpp"

using namespace modind;
using namespace modind::fixtures;

namespace {

std::string g_fixtures_dir;

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw check_failure(what);
}

FieldPtr f3() { return Field::prime(3); }

FieldPtr f9() {
  auto F3 = f3();
  return Field::extension(F3, Polynomial::from_ints(F3, {1, 0, 1}), "i");
}

std::size_t midx(int r, int j) { return static_cast<std::size_t>(2 * r + j); }

InducedModule build_ex32(const FieldPtr& F, long long alpha, long long beta) {
  auto L = xy_algebra(F);
  auto S = span_x(L);
  auto W = w_rotation(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{f_y_poly(F, F->from_int(alpha), F->from_int(beta))};
  return induce(L, S, W, f1);
}

Matrix ex32_expected_x(const FieldPtr& F) {
  Matrix X(F, 12, 12);
  for (int r = 0; r < 6; ++r) {
    X.set(midx(r, 0), midx(r, 0), F->from_int(r));
    X.set(midx(r, 1), midx(r, 0), F->one());
    X.set(midx(r, 0), midx(r, 1), F->from_int(-1));
    X.set(midx(r, 1), midx(r, 1), F->from_int(r));
  }
  return X;
}

Matrix ex32_expected_y(const FieldPtr& F, long long alpha, long long beta) {
  Matrix Y(F, 12, 12);
  for (int r = 0; r < 5; ++r)
    for (int j = 0; j < 2; ++j) Y.set(midx(r + 1, j), midx(r, j), F->one());
  for (int j = 0; j < 2; ++j) {
    Y.set(midx(0, j), midx(5, j), F->from_int(-(alpha * alpha + beta * beta)));
    Y.set(midx(3, j), midx(5, j), F->from_int(-alpha));
  }
  return Y;
}

Matrix omega_theta(const FieldPtr& F) {
  Matrix theta(F, 6, 2);
  theta.set(0, 0, F->one());
  theta.set(1, 1, F->one());
  return theta;
}

std::vector<Vec> ker_omega_generators(const FieldPtr& F, long long alpha,
                                      long long beta) {
  const FieldElement a = F->from_int(alpha), b = F->from_int(beta);
  std::vector<Vec> gens;
  for (int r = 0; r < 3; ++r) {
    Vec k1 = zero_vec(F, 12), k2 = zero_vec(F, 12);
    k1[midx(r + 3, 0)] = F->one();
    k1[midx(r, 0)] = -a;
    k1[midx(r, 1)] = -b;
    k2[midx(r + 3, 1)] = F->one();
    k2[midx(r, 0)] = b;
    k2[midx(r, 1)] = -a;
    gens.push_back(k1);
    gens.push_back(k2);
  }
  return gens;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [alpha, beta] :
       std::vector<std::pair<long long, long long>>{{1, 1}, {1, 0}, {2, 1}}) {
    // through the document/CLI surface
    Workspace ws = parse_workspace_file(
        g_fixtures_dir + "/ex32.json",
        {{"alpha", std::to_string(alpha)}, {"beta", std::to_string(beta)}});
    Report rep = run("induce", &ws, {}, 0);
    expect(rep.status == 0, "induce run failed");
    Workspace out = parse_workspace(rep.data.at("module_document").dump(), {});
    const Representation& m = out.modules.at("induced").rep;
    expect(m.dim == 12, "dimension 12");
    auto F = out.modules.at("induced").rep.field;
    expect(m.action[0] == ex32_expected_x(F), "x-table entry-for-entry");
    expect(m.action[1] == ex32_expected_y(F, alpha, beta),
           "y-table entry-for-entry");
    // and through the core API
    auto im = build_ex32(f3(), alpha, beta);
    expect(im.rep_original.action[0] == ex32_expected_x(f3()),
           "core x-table");
    expect(im.rep_original.action[1] == ex32_expected_y(f3(), alpha, beta),
           "core y-table");
  }
  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  expect(sec < 1.0, "runtime under one second (took " + std::to_string(sec) + ")");
}

void criterion2() {
  auto F = f3();
  for (auto [alpha, beta] :
       std::vector<std::pair<long long, long long>>{{1, 1}, {2, 1}}) {
    auto im = build_ex32(F, alpha, beta);
    auto V = v_module(xy_algebra(F), F->from_int(alpha), F->from_int(beta));
    Matrix omega = adjoint_forward(im, omega_theta(F), V);
    const FieldElement a = F->from_int(alpha), b = F->from_int(beta);
    // omega(m_j^r) = v_j^r for r < 3
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < 2; ++j)
        expect(eq_vec(omega.col(midx(r, j)), unit_vec(F, 6, midx(r, j))),
               "omega fixes the low block");
    // omega(m_1^{3+r}) = a v_1^r + b v_2^r ; omega(m_2^{3+r}) = -b v_1^r + a v_2^r
    for (int r = 0; r < 3; ++r) {
      Vec e1 = zero_vec(F, 6), e2 = zero_vec(F, 6);
      e1[midx(r, 0)] = a;
      e1[midx(r, 1)] = b;
      e2[midx(r, 0)] = -b;
      e2[midx(r, 1)] = a;
      expect(eq_vec(omega.col(midx(r + 3, 0)), e1), "omega upper block, j = 1");
      expect(eq_vec(omega.col(midx(r + 3, 1)), e2), "omega upper block, j = 2");
    }
    auto ker = nullspace(omega);
    expect(ker.size() == 6, "ker(omega) is six-dimensional");
    expect(subspace_equal(F, 12, ker, ker_omega_generators(F, alpha, beta)),
           "ker(omega) equals the displayed span");
  }
}

void criterion3() {
  auto F = f3();
  for (auto [alpha, beta] :
       std::vector<std::pair<long long, long long>>{{1, 1}, {2, 1}}) {
    auto im = build_ex32(F, alpha, beta);
    Cluster cl = cluster_of(im.rep_original);
    expect(cl.size() == 4, "four distinct characters");
    FieldPtr tower = cl.chars[0].tower;
    FieldElement i = cl.chars[0].values[0];
    expect(i * i == tower->from_int(-1), "character value squares to -1");
    const FieldElement a = tower->from_int(alpha), b = tower->from_int(beta);
    Cluster expected;
    for (const auto& [vx, vy] :
         std::vector<std::pair<FieldElement, FieldElement>>{
             {i, a + i * b}, {-i, a - i * b}, {i, a - i * b}, {-i, a + i * b}}) {
      Character c;
      c.tower = tower;
      c.values = {vx, vy};
      expected.chars.push_back(c);
    }
    expect(expected.subset_of(cl) && cl.subset_of(expected),
           "characters match {c1, c2, c3, c4}");

    auto comps = cluster_decompose(im.rep_original);
    expect(comps.size() == 2, "two components");
    expect(comps[0].basis.size() == 6 && comps[1].basis.size() == 6,
           "components are six-dimensional");
    // M_{C'} = ker omega exactly
    auto V = v_module(xy_algebra(F), F->from_int(alpha), F->from_int(beta));
    Matrix omega = adjoint_forward(im, omega_theta(F), V);
    auto ker = nullspace(omega);
    auto carries_cprime = [&](const ClusterComponent& comp) {
      for (const auto& c : comp.cluster.chars) {
        const FieldElement& ci = c.values[0];
        if (!(ci * ci == c.tower->from_int(-1))) continue;
        if (c.values[1] ==
            Field::embed(F->from_int(alpha), c.tower) -
                ci * Field::embed(F->from_int(beta), c.tower))
          return true;  // contains (i, alpha - i beta) = c3 up to conjugacy
      }
      return false;
    };
    const ClusterComponent& mcp =
        carries_cprime(comps[0]) ? comps[0] : comps[1];
    expect(carries_cprime(mcp), "one component carries C'");
    expect(subspace_equal(F, 12, mcp.basis, ker), "M_{C'} = ker(omega)");

    // displayed eigenvector relations over F_9
    auto F9 = f9();
    FieldElement ii = F9->generator();
    auto Mbar = extend_scalars(im.rep_original, F9);
    auto ph = phi(Mbar);
    const FieldElement a9 = F9->from_int(alpha), b9 = F9->from_int(beta);
    for (int r = 0; r < 6; ++r) {
      Vec plus = zero_vec(F9, 12), minus = zero_vec(F9, 12);
      plus[midx(r, 0)] = F9->one();
      plus[midx(r, 1)] = ii;
      minus[midx(r, 0)] = F9->one();
      minus[midx(r, 1)] = -ii;
      expect(eq_vec(ph[0].apply(plus), scale(plus, ii.pow(3))),
             "phi_x eigen-relation (+i)");
      expect(eq_vec(ph[0].apply(minus), scale(minus, (-ii).pow(3))),
             "phi_x eigen-relation (-i)");
    }
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 3; ++r) {
        Vec u = zero_vec(F9, 12), w = zero_vec(F9, 12);
        u[midx(r + 3, j)] = F9->one();
        u[midx(r, j)] = -(a9 + ii * b9);
        w[midx(r + 3, j)] = F9->one();
        w[midx(r, j)] = -(a9 - ii * b9);
        expect(eq_vec(ph[1].apply(u), scale(u, (a9 + ii * b9).pow(3))),
               "phi_y eigen-relation (alpha + i beta)");
        expect(eq_vec(ph[1].apply(w), scale(w, (a9 - ii * b9).pow(3))),
               "phi_y eigen-relation (alpha - i beta)");
      }
  }
}

void criterion4() {
  auto F = f3();
  const long long alpha = 1;
  auto im = build_ex32(F, alpha, 0);
  Cluster cl = cluster_of(im.rep_original);
  expect(cl.size() == 2, "c3 = c1 and c4 = c2: two characters remain");

  // over F_9: (phi_y - alpha) is nilpotent nonzero on the c1-component
  auto F9 = f9();
  FieldElement ii = F9->generator();
  auto Mbar = extend_scalars(im.rep_original, F9);
  auto ph = phi(Mbar);
  const FieldElement a9 = F9->from_int(alpha);
  Matrix px = apply_poly(
      Polynomial::from_coeffs(F9, {ii, F9->one()}), ph[0]);  // phi_x + i
  Matrix py = apply_poly(
      Polynomial::from_coeffs(F9, {-a9, F9->one()}), ph[1]);  // phi_y - a
  Matrix stack(F9, 24, 12);
  Matrix pxp = px.pow(12), pyp = py.pow(12);
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 12; ++c) {
      stack.set(r, c, pxp.at(r, c));
      stack.set(12 + r, c, pyp.at(r, c));
    }
  std::vector<Vec> comp = nullspace(stack);
  expect(comp.size() == 6, "c1-generalized component is six-dimensional");
  bool nonzero = false;
  for (const auto& v : comp)
    if (!is_zero_vec(py.apply(v))) nonzero = true;
  expect(nonzero, "(phi_y - alpha) is nonzero on the component");
  for (const auto& v : comp) {
    Vec w = v;
    for (int k = 0; k < 12; ++k) w = py.apply(w);
    expect(is_zero_vec(w), "(phi_y - alpha) is nilpotent on the component");
  }

  // divisor epimorphism onto the six-dimensional module
  std::vector<Polynomial> fstar{
      Polynomial::from_coeffs(F, {-F->from_int(alpha), F->one()}),
      f_x_poly(F)};
  auto epi = divisor_epi_module(im, fstar);
  expect(epi.target.dim() == 6, "image is six-dimensional");
  expect(rank(epi.map) == 6, "the map is onto");
  auto V = v_module(xy_algebra(F), F->from_int(alpha), F->zero());
  expect(epi.target.rep_original.action[0] == V.action[0] &&
             epi.target.rep_original.action[1] == V.action[1],
         "quotient tables equal the six-dimensional module at beta = 0");
}

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  auto F = Field::rational_function(f3(), "tau");
  Workspace ws = parse_workspace_file(g_fixtures_dir + "/f3tau.json", {});
  Report rep = run("induce", &ws, {}, 0);
  expect(rep.status == 0, "induce over F_3(tau)");

  auto L = xy_algebra(F);
  auto S = span_y(L);
  auto W = w_line(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{Polynomial::from_coeffs(
      F, {-F->generator(), F->zero(), F->zero(), F->one()})};
  auto im = induce(L, S, W, f1, std::nullopt, "v");
  expect(im.dim() == 9, "dimension 9");
  const Matrix& X = im.rep_original.action[0];
  const Matrix& Y = im.rep_original.action[1];
  for (int r = 0; r < 8; ++r)
    expect(eq_vec(X.col(r), unit_vec(F, 9, r + 1)), "x shifts the basis");
  Vec last = zero_vec(F, 9);
  last[0] = F->generator();
  last[3] = F->one();
  expect(eq_vec(X.col(8), last), "x v_8 = tau v_0 + v_3");

  // y-rows against the independent binomial oracle y v_r = (x-1)^r (x) w
  long long pascal[9][9] = {};
  for (int r = 0; r < 9; ++r) {
    pascal[r][0] = 1;
    for (int k = 1; k <= r; ++k)
      pascal[r][k] =
          (pascal[r - 1][k - 1] + (k <= r - 1 ? pascal[r - 1][k] : 0)) % 3;
  }
  for (int r = 0; r < 9; ++r) {
    Vec expectv = zero_vec(F, 9);
    for (int k = 0; k <= r; ++k)
      expectv[k] = F->from_int(((r - k) % 2 ? -1 : 1) * pascal[r][k]);
    expect(eq_vec(Y.col(r), expectv),
           "y-row " + std::to_string(r) + " matches the binomial oracle");
  }

  // x^9 = x^3 + tau in u(L,f)
  PBWElement relation = im.reduced->overflow_rhs(0);
  PBWElement expected = PBWElement::monomial(F, {3, 0}, F->one());
  expected.add_term({0, 0}, F->generator());
  expect(relation == expected, "x^9 = x^3 + tau");

  auto irr = is_irreducible(im.rep_original, 0);
  expect(irr.irreducible, "V is irreducible");

  // minimal polynomial of phi_x on Vbar is (t - tau^{1/3})^3
  FieldPtr Fr = Field::inseparable_root(F, 1);
  auto Vbar = extend_scalars(im.rep_original, Fr);
  auto ph = phi(Vbar);
  Polynomial mp = minimal_polynomial(ph[0]);
  FieldElement root3 = Fr->generator();  // tau^{1/3}
  Polynomial lin =
      Polynomial::from_coeffs(Fr, {-root3, Fr->one()});
  expect(mp == lin * lin * lin, "min poly (t - tau^{1/3})^3 over the tower");

  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  expect(sec < 10.0, "runtime under ten seconds (took " + std::to_string(sec) + ")");
}

// ---------------------------------------------------------------------------
// criterion 6: seeded random instances
// ---------------------------------------------------------------------------

struct RandomInstance {
  LiePtr l;
  SubalgebraSpec s;
  Representation w;       // over the p-closed subalgebra
  Representation wprime;  // source for a category member V
  std::vector<Polynomial> f1;
};

Representation char_module(const SubalgebraAsAlgebra& sa,
                           const std::vector<Vec>& chars,
                           std::mt19937_64& rng) {
  const FieldPtr F = sa.algebra->field();
  const std::size_t sdim = sa.algebra->dim();
  const std::size_t dim = chars.size();
  Representation w;
  w.algebra = sa.algebra;
  w.dim = dim;
  w.field = F;
  for (std::size_t k = 0; k < sdim; ++k) {
    Matrix m(F, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) m.set(j, j, chars[j][k]);
    w.action.push_back(m);
  }
  // conjugate by a random invertible change of basis
  Matrix g(F, dim, dim);
  for (;;) {
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        g.set(r, c, F->element_at(rng() % 3));
    bool invertible = true;
    try {
      inverse(g);
    } catch (const math_error&) {
      invertible = false;
    }
    if (invertible) break;
  }
  Matrix gi = inverse(g);
  for (auto& m : w.action) m = gi * m * g;
  return w;
}

RandomInstance make_instance(unsigned long long seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 5);
  auto F = f3();
  RandomInstance inst;

  const int family = static_cast<int>(seed % 4);
  auto vec_of = [&](std::vector<long long> cs) {
    Vec v;
    for (auto c : cs) v.push_back(F->from_int(c));
    return v;
  };
  std::vector<SubalgebraSpec> choices;
  switch (family) {
    case 0: {
      inst.l = xy_algebra(F);
      choices.push_back(span_x(inst.l));
      choices.push_back(span_y(inst.l));
      choices.push_back(SubalgebraSpec{
          inst.l, {unit_vec(F, 2, 0), unit_vec(F, 2, 1)}, {"x", "y"}});
      break;
    }
    case 1: {
      // abelian with a random p-semilinear p-map
      std::vector<Vec> pmap{vec_of({static_cast<long long>(rng() % 3),
                                    static_cast<long long>(rng() % 3)}),
                            vec_of({static_cast<long long>(rng() % 3),
                                    static_cast<long long>(rng() % 3)})};
      inst.l = LieAlgebra::create(F, {"u", "v"}, {}, pmap);
      choices.push_back(SubalgebraSpec{inst.l, {unit_vec(F, 2, 0)}, {"u"}});
      choices.push_back(SubalgebraSpec{
          inst.l, {unit_vec(F, 2, 0), unit_vec(F, 2, 1)}, {"u", "v"}});
      break;
    }
    case 2: {
      // <x, y, z>: [x,y] = y, z central, z^[3] in {0, z}
      std::vector<LieAlgebra::BracketEntry> br{{0, 1, vec_of({0, 1, 0})}};
      std::vector<Vec> pmap{vec_of({1, 0, 0}), vec_of({0, 0, 0}),
                            vec_of({0, 0, static_cast<long long>(rng() % 2)})};
      inst.l = LieAlgebra::create(F, {"x", "y", "z"}, br, pmap);
      choices.push_back(SubalgebraSpec{inst.l, {unit_vec(F, 3, 0)}, {"x"}});
      choices.push_back(SubalgebraSpec{
          inst.l, {unit_vec(F, 3, 1), unit_vec(F, 3, 2)}, {"y", "z"}});
      choices.push_back(SubalgebraSpec{
          inst.l, {unit_vec(F, 3, 0), unit_vec(F, 3, 2)}, {"x", "z"}});
      break;
    }
    default: {
      // sl_2: [h,e] = 2e, [h,f] = -2f, [e,f] = h
      std::vector<LieAlgebra::BracketEntry> br{
          {0, 1, vec_of({0, 2, 0})},   // [h,e] = 2e
          {0, 2, vec_of({0, 0, -2})},  // [h,f] = -2f
          {1, 2, vec_of({1, 0, 0})}};  // [e,f] = h
      std::vector<Vec> pmap{vec_of({1, 0, 0}), vec_of({0, 0, 0}),
                            vec_of({0, 0, 0})};
      inst.l = LieAlgebra::create(F, {"h", "e", "f"}, br, pmap);
      choices.push_back(SubalgebraSpec{inst.l, {unit_vec(F, 3, 1)}, {"e"}});
      choices.push_back(SubalgebraSpec{inst.l, {unit_vec(F, 3, 0)}, {"h"}});
      choices.push_back(SubalgebraSpec{
          inst.l, {unit_vec(F, 3, 0), unit_vec(F, 3, 1)}, {"h", "e"}});
      break;
    }
  }
  inst.s = p_closure_of_subalgebra(choices[rng() % choices.size()]).closed;
  SubalgebraAsAlgebra sa = subalgebra_as_algebra(inst.s);
  const std::size_t sdim = sa.algebra->dim();

  // characters of S: linear functionals vanishing on the derived subalgebra
  std::vector<Vec> valid;
  for (unsigned long long code = 0; code < 1; ++code) {
  }
  unsigned long long total = 1;
  for (std::size_t i = 0; i < sdim; ++i) total *= 3;
  for (unsigned long long code = 0; code < total; ++code) {
    Vec c;
    unsigned long long v = code;
    for (std::size_t i = 0; i < sdim; ++i) {
      c.push_back(F->from_int(static_cast<long long>(v % 3)));
      v /= 3;
    }
    bool ok = true;
    for (std::size_t i = 0; i < sdim && ok; ++i)
      for (std::size_t j = i + 1; j < sdim && ok; ++j) {
        const Vec& br = sa.algebra->bracket_basis(i, j);
        FieldElement val = F->zero();
        for (std::size_t k = 0; k < sdim; ++k) val = val + br[k] * c[k];
        if (!val.is_zero()) ok = false;
      }
    if (ok) valid.push_back(c);
  }
  // pick at most two distinct characters, then lay out W and W'
  std::vector<Vec> pick;
  pick.push_back(valid[rng() % valid.size()]);
  if (valid.size() > 1 && rng() % 2) {
    Vec other = valid[rng() % valid.size()];
    if (!eq_vec(other, pick[0])) pick.push_back(other);
  }

  // f1 degrees under a working-set budget
  AdaptedBasis ab = adapt_basis(inst.l, inst.s);
  std::vector<std::size_t> degrees;
  unsigned long long prod = 1;
  for (std::size_t i = 0; i < ab.n1; ++i) {
    std::size_t d = (rng() % 2) + 1;
    if (prod * 3 * d > 18) d = 1;
    degrees.push_back(d);
    prod *= 3 * d;
  }
  std::size_t wdim = 1 + rng() % 3;
  while (wdim * prod > 18 && wdim > 1) --wdim;

  std::vector<Vec> wchars;
  for (std::size_t i = 0; i < wdim; ++i) wchars.push_back(pick[i % pick.size()]);
  inst.w = char_module(sa, wchars, rng);
  std::size_t wpdim = 1 + rng() % 2;
  std::vector<Vec> wpchars;
  for (std::size_t i = 0; i < wpdim; ++i)
    wpchars.push_back(pick[(i + 1) % pick.size()]);
  inst.wprime = char_module(sa, wpchars, rng);

  for (std::size_t i = 0; i < ab.n1; ++i) {
    std::vector<FieldElement> cs;
    for (std::size_t k = 0; k < degrees[i]; ++k)
      cs.push_back(F->element_at(rng() % 3));
    cs.push_back(F->one());
    inst.f1.push_back(Polynomial::from_coeffs(F, std::move(cs)));
  }
  return inst;
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool saw_dim3 = false, saw_w3 = false, saw_d2 = false;
  for (unsigned long long seed = 0; seed < 50; ++seed) {
    RandomInstance inst = make_instance(seed);
    saw_dim3 |= inst.l->dim() == 3;
    saw_w3 |= inst.w.dim == 3;
    for (const auto& q : inst.f1) saw_d2 |= *q.degree() == 2;

    // the subalgebra polynomials must annihilate W' as well, so that
    // ind(W', f) lies in the same category
    auto f2 = choose_f_for_s(subalgebra_as_algebra(inst.s),
                             {inst.w, inst.wprime});
    InducedModule im = induce(inst.l, inst.s, inst.w, inst.f1, f2);

    // dimension formula
    unsigned long long prod = 1;
    for (std::size_t i = 0; i < im.adapted.n1; ++i) prod *= im.reduced->bound(i);
    expect(im.dim() == inst.w.dim * prod,
           "dimension formula at seed " + std::to_string(seed));

    InducedModule vm = induce(inst.l, inst.s, inst.wprime, inst.f1, f2);
    const Representation& V = vm.rep_original;

    auto homS = hom_space(inst.w, restrict_to(V, im.adapted.sub));
    auto homL = hom_space(im.rep_original, V);
    expect(homS.size() == homL.size(),
           "adjunction dimension equality at seed " + std::to_string(seed));

    // bijection and unit triangle, exactly
    for (const auto& theta : homS) {
      Matrix psi = adjoint_forward(im, theta, V);
      expect(adjoint_backward(im, psi) == theta,
             "unit triangle at seed " + std::to_string(seed));
    }
    for (const auto& psi : homL) {
      Matrix theta = adjoint_backward(im, psi);
      expect(adjoint_forward(im, theta, V) == psi,
             "bijection inverse at seed " + std::to_string(seed));
    }

    // naturality square on endomorphisms of V
    if (!homS.empty()) {
      auto ends = hom_space(V, V);
      std::size_t take = std::min<std::size_t>(ends.size(), 2);
      for (std::size_t k = 0; k < take; ++k) {
        const Matrix& g = ends[k];
        Matrix lhs = adjoint_forward(im, g * homS[0], V);
        Matrix rhs = g * adjoint_forward(im, homS[0], V);
        expect(lhs == rhs, "naturality at seed " + std::to_string(seed));
      }
    }
  }
  expect(saw_dim3 && saw_w3 && saw_d2,
         "instances cover dim L = 3, dim W = 3, and d_i = 2");
  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  expect(sec < 60.0,
         "runtime under sixty seconds (took " + std::to_string(sec) + ")");
}

void criterion7() {
  auto F = f3();
  std::mt19937_64 rng(2026);
  // PBW confluence on the two fixture algebras
  {
    auto L = adapt_basis(xy_algebra(F), span_x(xy_algebra(F))).adapted;
    for (int t = 0; t < 100; ++t) {
      Word w;
      const std::size_t len = 1 + rng() % 8;
      for (std::size_t k = 0; k < len; ++k)
        w.push_back(static_cast<unsigned>(rng() % 2));
      PBWElement a = normal_form(*L, w, F->one());
      PBWElement b = normal_form_randomized(*L, w, F->one(), rng);
      expect(a == b, "confluence on the solvable fixture");
    }
  }
  // associativity and centrality on the ex32 reduced algebra
  for (auto [alpha, beta] :
       std::vector<std::pair<long long, long long>>{{1, 1}, {2, 1}}) {
    auto L = xy_algebra(F);
    auto S = span_x(L);
    auto W = w_rotation(subalgebra_as_algebra(S));
    std::vector<Polynomial> f1{
        f_y_poly(F, F->from_int(alpha), F->from_int(beta))};
    auto im = induce(L, S, W, f1);
    const ReducedPtr R = im.reduced;
    auto rand_elem = [&]() {
      PBWElement e(F, 2);
      for (int k = 0; k < 3; ++k) {
        MultiIndex a{static_cast<unsigned>(rng() % R->bound(0)),
                     static_cast<unsigned>(rng() % R->bound(1))};
        e.add_term(a, F->element_at(rng() % 3));
      }
      return e;
    };
    for (int t = 0; t < 100; ++t) {
      PBWElement a = rand_elem(), b = rand_elem(), c = rand_elem();
      expect(R->multiply(a, R->multiply(b, c)) ==
                 R->multiply(R->multiply(a, b), c),
             "associativity on 100 random triples");
    }
    for (std::size_t i = 0; i < 2; ++i) {
      PBWElement zi = R->z_image(i);
      for (std::size_t j = 0; j < 2; ++j) {
        PBWElement ej = PBWElement::generator(F, 2, j);
        expect(R->multiply(zi, ej) == R->multiply(ej, zi),
               "centrality of z_i");
      }
    }
    expect(check_p_semilinear(im.rep_original, 34, 7).ok(),
           "phi is p-semilinear with Jacobson p-th powers");
  }
}

void criterion8() {
  // drive the full story through the demo, then re-assert the key facts
  Report rep = run("demo", nullptr, {"ex42"}, 0);
  expect(rep.status == 0, "demo ex42 reports success");
  expect(rep.data.at("psi_difference").dump().find("\"0\"") != std::string::npos,
         "psi difference matrix is reported");

  auto F3 = f3();
  auto F = Field::extension(F3, Polynomial::from_ints(F3, {1, 0, 1}), "i");
  FieldElement lambda = F->generator();
  auto L = xab_algebra(F, lambda);
  EnvelopeSpec env0 = build_envelope_adjoint(L);
  expect(env0.lstar->dim() == 4, "envelope dimension 4");
  Vec d = scale(sub(env0.lstar->pmap_basis(0), unit_vec(F, 4, 0)),
                (lambda.pow(3) - lambda).inv());
  Matrix cols(F, 4, 4);
  for (std::size_t i = 0; i < 3; ++i) cols.set(i, i, F->one());
  for (std::size_t i = 0; i < 4; ++i) cols.set(i, 3, d[i]);
  LiePtr lstar = env0.lstar->transform_basis(cols, {"x", "a", "b", "d"});
  Vec expect_xp = unit_vec(F, 4, 0);
  expect_xp[3] = lambda.pow(3) - lambda;
  expect(eq_vec(lstar->pmap_basis(0), expect_xp),
         "x^[p] = x + (lambda^3 - lambda) d");

  EnvelopeSpec env{L, lstar, Matrix(F, 4, 3)};
  for (std::size_t i = 0; i < 3; ++i) env.embed.set(i, i, F->one());
  expect(validate_envelope(env).ok(), "rebased envelope is valid");

  SubalgebraSpec s{L, {unit_vec(F, 3, 1)}, {"a"}};
  Representation W;
  {
    SubalgebraSpec s_star{lstar, {unit_vec(F, 4, 1)}, {"a"}};
    auto pc = p_closure_of_subalgebra(s_star);
    expect(pc.closed.basis.size() == 1, "S^[p] = S");
    W.algebra = subalgebra_as_algebra(pc.closed).algebra;
  }
  W.dim = 1;
  W.field = F;
  Matrix act(F, 1, 1);
  act.set(0, 0, F->one());
  W.action.push_back(act);

  const FieldElement sig1 = F->one(), sig2 = F->from_int(2);
  const FieldElement shift = lambda.pow(3) - lambda;
  auto lin = [&](const FieldElement& r) {
    return Polynomial::from_coeffs(F, {-r, F->one()});
  };
  std::vector<Polynomial> f1{lin(-shift * sig1) * lin(-shift * sig2),
                             lin(F->one()), Polynomial::variable(F)};
  TFunctorResult t = t_functor(env, s, W, f1);

  auto V = hk_module(L, lambda);
  Matrix theta(F, 9, 1);
  for (int i = 0; i < 3; ++i) theta.set(3 * i, 0, F->one());
  auto vstar = [&](const FieldElement& nu) {
    Representation vs;
    vs.algebra = lstar;
    vs.dim = 9;
    vs.field = F;
    vs.action = V.action;
    vs.action.push_back(hk_d_action(F, F->zero(), nu));
    return vs;
  };
  Representation v1 = vstar(sig1), v2 = vstar(sig2);
  Matrix psi1 = lemma_psi(t, theta, v1);
  Matrix psi2 = lemma_psi(t, theta, v2);
  expect(psi1 != psi2, "psi_1 and psi_2 differ as matrices");
  TrueInduced ti = true_induce(t);
  expect(restrict_map_to(ti, psi1) == restrict_map_to(ti, psi2),
         "the restrictions to ind(W) agree");
  auto homS = hom_space(W, restrict_to(V, subalgebra_as_algebra(s)));
  auto homL = hom_space(ti.rep, V);
  expect(homS.size() == homL.size() && homS.size() == 3,
         "adjunction dimension equality on the repaired adjoint");
}

void criterion9() {
  auto F = f3();
  Report rep = run("demo", nullptr, {"s3y"}, 0);
  expect(rep.status == 0, "demo s3y reports success");
  const std::string relation = rep.data.at("relation").get<std::string>();
  expect(relation.find("x^6 = ") == 0, "report records the computed relation");

  auto L = xy_algebra(F);
  auto S = span_y(L);
  auto W = w_line(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{f_x_poly(F)};
  auto im = induce(L, S, W, f1);
  // engine-derived relation from (x^3 - x)^2 + 1 = 0
  PBWElement expected = PBWElement::monomial(F, {4, 0}, F->from_int(2)) +
                        PBWElement::monomial(F, {2, 0}, F->from_int(-1)) +
                        PBWElement::monomial(F, {0, 0}, F->from_int(-1));
  expect(im.reduced->overflow_rhs(0) == expected, "x^6 = 2x^4 - x^2 - 1");

  // the claimed isomorphism onto the six-dimensional module holds anyway
  auto V = v_module(L, F->one(), F->zero());
  Matrix theta(F, 6, 1);
  theta.set(0, 0, F->one());
  theta.set(2, 0, F->one());
  theta.set(4, 0, F->one());
  Matrix psi = adjoint_forward(im, theta, V);
  expect(rank(psi) == 6, "psi is an isomorphism onto V");
}

struct Criterion {
  int num;
  std::string title;
  std::function<void()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <fixtures-dir>\n");
    return 2;
  }
  g_fixtures_dir = argv[1];

  std::vector<Criterion> criteria{
      {1, "worked example tables reproduced entry-for-entry", criterion1},
      {2, "adjunction map omega and its kernel", criterion2},
      {3, "cluster decomposition with beta nonzero", criterion3},
      {4, "beta = 0 degeneration and divisor epimorphism", criterion4},
      {5, "non-perfect base field example", criterion5},
      {6, "dimension formula and functor laws on random instances", criterion6},
      {7, "engine properties: confluence, associativity, centrality, phi",
       criterion7},
      {8, "envelope suite: non-unique psi and the repaired adjoint", criterion8},
      {9, "computed x^6 relation asserted over the quoted one", criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string note;
    bool ok = true;
    try {
      c.fn();
    } catch (const check_failure& e) {
      ok = false;
      note = e.what();
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("exception: ") + e.what();
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("criterion %d: %s - %s (%.2fs)%s%s\n", c.num,
                ok ? "PASS" : "FAIL", c.title.c_str(), sec,
                note.empty() ? "" : " :: ", note.c_str());
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::puts("acceptance: all criteria passed");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", failures);
  return 1;
}
