#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/characters.hpp"
#include "core/fixtures.hpp"
#include "core/induction.hpp"

using namespace modind;
using namespace modind::fixtures;

namespace {

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
  std::vector<Polynomial> f1{
      f_y_poly(F, F->from_int(alpha), F->from_int(beta))};
  return induce(L, S, W, f1);
}

Character make_char(const FieldPtr& tower, std::vector<FieldElement> vals) {
  Character c;
  c.tower = tower;
  c.values = std::move(vals);
  return c;
}

}  // namespace

TEST_CASE("phi tables of the twelve-dimensional module") {
  auto F = f3();
  const long long alpha = 1, beta = 1;
  auto im = build_ex32(F, alpha, beta);
  auto ph = phi(im.rep_original);
  const Matrix& phx = ph[0];
  const Matrix& phy = ph[1];
  // phi_x m_1^r = m_2^r, phi_x m_2^r = -m_1^r
  for (int r = 0; r < 6; ++r) {
    CHECK(eq_vec(phx.col(midx(r, 0)), unit_vec(F, 12, midx(r, 1))));
    CHECK(eq_vec(phx.col(midx(r, 1)),
                 scale(unit_vec(F, 12, midx(r, 0)), F->from_int(-1))));
  }
  // phi_y m_j^r = m_j^{r+3} for r = 0,1,2
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < 2; ++j)
      CHECK(eq_vec(phy.col(midx(r, j)), unit_vec(F, 12, midx(r + 3, j))));
  // phi_y m_j^{3+r} = -(a^2+b^2) m_j^r - a m_j^{3+r}
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < 2; ++j) {
      Vec expect = zero_vec(F, 12);
      expect[midx(r, j)] = F->from_int(-(alpha * alpha + beta * beta));
      expect[midx(r + 3, j)] = F->from_int(-alpha);
      CHECK(eq_vec(phy.col(midx(r + 3, j)), expect));
    }
  // the phi commute with each other and with the action
  CHECK(phx * phy == phy * phx);
  for (const auto& a : im.rep_original.action) {
    CHECK(phx * a == a * phx);
    CHECK(phy * a == a * phy);
  }
}

TEST_CASE("phi vanishes on a trivial module with zero p-map") {
  auto F = f3();
  auto A = LieAlgebra::create(F, {"u"}, {},
                              std::vector<Vec>{zero_vec(F, 1)});
  Representation t;
  t.algebra = A;
  t.dim = 2;
  t.field = F;
  t.action.push_back(Matrix(F, 2, 2));
  auto ph = phi(t);
  CHECK(ph[0].is_zero());
}

TEST_CASE("p-semilinearity holds on the fixtures") {
  auto F = f3();
  auto im = build_ex32(F, 1, 1);
  CHECK(check_p_semilinear(im.rep_original, 25, 0).ok());
  auto V = v_module(xy_algebra(F), F->one(), F->one());
  CHECK(check_p_semilinear(V, 25, 1).ok());
}

TEST_CASE("has_character") {
  auto F = f3();
  SUBCASE("the rotation module has none over F_3") {
    auto L = xy_algebra(F);
    auto S = subalgebra_as_algebra(span_x(L));
    auto W = w_rotation(S);
    CHECK_FALSE(has_character(W).has_value());
  }
  SUBCASE("a trivial one-dimensional module has character zero") {
    auto A = LieAlgebra::create(F, {"u"}, {},
                                std::vector<Vec>{zero_vec(F, 1)});
    Representation t;
    t.algebra = A;
    t.dim = 1;
    t.field = F;
    t.action.push_back(Matrix(F, 1, 1));
    auto c = has_character(t);
    REQUIRE(c.has_value());
    CHECK(c->values[0].is_zero());
    CHECK(c->tower->equals(*F));
  }
  SUBCASE("the k_r span carries the swapped character") {
    auto F9 = f9();
    FieldElement i = F9->generator();
    const long long alpha = 1, beta = 1;
    auto im = build_ex32(F, alpha, beta);
    auto Mbar = extend_scalars(im.rep_original, F9);
    const FieldElement a = F9->from_int(alpha), b = F9->from_int(beta);
    std::vector<Vec> krs;
    for (int r = 0; r < 3; ++r) {
      Vec k = zero_vec(F9, 12);
      k[midx(r + 3, 0)] = F9->one();
      k[midx(r, 0)] = -a + i * b;  // -alpha + i beta (coefficient of m_1^r)
      k[midx(r + 3, 1)] = i;
      k[midx(r, 1)] = -i * a - b;  // i(-alpha) - beta
      krs.push_back(k);
    }
    // the span is invariant; its character is c_3 = (i, alpha - i beta)
    auto sub = subrepresentation(Mbar, krs);
    auto c = has_character(sub);
    REQUIRE(c.has_value());
    CHECK(c->values[0] == i);
    CHECK(c->values[1] == a - i * b);
  }
}

TEST_CASE("cluster of the twelve-dimensional module") {
  auto F = f3();
  SUBCASE("beta nonzero: four distinct characters") {
    for (auto [alpha, beta] :
         std::vector<std::pair<long long, long long>>{{1, 1}, {2, 1}}) {
      auto im = build_ex32(F, alpha, beta);
      Cluster cl = cluster_of(im.rep_original);
      REQUIRE(cl.size() == 4);
      // locate i inside the engine's tower: some value with square -1
      FieldPtr tower = cl.chars[0].tower;
      FieldElement i = cl.chars[0].values[0];
      CHECK(i * i == tower->from_int(-1));
      const FieldElement a = tower->from_int(alpha), b = tower->from_int(beta);
      Cluster expect;
      expect.chars.push_back(make_char(tower, {i, a + i * b}));
      expect.chars.push_back(make_char(tower, {-i, a - i * b}));
      expect.chars.push_back(make_char(tower, {i, a - i * b}));
      expect.chars.push_back(make_char(tower, {-i, a + i * b}));
      CHECK(expect.subset_of(cl));
      CHECK(cl.subset_of(expect));
      // Galois stability
      for (const auto& c : cl.chars)
        CHECK(cl.contains(conjugate_character(c, F)));
    }
  }
  SUBCASE("beta zero: the characters collapse to two") {
    auto im = build_ex32(F, 1, 0);
    Cluster cl = cluster_of(im.rep_original);
    REQUIRE(cl.size() == 2);
    FieldElement i = cl.chars[0].values[0];
    CHECK(i * i == cl.chars[0].tower->from_int(-1));
    for (const auto& c : cl.chars) CHECK(c.values[1] == F->one());
  }
}

TEST_CASE("cluster of the nine-dimensional module over F_3(tau)") {
  auto F = Field::rational_function(f3(), "tau");
  auto L = xy_algebra(F);
  auto S = span_y(L);
  auto W = w_line(subalgebra_as_algebra(S));
  std::vector<Polynomial> f1{Polynomial::from_coeffs(
      F, {-F->generator(), F->zero(), F->zero(), F->one()})};
  auto im = induce(L, S, W, f1, std::nullopt, "v");
  Cluster cl = cluster_of(im.rep_original);
  REQUIRE(cl.size() == 1);
  const Character& c = cl.chars[0];
  // c(x)^9 = tau, i.e. c(x) = tau^{1/9}; c(y) = 1
  CHECK(c.values[0].pow(9) == Field::embed(F->generator(), c.values[0].field()));
  CHECK(c.values[1] == F->one());
  CHECK(c.values[0].field()->kind() == Field::Kind::Inseparable);
  CHECK(c.values[0].field()->insep_level() == 2);
}

TEST_CASE("cluster decomposition splits M into two six-dimensional halves") {
  auto F = f3();
  const long long alpha = 1, beta = 1;
  auto im = build_ex32(F, alpha, beta);
  auto comps = cluster_decompose(im.rep_original);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].basis.size() == 6);
  CHECK(comps[1].basis.size() == 6);

  // expected spanning sets from the displayed generators
  const FieldElement a = F->from_int(alpha), b = F->from_int(beta);
  std::vector<Vec> mc, mcp;
  for (int r = 0; r < 3; ++r) {
    Vec c1 = zero_vec(F, 12), c2 = zero_vec(F, 12);
    c1[midx(r + 3, 0)] = F->one();
    c1[midx(r, 0)] = -a;
    c1[midx(r, 1)] = b;
    c2[midx(r + 3, 1)] = F->one();
    c2[midx(r, 0)] = -b;
    c2[midx(r, 1)] = -a;
    mc.push_back(c1);
    mc.push_back(c2);
    Vec k1 = zero_vec(F, 12), k2 = zero_vec(F, 12);
    k1[midx(r + 3, 0)] = F->one();
    k1[midx(r, 0)] = -a;
    k1[midx(r, 1)] = -b;
    k2[midx(r + 3, 1)] = F->one();
    k2[midx(r, 0)] = b;
    k2[midx(r, 1)] = -a;
    mcp.push_back(k1);
    mcp.push_back(k2);
  }
  // identify which component carries the cluster containing (i, a + i b)
  auto carries_c1 = [&](const ClusterComponent& comp) {
    for (const auto& c : comp.cluster.chars) {
      const FieldElement& ci = c.values[0];
      if (ci * ci == c.tower->from_int(-1)) {
        FieldElement expect = Field::embed(a, c.tower) + ci * Field::embed(b, c.tower);
        if (c.values[1] == expect) return true;
      }
    }
    return false;
  };
  const ClusterComponent& compC = carries_c1(comps[0]) ? comps[0] : comps[1];
  const ClusterComponent& compCp = carries_c1(comps[0]) ? comps[1] : comps[0];
  CHECK(carries_c1(compC));
  CHECK(subspace_equal(F, 12, compC.basis, mc));
  CHECK(subspace_equal(F, 12, compCp.basis, mcp));

  // each component is action- and phi-invariant
  for (const auto& comp : comps) {
    auto sub = subrepresentation(im.rep_original, comp.basis);  // throws if not
    CHECK(validate_rep(sub).ok());
  }
}

TEST_CASE("single-character modules decompose trivially") {
  auto F = f3();
  auto im = build_ex32(F, 1, 0);  // beta = 0: one Galois orbit
  auto comps = cluster_decompose(im.rep_original);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].basis.size() == 12);
  CHECK(comps[0].cluster.size() == 2);
}

TEST_CASE("decomposing a direct sum with disjoint clusters") {
  auto F = f3();
  auto L = xy_algebra(F);
  // V(alpha=1,beta=0) has cluster values c(y) = 1; V(alpha=2,beta=0) has 2
  auto V1 = v_module(L, F->one(), F->zero());
  auto V2 = v_module(L, F->from_int(2), F->zero());
  auto VV = direct_sum(V1, V2);
  auto comps = cluster_decompose(VV);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].basis.size() == 6);
  CHECK(comps[1].basis.size() == 6);
  // the summand supports: first six coordinates vs last six
  std::vector<Vec> first, second;
  for (int i = 0; i < 6; ++i) {
    first.push_back(unit_vec(F, 12, i));
    second.push_back(unit_vec(F, 12, 6 + i));
  }
  bool ok01 = subspace_equal(F, 12, comps[0].basis, first) &&
              subspace_equal(F, 12, comps[1].basis, second);
  bool ok10 = subspace_equal(F, 12, comps[0].basis, second) &&
              subspace_equal(F, 12, comps[1].basis, first);
  CHECK((ok01 || ok10));
}

TEST_CASE("cluster projection") {
  auto F = f3();
  auto im = build_ex32(F, 1, 1);
  auto comps = cluster_decompose(im.rep_original);
  REQUIRE(comps.size() == 2);
  SUBCASE("projecting onto one orbit recovers its component") {
    auto proj = cluster_project(im.rep_original, comps[0].cluster);
    CHECK(subspace_equal(F, 12, proj, comps[0].basis));
  }
  SUBCASE("the full cluster recovers everything") {
    Cluster full;
    for (const auto& c : comps[0].cluster.chars) full.chars.push_back(c);
    for (const auto& c : comps[1].cluster.chars) full.chars.push_back(c);
    auto proj = cluster_project(im.rep_original, full);
    CHECK(proj.size() == 12);
  }
  SUBCASE("a disjoint cluster projects to zero") {
    auto F9 = f9();
    Cluster off;
    off.chars.push_back(make_char(F9, {F9->one(), F9->one()}));
    auto proj = cluster_project(im.rep_original, off);
    CHECK(proj.empty());
  }
}
