#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/fixtures.hpp"

using namespace modind;
using namespace modind::fixtures;

namespace {

FieldPtr f3() { return Field::prime(3); }

FieldPtr f9() {
  auto F3 = f3();
  return Field::extension(F3, Polynomial::from_ints(F3, {1, 0, 1}), "i");
}

}  // namespace

TEST_CASE("validate_rep accepts the rotation module over <x>") {
  auto L = xy_algebra(f3());
  auto S = subalgebra_as_algebra(span_x(L));
  auto W = w_rotation(S);
  CHECK(validate_rep(W).ok());
}

TEST_CASE("validate_rep accepts the zero action") {
  auto F = f3();
  auto A = LieAlgebra::create(F, {"u"}, {},
                              std::vector<Vec>{zero_vec(F, 1)});
  Representation z;
  z.algebra = A;
  z.dim = 2;
  z.field = F;
  z.action.push_back(Matrix(F, 2, 2));
  CHECK(validate_rep(z).ok());
}

TEST_CASE("validate_rep accepts the six-dimensional module V") {
  auto F = f3();
  auto L = xy_algebra(F);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {1, 0}, {2, 1}}) {
    auto V = v_module(L, F->from_int(a), F->from_int(b));
    CHECK(validate_rep(V).ok());
  }
}

TEST_CASE("validate_rep flags a broken action") {
  auto F = f3();
  auto L = xy_algebra(F);
  auto V = v_module(L, F->one(), F->one());
  V.action[1] = Matrix::identity(F, 6);  // y acting as 1 breaks [x,y] = y
  CHECK_FALSE(validate_rep(V).ok());
}

TEST_CASE("hom_space(W, W) over <x> is the commutant of a rotation") {
  auto L = xy_algebra(f3());
  auto S = subalgebra_as_algebra(span_x(L));
  auto W = w_rotation(S);
  auto basis = hom_space(W, W);
  CHECK(basis.size() == 2);  // F_3[rho(x)], a copy of F_9
  for (const auto& t : basis)
    CHECK(t * W.action[0] == W.action[0] * t);
}

TEST_CASE("hom_space of the trivial module with itself") {
  auto F = f3();
  auto A = LieAlgebra::create(F, {"u"}, {},
                              std::vector<Vec>{zero_vec(F, 1)});
  Representation t;
  t.algebra = A;
  t.dim = 1;
  t.field = F;
  t.action.push_back(Matrix(F, 1, 1));
  CHECK(hom_space(t, t).size() == 1);
}

TEST_CASE("restriction forgets the rest of the action") {
  auto F = f3();
  auto L = xy_algebra(F);
  auto V = v_module(L, F->one(), F->one());
  auto Sx = subalgebra_as_algebra(span_x(L));
  auto VS = restrict_to(V, Sx);
  CHECK(VS.dim == 6);
  CHECK(VS.action.size() == 1);
  CHECK(VS.action[0] == V.action[0]);
  CHECK(validate_rep(VS).ok());
  auto Sy = subalgebra_as_algebra(span_y(L));
  auto VY = restrict_to(V, Sy);
  CHECK(VY.action[0] == V.action[1]);
}

TEST_CASE("extend_scalars diagonalizes the rotation over F9") {
  auto L = xy_algebra(f3());
  auto S = subalgebra_as_algebra(span_x(L));
  auto W = w_rotation(S);
  auto F9 = f9();
  auto W9 = extend_scalars(W, F9);
  CHECK(W9.dim == 2);
  // eigenvalues of rho(x) over F9 are +-i
  FieldElement i = F9->generator();
  Polynomial charpoly = minimal_polynomial(W9.action[0]);
  CHECK(charpoly.eval(i).is_zero());
  CHECK(charpoly.eval(-i).is_zero());
  // eigenvectors exist over F9
  Matrix shifted = W9.action[0] - Matrix::identity(F9, 2).scale(i);
  CHECK(nullspace(shifted).size() == 1);
}

TEST_CASE("spin closes under the action and is monotone") {
  auto F = f3();
  auto L = xy_algebra(F);
  auto V = v_module(L, F->one(), F->zero());
  // a single unit vector spins to everything here
  auto sp = spin(V, {unit_vec(F, 6, 0)});
  CHECK(sp.size() == 6);
  auto sp0 = spin(V, {zero_vec(F, 6)});
  CHECK(sp0.empty());
  // idempotence
  auto sp2 = spin(V, sp);
  CHECK(sp2.size() == sp.size());
}

TEST_CASE("is_irreducible: direct sums are reducible with a witness") {
  auto F = f3();
  auto L = xy_algebra(F);
  auto V = v_module(L, F->one(), F->one());
  auto VV = direct_sum(V, V);
  auto res = is_irreducible(VV, 1);
  CHECK_FALSE(res.irreducible);
  REQUIRE_FALSE(res.witness.empty());
  // the witness must be proper, nonzero, and invariant
  CHECK(res.witness.size() < VV.dim);
  auto closed = spin(VV, res.witness);
  CHECK(closed.size() == res.witness.size());
}

TEST_CASE("is_irreducible on the nine-dimensional H tensor K module") {
  auto F9 = f9();
  FieldElement lambda = F9->generator();
  auto L = xab_algebra(F9, lambda);
  REQUIRE(L->validate().ok());
  auto V = hk_module(L, lambda);
  REQUIRE(validate_rep(V).ok());
  auto res = is_irreducible(V, 0);
  CHECK(res.irreducible);
}

TEST_CASE("reducible when lambda lies in the prime field") {
  // with lambda = 1 the weight argument fails and proper submodules exist
  auto F = f3();
  auto L = xab_algebra(F, F->one());
  auto V = hk_module(L, F->one());
  REQUIRE(validate_rep(V).ok());
  auto res = is_irreducible(V, 0);
  CHECK_FALSE(res.irreducible);
  auto closed = spin(V, res.witness);
  CHECK(closed.size() == res.witness.size());
  CHECK(res.witness.size() < V.dim);
  CHECK(!res.witness.empty());
}

TEST_CASE("hom intertwining identity holds exactly on every returned basis") {
  auto F = f3();
  auto L = xy_algebra(F);
  auto V = v_module(L, F->one(), F->zero());
  auto W = v_module(L, F->one(), F->zero());
  auto basis = hom_space(V, W);
  CHECK(!basis.empty());
  for (const auto& t : basis)
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(t * V.action[i] == W.action[i] * t);
}
