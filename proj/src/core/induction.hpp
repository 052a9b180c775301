// The induction functor ind(W, f) = u(L,f) (x)_{u(S,f|I2)} W, its unit, the
// adjunction bijection, and the divisor epimorphism between induced modules.
#pragma once

#include "core/modules.hpp"

namespace modind {

// ordered basis with the subalgebra last: I1 = 0..n1-1, I2 = n1..n-1
struct AdaptedBasis {
  LiePtr original;
  LiePtr adapted;
  Matrix new_in_old;  // columns: adapted basis vectors in original coordinates
  Matrix old_in_new;
  std::size_t n1 = 0;
  SubalgebraAsAlgebra sub;

  std::size_t dim() const { return original->dim(); }
  std::size_t n2() const { return dim() - n1; }
};

AdaptedBasis adapt_basis(const LiePtr& l, const SubalgebraSpec& s);

// f_i = lcm over Y of the minimal polynomials of rho(s_i)^p - rho(s_i^{[p]})
std::vector<Polynomial> choose_f_for_s(const SubalgebraAsAlgebra& s,
                                       const std::vector<Representation>& y);

struct InducedModule {
  AdaptedBasis adapted;
  ReducedPtr reduced;
  Representation w;             // the inducing module, over adapted.sub.algebra
  Representation rep;           // over the adapted algebra
  Representation rep_original;  // same space, original basis order
  Matrix unit;                  // dim x dim(W)
  std::vector<MultiIndex> alpha_basis;  // I1-supported, lexicographic

  std::size_t dim() const { return rep.dim; }
  std::size_t index_of(std::size_t alpha_pos, std::size_t j) const {
    return alpha_pos * w.dim + j;
  }
};

// f1: one monic polynomial of degree >= 1 per I1 index (adapted order).
// f2: per I2 index; chosen from W's minimal polynomials when absent, and
// verified to annihilate W when given.
InducedModule induce(const LiePtr& l, const SubalgebraSpec& s,
                     const Representation& w, std::vector<Polynomial> f1,
                     std::optional<std::vector<Polynomial>> f2 = std::nullopt,
                     const std::string& label_prefix = "m");

// turn a module over the original basis order into one over the adapted
// order (or back), acting on the same underlying space
Representation to_adapted(const AdaptedBasis& ab, const Representation& v);

// category membership: every f_i(rho(e_i)^p - rho(e_i^{[p]})) vanishes on v
ValidationReport check_category(const ReducedPtr& r, const Representation& v);

// theta: W -> res V (dim(V) x dim(W));  psi: ind(W) -> V
Matrix adjoint_forward(const InducedModule& im, const Matrix& theta,
                       const Representation& v);
Matrix adjoint_backward(const InducedModule& im, const Matrix& psi);

struct ModuleEpi {
  Matrix map;  // dim(target) x dim(source)
  InducedModule target;
};
// fstar indexed like the adapted basis; must divide f componentwise
ModuleEpi divisor_epi_module(const InducedModule& im,
                             std::vector<Polynomial> fstar);

}  // namespace modind
