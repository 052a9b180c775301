// Finite-dimensional representations as one action matrix per basis
// element, homomorphism spaces, restriction, scalar extension, spinning,
// and a Norton-style irreducibility test that works over infinite base
// fields.
#pragma once

#include "core/uea.hpp"

namespace modind {

struct Representation {
  LiePtr algebra;
  ReducedPtr bound;  // optional: the reduced algebra whose category V lives in
  std::size_t dim = 0;
  FieldPtr field;  // extends algebra->field()
  std::vector<Matrix> action;  // aligned with the algebra basis
  std::vector<std::string> labels;

  Matrix action_of(const Vec& u) const;  // u in algebra coordinates
  // action of a PBW monomial e^alpha (product of the basis actions)
  Matrix action_of_monomial(const MultiIndex& a) const;
  Matrix action_of_element(const PBWElement& a) const;
  std::string label(std::size_t i) const;
};

ValidationReport validate_rep(const Representation& v);

// basis of { theta : theta rho_V(e_i) = rho_W(e_i) theta } (maps V -> W)
std::vector<Matrix> hom_space(const Representation& v, const Representation& w);

Representation restrict_to(const Representation& v,
                           const SubalgebraAsAlgebra& s);
Representation extend_scalars(const Representation& v, const FieldPtr& e);

// smallest action-invariant subspace containing the seeds (echelon basis)
std::vector<Vec> spin(const Representation& v, const std::vector<Vec>& seeds);

struct IrreducibilityResult {
  bool irreducible = false;
  // a proper nonzero invariant subspace, when reducible
  std::vector<Vec> witness;
  std::string certificate;
};

IrreducibilityResult is_irreducible(const Representation& v,
                                    unsigned long long seed = 0);

// direct sum, with block-diagonal action (used by fixtures and tests)
Representation direct_sum(const Representation& a, const Representation& b);

// the action carried by an invariant subspace, in the given basis
Representation subrepresentation(const Representation& v,
                                 const std::vector<Vec>& basis);

}  // namespace modind
