// p-envelopes for non-restrictable algebras: the adjoint-closure
// construction, the J functor along a p-closure tower, the T functor,
// homomorphism transport (which need not be unique), and the repaired left
// adjoint as the submodule generated by the unit image.
#pragma once

#include "core/characters.hpp"
#include "core/induction.hpp"

namespace modind {

struct EnvelopeSpec {
  LiePtr l;      // original algebra, p-map optional
  LiePtr lstar;  // restricted envelope
  Matrix embed;  // dim(L*) x dim(L): columns are the images of L's basis
};

// envelope via the p-closure of the adjoint image; needs a trivial center
EnvelopeSpec build_envelope_adjoint(const LiePtr& l);
// embedding is an injective homomorphism and its image p-closes to L*
ValidationReport validate_envelope(const EnvelopeSpec& e);

// Extend an S-module W to the p-closure S^{[p]}: a tower generator
// s^{[p]^k} acts by rho_W(s)^{p^k}; the extension to the rest of S^{[p]}
// is linear.  Throws when the linear extension fails to be a
// representation.
Representation j_extend(const Representation& w, const PClosure& sp);

struct TFunctorResult {
  EnvelopeSpec envelope;
  PClosure sp;
  Representation jw;
  InducedModule star;      // induced module over L*
  Representation over_l;   // the same space as an L-module
};

// T = res o ind_{S^{[p]}}^{L*} o J; f1 follows L*'s adapted order
TFunctorResult t_functor(const EnvelopeSpec& env, const SubalgebraSpec& s_in_l,
                         const Representation& w, std::vector<Polynomial> f1,
                         std::optional<std::vector<Polynomial>> f2 = std::nullopt);

// Solutions D of [D, rho(e_i)] = rho([g, e_i]) for the embedded basis of L:
// the possible actions of the envelope element g on an L-module.
struct ExtensionFamily {
  bool solvable = false;
  Matrix particular;
  std::vector<Matrix> homogeneous;  // centralizer directions
};
ExtensionFamily extend_action_to(const EnvelopeSpec& env,
                                 const Representation& v_over_l,
                                 const Vec& gstar);

// psi: T(W) -> V from theta: W -> res V, via a caller-chosen extension
// vstar of V to L*.  Different extensions may give different psi.
Matrix lemma_psi(const TFunctorResult& t, const Matrix& theta,
                 const Representation& vstar);

struct TrueInduced {
  std::vector<Vec> basis;  // inside T(W)
  Representation rep;      // L-action carried by the basis
  Matrix unit;             // dim(basis) x dim(W)
};
// the L-submodule of T(W) generated by the unit image
TrueInduced true_induce(const TFunctorResult& t);

// restriction of an L-map psi on T(W) to the generated submodule
Matrix restrict_map_to(const TrueInduced& ti, const Matrix& psi);

}  // namespace modind
