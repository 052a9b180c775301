// Univariate factorization over the supported field towers, splitting
// extensions, and Galois orbits.
#pragma once

#include <random>
#include <utility>
#include <vector>

#include "core/fields.hpp"

namespace modind {

struct Factorization {
  FieldElement unit;  // leading coefficient of the input
  std::vector<std::pair<Polynomial, int>> factors;  // monic irreducible, mult

  Polynomial expand() const;
};

using Rng = std::mt19937_64;

// Factor f into monic irreducibles.  Complete over finite fields.  Over
// rational function towers it covers: constant-coefficient polynomials,
// linear factors, purely inseparable parts, and anything whose
// irreducibility a finite specialization certifies; other inputs raise
// unsupported_computation.
Factorization factor(const Polynomial& f, unsigned long long seed = 0);

bool is_irreducible(const Polynomial& f, unsigned long long seed = 0);

// roots of f inside its own coefficient field
std::vector<FieldElement> roots_in_field(const Polynomial& f,
                                         unsigned long long seed = 0);

// The minimal tower extension over which f splits into linear factors,
// together with the roots (with multiplicity) read in that extension.
struct SplittingData {
  FieldPtr field;
  std::vector<std::pair<FieldElement, int>> roots;
};
SplittingData splitting_extension(const Polynomial& f,
                                  unsigned long long seed = 0,
                                  const std::string& var_hint = "");

// Orbit of a under the automorphisms of its field fixing `base`.
std::vector<FieldElement> galois_orbit(const FieldElement& a,
                                       const FieldPtr& base);

// deterministic smallest monic irreducible of the given degree (finite base)
Polynomial find_irreducible(const FieldPtr& field, std::size_t degree);

}  // namespace modind
