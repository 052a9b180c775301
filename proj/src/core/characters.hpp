// The p-semilinear maps phi_x = rho(x)^p - rho(x^{[p]}), characters and
// their extraction by p-th roots, Galois-stable clusters, the cluster
// decomposition over the base field, and the projection onto a cluster
// component.
#pragma once

#include "core/modules.hpp"

namespace modind {

struct Character {
  FieldPtr tower;                    // field the values are read in
  std::vector<FieldElement> values;  // c(e_i) per algebra basis index

  std::string str(const std::vector<std::string>& names) const;
};

bool same_character(const Character& a, const Character& b);
// the conjugate under the generating automorphism over `base`
Character conjugate_character(const Character& c, const FieldPtr& base);

struct Cluster {
  std::vector<Character> chars;

  bool contains(const Character& c) const;
  bool subset_of(const Cluster& o) const;
  std::size_t size() const { return chars.size(); }
};

// one commuting operator per basis element
std::vector<Matrix> phi(const Representation& v);

// randomized verification that u -> rho(u)^p - rho(u^{[p]}) is additive and
// p-semilinear in scalars
ValidationReport check_p_semilinear(const Representation& v, int trials,
                                    unsigned long long seed = 0);

// the character when every phi_i is scalar; extraction may grow the tower
std::optional<Character> has_character(const Representation& v);

// all characters of composition factors over the splitting extension
Cluster cluster_of(const Representation& v, unsigned long long seed = 0);

struct ClusterComponent {
  Cluster cluster;         // one Galois orbit of characters
  std::vector<Vec> basis;  // component basis over the base field
};

// V as the direct sum of base-field-rational components, one per Galois
// orbit of characters
std::vector<ClusterComponent> cluster_decompose(const Representation& v,
                                                unsigned long long seed = 0);

// the sum of the components whose orbits lie inside c
std::vector<Vec> cluster_project(const Representation& v, const Cluster& c,
                                 unsigned long long seed = 0);

}  // namespace modind
