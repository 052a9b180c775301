// Restricted Lie algebras given by structure constants and a p-map table,
// subalgebras, Jacobson p-th powers of arbitrary elements, and p-closures.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace modind {

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  std::string str() const;
};

class LieAlgebra;
using LiePtr = std::shared_ptr<const LieAlgebra>;

class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
public:
  struct BracketEntry {
    std::size_t i, j;  // i < j
    Vec value;         // coordinates of [e_i, e_j]
  };

  // The bracket table is completed by antisymmetry from the given entries.
  // An absent p-map marks a non-restrictable (or not-yet-restricted) algebra.
  static LiePtr create(FieldPtr field, std::vector<std::string> names,
                       const std::vector<BracketEntry>& brackets,
                       std::optional<std::vector<Vec>> pmap);

  std::size_t dim() const { return names_.size(); }
  const FieldPtr& field() const { return field_; }
  long p() const { return field_->characteristic(); }
  const std::vector<std::string>& names() const { return names_; }
  const Vec& bracket_basis(std::size_t i, std::size_t j) const {
    return table_[i][j];
  }
  bool has_pmap() const { return pmap_.has_value(); }
  const Vec& pmap_basis(std::size_t i) const;

  Vec bracket(const Vec& u, const Vec& v) const;
  Matrix ad(const Vec& u) const;
  Matrix ad_basis(std::size_t i) const;
  // x^{[p]} for arbitrary x, via Jacobson's summands
  Vec jacobson_p_power(const Vec& u) const;

  // antisymmetry, Jacobi, and ad(e_i^{[p]}) = ad(e_i)^p when a p-map is set
  ValidationReport validate() const;

  // center = kernel of u -> ad(u)
  std::vector<Vec> center() const;

  // same algebra on the basis given by the columns of new_basis_cols
  LiePtr transform_basis(const Matrix& new_basis_cols,
                         std::vector<std::string> new_names) const;

private:
  LieAlgebra() = default;
  FieldPtr field_;
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> table_;
  std::optional<std::vector<Vec>> pmap_;
};

struct SubalgebraSpec {
  LiePtr parent;
  std::vector<Vec> basis;  // coordinate vectors in the parent
  std::vector<std::string> names;
};

ValidationReport validate_subalgebra(const SubalgebraSpec& s,
                                     bool require_p_closed);

// S carried as a Lie algebra in its own right, with coordinate transport
struct SubalgebraAsAlgebra {
  LiePtr algebra;
  SubalgebraSpec spec;
  Matrix basis_cols;  // parent_dim x sub_dim

  Vec to_parent(const Vec& sub_coords) const;
  Vec to_sub(const Vec& parent_coords) const;  // throws if outside the span
};
SubalgebraAsAlgebra subalgebra_as_algebra(const SubalgebraSpec& s);

// Smallest subspace containing the generators that is closed under
// commutators and p-th matrix powers.  The input span must already be
// bracket-closed; the original generators stay at the front when
// independent.
std::vector<Matrix> p_closure_in_matrices(const std::vector<Matrix>& gens);

// s_{origin}^{[p]^k} inside the parent algebra
struct TowerGenerator {
  std::size_t origin;
  long k;
  Vec vec;
};

struct PClosure {
  SubalgebraSpec closed;
  // spans `closed` together with nothing else: k = 0 rows are S's own basis
  std::vector<TowerGenerator> tower;
};
PClosure p_closure_of_subalgebra(const SubalgebraSpec& s);

}  // namespace modind
