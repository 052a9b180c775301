// PBW normal ordering for U(L) and the f-reduced enveloping algebra u(L,f):
// straightening of words, reduction by the relations f_i(z_i) = 0, and
// multiplication.  Multi-indices follow the algebra's basis order, which for
// induced modules is the adapted order (complement first, subalgebra last).
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "core/liealg.hpp"

namespace modind {

using MultiIndex = std::vector<unsigned>;
using Word = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& a);
Word word_of(const MultiIndex& a);

class PBWElement {
public:
  PBWElement() = default;
  PBWElement(FieldPtr field, std::size_t n);
  static PBWElement monomial(FieldPtr field, MultiIndex a, FieldElement c);
  static PBWElement one(FieldPtr field, std::size_t n);
  static PBWElement generator(FieldPtr field, std::size_t n, std::size_t i);

  const FieldPtr& field() const { return field_; }
  std::size_t vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, FieldElement>& terms() const { return terms_; }
  FieldElement coeff(const MultiIndex& a) const;

  void add_term(const MultiIndex& a, const FieldElement& c);
  PBWElement operator+(const PBWElement& o) const;
  PBWElement operator-(const PBWElement& o) const;
  PBWElement scale(const FieldElement& c) const;
  bool operator==(const PBWElement& o) const;
  bool operator!=(const PBWElement& o) const { return !(*this == o); }

  unsigned max_total_degree() const;
  std::string str(const std::vector<std::string>& names) const;

private:
  FieldPtr field_;
  std::size_t n_ = 0;
  std::map<MultiIndex, FieldElement> terms_;
};

struct FFamily {
  std::vector<Polynomial> polys;  // one monic polynomial per basis index

  std::size_t degree(std::size_t i) const { return *polys[i].degree(); }
};

// straightening in U(L) (no exponent bounds)
PBWElement normal_form(const LieAlgebra& l, const Word& word,
                       const FieldElement& coeff);
// test hook: rewrite positions chosen at random; must agree with normal_form
PBWElement normal_form_randomized(const LieAlgebra& l, const Word& word,
                                  const FieldElement& coeff,
                                  std::mt19937_64& rng);
PBWElement u_multiply(const LieAlgebra& l, const PBWElement& a,
                      const PBWElement& b);

class ReducedAlgebra : public std::enable_shared_from_this<ReducedAlgebra> {
public:
  // Verifies at build time: bounds, the degree drop of every cached
  // relation, centrality of the z_i, and f_i(z_i) = 0.
  static std::shared_ptr<const ReducedAlgebra> build(LiePtr l, FFamily f);

  const LiePtr& algebra() const { return l_; }
  const FFamily& f_family() const { return f_; }
  unsigned bound(std::size_t i) const { return bounds_[i]; }
  const std::vector<unsigned>& bounds() const { return bounds_; }
  unsigned long long dimension() const;
  // right-hand side of e_i^{p d_i} = rhs_i in u(L,f)
  const PBWElement& overflow_rhs(std::size_t i) const { return rhs_[i]; }
  // image of z_i = e_i^p - e_i^{[p]} in u(L,f)
  PBWElement z_image(std::size_t i) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  PBWElement reduce(const PBWElement& a) const;
  PBWElement reduce_word(const Word& w, const FieldElement& coeff) const;
  PBWElement multiply(const PBWElement& a, const PBWElement& b) const;
  PBWElement power(const PBWElement& a, unsigned long long k) const;

  std::vector<MultiIndex> basis() const;
  std::size_t index_of(const MultiIndex& a) const;
  Vec coords(const PBWElement& a) const;

private:
  ReducedAlgebra() = default;
  LiePtr l_;
  FFamily f_;
  std::vector<unsigned> bounds_;
  std::vector<PBWElement> rhs_;
  std::vector<std::string> warnings_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<MultiIndex, MultiIndex>, PBWElement> cache_;
};

using ReducedPtr = std::shared_ptr<const ReducedAlgebra>;

// the natural epimorphism u(L,f) -> u(L,f*) for componentwise divisors f*|f
struct DivisorEpi {
  ReducedPtr source, target;
  Matrix matrix;  // dim(target) x dim(source), PBW basis to PBW basis
};
DivisorEpi divisor_quotient(const ReducedPtr& source, FFamily fstar);

}  // namespace modind
