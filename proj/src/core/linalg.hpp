// Dense exact linear algebra over the field towers.  Deterministic
// positional pivoting throughout, so bases and echelon forms are
// reproducible.
#pragma once

#include <optional>
#include <vector>

#include "core/fields.hpp"

namespace modind {

using Vec = std::vector<FieldElement>;

Vec zero_vec(const FieldPtr& f, std::size_t n);
Vec unit_vec(const FieldPtr& f, std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const FieldElement& c);
bool is_zero_vec(const Vec& v);
bool eq_vec(const Vec& a, const Vec& b);
Vec embed_vec(const Vec& v, const FieldPtr& target);

class Matrix {
public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldPtr& f, std::size_t n);
  static Matrix from_rows(const FieldPtr& f, const std::vector<Vec>& rows,
                          std::size_t cols);
  static Matrix from_cols(const FieldPtr& f, const std::vector<Vec>& cols,
                          std::size_t rows);

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const FieldElement& at(std::size_t i, std::size_t j) const {
    return a_[i * c_ + j];
  }
  void set(std::size_t i, std::size_t j, FieldElement v) {
    a_[i * c_ + j] = std::move(v);
  }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scale(const FieldElement& c) const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  Matrix pow(unsigned long long k) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  // scalar matrix test: c * identity
  std::optional<FieldElement> as_scalar() const;
  Matrix map_entries(const FieldPtr& target) const;  // embed entrywise

  std::string str() const;

private:
  FieldPtr f_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<FieldElement> a_;
};

struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

Echelon echelon(const Matrix& m);
std::vector<Vec> nullspace(const Matrix& m);
std::optional<Vec> solve(const Matrix& a, const Vec& b);
Matrix inverse(const Matrix& m);
std::size_t rank(const Matrix& m);

// incrementally echelonized span of row vectors
class SpanBasis {
public:
  SpanBasis(FieldPtr f, std::size_t dim);
  // reduce v against the basis; if a nonzero residue remains, insert it
  // and return true
  bool add(Vec v);
  bool contains(const Vec& v) const;
  Vec reduce(Vec v) const;
  std::size_t size() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vec>& rows() const { return rows_; }

private:
  FieldPtr f_;
  std::size_t dim_;
  std::vector<Vec> rows_;            // echelonized, pivot normalized to 1
  std::vector<std::size_t> pivots_;  // ascending
};

bool subspace_equal(const FieldPtr& f, std::size_t dim,
                    const std::vector<Vec>& a, const std::vector<Vec>& b);
bool subspace_contains(const FieldPtr& f, std::size_t dim,
                       const std::vector<Vec>& space, const Vec& v);

Polynomial minimal_polynomial(const Matrix& a);
Matrix apply_poly(const Polynomial& p, const Matrix& a);

}  // namespace modind
