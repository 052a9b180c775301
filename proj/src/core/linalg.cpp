#include "core/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace modind {

Vec zero_vec(const FieldPtr& f, std::size_t n) {
  return Vec(n, f->zero());
}

Vec unit_vec(const FieldPtr& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = f->one();
  return v;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

Vec scale(const Vec& a, const FieldElement& c) {
  Vec r = a;
  for (auto& x : r) x = x * c;
  return r;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool eq_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Vec embed_vec(const Vec& v, const FieldPtr& target) {
  Vec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(Field::embed(x, target));
  return r;
}

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, f_->zero()) {}

Matrix Matrix::identity(const FieldPtr& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, f->one());
  return m;
}

Matrix Matrix::from_rows(const FieldPtr& f, const std::vector<Vec>& rows,
                         std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw invariant_violation("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_cols(const FieldPtr& f, const std::vector<Vec>& cols,
                         std::size_t rows) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw invariant_violation("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec v;
  v.reserve(c_);
  for (std::size_t j = 0; j < c_; ++j) v.push_back(at(i, j));
  return v;
}

Vec Matrix::col(std::size_t j) const {
  Vec v;
  v.reserve(r_);
  for (std::size_t i = 0; i < r_; ++i) v.push_back(at(i, j));
  return v;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = m.a_[k] + o.a_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = m.a_[k] - o.a_[k];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw invariant_violation("matrix product shape mismatch");
  Matrix m(f_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const FieldElement& x = at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        m.set(i, j, m.at(i, j) + x * o.at(k, j));
    }
  return m;
}

Matrix Matrix::scale(const FieldElement& c) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x * c;
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != c_) throw invariant_violation("matrix apply shape mismatch");
  Vec r = zero_vec(f_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

Matrix Matrix::pow(unsigned long long k) const {
  Matrix acc = identity(f_, r_);
  Matrix base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Matrix Matrix::transpose() const {
  Matrix m(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m.set(j, i, at(i, j));
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<FieldElement> Matrix::as_scalar() const {
  if (r_ != c_ || r_ == 0) return std::nullopt;
  const FieldElement d = at(0, 0);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      if (i == j && at(i, j) != d) return std::nullopt;
      if (i != j && !at(i, j).is_zero()) return std::nullopt;
    }
  return d;
}

Matrix Matrix::map_entries(const FieldPtr& target) const {
  Matrix m(target, r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      m.set(i, j, Field::embed(at(i, j), target));
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < r_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < c_; ++j) {
      if (j) os << ", ";
      os << at(i, j).str();
    }
    os << "]\n";
  }
  return os.str();
}

namespace {

long inv_mod(long a, long p) {
  long t0 = 0, t1 = 1, r0 = p, r1 = a % p;
  while (r1 != 0) {
    const long q = r0 / r1;
    long t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
    long r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
  }
  return ((t0 % p) + p) % p;
}

// elimination on machine integers for prime fields
Echelon echelon_prime(const Matrix& m) {
  const FieldPtr F = m.field();
  const long p = F->characteristic();
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<long> a(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a[i * c + j] = m.at(i, j).prime_rep();
  Echelon e;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < c && lead < r; ++col) {
    std::size_t piv = lead;
    while (piv < r && a[piv * c + col] == 0) ++piv;
    if (piv == r) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < c; ++j)
        std::swap(a[piv * c + j], a[lead * c + j]);
    const long pi = inv_mod(a[lead * c + col], p);
    for (std::size_t j = col; j < c; ++j)
      a[lead * c + j] = (a[lead * c + j] * pi) % p;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == lead) continue;
      const long f = a[i * c + col];
      if (f == 0) continue;
      for (std::size_t j = col; j < c; ++j) {
        long v = (a[i * c + j] - f * a[lead * c + j]) % p;
        a[i * c + j] = v < 0 ? v + p : v;
      }
    }
    e.pivots.push_back(col);
    ++lead;
  }
  e.rank = e.pivots.size();
  e.rref = Matrix(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      e.rref.set(i, j, F->from_int(a[i * c + j]));
  return e;
}

}  // namespace

Echelon echelon(const Matrix& m) {
  if (m.field()->kind() == Field::Kind::Prime) return echelon_prime(m);
  Echelon e;
  e.rref = m;
  Matrix& a = e.rref;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
    std::size_t piv = lead;
    while (piv < a.rows() && a.at(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        FieldElement tmp = a.at(piv, j);
        a.set(piv, j, a.at(lead, j));
        a.set(lead, j, tmp);
      }
    const FieldElement pinv = a.at(lead, col).inv();
    for (std::size_t j = col; j < a.cols(); ++j)
      a.set(lead, j, a.at(lead, j) * pinv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == lead || a.at(i, col).is_zero()) continue;
      const FieldElement c = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a.set(i, j, a.at(i, j) - c * a.at(lead, j));
    }
    e.pivots.push_back(col);
    ++lead;
  }
  e.rank = e.pivots.size();
  return e;
}

std::vector<Vec> nullspace(const Matrix& m) {
  Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[free] = m.field()->one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      v[e.pivots[r]] = -e.rref.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  // eliminate on the augmented matrix
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, a.cols(), b[i]);
  }
  Echelon e = echelon(aug);
  Vec x = zero_vec(a.field(), a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;  // inconsistent
    x[e.pivots[r]] = e.rref.at(r, a.cols());
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw invariant_violation("inverse of non-square");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, n + i, m.field()->one());
  }
  Echelon e = echelon(aug);
  for (std::size_t i = 0; i < n; ++i)
    if (i >= e.pivots.size() || e.pivots[i] != i)
      throw math_error("matrix is singular");
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, e.rref.at(i, n + j));
  return inv;
}

std::size_t rank(const Matrix& m) { return echelon(m).rank; }

SpanBasis::SpanBasis(FieldPtr f, std::size_t dim)
    : f_(std::move(f)), dim_(dim) {}

Vec SpanBasis::reduce(Vec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const FieldElement& c = v[pivots_[k]];
    if (!c.is_zero()) v = sub(v, modind::scale(rows_[k], c));
  }
  return v;
}

bool SpanBasis::add(Vec v) {
  if (v.size() != dim_) throw invariant_violation("span vector length mismatch");
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  v = modind::scale(v, v[p].inv());
  // back-substitute into existing rows to keep reduced form
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const FieldElement& c = rows_[k][p];
    if (!c.is_zero()) rows_[k] = sub(rows_[k], modind::scale(v, c));
  }
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, p);
  return true;
}

bool SpanBasis::contains(const Vec& v) const {
  return is_zero_vec(reduce(v));
}

bool subspace_equal(const FieldPtr& f, std::size_t dim,
                    const std::vector<Vec>& a, const std::vector<Vec>& b) {
  SpanBasis sa(f, dim), sb(f, dim);
  for (const auto& v : a) sa.add(v);
  for (const auto& v : b) sb.add(v);
  if (sa.size() != sb.size()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

bool subspace_contains(const FieldPtr& f, std::size_t dim,
                       const std::vector<Vec>& space, const Vec& v) {
  SpanBasis s(f, dim);
  for (const auto& w : space) s.add(w);
  return s.contains(v);
}

Polynomial minimal_polynomial(const Matrix& a) {
  if (a.rows() != a.cols())
    throw invariant_violation("minimal polynomial of non-square matrix");
  const FieldPtr F = a.field();
  const std::size_t n = a.rows();
  // rows: vectorized powers of a, with bookkeeping of the combination
  std::vector<Vec> ech;            // echelonized vectorizations
  std::vector<std::size_t> pivots;
  std::vector<Vec> combos;         // combos[k][i] = coeff of a^i
  Matrix pw = Matrix::identity(F, n);
  for (std::size_t deg = 0; deg <= n * n + 1; ++deg) {
    Vec flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.push_back(pw.at(i, j));
    Vec combo = zero_vec(F, deg + 1);
    combo[deg] = F->one();
    // reduce against existing rows
    for (std::size_t k = 0; k < ech.size(); ++k) {
      const FieldElement c = flat[pivots[k]];
      if (c.is_zero()) continue;
      flat = sub(flat, scale(ech[k], c));
      Vec cc = combos[k];
      cc.resize(deg + 1, F->zero());
      combo = sub(combo, scale(cc, c));
    }
    std::size_t p = 0;
    while (p < flat.size() && flat[p].is_zero()) ++p;
    if (p == flat.size()) {
      // dependency found: combo gives the minimal polynomial
      return Polynomial::from_coeffs(F, std::move(combo)).monic();
    }
    const FieldElement pinv = flat[p].inv();
    ech.push_back(scale(flat, pinv));
    combos.push_back(scale(combo, pinv));
    pivots.push_back(p);
    pw = pw * a;
  }
  throw invariant_violation("minimal polynomial search did not terminate");
}

Matrix apply_poly(const Polynomial& p, const Matrix& a) {
  const FieldPtr F = a.field();
  Matrix acc(F, a.rows(), a.rows());
  Matrix pw = Matrix::identity(F, a.rows());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const FieldElement c = p.coeff(i);
    if (!c.is_zero()) acc = acc + pw.scale(c);
    if (i + 1 < p.size()) pw = pw * a;
  }
  return acc;
}

}  // namespace modind
