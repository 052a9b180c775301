#include "core/fixtures.hpp"

namespace modind::fixtures {

namespace {

Vec vec_of(const FieldPtr& f, std::vector<long long> cs) {
  Vec v;
  v.reserve(cs.size());
  for (auto c : cs) v.push_back(f->from_int(c));
  return v;
}

}  // namespace

LiePtr xy_algebra(const FieldPtr& f) {
  return LieAlgebra::create(
      f, {"x", "y"}, {{0, 1, vec_of(f, {0, 1})}},
      std::vector<Vec>{vec_of(f, {1, 0}), vec_of(f, {0, 0})});
}

SubalgebraSpec span_x(const LiePtr& l) {
  return SubalgebraSpec{l, {vec_of(l->field(), {1, 0})}, {"x"}};
}

SubalgebraSpec span_y(const LiePtr& l) {
  return SubalgebraSpec{l, {vec_of(l->field(), {0, 1})}, {"y"}};
}

Representation w_rotation(const SubalgebraAsAlgebra& s) {
  const FieldPtr f = s.algebra->field();
  Representation w;
  w.algebra = s.algebra;
  w.dim = 2;
  w.field = f;
  Matrix x(f, 2, 2);
  x.set(1, 0, f->one());       // x b1 = b2
  x.set(0, 1, f->from_int(-1));  // x b2 = -b1
  w.action.push_back(std::move(x));
  w.labels = {"b1", "b2"};
  return w;
}

Representation v_module(const LiePtr& l, const FieldElement& alpha,
                        const FieldElement& beta) {
  const FieldPtr f = l->field();
  Representation v;
  v.algebra = l;
  v.dim = 6;
  v.field = f;
  // index (r, j) -> 2r + j, j in {0,1} for (v_1, v_2)
  Matrix x(f, 6, 6), y(f, 6, 6);
  auto idx = [](int r, int j) { return static_cast<std::size_t>(2 * r + j); };
  // x v_1^0 = v_2^0 ; x v_2^0 = -v_1^0
  x.set(idx(0, 1), idx(0, 0), f->one());
  x.set(idx(0, 0), idx(0, 1), f->from_int(-1));
  // x v_1^1 = v_1^1 + v_2^1 ; x v_2^1 = v_2^1 - v_1^1
  x.set(idx(1, 0), idx(1, 0), f->one());
  x.set(idx(1, 1), idx(1, 0), f->one());
  x.set(idx(1, 1), idx(1, 1), f->one());
  x.set(idx(1, 0), idx(1, 1), f->from_int(-1));
  // x v_1^2 = -v_1^2 + v_2^2 ; x v_2^2 = -v_2^2 - v_1^2
  x.set(idx(2, 0), idx(2, 0), f->from_int(-1));
  x.set(idx(2, 1), idx(2, 0), f->one());
  x.set(idx(2, 1), idx(2, 1), f->from_int(-1));
  x.set(idx(2, 0), idx(2, 1), f->from_int(-1));
  // y v_j^r = v_j^{r+1} for r = 0, 1
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < 2; ++j) y.set(idx(r + 1, j), idx(r, j), f->one());
  // y v_1^2 = alpha v_1^0 + beta v_2^0 ; y v_2^2 = -beta v_1^0 + alpha v_2^0
  y.set(idx(0, 0), idx(2, 0), alpha);
  y.set(idx(0, 1), idx(2, 0), beta);
  y.set(idx(0, 0), idx(2, 1), -beta);
  y.set(idx(0, 1), idx(2, 1), alpha);
  v.action.push_back(std::move(x));
  v.action.push_back(std::move(y));
  v.labels = {"v_1^0", "v_2^0", "v_1^1", "v_2^1", "v_1^2", "v_2^2"};
  return v;
}

Polynomial f_y_poly(const FieldPtr& f, const FieldElement& alpha,
                    const FieldElement& beta) {
  return Polynomial::from_coeffs(
      f, {alpha * alpha + beta * beta, alpha, f->one()});
}

Polynomial f_x_poly(const FieldPtr& f) {
  return Polynomial::from_ints(f, {1, 0, 1});
}

Representation w_line(const SubalgebraAsAlgebra& s) {
  const FieldPtr f = s.algebra->field();
  Representation w;
  w.algebra = s.algebra;
  w.dim = 1;
  w.field = f;
  Matrix y(f, 1, 1);
  y.set(0, 0, f->one());
  w.action.push_back(std::move(y));
  w.labels = {"w"};
  return w;
}

LiePtr xab_algebra(const FieldPtr& f, const FieldElement& lambda) {
  std::vector<LieAlgebra::BracketEntry> br;
  br.push_back({0, 1, vec_of(f, {0, 1, 0})});
  Vec lb = zero_vec(f, 3);
  lb[2] = lambda;
  br.push_back({0, 2, lb});
  return LieAlgebra::create(f, {"x", "a", "b"}, br, std::nullopt);
}

Representation hk_module(const LiePtr& l, const FieldElement& lambda) {
  const FieldPtr f = l->field();
  const long p = f->characteristic();
  const std::size_t n = static_cast<std::size_t>(p);
  Representation v;
  v.algebra = l;
  v.dim = n * n;
  v.field = f;
  auto idx = [&](long i, long j) {
    return static_cast<std::size_t>((i % p) * p + (j % p));
  };
  Matrix x(f, v.dim, v.dim), a(f, v.dim, v.dim), b(f, v.dim, v.dim);
  for (long i = 0; i < p; ++i)
    for (long j = 0; j < p; ++j) {
      // x (h_i k_j) = (i + lambda j)(h_i k_j)
      x.set(idx(i, j), idx(i, j), f->from_int(i) + lambda * f->from_int(j));
      // a (h_i k_j) = h_{i+1} k_j ; b (h_i k_j) = h_i k_{j+1}
      a.set(idx(i + 1, j), idx(i, j), f->one());
      b.set(idx(i, j + 1), idx(i, j), f->one());
      v.labels.push_back("h" + std::to_string(i) + "k" + std::to_string(j));
    }
  v.action = {std::move(x), std::move(a), std::move(b)};
  return v;
}

Matrix hk_d_action(const FieldPtr& f, const FieldElement& mu,
                   const FieldElement& nu) {
  const long p = f->characteristic();
  const std::size_t n = static_cast<std::size_t>(p * p);
  Matrix d(f, n, n);
  for (long i = 0; i < p; ++i)
    for (long j = 0; j < p; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * p + j);
      d.set(k, k, mu + nu + f->from_int(j));
    }
  return d;
}

}  // namespace modind::fixtures
