#include "core/uea.hpp"

#include <algorithm>
#include <sstream>

namespace modind {

unsigned total_degree(const MultiIndex& a) {
  unsigned d = 0;
  for (unsigned e : a) d += e;
  return d;
}

Word word_of(const MultiIndex& a) {
  Word w;
  for (unsigned i = 0; i < a.size(); ++i)
    for (unsigned k = 0; k < a[i]; ++k) w.push_back(i);
  return w;
}

PBWElement::PBWElement(FieldPtr field, std::size_t n)
    : field_(std::move(field)), n_(n) {}

PBWElement PBWElement::monomial(FieldPtr field, MultiIndex a, FieldElement c) {
  PBWElement e(std::move(field), a.size());
  e.add_term(a, c);
  return e;
}

PBWElement PBWElement::one(FieldPtr field, std::size_t n) {
  return monomial(std::move(field), MultiIndex(n, 0), field->one());
}

PBWElement PBWElement::generator(FieldPtr field, std::size_t n, std::size_t i) {
  MultiIndex a(n, 0);
  a[i] = 1;
  return monomial(std::move(field), std::move(a), field->one());
}

FieldElement PBWElement::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? field_->zero() : it->second;
}

void PBWElement::add_term(const MultiIndex& a, const FieldElement& c) {
  if (a.size() != n_) throw invariant_violation("multi-index arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

PBWElement PBWElement::operator+(const PBWElement& o) const {
  PBWElement r = *this;
  for (const auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

PBWElement PBWElement::operator-(const PBWElement& o) const {
  PBWElement r = *this;
  for (const auto& [a, c] : o.terms_) r.add_term(a, -c);
  return r;
}

PBWElement PBWElement::scale(const FieldElement& c) const {
  PBWElement r(field_, n_);
  if (c.is_zero()) return r;
  for (const auto& [a, x] : terms_) r.add_term(a, x * c);
  return r;
}

bool PBWElement::operator==(const PBWElement& o) const {
  return (*this - o).is_zero();
}

unsigned PBWElement::max_total_degree() const {
  unsigned d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
  return d;
}

std::string PBWElement::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (a[i] > 1) mono += "^" + std::to_string(a[i]);
    }
    const std::string cs = c.str();
    const bool composite = cs.find_first_of("+-/ ") != std::string::npos;
    if (mono.empty()) {
      os << (composite ? "(" + cs + ")" : cs);
    } else if (c.is_one()) {
      os << mono;
    } else {
      os << (composite ? "(" + cs + ")" : cs) << "*" << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// the rewriting engine
// ---------------------------------------------------------------------------

namespace {

struct WorkItem {
  FieldElement c;
  Word w;
};

std::size_t inversions(const Word& w) {
  std::size_t inv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inv;
  return inv;
}

// Straighten (and, when r != nullptr, reduce) coeff * word into out.
// Every rewriting step strictly decreases (length, inversions); a generous
// global step cap guards against engine bugs.
void rewrite_into(const LieAlgebra& l, const ReducedAlgebra* r,
                  FieldElement coeff, Word word, PBWElement& out,
                  std::mt19937_64* shuffle) {
  const std::size_t n = l.dim();
  const FieldPtr F = l.field();
  std::vector<WorkItem> stack;
  stack.push_back({std::move(coeff), std::move(word)});
  unsigned long long steps = 0;
  constexpr unsigned long long kStepCap = 50'000'000ULL;

  while (!stack.empty()) {
    if (++steps > kStepCap)
      throw invariant_violation("rewriting step cap exceeded");
    WorkItem it = std::move(stack.back());
    stack.pop_back();
    if (it.c.is_zero()) continue;

#ifndef NDEBUG
    const std::size_t parent_len = it.w.size();
    const std::size_t parent_inv = inversions(it.w);
    auto check_child = [&](const Word& cw) {
      const std::size_t cl = cw.size();
      if (cl < parent_len) return;
      if (cl == parent_len && inversions(cw) < parent_inv) return;
      throw invariant_violation("rewriting measure failed to decrease");
    };
#endif

    // locate an adjacent out-of-order pair
    std::vector<std::size_t> positions;
    for (std::size_t t = 0; t + 1 < it.w.size(); ++t)
      if (it.w[t] > it.w[t + 1]) {
        positions.push_back(t);
        if (!shuffle) break;  // deterministic: first position
      }
    if (!positions.empty()) {
      const std::size_t t =
          shuffle ? positions[(*shuffle)() % positions.size()] : positions[0];
      // e_j e_i = e_i e_j + [e_j, e_i]
      Word swapped = it.w;
      std::swap(swapped[t], swapped[t + 1]);
#ifndef NDEBUG
      check_child(swapped);
#endif
      const Vec& br = l.bracket_basis(it.w[t], it.w[t + 1]);
      for (std::size_t k = 0; k < n; ++k) {
        if (br[k].is_zero()) continue;
        Word shorter;
        shorter.reserve(it.w.size() - 1);
        shorter.insert(shorter.end(), it.w.begin(), it.w.begin() + t);
        shorter.push_back(static_cast<unsigned>(k));
        shorter.insert(shorter.end(), it.w.begin() + t + 2, it.w.end());
#ifndef NDEBUG
        check_child(shorter);
#endif
        stack.push_back({it.c * br[k], std::move(shorter)});
      }
      stack.push_back({it.c, std::move(swapped)});
      continue;
    }

    // sorted word: check exponent bounds
    MultiIndex a(n, 0);
    for (unsigned g : it.w) ++a[g];
    if (r) {
      std::size_t over = n;
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] >= r->bound(i)) {
          over = i;
          break;
        }
      if (over < n) {
        // e_over^{bound} -> rhs_over, spliced in place
        Word prefix, suffix;
        for (std::size_t i = 0; i < over; ++i)
          for (unsigned k = 0; k < a[i]; ++k)
            prefix.push_back(static_cast<unsigned>(i));
        for (unsigned k = 0; k < a[over] - r->bound(over); ++k)
          prefix.push_back(static_cast<unsigned>(over));
        for (std::size_t i = over + 1; i < n; ++i)
          for (unsigned k = 0; k < a[i]; ++k)
            suffix.push_back(static_cast<unsigned>(i));
        for (const auto& [g, cg] : r->overflow_rhs(over).terms()) {
          Word nw = prefix;
          Word gw = word_of(g);
          nw.insert(nw.end(), gw.begin(), gw.end());
          nw.insert(nw.end(), suffix.begin(), suffix.end());
#ifndef NDEBUG
          check_child(nw);
#endif
          stack.push_back({it.c * cg, std::move(nw)});
        }
        continue;
      }
    }
    out.add_term(a, it.c);
  }
}

}  // namespace

PBWElement normal_form(const LieAlgebra& l, const Word& word,
                       const FieldElement& coeff) {
  PBWElement out(l.field(), l.dim());
  rewrite_into(l, nullptr, coeff, word, out, nullptr);
  return out;
}

PBWElement normal_form_randomized(const LieAlgebra& l, const Word& word,
                                  const FieldElement& coeff,
                                  std::mt19937_64& rng) {
  PBWElement out(l.field(), l.dim());
  rewrite_into(l, nullptr, coeff, word, out, &rng);
  return out;
}

PBWElement u_multiply(const LieAlgebra& l, const PBWElement& a,
                      const PBWElement& b) {
  PBWElement out(l.field(), l.dim());
  for (const auto& [am, ac] : a.terms())
    for (const auto& [bm, bc] : b.terms()) {
      Word w = word_of(am);
      Word wb = word_of(bm);
      w.insert(w.end(), wb.begin(), wb.end());
      rewrite_into(l, nullptr, ac * bc, std::move(w), out, nullptr);
    }
  return out;
}

// ---------------------------------------------------------------------------
// ReducedAlgebra
// ---------------------------------------------------------------------------

std::shared_ptr<const ReducedAlgebra> ReducedAlgebra::build(LiePtr l,
                                                            FFamily f) {
  if (!l->has_pmap())
    throw math_error("reduced enveloping algebra needs a restricted algebra");
  const std::size_t n = l->dim();
  const FieldPtr F = l->field();
  const long p = l->p();
  if (f.polys.size() != n)
    throw math_error("f-family must have one polynomial per basis element");

  auto r = std::shared_ptr<ReducedAlgebra>(new ReducedAlgebra());
  r->l_ = l;

  for (std::size_t i = 0; i < n; ++i) {
    Polynomial& fi = f.polys[i];
    if (fi.is_zero() || *fi.degree() < 1)
      throw math_error("f_" + l->names()[i] + " must have degree >= 1");
    if (!fi.field()->equals(*F))
      fi = fi.map_coeffs(F,
                         [&](const FieldElement& c) { return Field::embed(c, F); });
    if (!fi.is_monic()) {
      r->warnings_.push_back("f_" + l->names()[i] +
                             " was not monic; rescaled (the ideal is unchanged)");
      fi = fi.monic();
    }
    r->bounds_.push_back(static_cast<unsigned>(p * *fi.degree()));
  }
  r->f_ = std::move(f);

  // cached relations: e_i^{p d_i} = e_i^{p d_i} - f_i(z_i) in u(L,f)
  std::vector<PBWElement> z_raw;  // unreduced z_i, for the consistency checks
  for (std::size_t i = 0; i < n; ++i) {
    // z_i = e_i^p - e_i^{[p]}
    MultiIndex zp(n, 0);
    zp[i] = static_cast<unsigned>(p);
    PBWElement zi = PBWElement::monomial(F, zp, F->one());
    const Vec& pi = l->pmap_basis(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (pi[j].is_zero()) continue;
      MultiIndex m(n, 0);
      m[j] = 1;
      zi.add_term(m, -pi[j]);
    }
    z_raw.push_back(zi);
    const Polynomial& fi = r->f_.polys[i];
    PBWElement acc = PBWElement::one(F, n).scale(fi.coeff(0));
    PBWElement zpow = PBWElement::one(F, n);
    for (std::size_t k = 1; k < fi.size(); ++k) {
      zpow = u_multiply(*l, zpow, zi);
      acc = acc + zpow.scale(fi.coeff(k));
    }
    MultiIndex top(n, 0);
    top[i] = r->bounds_[i];
    if (!acc.coeff(top).is_one())
      throw invariant_violation("f_i(z_i) lacks the expected top term");
    PBWElement rhs = PBWElement::monomial(F, top, F->one()) - acc;
    if (rhs.max_total_degree() >= r->bounds_[i])
      throw invariant_violation("relation degree bound violated at index " +
                                std::to_string(i));
    r->rhs_.push_back(std::move(rhs));
  }

  // sanity on the total dimension
  (void)r->dimension();

  // build-time invariant checks on the unreduced z_i, so an inconsistent
  // rewriting system (e.g. from an invalid p-map) cannot slip through by
  // collapsing them first
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PBWElement ej = PBWElement::generator(F, n, j);
      if (r->multiply(z_raw[i], ej) != r->multiply(ej, z_raw[i]))
        throw invariant_violation("z_" + l->names()[i] +
                                  " is not central in u(L,f)");
    }
    const Polynomial& fi = r->f_.polys[i];
    PBWElement acc = PBWElement::one(F, n).scale(fi.coeff(0));
    PBWElement zpow = PBWElement::one(F, n);
    for (std::size_t k = 1; k < fi.size(); ++k) {
      zpow = r->multiply(zpow, z_raw[i]);
      acc = acc + zpow.scale(fi.coeff(k));
    }
    if (!acc.is_zero())
      throw invariant_violation("f_i(z_i) does not reduce to zero at index " +
                                std::to_string(i));
  }
  return r;
}

unsigned long long ReducedAlgebra::dimension() const {
  unsigned long long d = 1;
  for (unsigned b : bounds_) {
    if (d > (1ULL << 32))
      throw unsupported_computation("reduced algebra dimension too large");
    d *= b;
  }
  return d;
}

PBWElement ReducedAlgebra::z_image(std::size_t i) const {
  const std::size_t n = l_->dim();
  const FieldPtr F = l_->field();
  MultiIndex zp(n, 0);
  zp[i] = static_cast<unsigned>(l_->p());
  PBWElement zi = PBWElement::monomial(F, zp, F->one());
  const Vec& pi = l_->pmap_basis(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (pi[j].is_zero()) continue;
    MultiIndex m(n, 0);
    m[j] = 1;
    zi.add_term(m, -pi[j]);
  }
  return reduce(zi);
}

PBWElement ReducedAlgebra::reduce(const PBWElement& a) const {
  PBWElement out(l_->field(), l_->dim());
  for (const auto& [m, c] : a.terms())
    rewrite_into(*l_, this, c, word_of(m), out, nullptr);
  return out;
}

PBWElement ReducedAlgebra::reduce_word(const Word& w,
                                       const FieldElement& coeff) const {
  PBWElement out(l_->field(), l_->dim());
  rewrite_into(*l_, this, coeff, w, out, nullptr);
  return out;
}

PBWElement ReducedAlgebra::multiply(const PBWElement& a,
                                    const PBWElement& b) const {
  PBWElement out(l_->field(), l_->dim());
  for (const auto& [am, ac] : a.terms())
    for (const auto& [bm, bc] : b.terms()) {
      PBWElement prod;
      {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = cache_.find({am, bm});
        if (it != cache_.end()) prod = it->second;
      }
      if (prod.field() == nullptr) {
        PBWElement fresh(l_->field(), l_->dim());
        Word w = word_of(am);
        Word wb = word_of(bm);
        w.insert(w.end(), wb.begin(), wb.end());
        rewrite_into(*l_, this, l_->field()->one(), std::move(w), fresh,
                     nullptr);
        {
          std::lock_guard<std::mutex> lk(cache_mu_);
          cache_.emplace(std::make_pair(am, bm), fresh);
        }
        prod = std::move(fresh);
      }
      const FieldElement cc = ac * bc;
      for (const auto& [m, c] : prod.terms()) out.add_term(m, c * cc);
    }
  return out;
}

PBWElement ReducedAlgebra::power(const PBWElement& a,
                                 unsigned long long k) const {
  PBWElement acc = PBWElement::one(l_->field(), l_->dim());
  PBWElement base = a;
  while (k > 0) {
    if (k & 1) acc = multiply(acc, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return acc;
}

std::vector<MultiIndex> ReducedAlgebra::basis() const {
  const std::size_t n = l_->dim();
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(dimension()));
  MultiIndex a(n, 0);
  while (true) {
    out.push_back(a);
    std::size_t i = n;
    while (i-- > 0) {
      if (++a[i] < bounds_[i]) break;
      a[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::size_t ReducedAlgebra::index_of(const MultiIndex& a) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= bounds_[i])
      throw invariant_violation("multi-index outside the PBW box");
    idx = idx * bounds_[i] + a[i];
  }
  return idx;
}

Vec ReducedAlgebra::coords(const PBWElement& a) const {
  Vec v = zero_vec(l_->field(), static_cast<std::size_t>(dimension()));
  for (const auto& [m, c] : a.terms()) v[index_of(m)] = c;
  return v;
}

DivisorEpi divisor_quotient(const ReducedPtr& source, FFamily fstar) {
  const LiePtr l = source->algebra();
  const std::size_t n = l->dim();
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial fs = fstar.polys[i];
    if (!fs.field()->equals(*l->field()))
      fs = fs.map_coeffs(l->field(), [&](const FieldElement& c) {
        return Field::embed(c, l->field());
      });
    fstar.polys[i] = fs.monic();
    if (!fstar.polys[i].divides(source->f_family().polys[i]))
      throw math_error("f*_" + l->names()[i] + " does not divide f_" +
                       l->names()[i]);
  }
  DivisorEpi epi;
  epi.source = source;
  epi.target = ReducedAlgebra::build(l, std::move(fstar));
  const std::size_t sdim = static_cast<std::size_t>(source->dimension());
  const std::size_t tdim = static_cast<std::size_t>(epi.target->dimension());
  Matrix m(l->field(), tdim, sdim);
  std::size_t col = 0;
  for (const auto& a : source->basis()) {
    PBWElement img = epi.target->reduce(
        PBWElement::monomial(l->field(), a, l->field()->one()));
    Vec v = epi.target->coords(img);
    for (std::size_t i = 0; i < tdim; ++i) m.set(i, col, v[i]);
    ++col;
  }
  epi.matrix = std::move(m);
  return epi;
}

}  // namespace modind
