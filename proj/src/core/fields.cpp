#include "core/fields.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <sstream>

namespace modind {

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long mod_pos(long long v, long p) {
  long r = static_cast<long>(v % p);
  return r < 0 ? r + p : r;
}

// checked p^k with a small cap; tower exponents stay desk-scale
unsigned long long pow_checked(unsigned long long b, unsigned long long e) {
  unsigned long long r = 1;
  for (unsigned long long i = 0; i < e; ++i) {
    if (r > (1ULL << 62) / (b ? b : 1))
      throw unsupported_computation("exponent tower too large");
    r *= b;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::zero(FieldPtr f) {
  Polynomial p;
  p.field_ = std::move(f);
  return p;
}

Polynomial Polynomial::one(FieldPtr f) { return constant(f->one()); }

Polynomial Polynomial::constant(const FieldElement& c) {
  Polynomial p;
  p.field_ = c.field();
  if (!c.is_zero()) p.coeffs_.push_back(c);
  return p;
}

Polynomial Polynomial::variable(FieldPtr f) {
  return monomial(f->one(), 1);
}

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t deg) {
  Polynomial p;
  p.field_ = c.field();
  if (c.is_zero()) return p;
  p.coeffs_.assign(deg, c.field()->zero());
  p.coeffs_.push_back(c);
  return p;
}

Polynomial Polynomial::from_coeffs(FieldPtr f, std::vector<FieldElement> coeffs) {
  Polynomial p;
  p.field_ = std::move(f);
  for (auto& c : coeffs) {
    if (!c.is_set())
      throw invariant_violation("unset coefficient in polynomial");
    if (!c.field()->equals(*p.field_)) c = Field::embed(c, p.field_);
  }
  p.coeffs_ = std::move(coeffs);
  p.trim();
  return p;
}

Polynomial Polynomial::from_ints(FieldPtr f, const std::vector<long long>& cs) {
  std::vector<FieldElement> v;
  v.reserve(cs.size());
  for (long long c : cs) v.push_back(f->from_int(c));
  return from_coeffs(f, std::move(v));
}

std::optional<std::size_t> Polynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

FieldElement Polynomial::coeff(std::size_t i) const {
  if (i < coeffs_.size()) return coeffs_[i];
  return field_->zero();
}

FieldElement Polynomial::leading() const {
  if (coeffs_.empty())
    throw invariant_violation("leading coefficient of zero polynomial");
  return coeffs_.back();
}

bool Polynomial::is_monic() const {
  return !coeffs_.empty() && coeffs_.back().is_one();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  r.field_ = field_;
  const std::size_t n = std::max(coeffs_.size(), o.coeffs_.size());
  r.coeffs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.coeffs_.push_back(coeff(i) + o.coeff(i));
  r.trim();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  r.field_ = field_;
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  r.field_ = field_;
  if (is_zero() || o.is_zero()) return r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
  }
  r.trim();
  return r;
}

Polynomial Polynomial::scale(const FieldElement& c) const {
  if (c.is_zero()) return zero(field_);
  Polynomial r;
  r.field_ = field_;
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& a : coeffs_) r.coeffs_.push_back(a * c);
  r.trim();
  return r;
}

Polynomial Polynomial::shift(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  Polynomial r;
  r.field_ = field_;
  r.coeffs_.assign(k, field_->zero());
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q,
                        Polynomial& r) {
  if (b.is_zero()) throw division_by_zero();
  q = zero(a.field_);
  r = a;
  const auto db = *b.degree();
  const FieldElement lc_inv = b.leading().inv();
  while (!r.is_zero() && *r.degree() >= db) {
    const std::size_t k = *r.degree() - db;
    const FieldElement c = r.leading() * lc_inv;
    q = q + monomial(c, k);
    r = r - b.scale(c).shift(k);
  }
}

Polynomial Polynomial::operator/(const Polynomial& b) const {
  Polynomial q, r;
  divmod(*this, b, q, r);
  return q;
}

Polynomial Polynomial::operator%(const Polynomial& b) const {
  Polynomial q, r;
  divmod(*this, b, q, r);
  return r;
}

bool Polynomial::divides(const Polynomial& other) const {
  if (is_zero()) return other.is_zero();
  return (other % *this).is_zero();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scale(leading().inv());
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial Polynomial::ext_gcd(const Polynomial& a, const Polynomial& b,
                               Polynomial& s, Polynomial& t) {
  FieldPtr f = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = one(f), s1 = zero(f);
  Polynomial t0 = zero(f), t1 = one(f);
  while (!r1.is_zero()) {
    Polynomial q, rem;
    divmod(r0, r1, q, rem);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    const FieldElement c = r0.leading().inv();
    r0 = r0.scale(c);
    s0 = s0.scale(c);
    t0 = t0.scale(c);
  }
  s = std::move(s0);
  t = std::move(t0);
  return r0;
}

Polynomial Polynomial::derivative() const {
  Polynomial r;
  r.field_ = field_;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_.push_back(coeffs_[i] * field_->from_int(static_cast<long long>(i)));
  r.trim();
  return r;
}

FieldElement Polynomial::eval(const FieldElement& x) const {
  FieldElement acc = field_->zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::pow_mod(unsigned long long e, const Polynomial& mod) const {
  Polynomial base = *this % mod;
  Polynomial acc = one(field_);
  while (e > 0) {
    if (e & 1) acc = (acc * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return acc;
}

Polynomial Polynomial::pow(unsigned long long e) const {
  Polynomial base = *this;
  Polynomial acc = one(field_);
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Polynomial Polynomial::compose_xk(std::size_t k) const {
  Polynomial r;
  r.field_ = field_;
  if (is_zero()) return r;
  r.coeffs_.assign((coeffs_.size() - 1) * k + 1, field_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i * k] = coeffs_[i];
  r.trim();
  return r;
}

namespace {

bool needs_parens(const std::string& s) {
  return s.find_first_of("+-/ ") != std::string::npos;
}

std::string format_poly(const Polynomial& p,
                        const std::function<std::string(std::size_t)>& power_name) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    const FieldElement c = p.coeff(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.str();
    if (i == 0) {
      out += needs_parens(cs) ? "(" + cs + ")" : cs;
      continue;
    }
    if (c.is_one()) {
      out += power_name(i);
    } else {
      out += (needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + power_name(i);
    }
  }
  return out;
}

}  // namespace

std::string Polynomial::str(const std::string& var) const {
  return format_poly(*this, [&](std::size_t j) {
    return j == 1 ? var : var + "^" + std::to_string(j);
  });
}

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

// Rabin irreducibility test over a finite field; assumes q = |F| fits u64.
bool rabin_irreducible(const Polynomial& f) {
  const FieldPtr F = f.field();
  const auto qopt = F->size();
  if (!qopt) throw unsupported_computation("irreducibility over infinite base");
  const unsigned long long q = *qopt;
  const std::size_t n = *f.degree();
  if (n == 0) return false;
  if (n == 1) return true;
  const Polynomial t = Polynomial::variable(F);
  // t^{q^n} == t mod f
  Polynomial tq = t;
  for (std::size_t i = 0; i < n; ++i) tq = tq.pow_mod(q, f);
  if (!(tq - (t % f)).is_zero()) return false;
  // gcd(t^{q^{n/l}} - t, f) == 1 for every prime l | n
  std::vector<std::size_t> prime_divs;
  std::size_t m = n;
  for (std::size_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      prime_divs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) prime_divs.push_back(m);
  for (std::size_t l : prime_divs) {
    Polynomial g = t;
    for (std::size_t i = 0; i < n / l; ++i) g = g.pow_mod(q, f);
    if (*Polynomial::gcd(g - t, f).degree() != 0) return false;
  }
  return true;
}

FieldPtr Field::prime(long p) {
  if (!is_prime_long(p)) throw math_error("characteristic must be prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Prime;
  f->p_ = p;
  return f;
}

FieldPtr Field::extension(FieldPtr base, const Polynomial& modulus,
                          std::string var) {
  if (!base) throw math_error("extension needs a base field");
  if (base->kind() == Kind::RationalFunction ||
      base->kind() == Kind::Inseparable)
    throw unsupported_computation(
        "algebraic extensions of function fields are not supported");
  if (!modulus.is_monic() || *modulus.degree() < 1)
    throw math_error("extension modulus must be monic of degree >= 1");
  if (!modulus.field()->equals(*base))
    throw incompatible_fields("modulus is not over the base field");
  if (!rabin_irreducible(modulus))
    throw math_error("extension modulus is reducible: " + modulus.str());
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Extension;
  f->p_ = base->characteristic();
  f->base_ = std::move(base);
  f->modulus_ = modulus;
  f->var_ = std::move(var);
  return f;
}

FieldPtr Field::rational_function(FieldPtr base, std::string var) {
  if (!base) throw math_error("rational function field needs a base");
  if (!base->is_finite())
    throw unsupported_computation(
        "rational function fields over infinite bases are not supported");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::RationalFunction;
  f->p_ = base->characteristic();
  f->base_ = std::move(base);
  f->var_ = std::move(var);
  return f;
}

FieldPtr Field::inseparable_root(FieldPtr f, long levels) {
  if (!f || levels < 1) throw math_error("bad inseparable root request");
  FieldPtr root;
  long k = levels;
  if (f->kind() == Kind::RationalFunction) {
    root = f;
  } else if (f->kind() == Kind::Inseparable) {
    root = f->root_field_;
    k += f->insep_level_;
  } else {
    throw unsupported_computation(
        "p-th root towers exist only over rational function fields");
  }
  auto g = std::shared_ptr<Field>(new Field());
  g->kind_ = Kind::Inseparable;
  g->p_ = root->characteristic();
  g->base_ = root->base();
  g->root_field_ = root;
  g->insep_level_ = k;
  g->var_ = root->var() + "^(1/" +
            std::to_string(pow_checked(static_cast<unsigned long long>(g->p_),
                                       static_cast<unsigned long long>(k))) +
            ")";
  return g;
}

bool Field::is_finite() const {
  switch (kind_) {
    case Kind::Prime:
      return true;
    case Kind::Extension:
      return base_->is_finite();
    default:
      return false;
  }
}

std::optional<unsigned long long> Field::size() const {
  if (!is_finite()) return std::nullopt;
  if (kind_ == Kind::Prime) return static_cast<unsigned long long>(p_);
  const auto b = base_->size();
  return pow_checked(*b, *modulus_.degree());
}

std::optional<std::size_t> Field::degree_over_prime() const {
  if (!is_finite()) return std::nullopt;
  if (kind_ == Kind::Prime) return 1;
  return *base_->degree_over_prime() * *modulus_.degree();
}

bool Field::equals(const Field& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_ || p_ != o.p_) return false;
  switch (kind_) {
    case Kind::Prime:
      return true;
    case Kind::Extension:
      return var_ == o.var_ && base_->equals(*o.base_) &&
             modulus_ == o.modulus_;
    case Kind::RationalFunction:
      return var_ == o.var_ && base_->equals(*o.base_);
    case Kind::Inseparable:
      return insep_level_ == o.insep_level_ &&
             root_field_->equals(*o.root_field_);
  }
  return false;
}

std::string Field::describe() const {
  switch (kind_) {
    case Kind::Prime:
      return "F" + std::to_string(p_);
    case Kind::Extension:
      return base_->describe() + "[" + var_ + "]/(" + modulus_.str(var_) + ")";
    case Kind::RationalFunction:
      return base_->describe() + "(" + var_ + ")";
    case Kind::Inseparable:
      return base_->describe() + "(" + var_ + ")";
  }
  return "?";
}

std::string Field::generator_power_name(std::size_t j) const {
  if (kind_ == Kind::Inseparable) {
    unsigned long long q = pow_checked(static_cast<unsigned long long>(p_),
                                       static_cast<unsigned long long>(insep_level_));
    unsigned long long g = std::gcd<unsigned long long, unsigned long long>(j, q);
    unsigned long long num = j / g, den = q / g;
    const std::string& rv = root_field_->var();
    if (den == 1) return num == 1 ? rv : rv + "^" + std::to_string(num);
    return rv + "^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
  }
  return j == 1 ? var_ : var_ + "^" + std::to_string(j);
}

// ---------------------------------------------------------------------------
// Element construction
// ---------------------------------------------------------------------------

FieldElement Field::zero() const {
  return from_int(0);
}

FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long long n) const {
  FieldElement e;
  e.field_ = shared_from_this();
  switch (kind_) {
    case Kind::Prime:
      e.v_ = mod_pos(n, p_);
      break;
    case Kind::Extension: {
      std::vector<FieldElement> v;
      v.reserve(*modulus_.degree());
      v.push_back(base_->from_int(n));
      for (std::size_t i = 1; i < *modulus_.degree(); ++i)
        v.push_back(base_->from_int(0));
      e.v_ = std::move(v);
      break;
    }
    case Kind::RationalFunction:
    case Kind::Inseparable: {
      auto fr = std::make_shared<FieldElement::Frac>();
      fr->num = Polynomial::constant(base_->from_int(n));
      fr->den = Polynomial::one(base_);
      e.v_ = std::move(fr);
      break;
    }
  }
  return e;
}

FieldElement Field::generator() const {
  switch (kind_) {
    case Kind::Prime:
      throw math_error("prime field has no tower generator");
    case Kind::Extension: {
      if (*modulus_.degree() == 1) {
        // t = -constant term
        return Field::embed(-modulus_.coeff(0), shared_from_this());
      }
      std::vector<FieldElement> v(*modulus_.degree(), base_->zero());
      v[1] = base_->one();
      return make_extension_element(std::move(v));
    }
    case Kind::RationalFunction:
    case Kind::Inseparable:
      return make_fraction(Polynomial::variable(base_), Polynomial::one(base_));
  }
  throw math_error("unreachable");
}

FieldElement Field::make_extension_element(std::vector<FieldElement> coeffs) const {
  if (kind_ != Kind::Extension)
    throw invariant_violation("extension element over non-extension field");
  const std::size_t d = *modulus_.degree();
  for (auto& c : coeffs)
    if (!c.field()->equals(*base_)) c = Field::embed(c, base_);
  if (coeffs.size() > d) {
    Polynomial r = Polynomial::from_coeffs(base_, std::move(coeffs)) % modulus_;
    coeffs = r.coeffs();
  }
  coeffs.resize(d, base_->zero());
  FieldElement e;
  e.field_ = shared_from_this();
  e.v_ = std::move(coeffs);
  return e;
}

FieldElement Field::make_fraction(Polynomial num, Polynomial den) const {
  if (kind_ != Kind::RationalFunction && kind_ != Kind::Inseparable)
    throw invariant_violation("fraction element over non-function field");
  if (den.is_zero()) throw division_by_zero();
  if (!num.field()->equals(*base_) || !den.field()->equals(*base_))
    throw incompatible_fields("fraction parts not over the coefficient field");
  auto fr = std::make_shared<FieldElement::Frac>();
  if (num.is_zero()) {
    fr->num = Polynomial::zero(base_);
    fr->den = Polynomial::one(base_);
  } else {
    Polynomial g = Polynomial::gcd(num, den);
    if (*g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
    const FieldElement lc = den.leading();
    if (!lc.is_one()) {
      const FieldElement li = lc.inv();
      num = num.scale(li);
      den = den.scale(li);
    }
    fr->num = std::move(num);
    fr->den = std::move(den);
  }
  FieldElement e;
  e.field_ = shared_from_this();
  e.v_ = std::move(fr);
  return e;
}

FieldElement Field::element_at(unsigned long long idx) const {
  switch (kind_) {
    case Kind::Prime:
      return from_int(static_cast<long long>(idx % p_));
    case Kind::Extension: {
      const unsigned long long b = *base_->size();
      std::vector<FieldElement> v;
      v.reserve(*modulus_.degree());
      for (std::size_t i = 0; i < *modulus_.degree(); ++i) {
        v.push_back(base_->element_at(idx % b));
        idx /= b;
      }
      return make_extension_element(std::move(v));
    }
    default:
      throw unsupported_computation("cannot enumerate an infinite field");
  }
}

// ---------------------------------------------------------------------------
// Element accessors and predicates
// ---------------------------------------------------------------------------

long FieldElement::prime_rep() const {
  return std::get<long>(v_);
}

const std::vector<FieldElement>& FieldElement::ext_rep() const {
  return std::get<std::vector<FieldElement>>(v_);
}

const FieldElement::Frac& FieldElement::frac_rep() const {
  return *std::get<std::shared_ptr<const Frac>>(v_);
}

bool FieldElement::is_zero() const {
  if (!field_) throw invariant_violation("unset field element");
  switch (field_->kind()) {
    case Field::Kind::Prime:
      return prime_rep() == 0;
    case Field::Kind::Extension: {
      for (const auto& c : ext_rep())
        if (!c.is_zero()) return false;
      return true;
    }
    default:
      return frac_rep().num.is_zero();
  }
}

bool FieldElement::is_one() const {
  if (!field_) throw invariant_violation("unset field element");
  switch (field_->kind()) {
    case Field::Kind::Prime:
      return prime_rep() == 1;
    case Field::Kind::Extension: {
      const auto& v = ext_rep();
      if (!v[0].is_one()) return false;
      for (std::size_t i = 1; i < v.size(); ++i)
        if (!v[i].is_zero()) return false;
      return true;
    }
    default: {
      const auto& fr = frac_rep();
      return fr.den.is_constant() && !fr.num.is_zero() && fr.num.is_constant() &&
             fr.num.coeff(0).is_one();
    }
  }
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!field_ || !o.field_) return field_ == o.field_;
  if (!field_->equals(*o.field_)) {
    if (Field::embeds(field_, o.field_))
      return Field::embed(*this, o.field_) == o;
    if (Field::embeds(o.field_, field_))
      return *this == Field::embed(o, field_);
    return false;
  }
  switch (field_->kind()) {
    case Field::Kind::Prime:
      return prime_rep() == o.prime_rep();
    case Field::Kind::Extension: {
      const auto& a = ext_rep();
      const auto& b = o.ext_rep();
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
      return true;
    }
    default: {
      const auto& a = frac_rep();
      const auto& b = o.frac_rep();
      return a.num == b.num && a.den == b.den;
    }
  }
}

// ---------------------------------------------------------------------------
// Element arithmetic
// ---------------------------------------------------------------------------

namespace {

void align(FieldElement& a, FieldElement& b) {
  if (a.field()->equals(*b.field())) return;
  if (Field::embeds(a.field(), b.field())) {
    a = Field::embed(a, b.field());
    return;
  }
  if (Field::embeds(b.field(), a.field())) {
    b = Field::embed(b, a.field());
    return;
  }
  throw incompatible_fields("no embedding between " + a.field()->describe() +
                            " and " + b.field()->describe());
}

}  // namespace

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  FieldElement a = *this, b = rhs;
  align(a, b);
  const FieldPtr F = a.field();
  switch (F->kind()) {
    case Field::Kind::Prime: {
      FieldElement e;
      e.field_ = F;
      e.v_ = mod_pos(static_cast<long long>(a.prime_rep()) + b.prime_rep(),
                     F->characteristic());
      return e;
    }
    case Field::Kind::Extension: {
      std::vector<FieldElement> v;
      v.reserve(a.ext_rep().size());
      for (std::size_t i = 0; i < a.ext_rep().size(); ++i)
        v.push_back(a.ext_rep()[i] + b.ext_rep()[i]);
      FieldElement e;
      e.field_ = F;
      e.v_ = std::move(v);
      return e;
    }
    default: {
      const auto& x = a.frac_rep();
      const auto& y = b.frac_rep();
      return F->make_fraction(x.num * y.den + y.num * x.den, x.den * y.den);
    }
  }
}

FieldElement FieldElement::operator-() const {
  const FieldPtr F = field_;
  switch (F->kind()) {
    case Field::Kind::Prime: {
      FieldElement e;
      e.field_ = F;
      e.v_ = mod_pos(-static_cast<long long>(prime_rep()), F->characteristic());
      return e;
    }
    case Field::Kind::Extension: {
      std::vector<FieldElement> v;
      v.reserve(ext_rep().size());
      for (const auto& c : ext_rep()) v.push_back(-c);
      FieldElement e;
      e.field_ = F;
      e.v_ = std::move(v);
      return e;
    }
    default: {
      const auto& fr = frac_rep();
      return F->make_fraction(-fr.num, fr.den);
    }
  }
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return *this + (-o);
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  FieldElement a = *this, b = rhs;
  align(a, b);
  const FieldPtr F = a.field();
  switch (F->kind()) {
    case Field::Kind::Prime: {
      FieldElement e;
      e.field_ = F;
      e.v_ = mod_pos(static_cast<long long>(a.prime_rep()) * b.prime_rep(),
                     F->characteristic());
      return e;
    }
    case Field::Kind::Extension: {
      Polynomial pa = Polynomial::from_coeffs(F->base(), a.ext_rep());
      Polynomial pb = Polynomial::from_coeffs(F->base(), b.ext_rep());
      Polynomial r = (pa * pb) % F->modulus();
      return F->make_extension_element(r.coeffs());
    }
    default: {
      const auto& x = a.frac_rep();
      const auto& y = b.frac_rep();
      return F->make_fraction(x.num * y.num, x.den * y.den);
    }
  }
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw division_by_zero();
  const FieldPtr F = field_;
  switch (F->kind()) {
    case Field::Kind::Prime: {
      // extended Euclid on longs
      long a = prime_rep(), m = F->characteristic();
      long t0 = 0, t1 = 1, r0 = m, r1 = a;
      while (r1 != 0) {
        long q = r0 / r1;
        long t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
        long r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
      }
      FieldElement e;
      e.field_ = F;
      e.v_ = mod_pos(t0, m);
      return e;
    }
    case Field::Kind::Extension: {
      Polynomial pa = Polynomial::from_coeffs(F->base(), ext_rep());
      Polynomial s, t;
      Polynomial g = Polynomial::ext_gcd(pa, F->modulus(), s, t);
      if (g.is_zero() || *g.degree() != 0)
        throw invariant_violation("reducible modulus detected during inversion");
      return F->make_extension_element((s % F->modulus()).coeffs());
    }
    default: {
      const auto& fr = frac_rep();
      return F->make_fraction(fr.den, fr.num);
    }
  }
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inv();
}

FieldElement FieldElement::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement base = *this;
  FieldElement acc = field_->one();
  unsigned long long k = static_cast<unsigned long long>(e);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

FieldElement FieldElement::frobenius() const {
  return pow(field_->characteristic());
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

bool Field::embeds(const FieldPtr& src, const FieldPtr& dst) {
  if (!src || !dst) return false;
  if (src->equals(*dst)) return true;
  if (src->characteristic() != dst->characteristic()) return false;
  switch (dst->kind()) {
    case Kind::Prime:
      return false;
    case Kind::Extension:
      return embeds(src, dst->base());
    case Kind::RationalFunction:
      if (embeds(src, dst->base())) return true;
      if (src->kind() == Kind::RationalFunction && src->var() == dst->var() &&
          embeds(src->base(), dst->base()))
        return true;
      return false;
    case Kind::Inseparable:
      if (src->kind() == Kind::RationalFunction &&
          src->equals(*dst->root_field()))
        return true;
      if (src->kind() == Kind::Inseparable &&
          src->root_field()->equals(*dst->root_field()) &&
          src->insep_level() <= dst->insep_level())
        return true;
      return embeds(src, dst->base());
  }
  return false;
}

FieldElement Field::embed(const FieldElement& x, const FieldPtr& dst) {
  const FieldPtr src = x.field();
  if (src->equals(*dst)) return x;
  if (!embeds(src, dst))
    throw incompatible_fields("no embedding from " + src->describe() + " into " +
                              dst->describe());
  switch (dst->kind()) {
    case Kind::Prime:
      throw incompatible_fields("cannot embed into a prime field");
    case Kind::Extension: {
      FieldElement b = embed(x, dst->base());
      std::vector<FieldElement> v(*dst->modulus().degree(), dst->base()->zero());
      v[0] = std::move(b);
      return dst->make_extension_element(std::move(v));
    }
    case Kind::RationalFunction: {
      if (src->kind() == Kind::RationalFunction && src->var() == dst->var() &&
          embeds(src->base(), dst->base())) {
        const auto& fr = x.frac_rep();
        auto lift = [&](const FieldElement& c) {
          return embed(c, dst->base());
        };
        return dst->make_fraction(fr.num.map_coeffs(dst->base(), lift),
                                  fr.den.map_coeffs(dst->base(), lift));
      }
      FieldElement b = embed(x, dst->base());
      return dst->make_fraction(Polynomial::constant(b),
                                Polynomial::one(dst->base()));
    }
    case Kind::Inseparable: {
      if (src->kind() == Kind::RationalFunction &&
          src->equals(*dst->root_field())) {
        const auto& fr = x.frac_rep();
        const std::size_t q = static_cast<std::size_t>(pow_checked(
            static_cast<unsigned long long>(dst->characteristic()),
            static_cast<unsigned long long>(dst->insep_level())));
        return dst->make_fraction(fr.num.compose_xk(q), fr.den.compose_xk(q));
      }
      if (src->kind() == Kind::Inseparable &&
          src->root_field()->equals(*dst->root_field())) {
        const auto& fr = x.frac_rep();
        const std::size_t q = static_cast<std::size_t>(pow_checked(
            static_cast<unsigned long long>(dst->characteristic()),
            static_cast<unsigned long long>(dst->insep_level() -
                                            src->insep_level())));
        return dst->make_fraction(fr.num.compose_xk(q), fr.den.compose_xk(q));
      }
      FieldElement b = embed(x, dst->base());
      return dst->make_fraction(Polynomial::constant(b),
                                Polynomial::one(dst->base()));
    }
  }
  throw incompatible_fields("unreachable embedding case");
}

FieldPtr Field::common_field(const FieldPtr& a, const FieldPtr& b) {
  if (embeds(a, b)) return b;
  if (embeds(b, a)) return a;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Frobenius roots
// ---------------------------------------------------------------------------

FrobeniusRoot Field::frobenius_root(const FieldElement& a,
                                    bool allow_enlarge) const {
  if (!a.field()->equals(*this))
    throw incompatible_fields("frobenius_root: element not in this field");
  const long p = p_;
  switch (kind_) {
    case Kind::Prime:
      return {a, false};  // x^p = x on F_p
    case Kind::Extension: {
      const std::size_t m = *degree_over_prime();
      // the inverse of Frobenius is Frobenius applied m-1 times
      FieldElement r = a;
      for (std::size_t i = 0; i + 1 < m; ++i) r = r.pow(p);
      return {r, false};
    }
    case Kind::RationalFunction:
    case Kind::Inseparable: {
      const auto& fr = a.frac_rep();
      auto coeffwise_root = [&](const Polynomial& poly,
                                Polynomial& out) -> bool {
        if (poly.is_zero()) {
          out = poly;
          return true;
        }
        std::vector<FieldElement> cs;
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const FieldElement c = poly.coeff(i);
          if (i % p != 0) {
            if (!c.is_zero()) return false;
            continue;
          }
          cs.push_back(base_->frobenius_root(c, false).root);
        }
        out = Polynomial::from_coeffs(base_, std::move(cs));
        return true;
      };
      Polynomial rn, rd;
      if (coeffwise_root(fr.num, rn) && coeffwise_root(fr.den, rd))
        return {make_fraction(std::move(rn), std::move(rd)), false};
      if (!allow_enlarge)
        throw math_error("p-th root of " + a.str() +
                         " requires enlarging the tower");
      FieldPtr bigger = inseparable_root(shared_from_this(), 1);
      FieldElement lifted = embed(a, bigger);
      FrobeniusRoot r = bigger->frobenius_root(lifted, false);
      r.enlarged = true;
      return r;
    }
  }
  throw math_error("unreachable");
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

std::string FieldElement::str() const {
  if (!field_) return "<unset>";
  switch (field_->kind()) {
    case Field::Kind::Prime:
      return std::to_string(prime_rep());
    case Field::Kind::Extension: {
      Polynomial p = Polynomial::from_coeffs(field_->base(), ext_rep());
      return format_poly(
          p, [&](std::size_t j) { return field_->generator_power_name(j); });
    }
    default: {
      const auto& fr = frac_rep();
      auto pw = [&](std::size_t j) { return field_->generator_power_name(j); };
      std::string ns = format_poly(fr.num, pw);
      if (fr.den.is_constant()) return ns;
      std::string ds = format_poly(fr.den, pw);
      const bool np = needs_parens(ns);
      return (np ? "(" + ns + ")" : ns) + "/(" + ds + ")";
    }
  }
}

}  // namespace modind
