// Field towers: prime fields F_p, finite algebraic extensions, rational
// function fields F_p(t), and purely inseparable root towers F_p(t^{1/p^k}).
// All values are immutable and in canonical form.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace modind {

class Field;
using FieldPtr = std::shared_ptr<const Field>;
class FieldElement;
class Polynomial;

struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// inv(0) or x/0
struct division_by_zero : math_error {
  division_by_zero() : math_error("division by zero") {}
};
// operands in towers with no directed embedding between them
struct incompatible_fields : math_error {
  using math_error::math_error;
};
// a computation the toolkit deliberately does not cover
struct unsupported_computation : math_error {
  using math_error::math_error;
};
// an internal consistency check failed; indicates an engine bug or invalid input
struct invariant_violation : math_error {
  using math_error::math_error;
};

// Dense univariate polynomial over a field, little-endian coefficients,
// no trailing zeros.  The zero polynomial has no degree (nullopt sentinel).
class Polynomial {
public:
  Polynomial() = default;

  static Polynomial zero(FieldPtr f);
  static Polynomial one(FieldPtr f);
  static Polynomial constant(const FieldElement& c);
  static Polynomial variable(FieldPtr f);  // the monic monomial t
  static Polynomial monomial(const FieldElement& c, std::size_t deg);
  static Polynomial from_coeffs(FieldPtr f, std::vector<FieldElement> coeffs);
  static Polynomial from_ints(FieldPtr f, const std::vector<long long>& coeffs);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const;
  std::size_t size() const { return coeffs_.size(); }
  FieldElement coeff(std::size_t i) const;  // zero beyond the stored range
  FieldElement leading() const;
  bool is_monic() const;
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scale(const FieldElement& c) const;
  Polynomial shift(std::size_t k) const;  // multiply by t^k
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // division with remainder; divisor's leading coefficient must be invertible
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q,
                     Polynomial& r);
  Polynomial operator/(const Polynomial& b) const;
  Polynomial operator%(const Polynomial& b) const;
  bool divides(const Polynomial& other) const;  // this | other

  Polynomial monic() const;
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);  // monic
  // g = gcd(a,b) = s*a + t*b
  static Polynomial ext_gcd(const Polynomial& a, const Polynomial& b,
                            Polynomial& s, Polynomial& t);
  Polynomial derivative() const;
  FieldElement eval(const FieldElement& x) const;
  Polynomial pow_mod(unsigned long long e, const Polynomial& mod) const;
  Polynomial pow(unsigned long long e) const;
  Polynomial compose_xk(std::size_t k) const;  // f(t^k)
  // map every coefficient through fn (e.g. an embedding)
  template <typename Fn>
  Polynomial map_coeffs(FieldPtr target, Fn&& fn) const;

  std::string str(const std::string& var = "t") const;

private:
  void trim();
  FieldPtr field_;
  std::vector<FieldElement> coeffs_;
};

class FieldElement {
public:
  FieldElement() = default;  // unset; usable only as a placeholder

  const FieldPtr& field() const { return field_; }
  bool is_set() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(long long e) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // a^p where p is the field characteristic
  FieldElement frobenius() const;

  std::string str() const;

  struct Frac {
    Polynomial num, den;
  };

  // payload accessors (kind-checked)
  long prime_rep() const;
  const std::vector<FieldElement>& ext_rep() const;
  const Frac& frac_rep() const;

private:
  friend class Field;
  FieldPtr field_;
  std::variant<std::monostate, long, std::vector<FieldElement>,
               std::shared_ptr<const Frac>>
      v_;
};

// Result of a p-th root request: the root, living in `tower` (equal to the
// input field unless the tower had to grow).
struct FrobeniusRoot {
  FieldElement root;
  bool enlarged = false;
};

class Field : public std::enable_shared_from_this<Field> {
public:
  enum class Kind { Prime, Extension, RationalFunction, Inseparable };

  static FieldPtr prime(long p);
  // modulus must be monic and irreducible over base (verified for finite bases)
  static FieldPtr extension(FieldPtr base, const Polynomial& modulus,
                            std::string var);
  static FieldPtr rational_function(FieldPtr base, std::string var);
  // F(v) -> F(v^{1/p^levels}); also deepens an existing root tower
  static FieldPtr inseparable_root(FieldPtr f, long levels = 1);

  Kind kind() const { return kind_; }
  long characteristic() const { return p_; }
  const FieldPtr& base() const { return base_; }
  const Polynomial& modulus() const { return modulus_; }
  const std::string& var() const { return var_; }
  long insep_level() const { return insep_level_; }
  // for Inseparable: the rational function field the tower grew from
  const FieldPtr& root_field() const { return root_field_; }

  bool is_finite() const;
  std::optional<unsigned long long> size() const;
  std::optional<std::size_t> degree_over_prime() const;
  bool equals(const Field& o) const;
  std::string describe() const;
  // generator display name with exponent j (handles fractional powers)
  std::string generator_power_name(std::size_t j) const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long n) const;
  FieldElement generator() const;  // extension/ratfun/insep generator
  FieldElement make_extension_element(std::vector<FieldElement> coeffs) const;
  FieldElement make_fraction(Polynomial num, Polynomial den) const;
  // index -> element, for finite fields (mixed-radix over the tower)
  FieldElement element_at(unsigned long long idx) const;

  static bool embeds(const FieldPtr& src, const FieldPtr& dst);
  static FieldElement embed(const FieldElement& x, const FieldPtr& dst);
  // least field of the pair the other embeds into, if any
  static FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

  FrobeniusRoot frobenius_root(const FieldElement& a,
                               bool allow_enlarge = true) const;

private:
  Field() = default;
  Kind kind_ = Kind::Prime;
  long p_ = 0;
  FieldPtr base_;       // Extension/RationalFunction: coefficient field
  Polynomial modulus_;  // Extension only
  std::string var_;
  long insep_level_ = 0;  // Inseparable only: k, generator is v^{1/p^k}
  FieldPtr root_field_;   // Inseparable only
};

// deterministic irreducibility test over a finite coefficient field
bool rabin_irreducible(const Polynomial& f);

template <typename Fn>
Polynomial Polynomial::map_coeffs(FieldPtr target, Fn&& fn) const {
  std::vector<FieldElement> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(fn(c));
  return Polynomial::from_coeffs(std::move(target), std::move(out));
}

}  // namespace modind
