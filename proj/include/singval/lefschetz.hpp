#pragma once

// Exact arithmetic in Z[L, L^-1], the part of the localized Grothendieck ring
// of varieties spanned by powers of the Lefschetz class L.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <json.hpp>

namespace singval {

class GrothendieckClass {
 public:
  using Exponent = std::int64_t;
  using Terms = std::map<Exponent, mpz_class>;

  GrothendieckClass() = default;
  GrothendieckClass(long constant);  // NOLINT: integers embed implicitly

  static GrothendieckClass monomial(const mpz_class& coeff, Exponent exponent);
  /// L^e.
  static GrothendieckClass lefschetz(Exponent exponent = 1);
  /// Builds from an arbitrary term map, dropping zero coefficients.
  static GrothendieckClass from_terms(Terms terms);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Exponent min_exponent() const;  // requires !is_zero()
  Exponent max_exponent() const;  // requires !is_zero()
  mpz_class coefficient(Exponent e) const;

  GrothendieckClass& operator+=(const GrothendieckClass& rhs);
  GrothendieckClass& operator-=(const GrothendieckClass& rhs);
  GrothendieckClass& operator*=(const GrothendieckClass& rhs);

  friend GrothendieckClass operator+(GrothendieckClass a, const GrothendieckClass& b) { return a += b; }
  friend GrothendieckClass operator-(GrothendieckClass a, const GrothendieckClass& b) { return a -= b; }
  friend GrothendieckClass operator*(GrothendieckClass a, const GrothendieckClass& b) { return a *= b; }
  GrothendieckClass operator-() const;

  friend bool operator==(const GrothendieckClass&, const GrothendieckClass&) = default;

  /// Multiplies by L^shift.
  GrothendieckClass shifted(Exponent shift) const;

  /// The substitution L -> L^-1.
  GrothendieckClass invert_lefschetz() const;

  /// Substitutes L = q (q >= 2); negative powers become exact fractions.
  mpq_class evaluate(const mpz_class& q) const;
  /// Value at L = 1.
  mpz_class euler_characteristic() const;

  /// "3*L^2 - L^-1 + 7": decreasing exponents, explicit signs.
  std::string to_string() const;
  static GrothendieckClass parse(std::string_view text);

  /// [[exponent, "coefficient"], ...] in decreasing exponent order.
  nlohmann::json to_json() const;
  static GrothendieckClass from_json(const nlohmann::json& j);

 private:
  void add_term(Exponent e, const mpz_class& c);

  Terms terms_;
};

/// Exact quotient a / b; throws NotDivisible if b does not divide a.
GrothendieckClass div_exact(const GrothendieckClass& a, const GrothendieckClass& b);

/// (L^n - 1) / (L - 1) = 1 + L + ... + L^(n-1), the class of P^(n-1); n >= 0.
GrothendieckClass projective_space_class(std::int64_t n);

std::ostream& operator<<(std::ostream& os, const GrothendieckClass& a);

/// Checked exponent arithmetic; throws Overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace singval
