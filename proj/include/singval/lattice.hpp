#pragma once

// Multivariate Laurent series with GrothendieckClass coefficients, known
// exactly on a finite axis-aligned box of Z^r.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "singval/lefschetz.hpp"

namespace singval {

class ExponentVector {
 public:
  using value_type = std::int64_t;

  ExponentVector() = default;
  explicit ExponentVector(std::size_t rank, value_type fill = 0) : v_(rank, fill) {}
  ExponentVector(std::initializer_list<value_type> init) : v_(init) {}
  explicit ExponentVector(std::vector<value_type> v) : v_(std::move(v)) {}

  static ExponentVector zero(std::size_t rank) { return ExponentVector(rank, 0); }
  static ExponentVector ones(std::size_t rank) { return ExponentVector(rank, 1); }
  /// 1_I for a single index.
  static ExponentVector unit(std::size_t rank, std::size_t i);
  /// 1_I for a subset given as a bitmask over the coordinates.
  static ExponentVector indicator(std::size_t rank, unsigned mask);

  std::size_t size() const noexcept { return v_.size(); }
  value_type operator[](std::size_t i) const { return v_[i]; }
  value_type& operator[](std::size_t i) { return v_[i]; }
  const std::vector<value_type>& values() const noexcept { return v_; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }

  ExponentVector& operator+=(const ExponentVector& rhs);
  ExponentVector& operator-=(const ExponentVector& rhs);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  ExponentVector operator-() const;
  ExponentVector scaled(value_type k) const;

  /// Lexicographic order (for deterministic containers); not the partial order.
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

  /// Componentwise partial order v <= w.
  bool leq(const ExponentVector& w) const;
  value_type dot(const ExponentVector& w) const;
  value_type sum() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static ExponentVector from_json(const nlohmann::json& j);

 private:
  void check_rank(const ExponentVector& other) const;
  std::vector<value_type> v_;
};

ExponentVector componentwise_min(const ExponentVector& a, const ExponentVector& b);
ExponentVector componentwise_max(const ExponentVector& a, const ExponentVector& b);
std::ostream& operator<<(std::ostream& os, const ExponentVector& v);

/// Closed box [lo, hi] of Z^r.
class Window {
 public:
  Window(ExponentVector lo, ExponentVector hi);

  const ExponentVector& lo() const noexcept { return lo_; }
  const ExponentVector& hi() const noexcept { return hi_; }
  std::size_t rank() const noexcept { return lo_.size(); }

  bool contains(const ExponentVector& v) const;
  bool contains(const Window& w) const;
  std::size_t point_count() const;
  /// All points in lexicographic order (first coordinate most significant).
  std::vector<ExponentVector> points() const;
  std::size_t index_of(const ExponentVector& v) const;  // requires contains(v)

  Window shifted(const ExponentVector& by) const;
  Window negated() const;
  /// Grows by k in every direction (k may be negative; throws if it empties).
  Window expanded(std::int64_t k) const;
  std::optional<Window> intersect(const Window& w) const;

  friend bool operator==(const Window&, const Window&) = default;
  std::string to_string() const;

 private:
  ExponentVector lo_, hi_;
};

/// Finitely supported Laurent polynomial in t_1..t_r with class coefficients.
class LatticePolynomial {
 public:
  using Terms = std::map<ExponentVector, GrothendieckClass>;

  explicit LatticePolynomial(std::size_t rank) : rank_(rank) {}
  static LatticePolynomial monomial(const ExponentVector& v, GrothendieckClass c);
  static LatticePolynomial constant(std::size_t rank, GrothendieckClass c);
  /// t_i - 1.
  static LatticePolynomial var_minus_one(std::size_t rank, std::size_t i);
  /// prod_i (t_i - 1).
  static LatticePolynomial product_of_var_minus_one(std::size_t rank);
  /// t_1 ... t_r - 1.
  static LatticePolynomial all_vars_minus_one(std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const ExponentVector& v, const GrothendieckClass& c);

  LatticePolynomial operator+(const LatticePolynomial& rhs) const;
  LatticePolynomial operator*(const LatticePolynomial& rhs) const;
  /// t_i -> L^{d_i} t_i.
  LatticePolynomial scale_vars(const ExponentVector& weights) const;

  ExponentVector min_exponents() const;  // componentwise over support
  ExponentVector max_exponents() const;

 private:
  std::size_t rank_;
  Terms terms_;
};

struct Mismatch {
  ExponentVector point;
  GrothendieckClass lhs;
  GrothendieckClass rhs;
};

struct SeriesComparison {
  bool equal = true;
  std::optional<Mismatch> first_mismatch;
  std::size_t points_checked = 0;
};

class WindowSeries {
 public:
  using Generator = std::function<GrothendieckClass(const ExponentVector&)>;

  WindowSeries(Window window, std::vector<GrothendieckClass> coeffs);

  static WindowSeries build(const Window& window, const Generator& f);

  const Window& window() const noexcept { return window_; }
  std::size_t rank() const noexcept { return window_.rank(); }
  const GrothendieckClass& at(const ExponentVector& v) const;
  const std::vector<GrothendieckClass>& coefficients() const noexcept { return coeffs_; }
  /// Replaces one coefficient (used by harness self-tests to inject corruption).
  WindowSeries with_coefficient(const ExponentVector& v, GrothendieckClass c) const;

  /// Coefficient at v times L^{v.d}: the substitution t_i -> L^{d_i} t_i.
  WindowSeries scale_vars(const ExponentVector& weights) const;
  /// t -> t^{-1}: coefficient at v moves to -v.
  WindowSeries invert_vars() const;
  /// c * t^{shift} * s.
  WindowSeries mul_monomial(const ExponentVector& shift, const GrothendieckClass& c) const;
  /// Product with a Laurent polynomial, restricted to the sub-box on which
  /// every contributing coefficient of *this is known.
  WindowSeries mul_poly(const LatticePolynomial& p) const;
  /// Applies f to every coefficient.
  WindowSeries map_coefficients(const std::function<GrothendieckClass(const GrothendieckClass&)>& f) const;

  friend bool operator==(const WindowSeries&, const WindowSeries&) = default;

  nlohmann::json to_json() const;
  static WindowSeries from_json(const nlohmann::json& j);

 private:
  Window window_;
  std::vector<GrothendieckClass> coeffs_;
};

/// Source window needed so that mul_poly(p) is known on `target`.
Window source_window_for(const Window& target, const LatticePolynomial& p);

/// Compares a and b on w; throws WindowNotCovered if w exceeds either window.
SeriesComparison compare_on(const WindowSeries& a, const WindowSeries& b, const Window& w);

}  // namespace singval
