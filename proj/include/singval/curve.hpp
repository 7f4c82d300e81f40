#pragma once

// Concrete model of a reduced curve singularity O inside its normalization
// k[[t_1]] x ... x k[[t_r]], with fractional ideals given by generators.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "singval/jet.hpp"
#include "singval/lattice.hpp"
#include "singval/value_module.hpp"

namespace singval {

struct FieldSpec {
  enum class Kind { Rational, PrimeField };
  Kind kind = Kind::Rational;
  std::uint64_t p = 0;

  static FieldSpec rational() { return {}; }
  static FieldSpec prime(std::uint64_t p);  // throws InvalidInput unless p is prime
};

/// Laurent series in one variable with rational coefficients, exact below
/// `precision` (kExact means the stored support is the whole series).
class BranchSeries {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();
  using Terms = std::map<std::int64_t, mpq_class>;

  BranchSeries() = default;
  explicit BranchSeries(Terms terms, std::int64_t precision = kExact);
  static BranchSeries monomial(const mpq_class& c, std::int64_t e);

  const Terms& terms() const noexcept { return terms_; }
  std::int64_t precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return precision_ == kExact; }
  bool is_exact_zero() const noexcept { return is_exact() && terms_.empty(); }
  /// Lowest stored exponent.
  std::optional<std::int64_t> offset() const;
  /// Order of vanishing; throws ZeroDivisor or PrecisionExhausted.
  std::int64_t order() const;
  mpq_class coefficient(std::int64_t e) const;

  BranchSeries operator+(const BranchSeries& rhs) const;
  BranchSeries operator-(const BranchSeries& rhs) const;
  BranchSeries operator*(const BranchSeries& rhs) const;
  BranchSeries scaled(const mpq_class& c) const;
  BranchSeries shifted(std::int64_t e) const;

  friend bool operator==(const BranchSeries&, const BranchSeries&) = default;

 private:
  Terms terms_;
  std::int64_t precision_ = kExact;
};

/// Element of the total ring of fractions, one series per branch.
class TotalRingElement {
 public:
  TotalRingElement() = default;
  explicit TotalRingElement(std::vector<BranchSeries> components) : components_(std::move(components)) {}
  static TotalRingElement constant(std::size_t r, const mpq_class& c);
  /// The element with t_i^e in branch i and 0 elsewhere.
  static TotalRingElement branch_monomial(std::size_t r, std::size_t i, std::int64_t e, const mpq_class& c = 1);

  std::size_t rank() const noexcept { return components_.size(); }
  const std::vector<BranchSeries>& components() const noexcept { return components_; }
  const BranchSeries& operator[](std::size_t i) const { return components_[i]; }

  TotalRingElement operator+(const TotalRingElement& rhs) const;
  TotalRingElement operator-(const TotalRingElement& rhs) const;
  TotalRingElement operator*(const TotalRingElement& rhs) const;
  TotalRingElement scaled(const mpq_class& c) const;

  friend bool operator==(const TotalRingElement&, const TotalRingElement&) = default;

 private:
  std::vector<BranchSeries> components_;
};

/// Componentwise order; throws ZeroDivisor / PrecisionExhausted.
ExponentVector value_of(const TotalRingElement& z);

/// Lowest exponent present in each branch over a list of elements; throws
/// InvalidInput if some branch is zero in every element.
ExponentVector support_floor(const std::vector<TotalRingElement>& elements, std::size_t r);

struct CurveOptions {
  std::int64_t level_ceiling = 512;  // largest jet level tried by bound searches
};

class CurvePresentation {
 public:
  using Options = CurveOptions;

  CurvePresentation(FieldSpec field, std::size_t branches, std::vector<TotalRingElement> generators,
                    Options options = Options());

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t branches() const noexcept { return r_; }
  const Options& options() const noexcept { return options_; }
  const std::vector<TotalRingElement>& generators() const noexcept { return generators_; }
  /// Generators with their constant term removed, so all lie in the maximal ideal.
  const std::vector<TotalRingElement>& maximal_generators() const noexcept { return maximal_; }
  /// gamma: t^gamma Obar is the conductor ideal.
  const ExponentVector& conductor() const noexcept { return conductor_; }
  /// dim Obar/O.
  std::int64_t delta() const noexcept { return delta_; }

  /// The row-reduced image of the module generated by `generators` in
  /// t^lo k[t]/t^N, over the rationals.
  JetSpace<mpq_class> jet_span(const std::vector<TotalRingElement>& generators, const ExponentVector& lo,
                               const ExponentVector& N) const;

 private:
  FieldSpec field_;
  std::size_t r_;
  std::vector<TotalRingElement> generators_;
  std::vector<TotalRingElement> maximal_;
  Options options_;
  ExponentVector conductor_;
  std::int64_t delta_ = 0;
};

class IdealPresentation {
 public:
  /// Computes v(b Obar) and the certified conductor eagerly.
  IdealPresentation(std::shared_ptr<const CurvePresentation> over, std::vector<TotalRingElement> generators);

  const CurvePresentation& over() const noexcept { return *over_; }
  const std::shared_ptr<const CurvePresentation>& curve() const noexcept { return over_; }
  std::size_t rank() const noexcept { return over_->branches(); }
  const std::vector<TotalRingElement>& generators() const noexcept { return generators_; }
  /// v(b Obar): the componentwise least order over b.
  const ExponentVector& floor() const noexcept { return floor_; }
  /// Least n with t^n Obar inside b (absolute exponents).
  const ExponentVector& conductor() const noexcept { return conductor_; }
  /// gamma^b = conductor - floor.
  ExponentVector relative_conductor() const { return conductor_ - floor_; }

  JetSpace<mpq_class> jets(const ExponentVector& lo, const ExponentVector& N) const;

 private:
  std::shared_ptr<const CurvePresentation> over_;
  std::vector<TotalRingElement> generators_;
  ExponentVector floor_;
  ExponentVector conductor_;
};

IdealPresentation ring_ideal(const std::shared_ptr<const CurvePresentation>& curve);
IdealPresentation normalization_ideal(const std::shared_ptr<const CurvePresentation>& curve);
/// t^v Obar as an O-module.
IdealPresentation monomial_ideal(const std::shared_ptr<const CurvePresentation>& curve, const ExponentVector& v);

/// Jet span of the ideal at level N with floor lo defaulting to v(b Obar).
JetSpace<mpq_class> jet_span(const IdealPresentation& a, const ExponentVector& N);

ExponentVector conductor_bound(const IdealPresentation& a);

/// b inside a.
bool contains(const IdealPresentation& a, const IdealPresentation& b);
bool equal(const IdealPresentation& a, const IdealPresentation& b);

/// dim a/b for b inside a; throws NotContained otherwise. N is raised to the
/// certified bound when smaller.
std::int64_t dim_quotient(const IdealPresentation& a, const IdealPresentation& b,
                          std::optional<ExponentVector> N = std::nullopt);

/// {x : x b in a}.
IdealPresentation colon(const IdealPresentation& a, const IdealPresentation& b);
IdealPresentation product(const IdealPresentation& a, const IdealPresentation& b);
IdealPresentation sum(const IdealPresentation& a, const IdealPresentation& b);
/// c : b.
IdealPresentation dual(const IdealPresentation& b, const IdealPresentation& c);
/// Drops generators that do not enlarge the generated module.
IdealPresentation prune(const IdealPresentation& a);

struct CanonicalVerdict {
  bool canonical = true;
  std::vector<std::string> failures;
  std::size_t family_size = 0;
};
/// Checks a = c : (c : a) for each family member; the family always includes
/// t^v Obar for v in [-1, 1]^r.
CanonicalVerdict verify_canonical(const IdealPresentation& c, const std::vector<IdealPresentation>& family,
                                  const std::vector<std::string>& names = {});

/// S(b) on [0, gamma^b] with deg_offset = deg(b); the clip rule is checked
/// on the collar [0, gamma^b + margin]. `ambient` is attached as-is.
ValueModule value_set(const IdealPresentation& b, std::int64_t margin = 2,
                      std::shared_ptr<const ValueModule> ambient = nullptr);

struct LengthsReport {
  std::int64_t b_over_conductor = 0;        // dim b / (b : Obar)
  std::int64_t bbar_over_conductor = 0;     // dim b Obar / (b : Obar)
  std::int64_t bbar_over_b = 0;             // dim b Obar / b
  bool halving_inequality = false;          // 2 dim b/(b:Obar) <= dim bObar/(b:Obar)
  bool halving_equality = false;
  std::optional<std::int64_t> dual_bbar_over_dual;  // dim b* Obar / b* when a canonical ideal is given
  std::optional<bool> dual_length_equality;         // dim b*Obar/b* = dim b/(b:Obar)
};
LengthsReport lengths_report(const IdealPresentation& b, const IdealPresentation* canonical = nullptr);

/// deg relative to O: dim (a + O)/O - dim (a + O)/a.
std::int64_t degree(const IdealPresentation& a);

struct CountResult {
  std::uint64_t count = 0;
  std::size_t dimension = 0;  // dimension of the enumerated jet space of O
};
/// Number of elements of O/t^(level+1) over F_p with exact value v.
CountResult count_points_mod_q(const CurvePresentation& curve, std::uint64_t p, const ExponentVector& v,
                               const ExponentVector& level, std::uint64_t ceiling = std::uint64_t{1} << 24);

enum class DirectDuality { SelfDual, NotSelfDual, Undetermined };
const char* to_string(DirectDuality d) noexcept;

struct DirectDualityResult {
  DirectDuality verdict = DirectDuality::Undetermined;
  std::optional<TotalRingElement> witness;  // z with z b = b*
  std::string note;
};
/// Class-level test b ~ b*: compares value sets, then searches for z in
/// b* : b with z b = b*.
DirectDualityResult self_duality_direct(const IdealPresentation& b, const IdealPresentation& bstar,
                                        std::uint32_t seed = 12345);

}  // namespace singval
