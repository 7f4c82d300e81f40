#include "singval/curve.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "singval/errors.hpp"

namespace singval {

namespace {

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == BranchSeries::kExact || b == BranchSeries::kExact) return BranchSeries::kExact;
  return checked_add(a, b);
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

ExponentVector max_with_one(const ExponentVector& v) { return componentwise_max(v, ExponentVector::ones(v.size())); }

std::vector<mpq_class> encode(const TotalRingElement& z, const JetLayout& layout) {
  std::vector<mpq_class> out(layout.columns(), 0);
  for (std::size_t i = 0; i < layout.rank(); ++i) {
    if (layout.width(i) == 0) continue;
    const auto& s = z[i];
    if (s.precision() < layout.N()[i]) {
      throw Error(ErrorKind::PrecisionExhausted, "series known only below exponent " + std::to_string(s.precision()));
    }
    for (const auto& [e, c] : s.terms()) {
      if (e >= layout.N()[i]) break;
      if (e < layout.lo()[i]) {
        throw Error(ErrorKind::InvalidInput, "element has a term t^" + std::to_string(e) + " below the jet floor " +
                                                 std::to_string(layout.lo()[i]));
      }
      out[layout.column(i, e)] = c;
    }
  }
  return out;
}

template <class S, class Convert>
std::vector<std::vector<std::vector<S>>> multipliers_for(const std::vector<TotalRingElement>& gens,
                                                         const JetLayout& layout, const S& zero, Convert convert) {
  std::vector<std::vector<std::vector<S>>> out;
  for (const auto& g : gens) {
    std::vector<std::vector<S>> per_branch;
    for (std::size_t i = 0; i < layout.rank(); ++i) {
      std::vector<S> dense(layout.width(i), zero);
      for (const auto& [e, c] : g[i].terms()) {
        if (e < 0) throw Error(ErrorKind::InvalidInput, "ring generator with a negative exponent");
        if (static_cast<std::size_t>(e) >= dense.size()) break;
        dense[static_cast<std::size_t>(e)] = convert(c);
      }
      per_branch.push_back(std::move(dense));
    }
    out.push_back(std::move(per_branch));
  }
  return out;
}

// Smallest n >= lo (per branch) such that e_i t_i^e is in the span for
// every n_i <= e < N_i.
ExponentVector apparent_conductor(const JetSpace<mpq_class>& space) {
  const auto& lay = space.layout;
  ExponentVector c = lay.N();
  for (std::size_t i = 0; i < lay.rank(); ++i) {
    while (c[i] > lay.lo()[i] && space.has_unit(i, c[i] - 1)) --c[i];
  }
  return c;
}

// Doubles the level until the apparent conductor c satisfies N - c >= max(m, 1)
// where m = c for the ring itself and m = gamma for an ideal. Then
// t^c Obar lies in the module + t^N Obar with t^N Obar = u t^c Obar for some
// u in O of positive order, and completeness closes the argument.
ExponentVector certified_conductor(const CurvePresentation& curve, const std::vector<TotalRingElement>& gens,
                                   const ExponentVector& lo, const ExponentVector* ring_gamma) {
  const std::size_t r = lo.size();
  ExponentVector N = lo + ExponentVector(r, 4);
  while (true) {
    for (std::size_t i = 0; i < r; ++i) {
      if (N[i] - lo[i] > curve.options().level_ceiling) {
        throw Error(ErrorKind::BoundSearchExceeded,
                    "no conductor found below level " + std::to_string(curve.options().level_ceiling) +
                        "; the generators may not present a fractional ideal");
      }
    }
    const auto space = curve.jet_span(gens, lo, N);
    const ExponentVector c = apparent_conductor(space);
    const ExponentVector collar = ring_gamma ? max_with_one(*ring_gamma) : max_with_one(c);
    const ExponentVector need = c + collar;
    if (need.leq(N)) return c;
    N = componentwise_max(N, need);
  }
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime(p) || p >= (std::uint64_t{1} << 32)) {
    throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not a supported prime");
  }
  return FieldSpec{Kind::PrimeField, p};
}

BranchSeries::BranchSeries(Terms terms, std::int64_t precision) : precision_(precision) {
  for (auto& [e, c] : terms) {
    if (sgn(c) != 0 && e < precision_) terms_.emplace(e, std::move(c));
  }
}

BranchSeries BranchSeries::monomial(const mpq_class& c, std::int64_t e) { return BranchSeries(Terms{{e, c}}); }

std::optional<std::int64_t> BranchSeries::offset() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::int64_t BranchSeries::order() const {
  if (!terms_.empty()) return terms_.begin()->first;
  if (is_exact()) throw Error(ErrorKind::ZeroDivisor, "component is identically zero");
  throw Error(ErrorKind::PrecisionExhausted,
              "component vanishes to its known precision " + std::to_string(precision_));
}

mpq_class BranchSeries::coefficient(std::int64_t e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

BranchSeries BranchSeries::operator+(const BranchSeries& rhs) const {
  Terms t = terms_;
  for (const auto& [e, c] : rhs.terms_) t[e] += c;
  return BranchSeries(std::move(t), std::min(precision_, rhs.precision_));
}

BranchSeries BranchSeries::operator-(const BranchSeries& rhs) const { return *this + rhs.scaled(-1); }

BranchSeries BranchSeries::operator*(const BranchSeries& rhs) const {
  if (is_exact_zero() || rhs.is_exact_zero()) return BranchSeries();
  const std::int64_t ord_a = terms_.empty() ? precision_ : terms_.begin()->first;
  const std::int64_t ord_b = rhs.terms_.empty() ? rhs.precision_ : rhs.terms_.begin()->first;
  const std::int64_t prec = std::min(saturating_add(precision_, ord_b), saturating_add(rhs.precision_, ord_a));
  Terms t;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      const auto e = checked_add(ea, eb);
      if (e < prec) t[e] += ca * cb;
    }
  }
  return BranchSeries(std::move(t), prec);
}

BranchSeries BranchSeries::scaled(const mpq_class& c) const {
  if (sgn(c) == 0) return BranchSeries(Terms{}, precision_);
  Terms t;
  for (const auto& [e, x] : terms_) t.emplace(e, x * c);
  return BranchSeries(std::move(t), precision_);
}

BranchSeries BranchSeries::shifted(std::int64_t s) const {
  Terms t;
  for (const auto& [e, x] : terms_) t.emplace(checked_add(e, s), x);
  return BranchSeries(std::move(t), saturating_add(precision_, s));
}

TotalRingElement TotalRingElement::constant(std::size_t r, const mpq_class& c) {
  return TotalRingElement(std::vector<BranchSeries>(r, BranchSeries::monomial(c, 0)));
}

TotalRingElement TotalRingElement::branch_monomial(std::size_t r, std::size_t i, std::int64_t e, const mpq_class& c) {
  std::vector<BranchSeries> comps(r);
  comps[i] = BranchSeries::monomial(c, e);
  return TotalRingElement(std::move(comps));
}

namespace {

template <class F>
TotalRingElement zip(const TotalRingElement& a, const TotalRingElement& b, F f) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::InvalidInput, "elements with different branch counts");
  std::vector<BranchSeries> out;
  for (std::size_t i = 0; i < a.rank(); ++i) out.push_back(f(a[i], b[i]));
  return TotalRingElement(std::move(out));
}

}  // namespace

TotalRingElement TotalRingElement::operator+(const TotalRingElement& rhs) const {
  return zip(*this, rhs, [](const auto& x, const auto& y) { return x + y; });
}
TotalRingElement TotalRingElement::operator-(const TotalRingElement& rhs) const {
  return zip(*this, rhs, [](const auto& x, const auto& y) { return x - y; });
}
TotalRingElement TotalRingElement::operator*(const TotalRingElement& rhs) const {
  return zip(*this, rhs, [](const auto& x, const auto& y) { return x * y; });
}
TotalRingElement TotalRingElement::scaled(const mpq_class& c) const {
  std::vector<BranchSeries> out;
  for (const auto& s : components_) out.push_back(s.scaled(c));
  return TotalRingElement(std::move(out));
}

ExponentVector value_of(const TotalRingElement& z) {
  ExponentVector v(z.rank(), 0);
  for (std::size_t i = 0; i < z.rank(); ++i) v[i] = z[i].order();
  return v;
}

ExponentVector support_floor(const std::vector<TotalRingElement>& elements, std::size_t r) {
  ExponentVector lo(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::optional<std::int64_t> m;
    for (const auto& z : elements) {
      if (z.rank() != r) throw Error(ErrorKind::InvalidInput, "element has the wrong number of branches");
      if (auto o = z[i].offset()) m = m ? std::min(*m, *o) : *o;
    }
    if (!m) throw Error(ErrorKind::InvalidInput, "every generator vanishes on branch " + std::to_string(i + 1));
    lo[i] = *m;
  }
  return lo;
}

CurvePresentation::CurvePresentation(FieldSpec field, std::size_t branches, std::vector<TotalRingElement> generators,
                                     Options options)
    : field_(field), r_(branches), generators_(std::move(generators)), options_(options) {
  if (field_.kind != FieldSpec::Kind::Rational) {
    throw Error(ErrorKind::Unsupported, "curves are presented over the rationals");
  }
  if (r_ == 0) throw Error(ErrorKind::InvalidInput, "a curve needs at least one branch");
  if (generators_.empty()) throw Error(ErrorKind::InvalidInput, "a curve needs at least one ring generator");
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const auto& z = generators_[g];
    const std::string where = "ring generator " + std::to_string(g + 1);
    if (z.rank() != r_) throw Error(ErrorKind::InvalidInput, where + " has the wrong number of branches");
    for (std::size_t i = 0; i < r_; ++i) {
      if (!z[i].is_exact()) throw Error(ErrorKind::InvalidInput, where + " is not given exactly");
      if (auto o = z[i].offset(); o && *o < 0) {
        throw Error(ErrorKind::InvalidInput, where + " has a negative order on branch " + std::to_string(i + 1));
      }
    }
    const mpq_class c0 = z[0].coefficient(0);
    for (std::size_t i = 1; i < r_; ++i) {
      if (z[i].coefficient(0) != c0) {
        throw Error(ErrorKind::InvalidInput, where + " has different constant terms on different branches");
      }
    }
    maximal_.push_back(z - TotalRingElement::constant(r_, c0));
  }
  for (std::size_t i = 0; i < r_; ++i) {
    const bool reached =
        std::any_of(maximal_.begin(), maximal_.end(), [&](const auto& z) { return !z[i].terms().empty(); });
    if (!reached) throw Error(ErrorKind::InvalidInput, "branch " + std::to_string(i + 1) + " is not reached");
  }
  const std::vector<TotalRingElement> one{TotalRingElement::constant(r_, 1)};
  const ExponentVector zero(r_, 0);
  conductor_ = certified_conductor(*this, one, zero, nullptr);
  delta_ = conductor_.sum() - static_cast<std::int64_t>(jet_span(one, zero, conductor_).dimension());
}

JetSpace<mpq_class> CurvePresentation::jet_span(const std::vector<TotalRingElement>& generators,
                                                const ExponentVector& lo, const ExponentVector& N) const {
  JetLayout layout(lo, N);
  JetClosure<mpq_class> closure(layout, multipliers_for<mpq_class>(maximal_, layout, mpq_class(0), [](const mpq_class& c) { return c; }),
                                mpq_class(0), mpq_class(1));
  for (const auto& g : generators) closure.add(encode(g, layout));
  return closure.space();
}

IdealPresentation::IdealPresentation(std::shared_ptr<const CurvePresentation> over,
                                     std::vector<TotalRingElement> generators)
    : over_(std::move(over)), generators_(std::move(generators)) {
  if (!over_) throw Error(ErrorKind::InvalidInput, "ideal without a curve");
  if (generators_.empty()) throw Error(ErrorKind::InvalidInput, "an ideal needs at least one generator");
  for (const auto& g : generators_) {
    if (g.rank() != over_->branches()) throw Error(ErrorKind::InvalidInput, "ideal generator has the wrong number of branches");
    for (const auto& s : g.components()) {
      if (!s.is_exact()) throw Error(ErrorKind::InvalidInput, "ideal generators must be given exactly");
    }
  }
  floor_ = support_floor(generators_, over_->branches());
  conductor_ = certified_conductor(*over_, generators_, floor_, &over_->conductor());
}

JetSpace<mpq_class> IdealPresentation::jets(const ExponentVector& lo, const ExponentVector& N) const {
  return over_->jet_span(generators_, lo, N);
}

IdealPresentation ring_ideal(const std::shared_ptr<const CurvePresentation>& curve) {
  return IdealPresentation(curve, {TotalRingElement::constant(curve->branches(), 1)});
}

IdealPresentation monomial_ideal(const std::shared_ptr<const CurvePresentation>& curve, const ExponentVector& v) {
  const std::size_t r = curve->branches();
  if (v.size() != r) throw Error(ErrorKind::InvalidInput, "exponent vector has the wrong length");
  const ExponentVector span = max_with_one(curve->conductor());
  std::vector<TotalRingElement> gens;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::int64_t s = 0; s < span[i]; ++s) gens.push_back(TotalRingElement::branch_monomial(r, i, v[i] + s));
  }
  return IdealPresentation(curve, std::move(gens));
}

IdealPresentation normalization_ideal(const std::shared_ptr<const CurvePresentation>& curve) {
  return monomial_ideal(curve, ExponentVector::zero(curve->branches()));
}

JetSpace<mpq_class> jet_span(const IdealPresentation& a, const ExponentVector& N) { return a.jets(a.floor(), N); }

ExponentVector conductor_bound(const IdealPresentation& a) { return a.conductor(); }

bool contains(const IdealPresentation& a, const IdealPresentation& b) {
  const ExponentVector lo = componentwise_min(a.floor(), b.floor());
  const ExponentVector N = componentwise_max(a.conductor(), lo);
  const auto space = a.jets(lo, N);
  for (const auto& g : b.generators()) {
    if (!space.basis.contains(encode(g, space.layout))) return false;
  }
  return true;
}

bool equal(const IdealPresentation& a, const IdealPresentation& b) { return contains(a, b) && contains(b, a); }

std::int64_t dim_quotient(const IdealPresentation& a, const IdealPresentation& b, std::optional<ExponentVector> N) {
  if (!contains(a, b)) throw Error(ErrorKind::NotContained, "the second ideal is not contained in the first");
  const ExponentVector lo = componentwise_min(a.floor(), b.floor());
  ExponentVector level = componentwise_max(componentwise_max(a.conductor(), b.conductor()), lo);
  if (N) level = componentwise_max(level, *N);
  return static_cast<std::int64_t>(a.jets(lo, level).dimension()) -
         static_cast<std::int64_t>(b.jets(lo, level).dimension());
}

IdealPresentation prune(const IdealPresentation& a) {
  const auto& curve = a.over();
  const ExponentVector N = a.conductor() + max_with_one(curve.conductor());
  JetLayout layout(a.floor(), N);
  JetClosure<mpq_class> closure(
      layout, multipliers_for<mpq_class>(curve.maximal_generators(), layout, mpq_class(0), [](const mpq_class& c) { return c; }),
      mpq_class(0), mpq_class(1));
  std::vector<TotalRingElement> kept;
  for (const auto& g : a.generators()) {
    if (closure.add(encode(g, layout))) kept.push_back(g);
  }
  return IdealPresentation(a.curve(), std::move(kept));
}

IdealPresentation colon(const IdealPresentation& a, const IdealPresentation& b) {
  if (a.curve() != b.curve()) throw Error(ErrorKind::InvalidInput, "ideals over different curves");
  const auto& curve = a.curve();
  const std::size_t r = curve->branches();
  const ExponentVector alpha = a.floor(), beta = b.floor(), ca = a.conductor();
  // Every x with x b in a has order >= alpha - beta, and t^(ca - beta) Obar
  // is in the colon, so only the monomials in between are unknowns.
  const ExponentVector L = alpha - beta, U = ca - beta;
  const auto space = a.jets(alpha, ca);
  const JetLayout& layout = space.layout;

  std::vector<TotalRingElement> unknowns;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::int64_t e = L[i]; e < U[i]; ++e) unknowns.push_back(TotalRingElement::branch_monomial(r, i, e));
  }
  std::vector<TotalRingElement> candidates;
  if (!unknowns.empty()) {
    const std::size_t width = layout.columns() * b.generators().size();
    std::vector<std::vector<mpq_class>> matrix;
    for (const auto& m : unknowns) {
      std::vector<mpq_class> row;
      row.reserve(width);
      for (const auto& g : b.generators()) {
        const auto rest = space.basis.reduce(encode(m * g, layout));
        row.insert(row.end(), rest.begin(), rest.end());
      }
      matrix.push_back(std::move(row));
    }
    const auto kernel = RowEchelon<mpq_class>::left_nullspace(matrix, width, mpq_class(0), mpq_class(1));
    RowEchelon<mpq_class> tidy(unknowns.size(), mpq_class(0));
    for (const auto& x : kernel) tidy.insert(x);
    for (const auto& x : tidy.rows()) {
      TotalRingElement z = TotalRingElement(std::vector<BranchSeries>(r));
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (!is_zero(x[k])) z = z + unknowns[k].scaled(x[k]);
      }
      candidates.push_back(std::move(z));
    }
  }
  const ExponentVector span = max_with_one(curve->conductor());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::int64_t s = 0; s < span[i]; ++s) candidates.push_back(TotalRingElement::branch_monomial(r, i, U[i] + s));
  }
  for (const auto& x : candidates) {
    for (const auto& g : b.generators()) {
      const auto prod = x * g;
      bool zero = true;
      for (const auto& s : prod.components()) zero = zero && s.terms().empty();
      if (zero) continue;
      if (!space.basis.contains(encode(prod, layout))) {
        throw std::logic_error("colon generator fails the membership check");
      }
    }
  }
  return prune(IdealPresentation(curve, std::move(candidates)));
}

IdealPresentation product(const IdealPresentation& a, const IdealPresentation& b) {
  if (a.curve() != b.curve()) throw Error(ErrorKind::InvalidInput, "ideals over different curves");
  std::vector<TotalRingElement> gens;
  for (const auto& x : a.generators()) {
    for (const auto& y : b.generators()) gens.push_back(x * y);
  }
  return IdealPresentation(a.curve(), std::move(gens));
}

IdealPresentation sum(const IdealPresentation& a, const IdealPresentation& b) {
  if (a.curve() != b.curve()) throw Error(ErrorKind::InvalidInput, "ideals over different curves");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return IdealPresentation(a.curve(), std::move(gens));
}

IdealPresentation dual(const IdealPresentation& b, const IdealPresentation& c) { return colon(c, b); }

CanonicalVerdict verify_canonical(const IdealPresentation& c, const std::vector<IdealPresentation>& family,
                                  const std::vector<std::string>& names) {
  CanonicalVerdict out;
  std::vector<std::pair<std::string, IdealPresentation>> all;
  for (std::size_t k = 0; k < family.size(); ++k) {
    all.emplace_back(k < names.size() ? names[k] : "ideal " + std::to_string(k + 1), family[k]);
  }
  const std::size_t r = c.rank();
  const ExponentVector one = ExponentVector::ones(r);
  for (const auto& v : Window(-one, one).points()) {
    all.emplace_back("t^" + v.to_string() + " Obar", monomial_ideal(c.curve(), v));
  }
  for (const auto& [name, a] : all) {
    ++out.family_size;
    if (!equal(colon(c, colon(c, a)), a)) {
      out.canonical = false;
      out.failures.push_back(name + " differs from c : (c : " + name + ")");
    }
  }
  return out;
}

std::int64_t degree(const IdealPresentation& a) {
  const auto ring = ring_ideal(a.curve());
  const auto s = sum(a, ring);
  return dim_quotient(s, ring) - dim_quotient(s, a);
}

ValueModule value_set(const IdealPresentation& b, std::int64_t margin, std::shared_ptr<const ValueModule> ambient) {
  if (margin < 1) throw Error(ErrorKind::InvalidInput, "margin must be at least 1");
  const std::size_t r = b.rank();
  const ExponentVector beta = b.floor();
  const ExponentVector g = b.relative_conductor();
  const ExponentVector N = beta + g + ExponentVector(r, margin + 1);
  const auto space = b.jets(beta, N);
  std::map<ExponentVector, std::size_t> cache;
  auto codim = [&](const ExponentVector& w) {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, space.rank_below(w)).first;
    return it->second;
  };
  auto member = [&](const ExponentVector& v) {
    const ExponentVector w = beta + v;
    for (std::size_t i = 0; i < r; ++i) {
      if (codim(w + ExponentVector::unit(r, i)) - codim(w) != 1) return false;
    }
    return true;
  };
  const Window box(ExponentVector::zero(r), g);
  std::vector<ExponentVector> members;
  for (const auto& v : box.points()) {
    if (member(v)) members.push_back(v);
  }
  for (const auto& v : Window(ExponentVector::zero(r), g + ExponentVector(r, margin)).points()) {
    if (box.contains(v)) continue;
    const ExponentVector clipped = componentwise_min(v, g);
    if (member(v) != std::binary_search(members.begin(), members.end(), clipped)) {
      throw Error(ErrorKind::ClipRuleViolation, "membership of " + v.to_string() + " differs from that of " +
                                                    clipped.to_string());
    }
  }
  return ValueModule(g, std::move(members), ExponentVector::ones(r), degree(b), std::move(ambient));
}

LengthsReport lengths_report(const IdealPresentation& b, const IdealPresentation* canonical) {
  LengthsReport out;
  const auto obar = normalization_ideal(b.curve());
  const auto bbar = product(b, obar);
  const auto cond = colon(b, obar);
  out.b_over_conductor = dim_quotient(b, cond);
  out.bbar_over_conductor = dim_quotient(bbar, cond);
  out.bbar_over_b = dim_quotient(bbar, b);
  out.halving_inequality = 2 * out.b_over_conductor <= out.bbar_over_conductor;
  out.halving_equality = 2 * out.b_over_conductor == out.bbar_over_conductor;
  if (canonical) {
    const auto bs = dual(b, *canonical);
    out.dual_bbar_over_dual = dim_quotient(product(bs, obar), bs);
    out.dual_length_equality = *out.dual_bbar_over_dual == out.b_over_conductor;
  }
  return out;
}

CountResult count_points_mod_q(const CurvePresentation& curve, std::uint64_t p, const ExponentVector& v,
                               const ExponentVector& level, std::uint64_t ceiling) {
  const FieldSpec field = FieldSpec::prime(p);
  const std::size_t r = curve.branches();
  if (v.size() != r || level.size() != r) throw Error(ErrorKind::InvalidInput, "value or level has the wrong length");
  if (!ExponentVector::zero(r).leq(v)) throw Error(ErrorKind::InvalidInput, "values are nonnegative");
  for (std::size_t i = 0; i < r; ++i) {
    if (v[i] >= level[i]) {
      throw Error(ErrorKind::InvalidInput, "value " + v.to_string() + " is not below the level " + level.to_string());
    }
  }
  auto reduce = [&](const mpq_class& c) {
    const mpz_class num = c.get_num() % mpz_class(field.p);
    const mpz_class den = c.get_den() % mpz_class(field.p);
    if (den == 0) throw Error(ErrorKind::BadReduction, "a denominator vanishes mod " + std::to_string(field.p));
    const mpz_class nonneg = (num + field.p) % field.p;
    const Fp n(nonneg.get_ui(), field.p);
    return n * Fp(den.get_ui(), field.p).inverse();
  };
  for (const auto& g : curve.maximal_generators()) {
    for (const auto& s : g.components()) {
      if (!s.terms().empty() && reduce(s.terms().begin()->second).v == 0) {
        throw Error(ErrorKind::BadReduction, "a leading coefficient vanishes mod " + std::to_string(field.p));
      }
    }
  }
  const Fp zero(0, field.p), one(1, field.p);
  JetLayout layout(ExponentVector::zero(r), level + ExponentVector::ones(r));
  JetClosure<Fp> closure(layout, multipliers_for<Fp>(curve.maximal_generators(), layout, zero, reduce), zero, one);
  std::vector<Fp> unit(layout.columns(), zero);
  for (std::size_t i = 0; i < r; ++i) unit[layout.column(i, 0)] = one;
  closure.add(unit);

  const auto& rows = closure.echelon().rows();
  CountResult out;
  out.dimension = rows.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (total > ceiling / field.p) {
      throw Error(ErrorKind::EnumerationTooLarge, std::to_string(field.p) + "^" + std::to_string(rows.size()) +
                                                      " elements exceed the ceiling " + std::to_string(ceiling));
    }
    total *= field.p;
  }
  // Only the columns up to v_i in each branch decide the value.
  std::vector<std::size_t> cols, start;
  for (std::size_t i = 0; i < r; ++i) {
    start.push_back(cols.size());
    for (std::int64_t e = 0; e <= v[i]; ++e) cols.push_back(layout.column(i, e));
  }
  std::vector<std::vector<std::uint64_t>> proj(rows.size(), std::vector<std::uint64_t>(cols.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t c = 0; c < cols.size(); ++c) proj[k][c] = rows[k][cols[c]].v;
  }
  std::vector<std::uint64_t> digits(rows.size(), 0), acc(cols.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    if (n > 0) {
      // Odometer step: bump the lowest digit, updating the running combination.
      std::size_t k = 0;
      while (true) {
        if (digits[k] + 1 < field.p) {
          ++digits[k];
          for (std::size_t c = 0; c < cols.size(); ++c) acc[c] = (acc[c] + proj[k][c]) % field.p;
          break;
        }
        for (std::size_t c = 0; c < cols.size(); ++c) {
          acc[c] = (acc[c] + (field.p - 1) * (field.p - proj[k][c]) % field.p) % field.p;
        }
        digits[k] = 0;
        ++k;
      }
    }
    bool exact = true;
    for (std::size_t i = 0; i < r && exact; ++i) {
      for (std::int64_t e = 0; e <= v[i] && exact; ++e) {
        const bool nonzero = acc[start[i] + static_cast<std::size_t>(e)] != 0;
        exact = (e == v[i]) == nonzero;
      }
    }
    if (exact) ++out.count;
  }
  return out;
}

const char* to_string(DirectDuality d) noexcept {
  switch (d) {
    case DirectDuality::SelfDual: return "self-dual";
    case DirectDuality::NotSelfDual: return "not self-dual";
    case DirectDuality::Undetermined: return "undetermined";
  }
  return "undetermined";
}

DirectDualityResult self_duality_direct(const IdealPresentation& b, const IdealPresentation& bstar,
                                        std::uint32_t seed) {
  DirectDualityResult out;
  const auto vb = value_set(b), vs = value_set(bstar);
  if (vb.gamma() != vs.gamma() || vb.box_members() != vs.box_members()) {
    out.verdict = DirectDuality::NotSelfDual;
    out.note = "normalized value sets differ";
    return out;
  }
  const ExponentVector target = bstar.floor() - b.floor();
  const auto candidates = colon(bstar, b).generators();
  auto try_candidate = [&](const TotalRingElement& z) {
    try {
      if (value_of(z) != target) return false;
    } catch (const Error&) {
      return false;
    }
    std::vector<TotalRingElement> gens;
    for (const auto& g : b.generators()) gens.push_back(z * g);
    return equal(IdealPresentation(b.curve(), std::move(gens)), bstar);
  };
  for (const auto& z : candidates) {
    if (try_candidate(z)) {
      out.verdict = DirectDuality::SelfDual;
      out.witness = z;
      out.note = "witness found among colon generators";
      return out;
    }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (int attempt = 0; attempt < 8; ++attempt) {
    TotalRingElement z(std::vector<BranchSeries>(b.rank()));
    for (const auto& g : candidates) z = z + g.scaled(mpq_class(num(rng), den(rng)));
    if (try_candidate(z)) {
      out.verdict = DirectDuality::SelfDual;
      out.witness = z;
      out.note = "witness found as a random combination";
      return out;
    }
  }
  out.note = "no witness among the candidates tried";
  return out;
}

}  // namespace singval
