#pragma once

#include <functional>
#include <memory>
#include <set>
#include <vector>

#include <doctest.h>

#include "singval/curve.hpp"
#include "singval/errors.hpp"

namespace fixtures {

using namespace singval;

inline BranchSeries ser(std::initializer_list<std::pair<std::int64_t, long>> terms) {
  BranchSeries::Terms t;
  for (const auto& [e, c] : terms) t[e] = c;
  return BranchSeries(t);
}

inline TotalRingElement el(std::vector<BranchSeries> comps) { return TotalRingElement(std::move(comps)); }

inline BranchSeries mono(std::int64_t e) { return ser({{e, 1}}); }
inline BranchSeries none() { return BranchSeries(); }

using CurvePtr = std::shared_ptr<const CurvePresentation>;

inline CurvePtr monomial_curve(std::vector<std::int64_t> exps) {
  std::vector<TotalRingElement> gens;
  for (auto e : exps) gens.push_back(el({mono(e)}));
  return std::make_shared<const CurvePresentation>(FieldSpec::rational(), 1, gens);
}

inline CurvePtr cusp() { return monomial_curve({2, 3}); }
inline CurvePtr e8() { return monomial_curve({3, 5}); }
inline CurvePtr c345() { return monomial_curve({3, 4, 5}); }

inline CurvePtr node() {
  return std::make_shared<const CurvePresentation>(
      FieldSpec::rational(), 2, std::vector<TotalRingElement>{el({mono(1), none()}), el({none(), mono(1)})});
}

inline CurvePtr tacnode() {
  return std::make_shared<const CurvePresentation>(
      FieldSpec::rational(), 2, std::vector<TotalRingElement>{el({mono(1), mono(1)}), el({none(), mono(2)})});
}

inline IdealPresentation ideal(const CurvePtr& c, std::vector<TotalRingElement> gens) {
  return IdealPresentation(c, std::move(gens));
}

inline IdealPresentation maximal(const CurvePtr& c) { return ideal(c, c->generators()); }

/// Numerical semigroup generated by `gens`, listed up to `limit`.
inline std::set<std::int64_t> semigroup(const std::vector<std::int64_t>& gens, std::int64_t limit) {
  std::set<std::int64_t> s{0};
  for (std::int64_t n = 1; n <= limit; ++n) {
    for (auto g : gens) {
      if (n >= g && s.count(n - g)) {
        s.insert(n);
        break;
      }
    }
  }
  return s;
}

inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Unsupported;
}

}  // namespace fixtures
