#pragma once

// Generating series of the filtration J^b(v) and windowed checks of the
// identities relating them.
//
// Series are indexed by normalized values (v = 0 is the floor of b) while
// degrees are absolute, taken from ValueModule::deg_offset.

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "singval/lattice.hpp"
#include "singval/lefschetz.hpp"
#include "singval/value_module.hpp"

namespace singval {

/// sum L^{deg J(v)} t^v
WindowSeries series_A(const ValueModule& vm, const Window& w);
/// sum (L^{deg J(v)} - L^{deg J(v+1)}) t^v
WindowSeries series_Lg(const ValueModule& vm, const Window& w);
/// Motivic Poincare series over the projectivized ideal.
WindowSeries series_Pg(const ValueModule& vm, const Window& w);
/// sum [P(J(v)/J(v+1))] t^v
WindowSeries series_Lhat(const ValueModule& vm, const Window& w);
/// sum [P F_v] t^v, with F_v the fibre of the extended value set.
WindowSeries series_Phat(const ValueModule& vm, const Window& w);

struct SpecializedSeries {
  Window window;
  std::vector<mpq_class> values;

  const mpq_class& at(const ExponentVector& v) const { return values[window.index_of(v)]; }
};
/// Evaluates every coefficient at L = q.
SpecializedSeries specialize(const WindowSeries& s, const mpz_class& q);

/// Called on every base series right after it is built; the return value is
/// used instead. Lets a harness inject corruption.
using SeriesHook = std::function<WindowSeries(const std::string& name, WindowSeries)>;

struct IdentityCheck {
  std::string name;
  std::string statement;
  Window window;
  SeriesComparison comparison;
  WindowSeries lhs;
  WindowSeries rhs;

  bool holds() const noexcept { return comparison.equal; }
};
/// Both sides agree on the window after L -> value (value = 1 gives Euler characteristics).
bool holds_at(const IdentityCheck& c, const mpz_class& value);

/// (L - 1)(t_1...t_r - 1) P_g = prod (t_i - 1) L_g
IdentityCheck check_pg_from_lg(const ValueModule& vm, const SeriesHook& hook = nullptr);
/// (t_1...t_r - 1) Phat = prod (t_i - 1) Lhat
IdentityCheck check_phat_from_lhat(const ValueModule& vm, const SeriesHook& hook = nullptr);

/// deg J^{b*}(u) = deg J^b(gamma - u) + l_b(gamma) - u.d + deg b* - deg b
IdentityCheck check_degree_duality(const ValueModule& b, const ValueModule& bstar);
/// l(gamma - v) - l(v) = delta - v.d, for a Gorenstein ring.
IdentityCheck check_gorenstein_length_symmetry(const ValueModule& ring, std::int64_t delta);
/// delta - d = l(gamma - 1) - 1, for a Gorenstein ring.
bool gorenstein_delta_relation(const ValueModule& ring, std::int64_t delta);
/// c^{b*}(v) = d - c^b(gamma - v - 1)
IdentityCheck check_dual_c_profile(const ValueModule& b, const ValueModule& bstar);

/// Exponent K with A(b, L^d t) = L^K t^gamma A(b*, t^-1).
std::int64_t duality_exponent(const ValueModule& b, const ValueModule& bstar);

/// (1 - T) L_g(b, L^d t) = L^{K-d} t^{gamma-1} (L^d T - 1) L_g(b*, t^-1), T = t_1...t_r
IdentityCheck check_lg_functional_equation(const ValueModule& b, const ValueModule& bstar,
                                           const SeriesHook& hook = nullptr);
/// prod (t_i - 1) P_g(b, L^d t) = L^{K-d} t^{gamma-1} prod (1 - L^{d_i} t_i) P_g(b*, t^-1)
IdentityCheck check_pg_functional_equation(const ValueModule& b, const ValueModule& bstar,
                                           const SeriesHook& hook = nullptr);
/// (T - 1) t^{gamma-1} Lhat(b, t^-1, L) = (T - 1) (-L^{d-1}) Lhat(b*, t, L^-1)
IdentityCheck check_lhat_functional_equation(const ValueModule& b, const ValueModule& bstar,
                                             const SeriesHook& hook = nullptr);
/// t^{gamma-1} Lhat(b, t^-1, L) + L^{d-1} Lhat(b*, t, L^-1) = [P^{d-1}] at every point
IdentityCheck check_lhat_constant_defect(const ValueModule& b, const ValueModule& bstar);
/// (T - 1) t^{gamma-1} Phat(b, t^-1, L) = (-1)^r L^{d-1} (T - 1) Phat(b*, t, L^-1)
IdentityCheck check_phat_functional_equation(const ValueModule& b, const ValueModule& bstar,
                                             const SeriesHook& hook = nullptr);

}  // namespace singval
