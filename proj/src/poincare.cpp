#include "singval/poincare.hpp"

#include "singval/errors.hpp"

namespace singval {

namespace {

const GrothendieckClass kL = GrothendieckClass::lefschetz();

GrothendieckClass L_pow(std::int64_t e) { return GrothendieckClass::lefschetz(e); }

WindowSeries hooked(const SeriesHook& hook, const std::string& name, WindowSeries s) {
  return hook ? hook(name, std::move(s)) : s;
}

unsigned subset_count(std::size_t r) { return 1u << r; }

int sign_of(unsigned mask) { return __builtin_popcount(mask) % 2 ? -1 : 1; }

void require_pair(const ValueModule& b, const ValueModule& bstar) {
  if (b.rank() != bstar.rank()) throw Error(ErrorKind::InvalidInput, "dual pair with different branch counts");
  if (b.gamma() != bstar.gamma()) {
    throw Error(ErrorKind::InvalidInput, "a module and its dual must share gamma, got " + b.gamma().to_string() +
                                             " and " + bstar.gamma().to_string());
  }
  if (b.weights() != bstar.weights()) throw Error(ErrorKind::InvalidInput, "dual pair with different weights");
}

// Every identity is checked on [-2, gamma + 2].
Window target_window(const ValueModule& vm) {
  const Window w = vm.check_window(2);
  for (std::size_t i = 0; i < vm.rank(); ++i) {
    if (w.hi()[i] - w.lo()[i] + 1 < vm.gamma()[i] + 3) {
      throw Error(ErrorKind::WindowNotCovered, "check window " + w.to_string() + " is too small");
    }
  }
  return w;
}

IdentityCheck make_check(std::string name, std::string statement, const Window& w, const WindowSeries& lhs,
                         const WindowSeries& rhs) {
  return IdentityCheck{std::move(name), std::move(statement), w, compare_on(lhs, rhs, w), lhs, rhs};
}

// prod_i (1 - L^{d_i} t_i)
LatticePolynomial one_minus_scaled_vars(const ExponentVector& weights) {
  LatticePolynomial p = LatticePolynomial::product_of_var_minus_one(weights.size()).scale_vars(weights);
  if (weights.size() % 2) p = p * LatticePolynomial::constant(weights.size(), -1);
  return p;
}

}  // namespace

WindowSeries series_A(const ValueModule& vm, const Window& w) {
  return WindowSeries::build(w, [&](const ExponentVector& v) { return L_pow(vm.deg_J(v)); });
}

WindowSeries series_Lg(const ValueModule& vm, const Window& w) {
  const auto one = ExponentVector::ones(vm.rank());
  return WindowSeries::build(w, [&](const ExponentVector& v) { return L_pow(vm.deg_J(v)) - L_pow(vm.deg_J(v + one)); });
}

WindowSeries series_Pg(const ValueModule& vm, const Window& w) {
  const std::size_t r = vm.rank();
  return WindowSeries::build(w, [&](const ExponentVector& v) {
    GrothendieckClass sum;
    for (unsigned mask = 0; mask < subset_count(r); ++mask) {
      const auto term = L_pow(vm.deg_J(v + ExponentVector::indicator(r, mask)));
      if (sign_of(mask) > 0) sum += term; else sum -= term;
    }
    return div_exact(sum, kL - 1);
  });
}

WindowSeries series_Lhat(const ValueModule& vm, const Window& w) {
  return WindowSeries::build(w, [&](const ExponentVector& v) { return projective_space_class(vm.c_total(v)); });
}

WindowSeries series_Phat(const ValueModule& vm, const Window& w) {
  const std::size_t r = vm.rank();
  const auto one = ExponentVector::ones(r);
  return WindowSeries::build(w, [&](const ExponentVector& v) {
    const std::int64_t top = vm.ell(v + one);
    GrothendieckClass sum;
    for (unsigned mask = 0; mask < subset_count(r); ++mask) {
      const auto term = projective_space_class(top - vm.ell(v + ExponentVector::indicator(r, mask)));
      if (sign_of(mask) > 0) sum += term; else sum -= term;
    }
    return sum;
  });
}

SpecializedSeries specialize(const WindowSeries& s, const mpz_class& q) {
  if (q < 2) throw Error(ErrorKind::InvalidInput, "specialization needs q >= 2");
  SpecializedSeries out{s.window(), {}};
  out.values.reserve(s.coefficients().size());
  for (const auto& c : s.coefficients()) out.values.push_back(c.evaluate(q));
  return out;
}

bool holds_at(const IdentityCheck& c, const mpz_class& value) {
  const auto at = [&](const GrothendieckClass& x) {
    return value == 1 ? mpq_class(x.euler_characteristic()) : x.evaluate(value);
  };
  for (const auto& v : c.window.points()) {
    if (at(c.lhs.at(v)) != at(c.rhs.at(v))) return false;
  }
  return true;
}

IdentityCheck check_pg_from_lg(const ValueModule& vm, const SeriesHook& hook) {
  const std::size_t r = vm.rank();
  const Window w = target_window(vm);
  const auto p_left = LatticePolynomial::all_vars_minus_one(r) * LatticePolynomial::constant(r, kL - 1);
  const auto p_right = LatticePolynomial::product_of_var_minus_one(r);
  const auto pg = hooked(hook, "Pg", series_Pg(vm, source_window_for(w, p_left)));
  const auto lg = hooked(hook, "Lg", series_Lg(vm, source_window_for(w, p_right)));
  return make_check("pg_from_lg", "(L - 1)(T - 1) P_g = prod(t_i - 1) L_g", w, pg.mul_poly(p_left),
                    lg.mul_poly(p_right));
}

IdentityCheck check_phat_from_lhat(const ValueModule& vm, const SeriesHook& hook) {
  const std::size_t r = vm.rank();
  const Window w = target_window(vm);
  const auto p_left = LatticePolynomial::all_vars_minus_one(r);
  const auto p_right = LatticePolynomial::product_of_var_minus_one(r);
  const auto ph = hooked(hook, "Phat", series_Phat(vm, source_window_for(w, p_left)));
  const auto lh = hooked(hook, "Lhat", series_Lhat(vm, source_window_for(w, p_right)));
  return make_check("phat_from_lhat", "(T - 1) Phat = prod(t_i - 1) Lhat", w, ph.mul_poly(p_left),
                    lh.mul_poly(p_right));
}

IdentityCheck check_degree_duality(const ValueModule& b, const ValueModule& bstar) {
  require_pair(b, bstar);
  const Window w = target_window(b);
  const auto& g = b.gamma();
  const std::int64_t D = b.ell(g);
  const std::int64_t E = bstar.deg_offset() - b.deg_offset();
  const auto lhs = WindowSeries::build(w, [&](const ExponentVector& u) { return GrothendieckClass(bstar.deg_J(u)); });
  const auto rhs = WindowSeries::build(w, [&](const ExponentVector& u) {
    return GrothendieckClass(b.deg_J(g - u) + D - u.dot(b.weights()) + E);
  });
  return make_check("degree_duality", "deg J*(u) = deg J(gamma - u) + l(gamma) - u.d + deg b* - deg b", w, lhs, rhs);
}

IdentityCheck check_gorenstein_length_symmetry(const ValueModule& ring, std::int64_t delta) {
  const Window w = target_window(ring);
  const auto& g = ring.gamma();
  const auto lhs = WindowSeries::build(w, [&](const ExponentVector& v) {
    return GrothendieckClass(ring.ell(g - v) - ring.ell(v));
  });
  const auto rhs = WindowSeries::build(w, [&](const ExponentVector& v) {
    return GrothendieckClass(delta - v.dot(ring.weights()));
  });
  return make_check("gorenstein_length_symmetry", "l(gamma - v) - l(v) = delta - v.d", w, lhs, rhs);
}

bool gorenstein_delta_relation(const ValueModule& ring, std::int64_t delta) {
  return delta - ring.d() == ring.ell(ring.gamma() - ExponentVector::ones(ring.rank())) - 1;
}

IdentityCheck check_dual_c_profile(const ValueModule& b, const ValueModule& bstar) {
  require_pair(b, bstar);
  const Window w = target_window(b);
  const auto lhs = WindowSeries::build(w, [&](const ExponentVector& v) { return GrothendieckClass(bstar.c_total(v)); });
  const auto rhs = WindowSeries::build(w, [&](const ExponentVector& v) { return GrothendieckClass(b.dual_c_profile(v)); });
  return make_check("dual_c_profile", "c*(v) = d - c(gamma - v - 1)", w, lhs, rhs);
}

std::int64_t duality_exponent(const ValueModule& b, const ValueModule& bstar) {
  require_pair(b, bstar);
  return b.deg_offset() + b.gamma().dot(b.weights()) - b.ell(b.gamma()) - bstar.deg_offset();
}

IdentityCheck check_lg_functional_equation(const ValueModule& b, const ValueModule& bstar, const SeriesHook& hook) {
  require_pair(b, bstar);
  const std::size_t r = b.rank();
  const Window w = target_window(b);
  const auto& d = b.weights();
  const auto shift = b.gamma() - ExponentVector::ones(r);
  const auto T1 = LatticePolynomial::all_vars_minus_one(r);
  const auto p_left = T1 * LatticePolynomial::constant(r, -1);
  const auto p_right = T1.scale_vars(d);

  const auto lg = hooked(hook, "Lg", series_Lg(b, source_window_for(w, p_left)));
  const auto lhs = lg.scale_vars(d).mul_poly(p_left);

  const Window inner = source_window_for(w.shifted(-shift), p_right);
  const auto lg_star = hooked(hook, "Lg*", series_Lg(bstar, inner.negated()));
  const auto rhs = lg_star.invert_vars().mul_poly(p_right).mul_monomial(shift, L_pow(duality_exponent(b, bstar) - b.d()));
  return make_check("lg_functional_equation",
                    "(1 - T) L_g(b, L^d t) = L^(K-d) t^(gamma-1) (L^d T - 1) L_g(b*, 1/t)", w, lhs, rhs);
}

IdentityCheck check_pg_functional_equation(const ValueModule& b, const ValueModule& bstar, const SeriesHook& hook) {
  require_pair(b, bstar);
  const std::size_t r = b.rank();
  const Window w = target_window(b);
  const auto& d = b.weights();
  const auto shift = b.gamma() - ExponentVector::ones(r);
  const auto p_left = LatticePolynomial::product_of_var_minus_one(r);
  const auto p_right = one_minus_scaled_vars(d);

  const auto pg = hooked(hook, "Pg", series_Pg(b, source_window_for(w, p_left)));
  const auto lhs = pg.scale_vars(d).mul_poly(p_left);

  const Window inner = source_window_for(w.shifted(-shift), p_right);
  const auto pg_star = hooked(hook, "Pg*", series_Pg(bstar, inner.negated()));
  const auto rhs = pg_star.invert_vars().mul_poly(p_right).mul_monomial(shift, L_pow(duality_exponent(b, bstar) - b.d()));
  return make_check("pg_functional_equation",
                    "prod(t_i - 1) P_g(b, L^d t) = L^(K-d) t^(gamma-1) prod(1 - L^d_i t_i) P_g(b*, 1/t)", w, lhs, rhs);
}

IdentityCheck check_lhat_functional_equation(const ValueModule& b, const ValueModule& bstar, const SeriesHook& hook) {
  require_pair(b, bstar);
  const std::size_t r = b.rank();
  const Window w = target_window(b);
  const auto shift = b.gamma() - ExponentVector::ones(r);
  const auto T1 = LatticePolynomial::all_vars_minus_one(r);

  const Window left_inner = source_window_for(w, T1).shifted(-shift);
  const auto lh = hooked(hook, "Lhat", series_Lhat(b, left_inner.negated()));
  const auto lhs = lh.invert_vars().mul_monomial(shift, 1).mul_poly(T1);

  const auto lh_star = hooked(hook, "Lhat*", series_Lhat(bstar, source_window_for(w, T1)));
  const auto rhs = lh_star.map_coefficients([](const GrothendieckClass& c) { return c.invert_lefschetz(); })
                       .mul_poly(T1)
                       .mul_monomial(ExponentVector::zero(r), -L_pow(b.d() - 1));
  return make_check("lhat_functional_equation",
                    "(T - 1) t^(gamma-1) Lhat(b, 1/t, L) = (T - 1) (-L^(d-1)) Lhat(b*, t, 1/L)", w, lhs, rhs);
}

IdentityCheck check_lhat_constant_defect(const ValueModule& b, const ValueModule& bstar) {
  require_pair(b, bstar);
  const std::size_t r = b.rank();
  const Window w = target_window(b);
  const auto shift = b.gamma() - ExponentVector::ones(r);
  const auto lh = series_Lhat(b, w.shifted(-shift).negated()).invert_vars().mul_monomial(shift, 1);
  const auto lh_star = series_Lhat(bstar, w)
                           .map_coefficients([](const GrothendieckClass& c) { return c.invert_lefschetz(); })
                           .mul_monomial(ExponentVector::zero(r), L_pow(b.d() - 1));
  const auto sum = WindowSeries::build(w, [&](const ExponentVector& v) { return lh.at(v) + lh_star.at(v); });
  const auto expected = WindowSeries::build(w, [&](const ExponentVector&) { return projective_space_class(b.d()); });
  return make_check("lhat_constant_defect", "t^(gamma-1) Lhat(b, 1/t, L) + L^(d-1) Lhat(b*, t, 1/L) = [P^(d-1)]", w,
                    sum, expected);
}

IdentityCheck check_phat_functional_equation(const ValueModule& b, const ValueModule& bstar, const SeriesHook& hook) {
  require_pair(b, bstar);
  const std::size_t r = b.rank();
  const Window w = target_window(b);
  const auto shift = b.gamma() - ExponentVector::ones(r);
  const auto T1 = LatticePolynomial::all_vars_minus_one(r);

  const Window left_inner = source_window_for(w, T1).shifted(-shift);
  const auto ph = hooked(hook, "Phat", series_Phat(b, left_inner.negated()));
  const auto lhs = ph.invert_vars().mul_monomial(shift, 1).mul_poly(T1);

  const GrothendieckClass sign = r % 2 ? -1 : 1;
  const auto ph_star = hooked(hook, "Phat*", series_Phat(bstar, source_window_for(w, T1)));
  const auto rhs = ph_star.map_coefficients([](const GrothendieckClass& c) { return c.invert_lefschetz(); })
                       .mul_poly(T1)
                       .mul_monomial(ExponentVector::zero(r), sign * L_pow(b.d() - 1));
  return make_check("phat_functional_equation",
                    "(T - 1) t^(gamma-1) Phat(b, 1/t, L) = (-1)^r L^(d-1) (T - 1) Phat(b*, t, 1/L)", w, lhs, rhs);
}

}  // namespace singval
