#include <doctest.h>

#include <random>

#include "singval/errors.hpp"
#include "singval/lattice.hpp"

using namespace singval;

namespace {

GrothendieckClass L(std::int64_t e = 1) { return GrothendieckClass::lefschetz(e); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Unsupported;
}

WindowSeries random_series(std::mt19937& rng, const Window& w) {
  std::uniform_int_distribution<int> exp(-3, 3), coef(-5, 5);
  return WindowSeries::build(w, [&](const ExponentVector&) {
    return GrothendieckClass::monomial(coef(rng), exp(rng)) + GrothendieckClass(coef(rng));
  });
}

}  // namespace

TEST_CASE("build") {
  const auto s = WindowSeries::build(Window({0}, {2}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(s.coefficients().size() == 3);
  for (int v = 0; v <= 2; ++v) CHECK(s.at({v}) == GrothendieckClass(1));

  const auto d = WindowSeries::build(Window({-1}, {1}), [](const ExponentVector& v) {
    return GrothendieckClass(v[0] == 0 ? 1 : 0);
  });
  CHECK(d.at({0}) == GrothendieckClass(1));
  CHECK(d.at({-1}).is_zero());
  CHECK(d.at({1}).is_zero());

  const auto two = WindowSeries::build(Window({0, 0}, {1, 1}), [](const ExponentVector&) { return L(); });
  CHECK(two.coefficients().size() == 4);
}

TEST_CASE("window points are lexicographic") {
  const Window w({0, -1}, {1, 0});
  const auto pts = w.points();
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == ExponentVector{0, -1});
  CHECK(pts[1] == ExponentVector{0, 0});
  CHECK(pts[2] == ExponentVector{1, -1});
  CHECK(pts[3] == ExponentVector{1, 0});
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(w.index_of(pts[k]) == k);
  CHECK(kind_of([] { Window({1}, {0}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("scale_vars") {
  const Window w({2, 1}, {2, 1});
  const auto s = WindowSeries::build(w, [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(s.scale_vars({1, 1}).at({2, 1}) == L(3));
  CHECK(s.scale_vars({0, 0}) == s);
  const auto t = WindowSeries::build(Window({-1}, {-1}), [](const ExponentVector&) { return L(-1); });
  CHECK(t.scale_vars({1}).at({-1}) == L(-2));
}

TEST_CASE("invert_vars") {
  const Window w({2, -1}, {3, 0});
  const auto s = WindowSeries::build(w, [](const ExponentVector& v) { return L(v[0] * 10 + v[1]); });
  const auto inv = s.invert_vars();
  CHECK(inv.at({-2, 1}) == s.at({2, -1}));
  CHECK(inv.invert_vars() == s);
  const auto one = WindowSeries::build(Window({0}, {3}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(one.invert_vars().window() == Window({-3}, {0}));
}

TEST_CASE("mul_monomial") {
  const auto s = WindowSeries::build(Window({0, 0}, {0, 0}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(s.mul_monomial({0, 0}, 1) == s);
  const auto m = s.mul_monomial({1, 1}, L());
  CHECK(m.at({1, 1}) == L());
  const auto r1 = WindowSeries::build(Window({0}, {2}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(r1.mul_monomial({-5}, 1).window() == Window({-5}, {-3}));
}

TEST_CASE("mul_poly") {
  const auto s = WindowSeries::build(Window({0}, {2}), [](const ExponentVector&) { return GrothendieckClass(1); });
  const auto p = LatticePolynomial::var_minus_one(1, 0);
  const auto out = s.mul_poly(p);
  CHECK(out.window() == Window({1}, {2}));
  CHECK(out.at({1}).is_zero());
  CHECK(out.at({2}).is_zero());
  CHECK(s.mul_poly(LatticePolynomial::constant(1, 1)) == s);

  const auto s2 = WindowSeries::build(Window({0, 0}, {3, 3}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(s2.mul_poly(LatticePolynomial::product_of_var_minus_one(2)).window() == Window({1, 1}, {3, 3}));

  const auto tiny = WindowSeries::build(Window({0}, {0}), [](const ExponentVector&) { return GrothendieckClass(1); });
  CHECK(kind_of([&] { (void)tiny.mul_poly(p); }) == ErrorKind::EmptyResultWindow);
}

TEST_CASE("compare_on") {
  const Window w({-1, -1}, {2, 2});
  const auto s = WindowSeries::build(w, [](const ExponentVector& v) { return L(v[0] - v[1]); });
  auto res = compare_on(s, s, w);
  CHECK(res.equal);
  CHECK(res.points_checked == 16);

  const auto bad = s.with_coefficient({1, 0}, L(7));
  res = compare_on(s, bad, w);
  CHECK_FALSE(res.equal);
  REQUIRE(res.first_mismatch);
  CHECK(res.first_mismatch->point == ExponentVector{1, 0});
  CHECK(res.first_mismatch->lhs == L(1));
  CHECK(res.first_mismatch->rhs == L(7));

  CHECK(kind_of([&] { (void)compare_on(s, s, Window({-2, -1}, {2, 2})); }) == ErrorKind::WindowNotCovered);
}

TEST_CASE("json round trip") {
  std::mt19937 rng(7);
  const auto s = random_series(rng, Window({-1, 0}, {1, 2}));
  CHECK(WindowSeries::from_json(s.to_json()) == s);
}

TEST_CASE("scaling and inversion against direct computation") {
  std::mt19937 rng(11);
  const Window w({-2, -1}, {2, 3});
  const auto f = [](const ExponentVector& v) { return L(v[0] * v[1]) + GrothendieckClass(v[0] - 2 * v[1]); };
  const auto s = WindowSeries::build(w, f);
  const ExponentVector d{1, 2};
  const auto a = s.scale_vars(d).invert_vars();
  const auto b = s.invert_vars().scale_vars(-d);
  CHECK(a == b);
  for (const auto& v : a.window().points()) CHECK(a.at(v) == f(-v).shifted(-v.dot(d)));
  const auto shifted = s.mul_monomial({1, -1}, L(2));
  for (const auto& v : shifted.window().points()) {
    CHECK(shifted.at(v) == L(2) * f(v - ExponentVector{1, -1}));
  }
}

TEST_CASE("mul_poly is associative on the common window") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_series(rng, Window({-3, -3}, {4, 4}));
    auto p = LatticePolynomial::product_of_var_minus_one(2);
    auto q = LatticePolynomial::all_vars_minus_one(2);
    q.add_term({-1, 0}, L(2));
    const auto one = s.mul_poly(p * q);
    const auto two = s.mul_poly(p).mul_poly(q);
    const auto common = one.window().intersect(two.window());
    REQUIRE(common);
    CHECK(compare_on(one, two, *common).equal);
  }
}
