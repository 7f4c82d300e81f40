#include "singval/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "singval/errors.hpp"

namespace singval {

ExponentVector ExponentVector::unit(std::size_t rank, std::size_t i) {
  if (i >= rank) throw Error(ErrorKind::InvalidInput, "coordinate index out of range");
  ExponentVector out(rank, 0);
  out[i] = 1;
  return out;
}

ExponentVector ExponentVector::indicator(std::size_t rank, unsigned mask) {
  ExponentVector out(rank, 0);
  for (std::size_t i = 0; i < rank; ++i) out[i] = (mask >> i) & 1u;
  return out;
}

void ExponentVector::check_rank(const ExponentVector& other) const {
  if (other.size() != size()) {
    throw Error(ErrorKind::InvalidInput, "exponent vectors of different rank: " + to_string() +
                                             " and " + other.to_string());
  }
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& rhs) {
  check_rank(rhs);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = checked_add(v_[i], rhs.v_[i]);
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& rhs) {
  check_rank(rhs);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = checked_add(v_[i], -rhs.v_[i]);
  return *this;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector out = *this;
  for (auto& x : out.v_) x = checked_mul(x, -1);
  return out;
}

ExponentVector ExponentVector::scaled(value_type k) const {
  ExponentVector out = *this;
  for (auto& x : out.v_) x = checked_mul(x, k);
  return out;
}

bool ExponentVector::leq(const ExponentVector& w) const {
  check_rank(w);
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] > w.v_[i]) return false;
  }
  return true;
}

ExponentVector::value_type ExponentVector::dot(const ExponentVector& w) const {
  check_rank(w);
  value_type s = 0;
  for (std::size_t i = 0; i < v_.size(); ++i) s = checked_add(s, checked_mul(v_[i], w.v_[i]));
  return s;
}

ExponentVector::value_type ExponentVector::sum() const {
  value_type s = 0;
  for (auto x : v_) s = checked_add(s, x);
  return s;
}

std::string ExponentVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ',';
    os << v_[i];
  }
  os << ')';
  return os.str();
}

nlohmann::json ExponentVector::to_json() const { return nlohmann::json(v_); }

ExponentVector ExponentVector::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "exponent vector must be an array");
  std::vector<value_type> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorKind::InvalidInput, "exponent must be an integer");
    v.push_back(x.get<value_type>());
  }
  return ExponentVector(std::move(v));
}

ExponentVector componentwise_min(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out = a;
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "rank mismatch in min");
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

ExponentVector componentwise_max(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out = a;
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "rank mismatch in max");
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

std::ostream& operator<<(std::ostream& os, const ExponentVector& v) { return os << v.to_string(); }

Window::Window(ExponentVector lo, ExponentVector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw Error(ErrorKind::InvalidInput, "window bounds of different rank");
  if (!lo_.leq(hi_)) {
    throw Error(ErrorKind::InvalidInput, "window lower bound " + lo_.to_string() +
                                             " exceeds upper bound " + hi_.to_string());
  }
}

bool Window::contains(const ExponentVector& v) const { return lo_.leq(v) && v.leq(hi_); }

bool Window::contains(const Window& w) const { return contains(w.lo_) && contains(w.hi_); }

std::size_t Window::point_count() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < rank(); ++i) n *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
  return n;
}

std::vector<ExponentVector> Window::points() const {
  std::vector<ExponentVector> out;
  out.reserve(point_count());
  ExponentVector v = lo_;
  while (true) {
    out.push_back(v);
    std::size_t i = rank();
    while (i > 0) {
      --i;
      if (v[i] < hi_[i]) {
        ++v[i];
        break;
      }
      v[i] = lo_[i];
      if (i == 0) return out;
    }
    if (rank() == 0) return out;
  }
}

std::size_t Window::index_of(const ExponentVector& v) const {
  if (!contains(v)) {
    throw Error(ErrorKind::WindowNotCovered, v.to_string() + " lies outside " + to_string());
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx = idx * static_cast<std::size_t>(hi_[i] - lo_[i] + 1) + static_cast<std::size_t>(v[i] - lo_[i]);
  }
  return idx;
}

Window Window::shifted(const ExponentVector& by) const { return Window(lo_ + by, hi_ + by); }

Window Window::negated() const { return Window(-hi_, -lo_); }

Window Window::expanded(std::int64_t k) const {
  const ExponentVector step(rank(), k);
  return Window(lo_ - step, hi_ + step);
}

std::optional<Window> Window::intersect(const Window& w) const {
  const ExponentVector lo = componentwise_max(lo_, w.lo_);
  const ExponentVector hi = componentwise_min(hi_, w.hi_);
  if (!lo.leq(hi)) return std::nullopt;
  return Window(lo, hi);
}

std::string Window::to_string() const { return "[" + lo_.to_string() + ".." + hi_.to_string() + "]"; }

LatticePolynomial LatticePolynomial::monomial(const ExponentVector& v, GrothendieckClass c) {
  LatticePolynomial p(v.size());
  p.add_term(v, c);
  return p;
}

LatticePolynomial LatticePolynomial::constant(std::size_t rank, GrothendieckClass c) {
  return monomial(ExponentVector::zero(rank), std::move(c));
}

LatticePolynomial LatticePolynomial::var_minus_one(std::size_t rank, std::size_t i) {
  LatticePolynomial p = monomial(ExponentVector::unit(rank, i), 1);
  p.add_term(ExponentVector::zero(rank), -1);
  return p;
}

LatticePolynomial LatticePolynomial::product_of_var_minus_one(std::size_t rank) {
  LatticePolynomial p = constant(rank, 1);
  for (std::size_t i = 0; i < rank; ++i) p = p * var_minus_one(rank, i);
  return p;
}

LatticePolynomial LatticePolynomial::all_vars_minus_one(std::size_t rank) {
  LatticePolynomial p = monomial(ExponentVector::ones(rank), 1);
  p.add_term(ExponentVector::zero(rank), -1);
  return p;
}

void LatticePolynomial::add_term(const ExponentVector& v, const GrothendieckClass& c) {
  if (v.size() != rank_) throw Error(ErrorKind::InvalidInput, "polynomial term of wrong rank");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LatticePolynomial LatticePolynomial::operator+(const LatticePolynomial& rhs) const {
  LatticePolynomial out = *this;
  for (const auto& [v, c] : rhs.terms_) out.add_term(v, c);
  return out;
}

LatticePolynomial LatticePolynomial::operator*(const LatticePolynomial& rhs) const {
  LatticePolynomial out(rank_);
  for (const auto& [va, ca] : terms_) {
    for (const auto& [vb, cb] : rhs.terms_) out.add_term(va + vb, ca * cb);
  }
  return out;
}

LatticePolynomial LatticePolynomial::scale_vars(const ExponentVector& weights) const {
  LatticePolynomial out(rank_);
  for (const auto& [v, c] : terms_) out.add_term(v, c.shifted(v.dot(weights)));
  return out;
}

ExponentVector LatticePolynomial::min_exponents() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no support");
  ExponentVector out = terms_.begin()->first;
  for (const auto& [v, c] : terms_) out = componentwise_min(out, v);
  return out;
}

ExponentVector LatticePolynomial::max_exponents() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no support");
  ExponentVector out = terms_.begin()->first;
  for (const auto& [v, c] : terms_) out = componentwise_max(out, v);
  return out;
}

WindowSeries::WindowSeries(Window window, std::vector<GrothendieckClass> coeffs)
    : window_(std::move(window)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != window_.point_count()) {
    throw Error(ErrorKind::InvalidInput, "coefficient table does not match window size");
  }
}

WindowSeries WindowSeries::build(const Window& window, const Generator& f) {
  std::vector<GrothendieckClass> coeffs;
  coeffs.reserve(window.point_count());
  for (const auto& v : window.points()) coeffs.push_back(f(v));
  return WindowSeries(window, std::move(coeffs));
}

const GrothendieckClass& WindowSeries::at(const ExponentVector& v) const {
  return coeffs_[window_.index_of(v)];
}

WindowSeries WindowSeries::with_coefficient(const ExponentVector& v, GrothendieckClass c) const {
  WindowSeries out = *this;
  out.coeffs_[window_.index_of(v)] = std::move(c);
  return out;
}

WindowSeries WindowSeries::scale_vars(const ExponentVector& weights) const {
  return build(window_, [&](const ExponentVector& v) { return at(v).shifted(v.dot(weights)); });
}

WindowSeries WindowSeries::invert_vars() const {
  return build(window_.negated(), [&](const ExponentVector& v) { return at(-v); });
}

WindowSeries WindowSeries::mul_monomial(const ExponentVector& shift, const GrothendieckClass& c) const {
  return build(window_.shifted(shift), [&](const ExponentVector& v) { return c * at(v - shift); });
}

WindowSeries WindowSeries::mul_poly(const LatticePolynomial& p) const {
  if (p.is_zero()) throw Error(ErrorKind::InvalidInput, "multiplication by the zero polynomial");
  const ExponentVector lo = window_.lo() + p.max_exponents();
  const ExponentVector hi = window_.hi() + p.min_exponents();
  if (!lo.leq(hi)) {
    throw Error(ErrorKind::EmptyResultWindow,
                "source window " + window_.to_string() + " determines no product coefficient");
  }
  return build(Window(lo, hi), [&](const ExponentVector& v) {
    GrothendieckClass sum;
    for (const auto& [u, c] : p.terms()) sum += c * at(v - u);
    return sum;
  });
}

WindowSeries WindowSeries::map_coefficients(
    const std::function<GrothendieckClass(const GrothendieckClass&)>& f) const {
  std::vector<GrothendieckClass> coeffs;
  coeffs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) coeffs.push_back(f(c));
  return WindowSeries(window_, std::move(coeffs));
}

nlohmann::json WindowSeries::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  const auto pts = window_.points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    entries.push_back(nlohmann::json::array({pts[k].to_json(), coeffs_[k].to_json()}));
  }
  return {{"lo", window_.lo().to_json()}, {"hi", window_.hi().to_json()}, {"coefficients", entries}};
}

WindowSeries WindowSeries::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi") || !j.contains("coefficients")) {
    throw Error(ErrorKind::InvalidInput, "series must have lo, hi and coefficients");
  }
  const Window w(ExponentVector::from_json(j.at("lo")), ExponentVector::from_json(j.at("hi")));
  std::vector<GrothendieckClass> coeffs(w.point_count());
  std::vector<bool> seen(coeffs.size(), false);
  for (const auto& entry : j.at("coefficients")) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(ErrorKind::InvalidInput, "series entry must be [point, class]");
    }
    const auto idx = w.index_of(ExponentVector::from_json(entry[0]));
    if (seen[idx]) throw Error(ErrorKind::InvalidInput, "duplicate series entry");
    seen[idx] = true;
    coeffs[idx] = GrothendieckClass::from_json(entry[1]);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::InvalidInput, "series is missing coefficients inside its window");
  }
  return WindowSeries(w, std::move(coeffs));
}

Window source_window_for(const Window& target, const LatticePolynomial& p) {
  return Window(target.lo() - p.max_exponents(), target.hi() - p.min_exponents());
}

SeriesComparison compare_on(const WindowSeries& a, const WindowSeries& b, const Window& w) {
  if (!a.window().contains(w) || !b.window().contains(w)) {
    throw Error(ErrorKind::WindowNotCovered, "comparison window " + w.to_string() +
                                                 " exceeds " + a.window().to_string() + " or " +
                                                 b.window().to_string());
  }
  SeriesComparison out;
  for (const auto& v : w.points()) {
    ++out.points_checked;
    const auto& x = a.at(v);
    const auto& y = b.at(v);
    if (x != y) {
      out.equal = false;
      out.first_mismatch = Mismatch{v, x, y};
      return out;
    }
  }
  return out;
}

}  // namespace singval
