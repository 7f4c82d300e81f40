#include "singval/value_module.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "singval/errors.hpp"

namespace singval {

namespace {

ExponentVector clamp_to(const ExponentVector& v, const Window& w) {
  return componentwise_min(componentwise_max(v, w.lo()), w.hi());
}

// Runs `pointwise` over w and over the one-step shell around it. A point
// fails when the returned pair violates `ok`; on the shell the pair must
// match the pair at the nearest window point.
PointwiseVerdict scan(const Window& w,
                      const std::function<std::pair<std::int64_t, std::int64_t>(const ExponentVector&)>& pointwise,
                      const std::function<bool(std::int64_t, std::int64_t)>& ok) {
  PointwiseVerdict out;
  for (const auto& v : w.points()) {
    ++out.points_checked;
    const auto [lhs, rhs] = pointwise(v);
    if (!ok(lhs, rhs) && out.holds) {
      out.holds = false;
      out.counterexample = v;
      out.lhs = lhs;
      out.rhs = rhs;
    }
  }
  const Window shell = w.expanded(1);
  for (const auto& v : shell.points()) {
    if (w.contains(v)) continue;
    if (pointwise(v) != pointwise(clamp_to(v, w))) out.shell_stable = false;
  }
  return out;
}

}  // namespace

ValueModule::ValueModule(ExponentVector gamma, std::vector<ExponentVector> members, ExponentVector weights,
                         std::int64_t deg_offset, std::shared_ptr<const ValueModule> ambient)
    : gamma_(std::move(gamma)),
      weights_(std::move(weights)),
      deg_offset_(deg_offset),
      ambient_(std::move(ambient)) {
  if (gamma_.size() == 0) throw Error(ErrorKind::InvalidInput, "value module needs at least one coordinate");
  if (weights_.size() != gamma_.size()) throw Error(ErrorKind::InvalidInput, "weights have the wrong length");
  for (auto d : weights_) {
    if (d != 1) throw Error(ErrorKind::Unsupported, "only unit residue degrees are supported");
  }
  if (!ExponentVector::zero(rank()).leq(gamma_)) {
    throw Error(ErrorKind::InvalidInput, "gamma must be nonnegative, got " + gamma_.to_string());
  }
  const Window b = box();
  table_.assign(b.point_count(), false);
  for (const auto& m : members) {
    if (m.size() != rank()) throw Error(ErrorKind::InvalidInput, "member of wrong length");
    if (!b.contains(m)) {
      throw Error(ErrorKind::InvalidInput, "member " + m.to_string() + " outside the box " + b.to_string());
    }
    table_[b.index_of(m)] = true;
  }
  for (const auto& v : b.points()) {
    if (table_[b.index_of(v)]) members_.push_back(v);
  }
  validate();
}

void ValueModule::validate() const {
  if (!box_lookup(gamma_)) throw Error(ErrorKind::InvalidInput, "gamma " + gamma_.to_string() + " is not a member");
  for (std::size_t i = 0; i < rank(); ++i) {
    const bool reached = std::any_of(members_.begin(), members_.end(), [&](const auto& m) { return m[i] == 0; });
    if (!reached) {
      throw Error(ErrorKind::InvalidInput, "no member has coordinate " + std::to_string(i) + " equal to 0");
    }
    if (gamma_[i] > 0 && c_partial(gamma_ - ExponentVector::unit(rank(), i), i) != 0) {
      throw Error(ErrorKind::InvalidInput, "gamma is not minimal in coordinate " + std::to_string(i));
    }
  }
  if (ambient_) {
    if (ambient_->rank() != rank()) throw Error(ErrorKind::InvalidInput, "ambient has a different rank");
    if (!gamma_.leq(ambient_->gamma())) {
      throw Error(ErrorKind::InvalidInput, "gamma " + gamma_.to_string() + " exceeds the ring conductor " +
                                               ambient_->gamma().to_string());
    }
    for (const auto& s : ambient_->box_members()) {
      for (const auto& m : members_) {
        if (!member(s + m)) {
          throw Error(ErrorKind::InvalidInput, "not a module over the ring values: " + s.to_string() + " + " +
                                                   m.to_string() + " is missing");
        }
      }
    }
  }
}

bool ValueModule::box_lookup(const ExponentVector& v) const { return table_[box().index_of(v)]; }

bool ValueModule::member(const ExponentVector& v) const {
  for (auto x : v) {
    if (x < 0) return false;
  }
  return box_lookup(componentwise_min(v, gamma_));
}

int ValueModule::c_partial(const ExponentVector& v, std::size_t i) const {
  if (v[i] < 0) return 0;
  if (v[i] >= gamma_[i]) return 1;
  for (const auto& u : members_) {
    if (u[i] != v[i]) continue;
    bool ok = true;
    for (std::size_t j = 0; j < rank() && ok; ++j) {
      if (j == i) continue;
      const auto need = std::min(std::max<std::int64_t>(v[j], 0), gamma_[j]);
      ok = u[j] >= need;
    }
    if (ok) return 1;
  }
  return 0;
}

int ValueModule::c_total(const ExponentVector& v) const {
  std::vector<std::size_t> order(rank());
  for (std::size_t i = 0; i < rank(); ++i) order[i] = i;
  return c_total(v, order);
}

int ValueModule::c_total(const ExponentVector& v, const std::vector<std::size_t>& order) const {
  if (order.size() != rank()) throw Error(ErrorKind::InvalidInput, "chain order has the wrong length");
  ExponentVector p = v;
  int sum = 0;
  for (auto i : order) {
    sum += c_partial(p, i);
    p[i] += 1;
  }
  return sum;
}

std::int64_t ValueModule::ell(const ExponentVector& v) const {
  const ExponentVector target = componentwise_max(v, ExponentVector::zero(rank()));
  ExponentVector p = ExponentVector::zero(rank());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    while (p[i] < target[i]) {
      if (p[i] >= gamma_[i]) {
        sum = checked_add(sum, target[i] - p[i]);
        p[i] = target[i];
        break;
      }
      sum += c_partial(p, i);
      ++p[i];
    }
  }
  return sum;
}

bool ValueModule::delta_nonempty(const ExponentVector& n, std::size_t i) const {
  return c_partial(n + ExponentVector::ones(rank()) - ExponentVector::unit(rank(), i), i) == 1;
}

bool ValueModule::delta_nonempty(const ExponentVector& n) const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (delta_nonempty(n, i)) return true;
  }
  return false;
}

int ValueModule::dual_c_profile(const ExponentVector& v) const {
  return static_cast<int>(d()) - c_total(gamma_ - v - ExponentVector::ones(rank()));
}

bool ValueModule::dual_member_experimental(const ExponentVector& v) const {
  return !delta_nonempty(gamma_ - v - ExponentVector::ones(rank()));
}

nlohmann::json ValueModule::to_json() const {
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : members_) members.push_back(m.to_json());
  nlohmann::json out = {{"mode", "value-module"},
                        {"r", rank()},
                        {"gamma", gamma_.to_json()},
                        {"members", members},
                        {"weights", weights_.to_json()},
                        {"deg_offset", deg_offset_}};
  if (ambient_) out["ambient"] = ambient_->to_json();
  return out;
}

ValueModule ValueModule::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "value module must be a JSON object");
  if (j.value("mode", std::string()) != "value-module") {
    throw Error(ErrorKind::InvalidInput, "field 'mode' must be \"value-module\"");
  }
  for (const char* key : {"r", "gamma", "members"}) {
    if (!j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  }
  if (!j.at("r").is_number_unsigned()) throw Error(ErrorKind::InvalidInput, "field 'r' must be a positive integer");
  const auto r = j.at("r").get<std::size_t>();
  auto gamma = ExponentVector::from_json(j.at("gamma"));
  if (gamma.size() != r) throw Error(ErrorKind::InvalidInput, "field 'gamma' must have length r");
  if (!j.at("members").is_array()) throw Error(ErrorKind::InvalidInput, "field 'members' must be an array");
  std::vector<ExponentVector> members;
  for (const auto& m : j.at("members")) members.push_back(ExponentVector::from_json(m));
  ExponentVector weights = j.contains("weights") ? ExponentVector::from_json(j.at("weights")) : ExponentVector::ones(r);
  std::int64_t offset = 0;
  if (j.contains("deg_offset")) {
    if (!j.at("deg_offset").is_number_integer()) {
      throw Error(ErrorKind::InvalidInput, "field 'deg_offset' must be an integer");
    }
    offset = j.at("deg_offset").get<std::int64_t>();
  }
  std::shared_ptr<const ValueModule> ambient;
  if (j.contains("ambient") && !j.at("ambient").is_null()) {
    ambient = std::make_shared<const ValueModule>(from_json(j.at("ambient")));
  }
  return ValueModule(std::move(gamma), std::move(members), std::move(weights), offset, std::move(ambient));
}

SymmetryVerdict is_symmetric(const ValueModule& vm, std::optional<ExponentVector> tau, bool exhaustive) {
  const ExponentVector one = ExponentVector::ones(vm.rank());
  const Window w = vm.check_window(2);
  auto run = [&](const ExponentVector& t) {
    return scan(
        w,
        [&](const ExponentVector& v) {
          return std::pair<std::int64_t, std::int64_t>(vm.member(v), !vm.delta_nonempty(t - v));
        },
        [](std::int64_t a, std::int64_t b) { return a == b; });
  };
  SymmetryVerdict out;
  out.tau = tau.value_or(vm.gamma() - one);
  out.detail = run(out.tau);
  out.symmetric = out.detail.holds;
  if (out.symmetric || !exhaustive) return out;
  for (const auto& t : Window(-one, vm.gamma() + one).points()) {
    auto detail = run(t);
    if (detail.holds) return SymmetryVerdict{true, t, detail};
  }
  return out;
}

PointwiseVerdict self_dual_by_counts(const ValueModule& vm) {
  const ExponentVector one = ExponentVector::ones(vm.rank());
  return scan(
      Window(-one, vm.gamma()),
      [&](const ExponentVector& v) {
        return std::pair<std::int64_t, std::int64_t>(vm.c_total(v) + vm.c_total(vm.gamma() - v - one), vm.d());
      },
      [](std::int64_t a, std::int64_t b) { return a == b; });
}

PointwiseVerdict total_count_inequality(const ValueModule& vm) {
  const ExponentVector one = ExponentVector::ones(vm.rank());
  return scan(
      vm.check_window(2),
      [&](const ExponentVector& v) {
        return std::pair<std::int64_t, std::int64_t>(vm.c_total(v) + vm.c_total(vm.gamma() - v - one), vm.d());
      },
      [](std::int64_t a, std::int64_t b) { return a <= b; });
}

namespace {

PointwiseVerdict per_coordinate(const ValueModule& vm, bool equality) {
  PointwiseVerdict out;
  for (std::size_t i = 0; i < vm.rank(); ++i) {
    const ExponentVector ei = ExponentVector::unit(vm.rank(), i);
    auto part = scan(
        vm.check_window(2),
        [&](const ExponentVector& v) {
          return std::pair<std::int64_t, std::int64_t>(vm.c_partial(v, i) + vm.c_partial(vm.gamma() - v - ei, i),
                                                       vm.weights()[i]);
        },
        [equality](std::int64_t a, std::int64_t b) { return equality ? a == b : a <= b; });
    out.points_checked += part.points_checked;
    out.shell_stable = out.shell_stable && part.shell_stable;
    if (!part.holds && out.holds) {
      out = PointwiseVerdict{false, part.counterexample, i, part.lhs, part.rhs, out.points_checked, out.shell_stable};
    }
  }
  return out;
}

}  // namespace

PointwiseVerdict self_dual_per_coordinate(const ValueModule& vm) { return per_coordinate(vm, true); }

PointwiseVerdict pairing_inequality(const ValueModule& vm) { return per_coordinate(vm, false); }

PointwiseVerdict self_dual_by_lengths(const ValueModule& vm) {
  PointwiseVerdict out;
  out.lhs = 2 * vm.ell(vm.gamma());
  out.rhs = vm.gamma().dot(vm.weights());
  out.holds = out.lhs == out.rhs;
  out.points_checked = 1;
  return out;
}

PointwiseVerdict chain_criterion(const ValueModule& vm, const std::vector<std::size_t>& steps) {
  ExponentVector count = ExponentVector::zero(vm.rank());
  for (auto i : steps) {
    if (i >= vm.rank()) throw Error(ErrorKind::InvalidInput, "chain step out of range");
    count[i] += 1;
  }
  if (count != vm.gamma()) throw Error(ErrorKind::InvalidInput, "chain does not end at gamma");
  PointwiseVerdict out;
  ExponentVector p = ExponentVector::zero(vm.rank());
  for (auto i : steps) {
    ++out.points_checked;
    const ExponentVector ei = ExponentVector::unit(vm.rank(), i);
    const std::int64_t lhs = vm.c_partial(p, i) + vm.c_partial(vm.gamma() - p - ei, i);
    if (lhs != vm.weights()[i] && out.holds) {
      out.holds = false;
      out.counterexample = p;
      out.coordinate = i;
      out.lhs = lhs;
      out.rhs = vm.weights()[i];
    }
    p += ei;
  }
  return out;
}

std::vector<std::size_t> random_chain(const ExponentVector& gamma, std::mt19937& rng) {
  std::vector<std::size_t> steps;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (std::int64_t k = 0; k < gamma[i]; ++k) steps.push_back(i);
  }
  std::shuffle(steps.begin(), steps.end(), rng);
  return steps;
}

namespace {

// Closes a box subset under componentwise minima and under the exchange
// property of good semigroups, read through the clip rule.
std::set<ExponentVector> close_box_subset(std::set<ExponentVector> s, const ExponentVector& gamma) {
  const std::size_t r = gamma.size();
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<ExponentVector> pts(s.begin(), s.end());
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const auto& x = pts[a];
        const auto& y = pts[b];
        if (s.insert(componentwise_min(x, y)).second) changed = true;
        for (std::size_t i = 0; i < r; ++i) {
          if (x[i] != y[i] || x[i] >= gamma[i]) continue;
          ExponentVector lo = componentwise_min(x, y);
          bool found = false;
          for (const auto& e : s) {
            if (e[i] <= x[i]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < r && ok; ++j) {
              if (j == i) continue;
              ok = x[j] != y[j] ? e[j] == lo[j] : e[j] >= lo[j];
            }
            if (ok) {
              found = true;
              break;
            }
          }
          if (!found) {
            lo[i] = x[i] + 1;
            s.insert(lo);
            changed = true;
          }
        }
      }
    }
  }
  return s;
}

}  // namespace

ValueModule random_value_module(std::size_t r, const ExponentVector& max_gamma, std::mt19937& rng) {
  if (max_gamma.size() != r) throw Error(ErrorKind::InvalidInput, "max_gamma has the wrong length");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ExponentVector gamma(r, 0);
    for (std::size_t i = 0; i < r; ++i) gamma[i] = std::uniform_int_distribution<std::int64_t>(0, max_gamma[i])(rng);
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.15, 0.6)(rng));
    std::set<ExponentVector> s{ExponentVector::zero(r), gamma};
    for (const auto& v : Window(ExponentVector::zero(r), gamma).points()) {
      if (coin(rng)) s.insert(v);
    }
    s = close_box_subset(std::move(s), gamma);
    try {
      return ValueModule(gamma, std::vector<ExponentVector>(s.begin(), s.end()), ExponentVector::ones(r));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidInput) throw;
    }
  }
  throw Error(ErrorKind::BoundSearchExceeded, "no valid random value module found");
}

}  // namespace singval
