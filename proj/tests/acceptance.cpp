// Acceptance harness: one PASS/FAIL line per criterion. All comparisons are
// exact; the tolerances below are pinned at zero.

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "singval/errors.hpp"
#include "singval/io.hpp"
#include "singval/poincare.hpp"
#include "singval/report.hpp"

using namespace singval;

namespace {

constexpr std::int64_t kCountTolerance = 0;   // point counts
constexpr std::int64_t kLengthTolerance = 0;  // colengths
constexpr std::int64_t kMargin = 2;           // windows are [-2, gamma + 2]
constexpr std::size_t kRandomModules = 100;
constexpr std::uint32_t kSeed = 2024;

const std::filesystem::path kCorpus = SINGVAL_CORPUS_DIR;

struct Entry {
  std::string file;
  CurveDocument doc;
};

std::vector<Entry> load_corpus() {
  std::vector<Entry> out;
  for (const char* f : {"cusp", "e8", "c345", "node", "tacnode"}) {
    auto in = load_input(kCorpus / (std::string(f) + ".json"));
    out.push_back({f, std::move(*in.concrete)});
  }
  return out;
}

struct Pair {
  std::string label;
  ValueModule vb;
  ValueModule vbstar;
};

std::vector<Pair> dual_pairs(const std::vector<Entry>& corpus) {
  std::vector<Pair> out;
  for (const auto& e : corpus) {
    const auto& c = e.doc.ideal(*e.doc.canonical);
    for (const auto& [name, b] : e.doc.ideals) {
      out.push_back({e.file + "/" + name, value_set(b), value_set(dual(b, c))});
    }
  }
  return out;
}

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }
  std::string line(int number) const {
    std::ostringstream os;
    os << "criterion " << number << " " << (passed() ? "PASS" : "FAIL") << ": " << title_ << " [" << checks_
       << " checks, " << failures_.size() << " failures]";
    for (std::size_t k = 0; k < failures_.size() && k < 4; ++k) os << "; " << failures_[k];
    if (failures_.size() > 4) os << "; ...";
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::string title_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string mismatch(const IdentityCheck& c) {
  std::string s = c.name;
  if (const auto& m = c.comparison.first_mismatch) {
    s += " at " + m->point.to_string() + " (" + m->lhs.to_string() + " vs " + m->rhs.to_string() + ")";
  }
  return s;
}

// Numerical semigroup generated by `gens`, listed up to `limit`.
std::set<std::int64_t> semigroup(const std::vector<std::int64_t>& gens, std::int64_t limit) {
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

bool within(std::int64_t a, std::int64_t b, std::int64_t tol) { return (a > b ? a - b : b - a) <= tol; }

// Colengths from the semigroup: O/f has one basis element per semigroup
// element below the conductor, Obar/f one per integer below it.
struct Colengths {
  std::int64_t o_over_f;
  std::int64_t obar_over_f;
};

Criterion gorenstein_dichotomy(const std::vector<Entry>& corpus) {
  Criterion c("Gorenstein dichotomy 2 l(O/f) = l(Obar/f) with symmetric S(O), strict for <3,4,5>");
  const std::map<std::string, Colengths> oracle = {
      {"cusp", {1, 2}}, {"e8", {4, 8}}, {"c345", {1, 3}}, {"node", {1, 2}}, {"tacnode", {2, 4}}};
  for (const auto& [name, gens] : std::map<std::string, std::vector<std::int64_t>>{
           {"cusp", {2, 3}}, {"e8", {3, 5}}, {"c345", {3, 4, 5}}}) {
    const auto s = semigroup(gens, 40);
    std::int64_t cond = 0;
    for (std::int64_t n = 40; n >= 0; --n) {
      if (!s.count(n)) {
        cond = n + 1;
        break;
      }
    }
    std::int64_t below = 0;
    for (auto x : s) below += x < cond;
    c.require(oracle.at(name).o_over_f == below && oracle.at(name).obar_over_f == cond, name + " oracle");
  }
  for (const auto& e : corpus) {
    const auto& ring = e.doc.ideal("ring");
    const auto lens = lengths_report(ring);
    const bool symmetric = is_symmetric(value_set(ring)).symmetric;
    const auto& want = oracle.at(e.file);
    c.require(within(lens.b_over_conductor, want.o_over_f, kLengthTolerance) &&
                  within(lens.bbar_over_conductor, want.obar_over_f, kLengthTolerance),
              e.file + " colengths " + std::to_string(lens.b_over_conductor) + "/" +
                  std::to_string(lens.bbar_over_conductor));
    if (e.file == "c345") {
      c.require(2 * lens.b_over_conductor == 2 && 2 * lens.b_over_conductor < lens.bbar_over_conductor,
                "c345 strict inequality");
      c.require(!symmetric, "c345 not symmetric");
    } else {
      c.require(2 * lens.b_over_conductor == lens.bbar_over_conductor, e.file + " equality");
      c.require(symmetric, e.file + " symmetric");
    }
  }
  return c;
}

Criterion self_duality_triangulation(const std::vector<Entry>& corpus) {
  Criterion c("self-duality routes (lengths, chain, counts, per-coordinate, symmetry, direct) agree");
  for (const auto& e : corpus) {
    const auto& canonical = e.doc.ideal(*e.doc.canonical);
    for (const auto& [name, b] : e.doc.ideals) {
      const auto routes = self_duality_routes(value_set(b), &b, &canonical);
      c.require(routes.agree(), e.file + "/" + name + " " + routes.to_json().dump());
      c.require(routes.direct.has_value(), e.file + "/" + name + " direct route undecided");
      if (e.file == "cusp" && name == "maximal") c.require(routes.direct == true, "cusp maximal self-dual");
      if (e.file == "c345" && name == "omega") {
        c.require(routes.direct == false && routes.counts == false, "omega not self-dual");
        const auto counts = self_dual_by_counts(value_set(b));
        c.require(counts.counterexample == ExponentVector({1}), "omega counterexample at v = 1");
      }
    }
  }
  return c;
}

Criterion symmetry_vs_self_duality(const std::vector<Entry>& corpus) {
  Criterion c("S(b) symmetric iff b self-dual");
  bool negative_seen = false;
  for (const auto& e : corpus) {
    for (const auto& [name, b] : e.doc.ideals) {
      const auto vm = value_set(b);
      const bool sym = is_symmetric(vm).symmetric;
      const bool sd = self_dual_by_counts(vm).holds;
      c.require(sym == sd, e.file + "/" + name);
      negative_seen = negative_seen || !sd;
    }
  }
  c.require(negative_seen, "negative case present");
  return c;
}

Criterion two_route_pg(const std::vector<Pair>& pairs) {
  Criterion c("(L - 1)(T - 1) P_g = prod(t_i - 1) L_g on [-2, gamma + 2], corruption detected");
  for (const auto& p : pairs) {
    for (const auto* vm : {&p.vb, &p.vbstar}) {
      const auto chk = check_pg_from_lg(*vm);
      c.require(chk.holds() && chk.window == vm->check_window(kMargin), p.label + " " + mismatch(chk));
      const auto at = vm->gamma();
      const SeriesHook corrupt = [&](const std::string& name, WindowSeries s) {
        return name == "Pg" ? s.with_coefficient(at, s.at(at) + GrothendieckClass(1)) : s;
      };
      const auto bad = check_pg_from_lg(*vm, corrupt);
      c.require(!bad.holds() && bad.comparison.first_mismatch.has_value(), p.label + " corruption missed");
    }
  }
  return c;
}

Criterion degree_duality(const std::vector<Entry>& corpus, const std::vector<Pair>& pairs) {
  Criterion c("degree duality pointwise; l(gamma - v) - l(v) = delta - v.d and delta - d = l(gamma - 1) - 1");
  for (const auto& p : pairs) {
    const auto chk = check_degree_duality(p.vb, p.vbstar);
    c.require(chk.holds(), p.label + " " + mismatch(chk));
  }
  for (const auto& e : corpus) {
    if (e.doc.canonical != std::optional<std::string>("ring")) continue;
    const auto O = value_set(e.doc.ideal("ring"));
    const auto delta = e.doc.curve->delta();
    c.require(check_gorenstein_length_symmetry(O, delta).holds(), e.file + " length symmetry");
    c.require(gorenstein_delta_relation(O, delta), e.file + " delta relation");
  }
  const auto cusp = value_set(corpus.front().doc.ideal("ring"));
  c.require(corpus.front().doc.curve->delta() - cusp.d() == 0 && cusp.ell(ExponentVector({1})) - 1 == 0,
            "cusp 0 = l(gamma - 1) - 1");
  return c;
}

Criterion functional_equations(const std::vector<Entry>& corpus, const std::vector<Pair>& pairs) {
  Criterion c("functional equations of L_g, P_g, c*, Lhat and Phat on every corpus pair (r = 1 and r = 2)");
  std::set<std::size_t> ranks;
  std::size_t phat_failures = 0, phat_failures_at_one = 0;
  for (const auto& p : pairs) {
    ranks.insert(p.vb.rank());
    for (const auto& chk : {check_lg_functional_equation(p.vb, p.vbstar), check_pg_functional_equation(p.vb, p.vbstar),
                            check_dual_c_profile(p.vb, p.vbstar), check_lhat_functional_equation(p.vb, p.vbstar)}) {
      c.require(chk.holds(), p.label + " " + mismatch(chk));
    }
    const auto ph = check_phat_functional_equation(p.vb, p.vbstar);
    c.require(ph.holds(), p.label + " " + mismatch(ph));
    if (!ph.holds()) {
      ++phat_failures;
      phat_failures_at_one += !holds_at(ph, 1);
    }
  }
  for (const auto& e : corpus) {
    if (e.doc.canonical != std::optional<std::string>("ring")) continue;
    const auto O = value_set(e.doc.ideal("ring"));
    c.require(duality_exponent(O, O) == e.doc.curve->delta(), e.file + " Gorenstein exponent delta - d");
  }
  c.require(ranks.count(1) && ranks.count(2), "both ranks exercised");
  if (phat_failures) {
    c.note("the Phat equation fails in K_0 on " + std::to_string(phat_failures) + " pairs; " +
           std::to_string(phat_failures_at_one) + " of them also fail at L = 1");
  }
  return c;
}

Criterion finite_field_counts(const std::vector<Entry>& corpus) {
  Criterion c("F_q jet counts equal (L - 1) P_g(v) at L = q times q^dim on a 4-wide window");
  const auto find = [&](const std::string& f) -> const CurveDocument& {
    for (const auto& e : corpus) {
      if (e.file == f) return e.doc;
    }
    throw Error(ErrorKind::InvalidInput, f);
  };
  for (const auto& [file, q] : std::vector<std::pair<std::string, std::uint64_t>>{{"cusp", 2}, {"node", 2}, {"cusp", 3}}) {
    const auto& doc = find(file);
    const std::size_t r = doc.curve->branches();
    const ExponentVector level(std::vector<std::int64_t>(r, 4));
    const auto O = value_set(doc.ideal("ring"));
    for (const auto& v : Window(ExponentVector::zero(r), level - ExponentVector::ones(r)).points()) {
      const auto res = count_points_mod_q(*doc.curve, q, v, level, std::uint64_t{1} << 16);
      const mpq_class predicted = predicted_count(O, v, q, res.dimension);
      const bool integral = predicted.get_den() == 1;
      const mpz_class diff = abs(predicted.get_num() - mpz_class(std::to_string(res.count)));
      c.require(integral && diff <= kCountTolerance,
                file + " q=" + std::to_string(q) + " v=" + v.to_string() + ": " + std::to_string(res.count) +
                    " vs " + predicted.get_str());
    }
  }
  return c;
}

Criterion combinatorial_invariants(const std::vector<Entry>& corpus) {
  Criterion c("combinatorial invariants over the corpus and 100 random modules with gamma <= (6,6)");
  std::vector<std::pair<std::string, ValueModule>> modules;
  for (const auto& e : corpus) {
    for (const auto& [name, b] : e.doc.ideals) modules.emplace_back(e.file + "/" + name, value_set(b));
  }
  std::mt19937 rng(kSeed);
  for (std::size_t k = 0; k < kRandomModules; ++k) {
    modules.emplace_back("random#" + std::to_string(k), random_value_module(2, ExponentVector({6, 6}), rng));
  }

  // Value sets of the one-branch corpus ideals straight from the semigroup.
  const std::map<std::string, std::vector<std::int64_t>> gens = {{"cusp", {2, 3}}, {"e8", {3, 5}}, {"c345", {3, 4, 5}}};
  for (const auto& e : corpus) {
    if (!gens.count(e.file)) continue;
    const auto s = semigroup(gens.at(e.file), 60);
    for (const auto& [name, b] : e.doc.ideals) {
      std::set<std::int64_t> values;
      for (const auto& g : b.generators()) {
        const auto lead = g[0].order();
        for (auto x : s) values.insert(lead + x);
      }
      const auto vm = value_set(b);
      const auto floor = b.floor()[0];
      for (std::int64_t v = 0; v <= vm.gamma()[0] + 6; ++v) {
        c.require(vm.member(ExponentVector({v})) == values.count(v + floor) > 0,
                  e.file + "/" + name + " clip rule vs semigroup at " + std::to_string(v));
      }
    }
  }

  std::size_t pairing_failures = 0, ring_pairing_failures = 0;
  std::string first_pairing;
  std::mt19937 shuffle_rng(kSeed + 1);
  for (const auto& [label, vm] : modules) {
    const std::size_t r = vm.rank();
    for (const auto& v : vm.check_window(kMargin).points()) {
      bool all = true;
      for (std::size_t i = 0; i < r; ++i) all = all && vm.c_partial(v, i) == 1;
      c.require(vm.member(v) == all, label + " membership vs c at " + v.to_string());
      std::vector<std::size_t> order(r);
      for (std::size_t i = 0; i < r; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), shuffle_rng);
      c.require(vm.c_total(v, order) == vm.c_total(v), label + " chain order at " + v.to_string());
      if (ExponentVector::zero(r).leq(v)) {
        c.require(vm.ell(v + ExponentVector::ones(r)) - vm.ell(v) == vm.c_total(v), label + " l/c at " + v.to_string());
        c.require(vm.member(v) == vm.member(componentwise_min(v, vm.gamma())), label + " clip at " + v.to_string());
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      c.require(vm.c_partial(vm.gamma() - ExponentVector::unit(r, i), i) == 0, label + " c(gamma - 1_i, i) = 0");
    }
    const auto pairing = pairing_inequality(vm);
    c.require(pairing.holds, label + " pairing inequality");
    if (!pairing.holds && label.ends_with("/ring")) ++ring_pairing_failures;
    if (!pairing.holds && pairing_failures++ == 0) first_pairing = label + " at " + pairing.counterexample->to_string();
  }
  if (pairing_failures) {
    c.note("pairing inequality fails on " + std::to_string(pairing_failures) + " of " +
           std::to_string(modules.size()) + " modules, first " + first_pairing + ", " + std::to_string(ring_pairing_failures) + " of them rings O");
  }
  return c;
}

}  // namespace

int main() {
  try {
    const auto corpus = load_corpus();
    const auto pairs = dual_pairs(corpus);
    const std::vector<std::function<Criterion()>> criteria = {
        [&] { return gorenstein_dichotomy(corpus); },
        [&] { return self_duality_triangulation(corpus); },
        [&] { return symmetry_vs_self_duality(corpus); },
        [&] { return two_route_pg(pairs); },
        [&] { return degree_duality(corpus, pairs); },
        [&] { return functional_equations(corpus, pairs); },
        [&] { return finite_field_counts(corpus); },
        [&] { return combinatorial_invariants(corpus); },
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
      const auto c = criteria[k]();
      std::cout << c.line(static_cast<int>(k + 1)) << std::endl;
      all = all && c.passed();
    }
    return all ? 0 : 1;
  } catch (const Error& e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
}
