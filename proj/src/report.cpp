#include "singval/report.hpp"

#include <sstream>

#include "singval/errors.hpp"

namespace singval {

namespace {

ordered_json ordered(const nlohmann::json& j) { return ordered_json::parse(j.dump()); }

ordered_json points_json(const std::vector<ExponentVector>& pts) {
  ordered_json out = ordered_json::array();
  for (const auto& p : pts) out.push_back(ordered(p.to_json()));
  return out;
}

CheckRow row(std::string subject, std::string name, bool ok, std::string detail = {}) {
  return {std::move(subject), std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

CheckRow skipped(std::string subject, std::string name, std::string why) {
  return {std::move(subject), std::move(name), CheckStatus::Skipped, std::move(why)};
}

CheckRow from_identity(const std::string& subject, const IdentityCheck& c) {
  std::string detail = "window " + c.window.to_string();
  if (const auto& m = c.comparison.first_mismatch) {
    detail += ", first mismatch at " + m->point.to_string() + ": " + m->lhs.to_string() + " vs " + m->rhs.to_string();
  }
  return row(subject, c.name, c.holds(), detail);
}

CheckRow from_pointwise(const std::string& subject, const std::string& name, const PointwiseVerdict& v) {
  std::string detail = std::to_string(v.points_checked) + " points";
  if (v.counterexample) {
    detail += ", fails at " + v.counterexample->to_string();
    if (v.coordinate) detail += " coordinate " + std::to_string(*v.coordinate);
    detail += ": " + std::to_string(v.lhs) + " vs " + std::to_string(v.rhs);
  }
  return row(subject, name, v.holds, detail);
}

// Fibres over non-values are empty.
CheckRow phat_support(const std::string& subject, const ValueModule& vm) {
  const auto w = vm.check_window(2);
  const auto ph = series_Phat(vm, w);
  for (const auto& v : w.points()) {
    if (!ph.at(v).is_zero() && !vm.member(v)) {
      return row(subject, "phat_support", false, "nonzero coefficient at non-value " + v.to_string());
    }
  }
  return row(subject, "phat_support", true, "window " + w.to_string());
}

void module_checks(std::vector<CheckRow>& rows, const std::string& subject, const ValueModule& vm,
                   const SelfDualityRoutes& routes) {
  rows.push_back(row(subject, "self_duality_routes_agree", routes.agree(), routes.to_json().dump()));
  rows.push_back(row(subject, "symmetry_iff_self_dual", routes.symmetry == routes.counts));
  rows.push_back(from_pointwise(subject, "pairing_inequality", pairing_inequality(vm)));
  rows.push_back(from_identity(subject, check_pg_from_lg(vm)));
  rows.push_back(from_identity(subject, check_phat_from_lhat(vm)));
  rows.push_back(phat_support(subject, vm));
}

const char* const kDualChecks[] = {"degree_duality",           "dual_c_profile",           "lg_functional_equation",
                                   "pg_functional_equation",   "lhat_functional_equation", "lhat_constant_defect",
                                   "phat_functional_equation"};

void dual_checks(std::vector<CheckRow>& rows, const std::string& subject, const ValueModule& b,
                 const ValueModule& bstar) {
  for (const auto& c : {check_degree_duality(b, bstar), check_dual_c_profile(b, bstar),
                        check_lg_functional_equation(b, bstar), check_pg_functional_equation(b, bstar),
                        check_lhat_functional_equation(b, bstar), check_lhat_constant_defect(b, bstar),
                        check_phat_functional_equation(b, bstar)}) {
    rows.push_back(from_identity(subject, c));
  }
}

void skip_dual_checks(std::vector<CheckRow>& rows, const std::string& subject, const std::string& why) {
  for (const char* name : kDualChecks) rows.push_back(skipped(subject, name, why));
}

std::optional<bool> direct_verdict(const IdealPresentation& b, const IdealPresentation& canonical) {
  const auto res = self_duality_direct(b, dual(b, canonical));
  if (res.verdict == DirectDuality::Undetermined) return std::nullopt;
  return res.verdict == DirectDuality::SelfDual;
}

bool canonical_verified(const CurveDocument& doc) {
  if (!doc.canonical) return false;
  std::vector<IdealPresentation> family;
  std::vector<std::string> names;
  for (const auto& [name, b] : doc.ideals) {
    family.push_back(b);
    names.push_back(name);
  }
  return verify_canonical(doc.ideal(*doc.canonical), family, names).canonical;
}

void verify_concrete(const CurveDocument& doc, const VerifyOptions& options, std::vector<CheckRow>& rows) {
  const auto& ring = doc.ideal("ring");
  const auto O = value_set(ring);
  const auto lens = lengths_report(ring);
  const bool gorenstein = lens.halving_equality;
  const bool symmetric = is_symmetric(O).symmetric;
  rows.push_back(row("curve", "gorenstein_tests_agree", gorenstein == symmetric,
                     "2*" + std::to_string(lens.b_over_conductor) + " vs " + std::to_string(lens.bbar_over_conductor) +
                         ", symmetric " + (symmetric ? "yes" : "no")));
  const std::int64_t delta = doc.curve->delta();
  if (gorenstein) {
    rows.push_back(from_identity("curve", check_gorenstein_length_symmetry(O, delta)));
    rows.push_back(row("curve", "gorenstein_delta_relation", gorenstein_delta_relation(O, delta),
                       "delta - d = " + std::to_string(delta - O.d()) + ", l(gamma - 1) - 1 = " +
                           std::to_string(O.ell(O.gamma() - ExponentVector::ones(O.rank())) - 1)));
    const auto K = duality_exponent(O, O);
    rows.push_back(row("curve", "gorenstein_exponent", K == delta,
                       "K - d = " + std::to_string(K - O.d()) + ", delta - d = " + std::to_string(delta - O.d())));
  } else {
    rows.push_back(skipped("curve", "gorenstein_length_symmetry", "not Gorenstein"));
  }

  const bool have_canonical = doc.canonical.has_value();
  const bool canonical_ok = have_canonical && canonical_verified(doc);
  if (have_canonical) {
    rows.push_back(row("curve", "canonical_ideal", canonical_ok, "ideal " + *doc.canonical));
  } else {
    rows.push_back(skipped("curve", "canonical_ideal", "no canonical ideal given"));
  }

  std::vector<std::string> names;
  for (const auto& [name, b] : doc.ideals) {
    if (options.all_ideals || name == "ring" || (doc.canonical && name == *doc.canonical)) names.push_back(name);
  }
  for (const auto& name : names) {
    const auto& b = doc.ideal(name);
    const auto vm = value_set(b);
    const auto* canonical = canonical_ok ? &doc.ideal(*doc.canonical) : nullptr;
    module_checks(rows, name, vm, self_duality_routes(vm, &b, canonical));
    if (canonical) {
      dual_checks(rows, name, vm, value_set(dual(b, *canonical)));
    } else {
      skip_dual_checks(rows, name, "no verified canonical ideal");
    }
  }
}

std::string format_class_list(const WindowSeries& s) {
  std::ostringstream os;
  for (const auto& v : s.window().points()) os << "  " << v.to_string() << ": " << s.at(v).to_string() << "\n";
  return os.str();
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  os << prefix << ": ";
  if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
  os << "\n";
}

}  // namespace

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIP";
  }
  return "?";
}

bool SelfDualityRoutes::agree() const {
  std::optional<bool> seen;
  for (const auto& v : {lengths, chain, counts, per_coordinate, symmetry, direct}) {
    if (!v) continue;
    if (seen && *seen != *v) return false;
    seen = v;
  }
  return true;
}

ordered_json SelfDualityRoutes::to_json() const {
  ordered_json out;
  const auto put = [&](const char* key, const std::optional<bool>& v) {
    out[key] = v ? ordered_json(*v) : ordered_json("skipped");
  };
  put("lengths", lengths);
  put("chain", chain);
  put("counts", counts);
  put("per_coordinate", per_coordinate);
  put("symmetry", symmetry);
  put("direct", direct);
  return out;
}

std::vector<std::size_t> staircase_chain(const ExponentVector& gamma) {
  std::vector<std::size_t> steps;
  for (std::size_t i = 0; i < gamma.size(); ++i) steps.insert(steps.end(), gamma[i], i);
  return steps;
}

SelfDualityRoutes self_duality_routes(const ValueModule& vm, const IdealPresentation* b,
                                      const IdealPresentation* canonical) {
  SelfDualityRoutes out;
  out.lengths = b ? lengths_report(*b).halving_equality : self_dual_by_lengths(vm).holds;
  out.chain = chain_criterion(vm, staircase_chain(vm.gamma())).holds;
  out.counts = self_dual_by_counts(vm).holds;
  out.per_coordinate = self_dual_per_coordinate(vm).holds;
  out.symmetry = is_symmetric(vm).symmetric;
  if (b && canonical) out.direct = direct_verdict(*b, *canonical);
  return out;
}

std::vector<CheckRow> verify_document(const InputDocument& doc, const VerifyOptions& options) {
  std::vector<CheckRow> rows;
  if (doc.mode == InputDocument::Mode::Abstract) {
    const auto& vm = *doc.abstract;
    module_checks(rows, "module", vm, self_duality_routes(vm, nullptr, nullptr));
    skip_dual_checks(rows, "module", "abstract mode has no dual ideal");
  } else {
    verify_concrete(*doc.concrete, options, rows);
  }
  return rows;
}

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows) {
    if (r.status == CheckStatus::Fail) return false;
  }
  return true;
}

ordered_json rows_to_json(const std::vector<CheckRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"subject", r.subject}, {"check", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}});
  }
  return out;
}

std::string rows_to_text(const std::vector<CheckRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << to_string(r.status) << "  " << r.subject << "  " << r.name;
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    os << "\n";
  }
  return os.str();
}

ordered_json curve_info(const CurveDocument& doc) {
  const auto& c = *doc.curve;
  const auto& ring = doc.ideal("ring");
  const auto O = value_set(ring);
  const auto lens = lengths_report(ring);
  const auto sym = is_symmetric(O);
  ordered_json out;
  out["branches"] = c.branches();
  out["delta"] = c.delta();
  out["gamma"] = ordered(c.conductor().to_json());
  out["maximal_ideals"] = 1;
  out["weights"] = ordered(O.weights().to_json());
  out["semigroup_box"] = points_json(O.box_members());
  out["gorenstein"]["lengths"] = {{"O_over_conductor", lens.b_over_conductor},
                                  {"Obar_over_conductor", lens.bbar_over_conductor},
                                  {"verdict", lens.halving_equality}};
  out["gorenstein"]["symmetric"] = sym.symmetric;
  out["gorenstein"]["agree"] = lens.halving_equality == sym.symmetric;
  out["canonical"] = doc.canonical ? ordered_json(*doc.canonical) : ordered_json(nullptr);
  if (doc.canonical) out["canonical_verified"] = canonical_verified(doc);
  ordered_json names = ordered_json::array();
  for (const auto& [name, b] : doc.ideals) names.push_back(name);
  out["ideals"] = names;
  return out;
}

ordered_json abstract_info(const ValueModule& vm) {
  ordered_json out;
  out["branches"] = vm.rank();
  out["gamma"] = ordered(vm.gamma().to_json());
  out["weights"] = ordered(vm.weights().to_json());
  out["deg_offset"] = vm.deg_offset();
  out["box_members"] = points_json(vm.box_members());
  out["ell_gamma"] = vm.ell(vm.gamma());
  out["symmetric"] = is_symmetric(vm).symmetric;
  out["self_duality"] = self_duality_routes(vm, nullptr, nullptr).to_json();
  return out;
}

ordered_json ideal_info(const CurveDocument& doc, const std::string& name) {
  const auto& b = doc.ideal(name);
  const auto vm = value_set(b);
  const bool canonical_ok = canonical_verified(doc);
  const auto* canonical = canonical_ok ? &doc.ideal(*doc.canonical) : nullptr;
  const auto lens = lengths_report(b, canonical);
  const auto sym = is_symmetric(vm);
  const auto routes = self_duality_routes(vm, &b, canonical);
  ordered_json out;
  out["ideal"] = name;
  out["floor"] = ordered(b.floor().to_json());
  out["conductor"] = ordered(b.conductor().to_json());
  out["gamma"] = ordered(vm.gamma().to_json());
  out["degree"] = vm.deg_offset();
  out["value_set_box"] = points_json(vm.box_members());
  out["lengths"]["b_over_conductor"] = lens.b_over_conductor;
  out["lengths"]["bObar_over_conductor"] = lens.bbar_over_conductor;
  out["lengths"]["bObar_over_b"] = lens.bbar_over_b;
  out["lengths"]["halving_inequality"] = lens.halving_inequality;
  out["lengths"]["halving_equality"] = lens.halving_equality;
  if (lens.dual_bbar_over_dual) {
    out["lengths"]["dual_bObar_over_dual"] = *lens.dual_bbar_over_dual;
    out["lengths"]["dual_length_equality"] = *lens.dual_length_equality;
  }
  out["symmetric"] = sym.symmetric;
  out["self_duality"] = routes.to_json();
  out["self_duality_agree"] = routes.agree();
  if (!canonical) out["note"] = "no verified canonical ideal: direct route skipped";
  return out;
}

ordered_json series_report(const ValueModule& vm, const std::vector<std::string>& which, std::int64_t margin) {
  if (margin < 1) throw Error(ErrorKind::InvalidInput, "margin must be at least 1");
  const auto w = vm.check_window(margin);
  ordered_json out;
  out["gamma"] = ordered(vm.gamma().to_json());
  out["lo"] = ordered(w.lo().to_json());
  out["hi"] = ordered(w.hi().to_json());
  for (const auto& name : which) {
    WindowSeries s = [&] {
      if (name == "a") return series_A(vm, w);
      if (name == "lg") return series_Lg(vm, w);
      if (name == "pg") return series_Pg(vm, w);
      if (name == "lhat") return series_Lhat(vm, w);
      if (name == "phat") return series_Phat(vm, w);
      throw Error(ErrorKind::InvalidInput, "unknown series \"" + name + "\" (expected a, lg, pg, lhat, phat)");
    }();
    out["series"][name] = ordered(s.to_json());
  }
  return out;
}

std::string series_report_text(const ordered_json& report) {
  std::ostringstream os;
  os << "window " << report.at("lo").dump() << ".." << report.at("hi").dump() << "\n";
  if (!report.contains("series")) return os.str();
  for (const auto& [name, s] : report.at("series").items()) {
    os << name << "\n" << format_class_list(WindowSeries::from_json(nlohmann::json::parse(s.dump())));
  }
  return os.str();
}

mpq_class predicted_count(const ValueModule& ring, const ExponentVector& v, const mpz_class& q,
                          std::size_t dimension) {
  const auto pg = series_Pg(ring, Window(v, v));
  const auto cls = (GrothendieckClass::lefschetz() - 1) * pg.at(v);
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), q.get_mpz_t(), dimension);
  return cls.evaluate(q) * scale;
}

bool CountReport::agree() const {
  for (const auto& r : rows) {
    if (!r.agree()) return false;
  }
  return true;
}

ordered_json CountReport::to_json() const {
  ordered_json out;
  out["q"] = q;
  out["level"] = ordered(level.to_json());
  out["dimension"] = dimension;
  ordered_json table = ordered_json::array();
  for (const auto& r : rows) {
    table.push_back({{"v", ordered(r.v.to_json())}, {"counted", r.counted}, {"predicted", r.predicted.get_str()},
                     {"agree", r.agree()}});
  }
  out["rows"] = table;
  out["agree"] = agree();
  return out;
}

CountReport count_report(const CurveDocument& doc, std::uint64_t q, std::int64_t level) {
  const std::size_t r = doc.curve->branches();
  if (level < 1) throw Error(ErrorKind::InvalidInput, "level must be at least 1");
  const auto O = value_set(doc.ideal("ring"));
  CountReport out;
  out.q = q;
  out.level = ExponentVector(std::vector<std::int64_t>(r, level));
  const Window w(ExponentVector::zero(r), out.level - ExponentVector::ones(r));
  for (const auto& v : w.points()) {
    const auto res = count_points_mod_q(*doc.curve, q, v, out.level);
    out.dimension = res.dimension;
    out.rows.push_back({v, res.count, predicted_count(O, v, q, res.dimension)});
  }
  return out;
}

std::string render_text(const ordered_json& j) {
  std::ostringstream os;
  flatten(j, "", os);
  return os.str();
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EnumerationTooLarge:
    case ErrorKind::BoundSearchExceeded:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::WindowNotCovered:
    case ErrorKind::Overflow:
      return 3;
    default:
      return 2;
  }
}

}  // namespace singval
