#include "singval/io.hpp"

#include <fstream>
#include <sstream>

#include "singval/errors.hpp"

namespace singval {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, path + ": " + what);
}

mpz_class integer_field(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) == 0) return z;
  }
  bad(path, "expected an integer");
}

BranchSeries parse_series(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "a series must be a list of [exponent, numerator, denominator]");
  BranchSeries::Terms terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& t = j[k];
    const std::string at = path + "[" + std::to_string(k) + "]";
    if (!t.is_array() || t.size() != 3) bad(at, "expected [exponent, numerator, denominator]");
    if (!t[0].is_number_integer()) bad(at + "[0]", "exponent must be an integer");
    const auto e = t[0].get<std::int64_t>();
    const mpz_class num = integer_field(t[1], at + "[1]");
    const mpz_class den = integer_field(t[2], at + "[2]");
    if (den == 0) bad(at + "[2]", "zero denominator");
    if (terms.count(e)) bad(at, "exponent " + std::to_string(e) + " appears twice");
    mpq_class c(num, den);
    c.canonicalize();
    if (c != 0) terms[e] = c;
  }
  return BranchSeries(std::move(terms));
}

TotalRingElement parse_element(const nlohmann::json& j, std::size_t r, const std::string& path) {
  if (!j.is_array() || j.size() != r) bad(path, "a generator must list one series per branch (" + std::to_string(r) + ")");
  std::vector<BranchSeries> comps;
  for (std::size_t i = 0; i < r; ++i) comps.push_back(parse_series(j[i], path + "[" + std::to_string(i) + "]"));
  return TotalRingElement(std::move(comps));
}

std::vector<TotalRingElement> parse_generators(const nlohmann::json& j, std::size_t r, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a non-empty list of generators");
  std::vector<TotalRingElement> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_element(j[k], r, path + "[" + std::to_string(k) + "]"));
  return out;
}

// Core errors raised while building a presentation keep their kind but gain
// the field they came from.
template <class F>
auto with_context(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

CurveDocument parse_curve(const nlohmann::json& j) {
  for (const char* key : {"field", "branches", "ring_generators"}) {
    if (!j.contains(key)) bad(key, "missing field");
  }
  if (!j.at("field").is_string() || j.at("field").get<std::string>() != "rational") {
    bad("field", "only \"rational\" is supported");
  }
  if (!j.at("branches").is_number_unsigned() || j.at("branches").get<std::size_t>() == 0) {
    bad("branches", "expected a positive integer");
  }
  const auto r = j.at("branches").get<std::size_t>();
  CurveDocument doc;
  auto gens = parse_generators(j.at("ring_generators"), r, "ring_generators");
  doc.curve = with_context("ring_generators", [&] {
    return std::make_shared<const CurvePresentation>(FieldSpec::rational(), r, std::move(gens));
  });
  doc.ideals.emplace("ring", ring_ideal(doc.curve));
  if (j.contains("ideals")) {
    const auto& ideals = j.at("ideals");
    if (!ideals.is_object()) bad("ideals", "expected an object mapping names to generator lists");
    for (const auto& [name, g] : ideals.items()) {
      const std::string path = "ideals." + name;
      if (name == "ring") bad(path, "the name \"ring\" is reserved");
      auto ig = parse_generators(g, r, path);
      doc.ideals.emplace(name, with_context(path, [&] { return IdealPresentation(doc.curve, std::move(ig)); }));
    }
  }
  if (j.contains("canonical") && !j.at("canonical").is_null()) {
    if (!j.at("canonical").is_string()) bad("canonical", "expected an ideal name or \"ring\"");
    const auto name = j.at("canonical").get<std::string>();
    if (!doc.ideals.count(name)) bad("canonical", "unknown ideal \"" + name + "\"");
    doc.canonical = name;
  }
  return doc;
}

}  // namespace

const IdealPresentation& CurveDocument::ideal(const std::string& name) const {
  const auto it = ideals.find(name);
  if (it == ideals.end()) throw Error(ErrorKind::InvalidInput, "unknown ideal \"" + name + "\"");
  return it->second;
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::InvalidInput,
                "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

InputDocument parse_input(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "top level must be a JSON object");
  InputDocument doc;
  if (j.contains("mode")) {
    doc.mode = InputDocument::Mode::Abstract;
    doc.abstract = ValueModule::from_json(j);
  } else {
    doc.concrete = parse_curve(j);
  }
  return doc;
}

InputDocument load_input(const std::filesystem::path& path) {
  const auto j = read_json_file(path);
  try {
    return parse_input(j);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

nlohmann::json series_to_json(const BranchSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) {
    const auto num = c.get_num(), den = c.get_den();
    const auto as_json = [](const mpz_class& z) {
      return z.fits_slong_p() ? nlohmann::json(z.get_si()) : nlohmann::json(z.get_str());
    };
    out.push_back({e, as_json(num), as_json(den)});
  }
  return out;
}

nlohmann::json element_to_json(const TotalRingElement& z) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : z.components()) out.push_back(series_to_json(s));
  return out;
}

nlohmann::json to_json(const CurveDocument& doc) {
  const auto gens = [](const std::vector<TotalRingElement>& g) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : g) out.push_back(element_to_json(z));
    return out;
  };
  nlohmann::json out = {{"field", "rational"},
                        {"branches", doc.curve->branches()},
                        {"ring_generators", gens(doc.curve->generators())}};
  nlohmann::json ideals = nlohmann::json::object();
  for (const auto& [name, b] : doc.ideals) {
    if (name != "ring") ideals[name] = gens(b.generators());
  }
  out["ideals"] = ideals;
  if (doc.canonical) out["canonical"] = *doc.canonical;
  return out;
}

nlohmann::json to_json(const InputDocument& doc) {
  return doc.mode == InputDocument::Mode::Abstract ? doc.abstract->to_json() : to_json(*doc.concrete);
}

}  // namespace singval
