#pragma once

// Input files: a concrete curve with named ideals, or an abstract value
// module. Schema errors are InvalidInput with the offending field path.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "singval/curve.hpp"
#include "singval/value_module.hpp"

namespace singval {

struct CurveDocument {
  std::shared_ptr<const CurvePresentation> curve;
  /// Named ideals from the file; "ring" is always present.
  std::map<std::string, IdealPresentation> ideals;
  /// Name of the canonical ideal ("ring" for a Gorenstein claim), if given.
  std::optional<std::string> canonical;

  const IdealPresentation& ideal(const std::string& name) const;
};

struct InputDocument {
  enum class Mode { Concrete, Abstract };
  Mode mode = Mode::Concrete;
  std::optional<CurveDocument> concrete;
  std::optional<ValueModule> abstract;
};

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_json_text(const std::string& text);
nlohmann::json read_json_file(const std::filesystem::path& path);

InputDocument parse_input(const nlohmann::json& j);
InputDocument load_input(const std::filesystem::path& path);

nlohmann::json series_to_json(const BranchSeries& s);
nlohmann::json element_to_json(const TotalRingElement& z);
nlohmann::json to_json(const CurveDocument& doc);
nlohmann::json to_json(const InputDocument& doc);

}  // namespace singval
