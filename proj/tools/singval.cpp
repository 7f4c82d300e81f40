#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singval/errors.hpp"
#include "singval/io.hpp"
#include "singval/report.hpp"

using namespace singval;

namespace {

enum Exit { kPass = 0, kVerifyFailed = 1, kInputError = 2 };

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const CurveDocument& require_curve(const InputDocument& doc, const std::string& command) {
  if (!doc.concrete) throw Error(ErrorKind::InvalidInput, command + " needs a curve file, not an abstract value module");
  return *doc.concrete;
}

void emit(const ordered_json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_text(j);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value sets, duality and motivic Poincare series of curve singularities"};
  app.require_subcommand(1);

  std::string file, ideal = "ring", which = "pg", format = "text";
  std::int64_t margin = 2, level = 4;
  std::uint64_t q = 2;
  bool all_ideals = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "curve or value-module JSON file")->required();
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* info = app.add_subcommand("info", "invariants and Gorenstein tests");
  add_common(info);
  auto* ideal_info_cmd = app.add_subcommand("ideal-info", "value set, lengths and self-duality of one ideal");
  add_common(ideal_info_cmd);
  ideal_info_cmd->add_option("--ideal", ideal, "ideal name")->required();
  auto* series = app.add_subcommand("series", "series coefficients on [-margin, gamma + margin]");
  add_common(series);
  series->add_option("--ideal", ideal, "ideal name (curve files)");
  series->add_option("--which", which, "comma-separated subset of a,lg,pg,lhat,phat");
  series->add_option("--margin", margin, "window margin")->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify", "run every applicable check");
  add_common(verify);
  verify->add_flag("--all-ideals", all_ideals, "check every ideal in the file");
  auto* count = app.add_subcommand("count", "point counts over F_q against the series");
  add_common(count);
  count->add_option("--q", q, "prime")->check(CLI::PositiveNumber);
  count->add_option("--level", level, "jet level")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInputError;
  }

  try {
    const auto doc = load_input(file);
    if (info->parsed()) {
      emit(doc.concrete ? curve_info(*doc.concrete) : abstract_info(*doc.abstract), format);
      return kPass;
    }
    if (ideal_info_cmd->parsed()) {
      emit(ideal_info(require_curve(doc, "ideal-info"), ideal), format);
      return kPass;
    }
    if (series->parsed()) {
      const auto vm = doc.concrete ? value_set(doc.concrete->ideal(ideal)) : *doc.abstract;
      const auto report = series_report(vm, split_list(which), margin);
      if (format == "json") {
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << series_report_text(report);
      }
      return kPass;
    }
    if (verify->parsed()) {
      const auto rows = verify_document(doc, VerifyOptions{all_ideals});
      if (format == "json") {
        std::cout << rows_to_json(rows).dump(2) << "\n";
      } else {
        std::cout << rows_to_text(rows);
      }
      const bool ok = all_pass(rows);
      std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
      return ok ? kPass : kVerifyFailed;
    }
    if (count->parsed()) {
      const auto report = count_report(require_curve(doc, "count"), q, level);
      emit(report.to_json(), format);
      return report.agree() ? kPass : kVerifyFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kInputError;
}
