#pragma once

// Reports and the verification driver shared by the command line tool and
// the acceptance harness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "singval/curve.hpp"
#include "singval/io.hpp"
#include "singval/poincare.hpp"
#include "singval/value_module.hpp"

namespace singval {

using ordered_json = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, Skipped };
const char* to_string(CheckStatus s) noexcept;

struct CheckRow {
  std::string subject;
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyOptions {
  bool all_ideals = false;
};

/// Every applicable check on the document. Without --all-ideals only the
/// ring and the canonical ideal are examined.
std::vector<CheckRow> verify_document(const InputDocument& doc, const VerifyOptions& options = {});
bool all_pass(const std::vector<CheckRow>& rows);
ordered_json rows_to_json(const std::vector<CheckRow>& rows);
std::string rows_to_text(const std::vector<CheckRow>& rows);

/// Self-duality verdicts by every available route; unset means unavailable.
struct SelfDualityRoutes {
  std::optional<bool> lengths;         // 2 dim b/(b:Obar) = dim bObar/(b:Obar)
  std::optional<bool> chain;           // equality along the staircase chain
  std::optional<bool> counts;          // c(v) + c(gamma - v - 1) = d
  std::optional<bool> per_coordinate;  // c(v, i) + c(gamma - v - 1_i, i) = d_i
  std::optional<bool> symmetry;        // S(b) symmetric
  std::optional<bool> direct;          // b ~ b* as classes, when decided

  bool agree() const;
  ordered_json to_json() const;
};
/// `b` and `canonical` may be null (abstract mode, or no canonical ideal).
SelfDualityRoutes self_duality_routes(const ValueModule& vm, const IdealPresentation* b,
                                      const IdealPresentation* canonical);

/// Unit-step chain from 0 to gamma raising coordinate 0 first.
std::vector<std::size_t> staircase_chain(const ExponentVector& gamma);

ordered_json curve_info(const CurveDocument& doc);
ordered_json abstract_info(const ValueModule& vm);
ordered_json ideal_info(const CurveDocument& doc, const std::string& name);

/// Series named in `which` (a, lg, pg, lhat, phat) on [-margin, gamma + margin].
ordered_json series_report(const ValueModule& vm, const std::vector<std::string>& which, std::int64_t margin);
std::string series_report_text(const ordered_json& report);

/// (L - 1) P_g(v) at L = q, times q^dimension: the predicted number of jets with value v.
mpq_class predicted_count(const ValueModule& ring, const ExponentVector& v, const mpz_class& q,
                          std::size_t dimension);

struct CountRow {
  ExponentVector v;
  std::uint64_t counted = 0;
  mpq_class predicted;
  bool agree() const { return predicted == mpq_class(counted); }
};
struct CountReport {
  std::uint64_t q = 0;
  ExponentVector level;
  std::size_t dimension = 0;
  std::vector<CountRow> rows;
  bool agree() const;
  ordered_json to_json() const;
};
/// Counts jets of O over F_q for every v in [0, level - 1].
CountReport count_report(const CurveDocument& doc, std::uint64_t q, std::int64_t level);

/// Flattens nested objects into "key.sub: value" lines.
std::string render_text(const ordered_json& j);

/// Exit status for an engine error: 3 for resource ceilings, 2 otherwise.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace singval
