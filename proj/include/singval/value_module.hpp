#pragma once

// Finitely determined value sets S(b) in Z^r and the filtration dimensions
// derived from them.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <json.hpp>

#include "singval/lattice.hpp"

namespace singval {

class ValueModule {
 public:
  /// `members` lists the points of S inside the box [0, gamma]; anything else
  /// in the box is a non-member. Throws InvalidInput if the data is not a
  /// normalized, conductor-minimal value set, and Unsupported for weights != 1.
  ValueModule(ExponentVector gamma, std::vector<ExponentVector> members, ExponentVector weights,
              std::int64_t deg_offset = 0, std::shared_ptr<const ValueModule> ambient = nullptr);

  std::size_t rank() const noexcept { return gamma_.size(); }
  const ExponentVector& gamma() const noexcept { return gamma_; }
  const ExponentVector& weights() const noexcept { return weights_; }
  std::int64_t d() const { return weights_.sum(); }
  std::int64_t deg_offset() const noexcept { return deg_offset_; }
  const std::shared_ptr<const ValueModule>& ambient() const noexcept { return ambient_; }
  Window box() const { return Window(ExponentVector::zero(rank()), gamma_); }
  /// Members of the box in lexicographic order.
  const std::vector<ExponentVector>& box_members() const noexcept { return members_; }
  /// [-margin, gamma + margin].
  Window check_window(std::int64_t margin = 2) const { return box().expanded(margin); }

  bool member(const ExponentVector& v) const;
  /// dim J(v)/J(v + 1_i), either 0 or 1.
  int c_partial(const ExponentVector& v, std::size_t i) const;
  /// dim J(v)/J(v + 1) along the chain that raises coordinates in `order`.
  int c_total(const ExponentVector& v) const;
  int c_total(const ExponentVector& v, const std::vector<std::size_t>& order) const;
  /// dim b/J(v), summed along the staircase from 0 to v v 0, coordinate 0 first.
  std::int64_t ell(const ExponentVector& v) const;
  std::int64_t deg_J(const ExponentVector& v) const { return deg_offset_ - ell(v); }

  /// Some member sigma has sigma_i = n_i and sigma_j > n_j for j != i.
  bool delta_nonempty(const ExponentVector& n, std::size_t i) const;
  bool delta_nonempty(const ExponentVector& n) const;

  /// c of the dual ideal: d - c(gamma - v - 1).
  int dual_c_profile(const ExponentVector& v) const;
  /// Candidate membership of the dual: Delta(gamma - v - 1) is empty. Not
  /// used in any verdict.
  bool dual_member_experimental(const ExponentVector& v) const;

  nlohmann::json to_json() const;
  static ValueModule from_json(const nlohmann::json& j);

 private:
  void validate() const;
  bool box_lookup(const ExponentVector& v) const;

  ExponentVector gamma_;
  ExponentVector weights_;
  std::int64_t deg_offset_;
  std::shared_ptr<const ValueModule> ambient_;
  std::vector<ExponentVector> members_;
  std::vector<bool> table_;
};

/// Outcome of a pointwise check on a window.
struct PointwiseVerdict {
  bool holds = true;
  std::optional<ExponentVector> counterexample;
  std::optional<std::size_t> coordinate;  // for per-coordinate checks
  std::int64_t lhs = 0;                    // at the counterexample, or the totals
  std::int64_t rhs = 0;
  std::size_t points_checked = 0;
  /// The checked relation does not change when stepping off the window.
  bool shell_stable = true;
};

/// v in S  <=>  Delta(tau - v) empty, on [-2, gamma + 2]. tau defaults to
/// gamma - 1; `exhaustive` tries every tau in [-1, gamma + 1].
struct SymmetryVerdict {
  bool symmetric = false;
  ExponentVector tau;
  PointwiseVerdict detail;
};
SymmetryVerdict is_symmetric(const ValueModule& vm, std::optional<ExponentVector> tau = std::nullopt,
                             bool exhaustive = false);

/// c(v) + c(gamma - v - 1) = d on [-1, gamma].
PointwiseVerdict self_dual_by_counts(const ValueModule& vm);
/// c(v) + c(gamma - v - 1) <= d on [-2, gamma + 2].
PointwiseVerdict total_count_inequality(const ValueModule& vm);
/// c(v, i) + c(gamma - v - 1_i, i) = d_i for all i on [-2, gamma + 2].
PointwiseVerdict self_dual_per_coordinate(const ValueModule& vm);
/// c(v, i) + c(gamma - v - 1_i, i) <= d_i for all i on [-2, gamma + 2].
PointwiseVerdict pairing_inequality(const ValueModule& vm);
/// 2 ell(gamma) = sum gamma_i d_i; lhs/rhs carry both sides.
PointwiseVerdict self_dual_by_lengths(const ValueModule& vm);
/// Equality along the unit-step chain 0 -> gamma that raises coordinate
/// steps[p] at step p.
PointwiseVerdict chain_criterion(const ValueModule& vm, const std::vector<std::size_t>& steps);

/// Uniformly shuffled unit-step chain from 0 to gamma.
std::vector<std::size_t> random_chain(const ExponentVector& gamma, std::mt19937& rng);

/// Random value module with r coordinates and gamma <= max_gamma; retries
/// until the sample passes validation.
ValueModule random_value_module(std::size_t r, const ExponentVector& max_gamma, std::mt19937& rng);

}  // namespace singval
