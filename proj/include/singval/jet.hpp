#pragma once

// Exact row echelon forms over a field and the jet spaces built on them.
// Column order is branch-major with increasing exponent.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "singval/errors.hpp"
#include "singval/lattice.hpp"

namespace singval {

/// Element of F_p for a runtime prime p < 2^32.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 2;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v, a.p); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v + a.p - b.v, a.p); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v, a.p); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  Fp inverse() const {
    if (v == 0) throw Error(ErrorKind::ZeroDivisor, "inverse of 0 in a prime field");
    std::uint64_t result = 1, base = v, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return Fp(result, p);
  }
};

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline mpq_class inverse(const mpq_class& x) { return 1 / x; }
inline bool is_zero(const Fp& x) { return x.v == 0; }
inline Fp inverse(const Fp& x) { return x.inverse(); }

/// Coordinates of t^lo k[t]/t^N, one block per branch.
class JetLayout {
 public:
  JetLayout(ExponentVector lo, ExponentVector N) : lo_(std::move(lo)), N_(std::move(N)) {
    if (lo_.size() != N_.size()) throw Error(ErrorKind::InvalidInput, "jet bounds of different rank");
    std::size_t off = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      offsets_.push_back(off);
      off += width(i);
    }
    columns_ = off;
  }

  const ExponentVector& lo() const noexcept { return lo_; }
  const ExponentVector& N() const noexcept { return N_; }
  std::size_t rank() const noexcept { return lo_.size(); }
  std::size_t columns() const noexcept { return columns_; }
  std::size_t width(std::size_t i) const { return N_[i] > lo_[i] ? static_cast<std::size_t>(N_[i] - lo_[i]) : 0; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  bool has(std::size_t i, std::int64_t e) const { return e >= lo_[i] && e < N_[i]; }
  std::size_t column(std::size_t i, std::int64_t e) const { return offsets_[i] + static_cast<std::size_t>(e - lo_[i]); }
  std::size_t branch_of(std::size_t col) const {
    std::size_t i = 0;
    while (i + 1 < rank() && offsets_[i + 1] <= col) ++i;
    return i;
  }
  std::int64_t exponent_of(std::size_t col) const {
    const std::size_t i = branch_of(col);
    return lo_[i] + static_cast<std::int64_t>(col - offsets_[i]);
  }

 private:
  ExponentVector lo_, N_;
  std::vector<std::size_t> offsets_;
  std::size_t columns_ = 0;
};

/// Reduced row echelon form; rows are kept sorted by pivot column.
template <class S>
class RowEchelon {
 public:
  RowEchelon(std::size_t columns, S zero) : columns_(columns), zero_(std::move(zero)) {}

  std::size_t columns() const noexcept { return columns_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<std::vector<S>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const S& zero() const noexcept { return zero_; }

  std::vector<S> reduce(std::vector<S> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const S f = v[pivots_[k]];
      if (is_zero(f)) continue;
      const auto& row = rows_[k];
      for (std::size_t c = pivots_[k]; c < columns_; ++c) {
        if (!is_zero(row[c])) v[c] -= f * row[c];
      }
    }
    return v;
  }

  bool contains(const std::vector<S>& v) const {
    const auto rest = reduce(v);
    return std::all_of(rest.begin(), rest.end(), [](const S& x) { return is_zero(x); });
  }

  /// Adds v to the span; returns whether the rank grew.
  bool insert(const std::vector<S>& v) {
    auto rest = reduce(v);
    std::size_t c = 0;
    while (c < columns_ && is_zero(rest[c])) ++c;
    if (c == columns_) return false;
    const S inv = inverse(rest[c]);
    for (std::size_t k = c; k < columns_; ++k) rest[k] = rest[k] * inv;
    for (auto& row : rows_) {
      const S f = row[c];
      if (is_zero(f)) continue;
      for (std::size_t k = c; k < columns_; ++k) {
        if (!is_zero(rest[k])) row[k] -= f * rest[k];
      }
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, c);
    rows_.insert(rows_.begin() + pos, std::move(rest));
    return true;
  }

  /// Rank after deleting the columns where keep[c] is false.
  std::size_t projected_rank(const std::vector<bool>& keep) const {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < columns_; ++c) {
      if (keep[c]) cols.push_back(c);
    }
    RowEchelon<S> sub(cols.size(), zero_);
    for (const auto& row : rows_) {
      std::vector<S> v;
      v.reserve(cols.size());
      for (auto c : cols) v.push_back(row[c]);
      sub.insert(v);
      if (sub.rank() == cols.size()) break;
    }
    return sub.rank();
  }

  /// Basis of {x : sum_k x_k m_k = 0} for the rows m_k of `matrix`.
  static std::vector<std::vector<S>> left_nullspace(const std::vector<std::vector<S>>& matrix, std::size_t columns,
                                                    const S& zero, const S& one) {
    // Eliminate [M | I]; rows whose M-part vanishes carry the relations.
    const std::size_t n = matrix.size();
    RowEchelon<S> aug(columns + n, zero);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<S> row(columns + n, zero);
      std::copy(matrix[k].begin(), matrix[k].end(), row.begin());
      row[columns + k] = one;
      aug.insert(row);
    }
    std::vector<std::vector<S>> out;
    for (std::size_t k = 0; k < aug.rank(); ++k) {
      if (aug.pivots()[k] < columns) continue;
      out.emplace_back(aug.rows()[k].begin() + static_cast<std::ptrdiff_t>(columns), aug.rows()[k].end());
    }
    return out;
  }

 private:
  std::size_t columns_;
  S zero_;
  std::vector<std::vector<S>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Image of an O-module in t^lo k[t]/t^N.
template <class S>
struct JetSpace {
  JetLayout layout;
  RowEchelon<S> basis;

  std::size_t dimension() const { return basis.rank(); }
  /// dim of the image in t^lo k[t]/t^w, i.e. the codimension of J(w).
  std::size_t rank_below(const ExponentVector& w) const {
    std::vector<bool> keep(layout.columns(), false);
    for (std::size_t c = 0; c < layout.columns(); ++c) {
      keep[c] = layout.exponent_of(c) < w[layout.branch_of(c)];
    }
    return basis.projected_rank(keep);
  }
  /// Whether e_i t_i^e lies in the span.
  bool has_unit(std::size_t i, std::int64_t e) const {
    std::vector<S> v(layout.columns(), basis.zero());
    v[layout.column(i, e)] = unit_one;
    return basis.contains(v);
  }
  S unit_one;
};

/// Closure of a row space under multiplication by the maximal-ideal
/// generators of O, truncated at the layout's level.
template <class S>
class JetClosure {
 public:
  /// multipliers[g][i][s] is the coefficient of t_i^s in generator g.
  JetClosure(JetLayout layout, std::vector<std::vector<std::vector<S>>> multipliers, S zero, S one)
      : layout_(std::move(layout)),
        multipliers_(std::move(multipliers)),
        echelon_(layout_.columns(), zero),
        zero_(std::move(zero)),
        one_(std::move(one)) {}

  const JetLayout& layout() const noexcept { return layout_; }
  const RowEchelon<S>& echelon() const noexcept { return echelon_; }

  bool add(std::vector<S> v) {
    const std::size_t before = echelon_.rank();
    std::deque<std::vector<S>> queue;
    queue.push_back(std::move(v));
    while (!queue.empty()) {
      auto w = std::move(queue.front());
      queue.pop_front();
      if (!echelon_.insert(w)) continue;
      for (const auto& g : multipliers_) queue.push_back(multiply(w, g));
    }
    return echelon_.rank() > before;
  }

  JetSpace<S> space() const { return JetSpace<S>{layout_, echelon_, one_}; }

 private:
  std::vector<S> multiply(const std::vector<S>& v, const std::vector<std::vector<S>>& g) const {
    std::vector<S> out(layout_.columns(), zero_);
    for (std::size_t i = 0; i < layout_.rank(); ++i) {
      const std::size_t off = layout_.offset(i), w = layout_.width(i);
      const auto& gi = g[i];
      for (std::size_t a = 0; a < w; ++a) {
        if (is_zero(v[off + a])) continue;
        for (std::size_t s = 0; a + s < w && s < gi.size(); ++s) {
          if (!is_zero(gi[s])) out[off + a + s] += v[off + a] * gi[s];
        }
      }
    }
    return out;
  }

  JetLayout layout_;
  std::vector<std::vector<std::vector<S>>> multipliers_;
  RowEchelon<S> echelon_;
  S zero_, one_;
};

}  // namespace singval
