#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "bklab/types.hpp"

namespace bklab {

/// Multi-index alpha in N_0^n with the usual |alpha| and alpha! conventions.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e < 0) throw domain_error("MultiIndex: entries must be >= 0");
  }
  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[i]; }
  int& operator[](int i) { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

  double factorial() const {
    double f = 1.0;
    for (int e : entries_)
      for (int j = 2; j <= e; ++j) f *= j;
    return f;
  }

  /// log(alpha!), safe for large entries.
  double log_factorial() const {
    double s = 0.0;
    for (int e : entries_) s += std::lgamma(double(e) + 1.0);
    return s;
  }

  bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
  bool operator<(const MultiIndex& o) const { return entries_ < o.entries_; }

  /// All multi-indices in N_0^n with |alpha| <= max_order, in graded
  /// lexicographic order (stable basis ordering for Gram matrices).
  static std::vector<MultiIndex> all_up_to(int n, int max_order);

 private:
  std::vector<int> entries_;
};

inline std::vector<MultiIndex> MultiIndex::all_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  for (int deg = 0; deg <= max_order; ++deg) {
    // enumerate compositions of deg into n parts, lexicographic
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == n - 1) {
        cur[pos] = rem;
        out.emplace_back(cur);
        return;
      }
      for (int v = deg; v >= 0; --v) {
        if (v > rem) continue;
        cur[pos] = v;
        rec(pos + 1, rem - v);
      }
    };
    if (n == 0) break;
    rec(0, deg);
  }
  return out;
}

}  // namespace bklab
