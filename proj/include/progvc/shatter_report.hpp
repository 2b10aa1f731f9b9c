#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace progvc {

/// Bit i set means the i-th point of the report's target is in the subset.
using TraceMask = std::uint64_t;

/// Outcome of testing whether a family cuts out every subset of a target.
///
/// Subsets of the target are encoded as TraceMask values over the order of
/// `target`. `shattered` is true iff `missing` is empty, and every witness W
/// stored under key m satisfies W ∩ target = m.
template <class Point, class Witness>
struct ShatterReport {
  std::vector<Point> target;
  bool shattered = true;
  std::vector<TraceMask> missing;
  std::map<TraceMask, Witness> witnesses;

  std::size_t subset_count() const { return std::size_t{1} << target.size(); }

  /// The points of `target` selected by `mask`.
  std::vector<Point> points_of(TraceMask mask) const {
    std::vector<Point> out;
    for (std::size_t i = 0; i < target.size(); ++i)
      if (mask >> i & 1U) out.push_back(target[i]);
    return out;
  }
};

}  // namespace progvc
