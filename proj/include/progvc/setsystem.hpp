#pragma once

// Finite set systems: shattering, the shatter function, exact VC dimension,
// and the complement / intersection / preimage constructions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "progvc/shatter_report.hpp"

namespace progvc {

inline constexpr std::size_t kDefaultShatterCap = 20;

/// Subset of a ground set {0, ..., universe-1}, stored as a bit mask.
/// Grounds of up to 64 points occupy a single machine word.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static PointSet of(std::size_t universe, std::span<const std::size_t> idx);
  static PointSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / 64] >> (i % 64)) & 1U;
  }
  void set(std::size_t i);
  void reset(std::size_t i);

  std::size_t count() const noexcept;
  bool none() const noexcept;
  std::vector<std::size_t> indices() const;

  bool is_subset_of(const PointSet& other) const;
  PointSet operator&(const PointSet& other) const;
  PointSet operator|(const PointSet& other) const;
  PointSet complement() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet&, const PointSet&) = default;

 private:
  void check_same_universe(const PointSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A finite ground set of opaque labels with a deduplicated family of
/// subsets. Values are immutable after construction.
class SetSystem {
 public:
  /// Throws DomainError on duplicate labels or a member over a different
  /// ground. Duplicate members are dropped and the family is sorted.
  SetSystem(std::vector<std::string> ground, std::vector<PointSet> family);

  /// Builds the family from lists of ground indices.
  static SetSystem from_indices(
      std::vector<std::string> ground,
      const std::vector<std::vector<std::size_t>>& family);

  const std::vector<std::string>& ground() const noexcept { return ground_; }
  const std::vector<PointSet>& family() const noexcept { return family_; }
  std::size_t ground_size() const noexcept { return ground_.size(); }

  std::size_t index_of(const std::string& label) const;
  PointSet make_set(std::span<const std::size_t> indices) const;
  PointSet make_set(const std::vector<std::string>& labels) const;

 private:
  std::vector<std::string> ground_;
  std::vector<PointSet> family_;
};

using SetShatterReport = ShatterReport<std::size_t, PointSet>;

/// Some family member S with S ∩ target = sub, or nullopt if none exists.
/// Requires sub ⊆ target ⊆ ground.
std::optional<PointSet> cuts_out(const SetSystem& sys, const PointSet& target,
                                 const PointSet& sub);

/// Tests every subset of `target`. Witnesses are the first family members
/// (in family order) achieving each trace.
SetShatterReport shatters(const SetSystem& sys, const PointSet& target,
                          std::size_t cap = kDefaultShatterCap);

/// Largest n such that some n-subset of the ground is shattered. Returns
/// nullopt for the empty family, whose VC dimension is a supremum over the
/// empty set. Throws VcCapExceeded when certifying would need subsets larger
/// than `cap`.
std::optional<std::size_t> vc_dimension_exact(
    const SetSystem& sys, std::size_t cap = kDefaultShatterCap);

/// max over n-subsets A of |{S ∩ A : S in family}|.
std::size_t shatter_function(const SetSystem& sys, std::size_t n,
                             std::size_t cap = kDefaultShatterCap);

/// {ground \ S : S in family}.
SetSystem complement_system(const SetSystem& sys);

/// {S1 ∩ S2 : S1 in s1, S2 in s2}; both systems must share a ground.
SetSystem intersection_system(const SetSystem& s1, const SetSystem& s2);

/// {f^-1(S) : S in sys} over `new_ground`, where point i of the new ground
/// maps to ground index f[i] of sys.
SetSystem preimage_system(std::vector<std::string> new_ground,
                          std::span<const std::size_t> f,
                          const SetSystem& sys);

/// {"ground": [labels], "family": [[indices]]}
nlohmann::json to_json(const SetSystem& sys);
SetSystem set_system_from_json(const nlohmann::json& j);

/// Calls fn(indices) for every n-subset of {0..universe-1} in lexicographic
/// order; stops early when fn returns false. Returns false iff stopped.
template <class Fn>
bool for_each_combination(std::size_t universe, std::size_t n, Fn&& fn) {
  if (n > universe) return true;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == universe - n + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace progvc
