#pragma once

// Free groups F_k on generators a_1..a_k viewed as their Cayley tree, the
// per-generator pseudometrics d_i, and translated progressions
//   g P(N) = {x : d_i(g, x) <= N_i for every i}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "progvc/shatter_report.hpp"

namespace progvc::free {

inline constexpr std::size_t kDefaultCutCap = 14;

/// A reduced word in F_k. Letters are signed generator indices: +i is a_i,
/// -i is a_i^-1. No two adjacent letters cancel.
class FWord {
 public:
  /// Identity of F_rank.
  explicit FWord(std::size_t rank = 1);

  /// Freely reduces `letters`. Throws DomainError on rank 0 or a letter
  /// outside ±1..±rank.
  static FWord reduce(std::size_t rank, std::span<const int> letters);
  static FWord generator(std::size_t rank, int letter, std::int64_t power = 1);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  /// Occurrences of a_i and a_i^-1 (1-based i).
  std::size_t count(std::size_t i) const;

  friend bool operator==(const FWord&, const FWord&) = default;
  /// Shortlex order: length first, then letters compared by the key
  /// a_1 < a_1^-1 < a_2 < a_2^-1 < ...
  friend bool operator<(const FWord& l, const FWord& r);

 private:
  FWord(std::size_t rank, std::vector<int> reduced);

  std::size_t rank_;
  std::vector<int> letters_;
};

FWord multiply(const FWord& u, const FWord& v);
FWord invert(const FWord& u);

/// Tokens `i^e` joined by `*`, `e` for the identity; "2^5*1^3" is
/// a_2^5 a_1^3 and "1^-5" is a_1^-5. A bare `i` means `i^1`.
std::string to_string(const FWord& w);
/// Throws DomainError naming the offending token.
FWord parse_word(std::size_t rank, std::string_view text);
/// Comma-separated list of words.
std::vector<FWord> parse_word_list(std::size_t rank, std::string_view text);

/// Number of a_i^{±1} letters in the reduced word for x^-1 y.
std::size_t dist_i(std::size_t i, const FWord& x, const FWord& y);
/// Word metric: the length of x^-1 y.
std::size_t dist(const FWord& x, const FWord& y);
/// (d_1(x, y), ..., d_k(x, y))
std::vector<std::size_t> dist_vector(const FWord& x, const FWord& y);

/// Vertices of the geodesic from v to w in the Cayley tree, v first.
std::vector<FWord> path(const FWord& v, const FWord& w);

/// A finite vertex set of the Cayley tree with the induced edges.
struct TreeSlice {
  std::size_t rank = 1;
  std::set<FWord> vertices;

  bool contains(const FWord& v) const { return vertices.contains(v); }
  std::vector<FWord> neighbors(const FWord& v) const;
  std::size_t degree(const FWord& v) const { return neighbors(v).size(); }
  bool is_connected() const;
};

/// T(X): the smallest connected subgraph of the Cayley tree containing X,
/// built as the union of paths from one member of X to all the others.
TreeSlice minimal_tree(const std::vector<FWord>& xs);
/// L(X): vertices of degree <= 1 in T(X).
std::set<FWord> leaves(const std::vector<FWord>& xs);

/// br_X(p): connected components of T(X) minus p, ordered by their
/// shortlex-least vertex. Throws DomainError if p is not in T(X).
std::vector<std::set<FWord>> branches(const std::vector<FWord>& xs,
                                      const FWord& p);
/// br*_X(p): {p} followed by br_X(p). The parts partition T(X).
std::vector<std::set<FWord>> branches_star(const std::vector<FWord>& xs,
                                           const FWord& p);

/// Choice functions f_B : [k] -> X \ B for each part B of br*_X(p), each
/// picking a point of X \ B at maximal d_i-distance from p, and agreeing
/// with f_{p} wherever that choice lies outside B.
struct DominatingSequence {
  FWord center;
  std::vector<std::set<FWord>> parts;    // parts[0] = {center}
  std::vector<std::vector<FWord>> maps;  // maps[b][i - 1] = f_{parts[b]}(i)

  std::set<FWord> image() const;
};

/// Requires p in T(X) \ X. Ties go to the shortlex-least point.
DominatingSequence dominating_sequence(const std::vector<FWord>& xs,
                                       const FWord& p);

struct FProgressionSpec {
  std::vector<std::uint64_t> bounds;
  FWord translate;

  friend bool operator==(const FProgressionSpec&,
                         const FProgressionSpec&) = default;
};

/// "g P(N_1,...,N_k)" in word syntax, e.g. "1^10 P(13,5)".
std::string to_string(const FProgressionSpec& spec);
nlohmann::json to_json(const FProgressionSpec& spec);

bool progression_contains(const FProgressionSpec& spec, const FWord& x);

/// Re-centres a progression at the closest vertex h of a connected slice
/// so that the slice's intersection is unchanged: h P(M) with
/// M_i = N_i - d_i(g, h). Returns nullopt when g P(N) misses the slice.
std::optional<FProgressionSpec> normalize_entry_point(
    const TreeSlice& slice, const FProgressionSpec& spec);

using FShatterReport = ShatterReport<FWord, FProgressionSpec>;

/// Complete decision procedure for cutting subsets out of a finite set X
/// by translated progressions. Precomputes T(X) and the d_i table once.
class CutSearch {
 public:
  explicit CutSearch(std::vector<FWord> xs, std::size_t cap = kDefaultCutCap);

  const std::vector<FWord>& points() const noexcept { return xs_; }
  const TreeSlice& tree() const noexcept { return tree_; }

  /// A progression whose trace on X is exactly the subset `mask` (bit j
  /// selects points()[j]), or nullopt if there is none.
  std::optional<FProgressionSpec> find(TraceMask mask) const;

  /// True iff every subset can be cut out; stops at the first failure.
  bool shattered() const;

 private:
  std::vector<FWord> xs_;
  TreeSlice tree_;
  std::vector<FWord> centers_;  // T(X) in shortlex order
  std::vector<std::uint32_t> table_;  // d_i(centers_[h], xs_[x])
  std::size_t rank_;
};

/// Some g P(N) with X ∩ g P(N) = S, or nullopt. S must be a subset of X.
std::optional<FProgressionSpec> cuts_out_free(const std::vector<FWord>& xs,
                                              const std::vector<FWord>& subset,
                                              std::size_t cap = kDefaultCutCap);

/// Runs the decision procedure for all 2^|X| subsets; parallel over subsets
/// with a scheduling-independent result. threads = 0 picks a default.
FShatterReport is_shattered_free(const std::vector<FWord>& xs,
                                 std::size_t cap = kDefaultCutCap,
                                 unsigned threads = 1);

nlohmann::json to_json(const FShatterReport& report);

struct Tripod {
  FWord center;
  std::vector<std::set<FWord>> branches;
};

/// For |X| = 3k: the shortlex-first p in T(X) \ X with exactly three
/// branches each meeting X in k points, or nullopt. A set without such a
/// vertex cannot be shattered. k = 0 means the rank of X.
std::optional<Tripod> tripod_profile(const std::vector<FWord>& xs,
                                     std::size_t k = 0);

/// Translate cutting exactly {a_j : j in ys} out of the generators
/// {a_1..a_k} (1-based indices in ys). Requires all N_i >= 1.
FProgressionSpec generator_shatter_witness(std::size_t k,
                                           const std::vector<std::uint64_t>& bounds,
                                           const std::vector<std::size_t>& ys);

// ---------------------------------------------------------------------------
// Randomized search for shattered sets.

struct SearchConfig {
  std::size_t rank = 2;
  std::size_t set_size = 6;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;
  std::size_t max_length = 12;
  unsigned threads = 0;
};

struct SearchResult {
  SearchConfig config;
  std::size_t sampled = 0;
  std::size_t leaf_deficient = 0;  // L(X) != X
  std::size_t with_tripod = 0;     // only counted when set_size = 3k
  std::vector<std::pair<std::size_t, std::vector<FWord>>> shattered;  // sample index, set
};

/// Uniform word length in [0, max_length], then uniform reduced letters.
FWord random_word(std::size_t rank, std::size_t max_length,
                  std::mt19937_64& rng);

/// Samples `samples` sets of `set_size` distinct words and decides each
/// exactly. Sets are drawn sequentially from the seed before evaluation,
/// so the result does not depend on the thread count.
SearchResult search_shattered(const SearchConfig& config);

nlohmann::json to_json(const SearchResult& result);

}  // namespace progvc::free
