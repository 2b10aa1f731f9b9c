#include "progvc/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <limits>
#include <stdexcept>

#include "progvc/errors.hpp"
#include "progvc/parallel.hpp"

namespace progvc::free {

// ---------------------------------------------------------------------------
// Words

namespace {

int letter_key(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

void require_same_rank(const FWord& x, const FWord& y) {
  if (x.rank() != y.rank())
    throw DomainError("words from F_" + std::to_string(x.rank()) + " and F_" +
                      std::to_string(y.rank()));
}

std::size_t common_prefix(const FWord& x, const FWord& y) {
  const auto& a = x.letters();
  const auto& b = y.letters();
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

}  // namespace

FWord::FWord(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw DomainError("free group rank must be >= 1");
}

FWord::FWord(std::size_t rank, std::vector<int> reduced)
    : rank_(rank), letters_(std::move(reduced)) {}

FWord FWord::reduce(std::size_t rank, std::span<const int> letters) {
  if (rank == 0) throw DomainError("free group rank must be >= 1");
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) > rank)
      throw DomainError("letter " + std::to_string(l) + " is not a generator of F_" +
                        std::to_string(rank));
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return FWord(rank, std::move(out));
}

FWord FWord::generator(std::size_t rank, int letter, std::int64_t power) {
  if (power < 0) {
    letter = -letter;
    power = -power;
  }
  std::vector<int> letters(static_cast<std::size_t>(power), letter);
  return reduce(rank, letters);
}

std::size_t FWord::count(std::size_t i) const {
  if (i == 0 || i > rank_)
    throw DomainError("generator index " + std::to_string(i) + " outside 1.." +
                      std::to_string(rank_));
  return static_cast<std::size_t>(std::count_if(
      letters_.begin(), letters_.end(),
      [i](int l) { return static_cast<std::size_t>(std::abs(l)) == i; }));
}

bool operator<(const FWord& l, const FWord& r) {
  if (l.rank_ != r.rank_) return l.rank_ < r.rank_;
  if (l.letters_.size() != r.letters_.size())
    return l.letters_.size() < r.letters_.size();
  for (std::size_t i = 0; i < l.letters_.size(); ++i) {
    int kl = letter_key(l.letters_[i]), kr = letter_key(r.letters_[i]);
    if (kl != kr) return kl < kr;
  }
  return false;
}

FWord multiply(const FWord& u, const FWord& v) {
  require_same_rank(u, v);
  std::vector<int> all = u.letters();
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return FWord::reduce(u.rank(), all);
}

FWord invert(const FWord& u) {
  std::vector<int> inv(u.letters().rbegin(), u.letters().rend());
  for (auto& l : inv) l = -l;
  return FWord::reduce(u.rank(), inv);
}

std::string to_string(const FWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long power = static_cast<long long>(j - i) * (ls[i] < 0 ? -1 : 1);
    if (!out.empty()) out += '*';
    out += std::to_string(std::abs(ls[i])) + "^" + std::to_string(power);
    i = j;
  }
  return out;
}

FWord parse_word(std::size_t rank, std::string_view text) {
  auto body = trim(text);
  if (body.empty()) throw DomainError("empty word (use 'e' for the identity)");
  std::vector<int> letters;
  for (auto raw : split(body, '*')) {
    auto token = trim(raw);
    if (token == "e") continue;
    auto bad = [&] {
      return DomainError("malformed word token '" + std::string(token) +
                         "' (expected i^e with 1 <= i <= " +
                         std::to_string(rank) + ")");
    };
    auto caret = token.find('^');
    auto gen_text = token.substr(0, caret);
    long long gen = 0, power = 1;
    auto r1 = std::from_chars(gen_text.data(), gen_text.data() + gen_text.size(), gen);
    if (gen_text.empty() || r1.ec != std::errc() ||
        r1.ptr != gen_text.data() + gen_text.size())
      throw bad();
    if (caret != std::string_view::npos) {
      auto pow_text = token.substr(caret + 1);
      auto r2 = std::from_chars(pow_text.data(), pow_text.data() + pow_text.size(), power);
      if (pow_text.empty() || r2.ec != std::errc() ||
          r2.ptr != pow_text.data() + pow_text.size())
        throw bad();
    }
    if (gen < 1 || static_cast<std::size_t>(gen) > rank) throw bad();
    if (std::llabs(power) > 1'000'000) throw bad();
    int letter = static_cast<int>(power < 0 ? -gen : gen);
    for (long long p = 0; p < std::llabs(power); ++p) letters.push_back(letter);
  }
  return FWord::reduce(rank, letters);
}

std::vector<FWord> parse_word_list(std::size_t rank, std::string_view text) {
  std::vector<FWord> out;
  if (trim(text).empty()) return out;
  for (auto item : split(text, ',')) out.push_back(parse_word(rank, item));
  return out;
}

// ---------------------------------------------------------------------------
// Metrics and paths

std::size_t dist_i(std::size_t i, const FWord& x, const FWord& y) {
  require_same_rank(x, y);
  if (i == 0 || i > x.rank())
    throw DomainError("generator index " + std::to_string(i) + " outside 1.." +
                      std::to_string(x.rank()));
  // x^-1 y reduces to (x's suffix)^-1 (y's suffix) after the common prefix.
  std::size_t p = common_prefix(x, y);
  std::size_t n = 0;
  for (std::size_t k = p; k < x.length(); ++k)
    n += static_cast<std::size_t>(std::abs(x.letters()[k])) == i;
  for (std::size_t k = p; k < y.length(); ++k)
    n += static_cast<std::size_t>(std::abs(y.letters()[k])) == i;
  return n;
}

std::size_t dist(const FWord& x, const FWord& y) {
  require_same_rank(x, y);
  std::size_t p = common_prefix(x, y);
  return (x.length() - p) + (y.length() - p);
}

std::vector<std::size_t> dist_vector(const FWord& x, const FWord& y) {
  require_same_rank(x, y);
  std::vector<std::size_t> out(x.rank(), 0);
  std::size_t p = common_prefix(x, y);
  for (std::size_t k = p; k < x.length(); ++k) ++out[std::abs(x.letters()[k]) - 1];
  for (std::size_t k = p; k < y.length(); ++k) ++out[std::abs(y.letters()[k]) - 1];
  return out;
}

namespace {

FWord prefix(const FWord& w, std::size_t n) {
  return FWord::reduce(w.rank(), std::span<const int>(w.letters().data(), n));
}

}  // namespace

std::vector<FWord> path(const FWord& v, const FWord& w) {
  require_same_rank(v, w);
  std::size_t p = common_prefix(v, w);
  std::vector<FWord> out;
  out.reserve(v.length() + w.length() - 2 * p + 1);
  for (std::size_t n = v.length(); n > p; --n) out.push_back(prefix(v, n));
  for (std::size_t n = p; n <= w.length(); ++n) out.push_back(prefix(w, n));
  return out;
}

// ---------------------------------------------------------------------------
// Trees

std::vector<FWord> TreeSlice::neighbors(const FWord& v) const {
  std::vector<FWord> out;
  const auto& ls = v.letters();
  if (!ls.empty()) {
    FWord parent = prefix(v, ls.size() - 1);
    if (contains(parent)) out.push_back(std::move(parent));
  }
  std::vector<int> child = ls;
  child.push_back(0);
  for (int g = 1; g <= static_cast<int>(v.rank()); ++g) {
    for (int l : {g, -g}) {
      if (!ls.empty() && ls.back() == -l) continue;
      child.back() = l;
      FWord c = FWord::reduce(v.rank(), child);
      if (contains(c)) out.push_back(std::move(c));
    }
  }
  return out;
}

bool TreeSlice::is_connected() const {
  if (vertices.empty()) return true;
  std::set<FWord> seen{*vertices.begin()};
  std::deque<FWord> queue{*vertices.begin()};
  while (!queue.empty()) {
    FWord v = queue.front();
    queue.pop_front();
    for (auto& n : neighbors(v))
      if (seen.insert(n).second) queue.push_back(n);
  }
  return seen.size() == vertices.size();
}

TreeSlice minimal_tree(const std::vector<FWord>& xs) {
  if (xs.empty()) throw DomainError("minimal tree of an empty set");
  // Any connected set containing X contains every path between members of
  // X, and the union of paths from one member is already connected.
  TreeSlice t;
  t.rank = xs.front().rank();
  for (const auto& x : xs) {
    for (auto& v : path(xs.front(), x)) t.vertices.insert(std::move(v));
  }
  return t;
}

std::set<FWord> leaves(const std::vector<FWord>& xs) {
  TreeSlice t = minimal_tree(xs);
  std::set<FWord> out;
  for (const auto& v : t.vertices)
    if (t.degree(v) <= 1) out.insert(v);
  return out;
}

namespace {

std::vector<std::set<FWord>> components_without(const TreeSlice& t,
                                                const FWord& p) {
  std::vector<std::set<FWord>> comps;
  std::set<FWord> seen{p};
  for (const auto& start : t.vertices) {
    if (seen.contains(start)) continue;
    std::set<FWord> comp{start};
    seen.insert(start);
    std::deque<FWord> queue{start};
    while (!queue.empty()) {
      FWord v = queue.front();
      queue.pop_front();
      for (auto& n : t.neighbors(v)) {
        if (seen.insert(n).second) {
          comp.insert(n);
          queue.push_back(n);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

std::vector<std::set<FWord>> branches(const std::vector<FWord>& xs,
                                      const FWord& p) {
  TreeSlice t = minimal_tree(xs);
  if (!t.contains(p))
    throw DomainError(to_string(p) + " is not a vertex of the minimal tree");
  return components_without(t, p);
}

std::vector<std::set<FWord>> branches_star(const std::vector<FWord>& xs,
                                           const FWord& p) {
  auto parts = branches(xs, p);
  parts.insert(parts.begin(), std::set<FWord>{p});
  return parts;
}

std::set<FWord> DominatingSequence::image() const {
  std::set<FWord> out;
  for (const auto& f : maps) out.insert(f.begin(), f.end());
  return out;
}

DominatingSequence dominating_sequence(const std::vector<FWord>& xs,
                                       const FWord& p) {
  std::set<FWord> xset(xs.begin(), xs.end());
  if (xset.contains(p))
    throw DomainError("dominating sequences are built around a point outside X");
  DominatingSequence ds;
  ds.center = p;
  ds.parts = branches_star(xs, p);
  const std::size_t k = p.rank();

  // Largest d_i(., p) over `pool`; iteration in shortlex order with a strict
  // comparison keeps the least point on ties.
  auto farthest = [&](std::size_t i, const std::set<FWord>& excluded) {
    std::optional<FWord> best;
    std::size_t best_d = 0;
    for (const auto& x : xset) {
      if (excluded.contains(x)) continue;
      std::size_t d = dist_i(i, x, p);
      if (!best || d > best_d) {
        best = x;
        best_d = d;
      }
    }
    return best;
  };

  for (const auto& part : ds.parts) {
    bool any = std::any_of(xset.begin(), xset.end(),
                           [&](const FWord& x) { return !part.contains(x); });
    if (!any) throw DomainError("X \\ B is empty for some part B");
  }

  std::vector<FWord> center_map;
  for (std::size_t i = 1; i <= k; ++i) center_map.push_back(*farthest(i, ds.parts[0]));
  ds.maps.push_back(center_map);
  for (std::size_t b = 1; b < ds.parts.size(); ++b) {
    const auto& part = ds.parts[b];
    std::vector<FWord> f;
    for (std::size_t i = 1; i <= k; ++i) {
      const FWord& c = center_map[i - 1];
      f.push_back(part.contains(c) ? *farthest(i, part) : c);
    }
    ds.maps.push_back(std::move(f));
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Progressions

std::string to_string(const FProgressionSpec& spec) {
  std::string out = to_string(spec.translate) + " P(";
  for (std::size_t i = 0; i < spec.bounds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(spec.bounds[i]);
  }
  return out + ")";
}

nlohmann::json to_json(const FProgressionSpec& spec) {
  return {{"translate", to_string(spec.translate)}, {"bounds", spec.bounds}};
}

namespace {

void require_spec_rank(const FProgressionSpec& spec, const FWord& x) {
  require_same_rank(spec.translate, x);
  if (spec.bounds.size() != x.rank())
    throw DomainError("progression has " + std::to_string(spec.bounds.size()) +
                      " bounds for rank " + std::to_string(x.rank()));
}

}  // namespace

bool progression_contains(const FProgressionSpec& spec, const FWord& x) {
  require_spec_rank(spec, x);
  auto d = dist_vector(spec.translate, x);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > spec.bounds[i]) return false;
  return true;
}

std::optional<FProgressionSpec> normalize_entry_point(
    const TreeSlice& slice, const FProgressionSpec& spec) {
  if (slice.vertices.empty()) return std::nullopt;
  if (!slice.is_connected())
    throw DomainError("entry-point normalization needs a connected set");
  bool meets = false;
  const FWord* closest = nullptr;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& v : slice.vertices) {
    require_spec_rank(spec, v);
    meets = meets || progression_contains(spec, v);
    std::size_t d = dist(spec.translate, v);
    if (d < best) {
      best = d;
      closest = &v;
    }
  }
  if (!meets) return std::nullopt;
  FProgressionSpec out{spec.bounds, *closest};
  auto shift = dist_vector(spec.translate, *closest);
  for (std::size_t i = 0; i < shift.size(); ++i) {
    if (shift[i] > out.bounds[i])
      throw std::logic_error("closest point lies outside a meeting progression");
    out.bounds[i] -= shift[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cutting and shattering
//
// Completeness of CutSearch::find. Suppose X ∩ g P(N) = S with S nonempty.
// T(X) is connected, so the entry-point lemma gives h in T(X) and M with
// T(X) ∩ g P(N) = T(X) ∩ h P(M); in particular X ∩ h P(M) = S. Put
// N'_i = max_{x in S} d_i(h, x), one of the values {0} ∪ {d_i(h, x)}.
// Then N' <= M coordinatewise and S ⊆ X ∩ h P(N') ⊆ X ∩ h P(M) = S.
// Hence it suffices to try every h in T(X) with these minimal thresholds.
// The empty subset is cut out by any single point outside X.

CutSearch::CutSearch(std::vector<FWord> xs, std::size_t cap)
    : xs_(std::move(xs)), rank_(xs_.empty() ? 1 : xs_.front().rank()) {
  if (xs_.size() > cap || xs_.size() > 63)
    throw ResourceError("point set of size " + std::to_string(xs_.size()) +
                        " exceeds cut cap " + std::to_string(cap));
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i].rank() != rank_) throw DomainError("points from different ranks");
    for (std::size_t j = 0; j < i; ++j)
      if (xs_[i] == xs_[j])
        throw DomainError("duplicate point " + to_string(xs_[i]));
  }
  if (xs_.empty()) return;
  tree_ = minimal_tree(xs_);
  centers_.assign(tree_.vertices.begin(), tree_.vertices.end());
  table_.resize(centers_.size() * xs_.size() * rank_);
  std::size_t at = 0;
  for (const auto& h : centers_)
    for (const auto& x : xs_)
      for (auto d : dist_vector(h, x)) table_[at++] = static_cast<std::uint32_t>(d);
}

std::optional<FProgressionSpec> CutSearch::find(TraceMask mask) const {
  const std::size_t n = xs_.size();
  if (n < 64 && (mask >> n) != 0) throw DomainError("subset mask outside X");
  if (mask == 0) {
    std::size_t longest = 0;
    for (const auto& x : xs_) longest = std::max(longest, x.length());
    return FProgressionSpec{std::vector<std::uint64_t>(rank_, 0),
                            FWord::generator(rank_, 1,
                                             static_cast<std::int64_t>(longest + 1))};
  }
  std::vector<std::uint32_t> need(rank_);
  for (std::size_t h = 0; h < centers_.size(); ++h) {
    const std::uint32_t* row = &table_[h * n * rank_];
    std::fill(need.begin(), need.end(), 0);
    for (std::size_t x = 0; x < n; ++x)
      if (mask >> x & 1U)
        for (std::size_t i = 0; i < rank_; ++i)
          need[i] = std::max(need[i], row[x * rank_ + i]);
    bool exact = true;
    for (std::size_t x = 0; x < n && exact; ++x) {
      if (mask >> x & 1U) continue;
      bool inside = true;
      for (std::size_t i = 0; i < rank_ && inside; ++i)
        inside = row[x * rank_ + i] <= need[i];
      exact = !inside;
    }
    if (exact)
      return FProgressionSpec{std::vector<std::uint64_t>(need.begin(), need.end()),
                              centers_[h]};
  }
  return std::nullopt;
}

bool CutSearch::shattered() const {
  const TraceMask total = TraceMask{1} << xs_.size();
  for (TraceMask m = 0; m < total; ++m)
    if (!find(m)) return false;
  return true;
}

std::optional<FProgressionSpec> cuts_out_free(const std::vector<FWord>& xs,
                                              const std::vector<FWord>& subset,
                                              std::size_t cap) {
  CutSearch search(xs, cap);
  TraceMask mask = 0;
  for (const auto& s : subset) {
    auto it = std::find(xs.begin(), xs.end(), s);
    if (it == xs.end())
      throw DomainError(to_string(s) + " is not a point of X");
    mask |= TraceMask{1} << (it - xs.begin());
  }
  return search.find(mask);
}

FShatterReport is_shattered_free(const std::vector<FWord>& xs, std::size_t cap,
                                 unsigned threads) {
  CutSearch search(xs, cap);
  FShatterReport report;
  report.target = xs;
  std::vector<std::optional<FProgressionSpec>> found(report.subset_count());
  parallel_for(found.size(), threads,
               [&](std::size_t m) { found[m] = search.find(m); });
  for (TraceMask m = 0; m < found.size(); ++m) {
    if (found[m])
      report.witnesses.emplace(m, std::move(*found[m]));
    else
      report.missing.push_back(m);
  }
  report.shattered = report.missing.empty();
  return report;
}

nlohmann::json to_json(const FShatterReport& report) {
  auto words = [](const std::vector<FWord>& ws) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& w : ws) a.push_back(to_string(w));
    return a;
  };
  nlohmann::json missing = nlohmann::json::array();
  for (auto m : report.missing) missing.push_back(words(report.points_of(m)));
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& [m, spec] : report.witnesses) {
    nlohmann::json row = to_json(spec);
    row["subset"] = words(report.points_of(m));
    witnesses.push_back(std::move(row));
  }
  return {{"target", words(report.target)},
          {"shattered", report.shattered},
          {"missing", missing},
          {"witnesses", witnesses}};
}

std::optional<Tripod> tripod_profile(const std::vector<FWord>& xs,
                                     std::size_t k) {
  if (xs.empty()) throw DomainError("tripod profile of an empty set");
  if (k == 0) k = xs.front().rank();
  if (xs.size() != 3 * k)
    throw DomainError("tripod profile needs exactly 3k = " +
                      std::to_string(3 * k) + " points");
  std::set<FWord> xset(xs.begin(), xs.end());
  TreeSlice t = minimal_tree(xs);
  for (const auto& p : t.vertices) {
    if (xset.contains(p) || t.degree(p) != 3) continue;
    auto comps = components_without(t, p);
    bool balanced = std::all_of(comps.begin(), comps.end(), [&](const auto& c) {
      return std::count_if(c.begin(), c.end(),
                           [&](const FWord& v) { return xset.contains(v); }) ==
             static_cast<std::ptrdiff_t>(k);
    });
    if (comps.size() == 3 && balanced) return Tripod{p, std::move(comps)};
  }
  return std::nullopt;
}

FProgressionSpec generator_shatter_witness(std::size_t k,
                                           const std::vector<std::uint64_t>& bounds,
                                           const std::vector<std::size_t>& ys) {
  if (k == 0) throw DomainError("free group rank must be >= 1");
  if (bounds.size() != k)
    throw DomainError("need one bound per generator");
  if (std::any_of(bounds.begin(), bounds.end(), [](auto n) { return n < 1; }))
    throw DomainError("generator shattering needs every N_i >= 1");
  std::vector<bool> in_y(k + 1, false);
  for (auto y : ys) {
    if (y < 1 || y > k)
      throw DomainError("generator index " + std::to_string(y) + " outside 1.." +
                        std::to_string(k));
    in_y[y] = true;
  }

  FProgressionSpec spec{bounds, FWord(k)};
  if (ys.empty()) {
    spec.translate = FWord::generator(k, 1, static_cast<std::int64_t>(bounds[0] + 2));
  } else {
    std::size_t j = *std::min_element(ys.begin(), ys.end());
    std::vector<int> letters{static_cast<int>(j)};
    for (std::size_t i = 1; i <= k; ++i)
      if (!in_y[i])
        letters.insert(letters.end(), bounds[i - 1], static_cast<int>(i));
    spec.translate = FWord::reduce(k, letters);
  }

  for (std::size_t i = 1; i <= k; ++i) {
    if (progression_contains(spec, FWord::generator(k, static_cast<int>(i))) !=
        in_y[i])
      throw std::logic_error("generator witness failed to cut out its subset");
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Randomized search

namespace {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection sampling keeps the draw uniform and independent of the
  // standard library's distribution implementation.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

int letter_from_index(std::uint64_t idx) {
  int g = static_cast<int>(idx / 2) + 1;
  return idx % 2 == 0 ? g : -g;
}

std::uint64_t index_of_letter(int l) {
  return static_cast<std::uint64_t>(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0));
}

}  // namespace

FWord random_word(std::size_t rank, std::size_t max_length,
                  std::mt19937_64& rng) {
  const std::uint64_t alphabet = 2 * rank;
  const std::size_t length = uniform_below(rng, max_length + 1);
  std::vector<int> letters;
  letters.reserve(length);
  for (std::size_t n = 0; n < length; ++n) {
    if (letters.empty()) {
      letters.push_back(letter_from_index(uniform_below(rng, alphabet)));
      continue;
    }
    if (alphabet == 2) {
      // F_1 admits a single continuation.
      letters.push_back(letters.back());
      continue;
    }
    const std::uint64_t forbidden = index_of_letter(-letters.back());
    std::uint64_t idx = uniform_below(rng, alphabet - 1);
    if (idx >= forbidden) ++idx;
    letters.push_back(letter_from_index(idx));
  }
  return FWord::reduce(rank, letters);
}

SearchResult search_shattered(const SearchConfig& config) {
  if (config.rank == 0) throw DomainError("free group rank must be >= 1");
  if (config.set_size == 0 || config.set_size > kDefaultCutCap)
    throw ResourceError("set size must be in 1.." + std::to_string(kDefaultCutCap));
  // Distinct words of length <= L in F_k: make sure the sampler can finish.
  std::size_t available = 1, layer = 2 * config.rank;
  for (std::size_t len = 1; len <= config.max_length && available < config.set_size;
       ++len) {
    available += layer;
    layer *= (2 * config.rank - 1);
  }
  if (available < config.set_size)
    throw DomainError("not enough distinct words of length <= " +
                      std::to_string(config.max_length));

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<FWord>> sets(config.samples);
  for (auto& s : sets) {
    while (s.size() < config.set_size) {
      FWord w = random_word(config.rank, config.max_length, rng);
      if (std::find(s.begin(), s.end(), w) == s.end()) s.push_back(std::move(w));
    }
  }

  struct Outcome {
    bool shattered = false;
    bool leaf_deficient = false;
    bool tripod = false;
  };
  std::vector<Outcome> outcomes(sets.size());
  const bool tripod_size = config.set_size == 3 * config.rank;
  parallel_for(sets.size(), config.threads, [&](std::size_t i) {
    const auto& xs = sets[i];
    Outcome o;
    o.shattered = CutSearch(xs).shattered();
    o.leaf_deficient = leaves(xs).size() != xs.size();
    if (tripod_size) o.tripod = tripod_profile(xs).has_value();
    outcomes[i] = o;
  });

  SearchResult result;
  result.config = config;
  result.sampled = sets.size();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    result.leaf_deficient += outcomes[i].leaf_deficient;
    result.with_tripod += outcomes[i].tripod;
    if (outcomes[i].shattered) result.shattered.emplace_back(i, sets[i]);
  }
  return result;
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json found = nlohmann::json::array();
  for (const auto& [index, xs] : r.shattered) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& w : xs) pts.push_back(to_string(w));
    found.push_back({{"sample", index}, {"points", pts}});
  }
  return {{"rank", r.config.rank},
          {"set_size", r.config.set_size},
          {"samples", r.config.samples},
          {"seed", r.config.seed},
          {"max_length", r.config.max_length},
          {"sampled", r.sampled},
          {"leaf_deficient", r.leaf_deficient},
          {"with_tripod", r.with_tripod},
          {"shattered_found", r.shattered.size()},
          {"shattered_sets", found}};
}

}  // namespace progvc::free
