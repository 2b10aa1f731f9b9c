#include "progvc/setsystem.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "progvc/errors.hpp"

namespace progvc {

// ---------------------------------------------------------------------------
// PointSet

PointSet PointSet::of(std::size_t universe, std::span<const std::size_t> idx) {
  PointSet s(universe);
  for (std::size_t i : idx) s.set(i);
  return s;
}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.set(i);
  return s;
}

void PointSet::set(std::size_t i) {
  if (i >= universe_)
    throw DomainError("point index " + std::to_string(i) +
                      " outside ground of size " + std::to_string(universe_));
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

void PointSet::reset(std::size_t i) {
  if (i >= universe_)
    throw DomainError("point index " + std::to_string(i) +
                      " outside ground of size " + std::to_string(universe_));
  words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

std::size_t PointSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

void PointSet::check_same_universe(const PointSet& other) const {
  if (universe_ != other.universe_)
    throw DomainError("point sets over different grounds");
}

bool PointSet::is_subset_of(const PointSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

PointSet PointSet::operator&(const PointSet& other) const {
  check_same_universe(other);
  PointSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= other.words_[w];
  return out;
}

PointSet PointSet::operator|(const PointSet& other) const {
  check_same_universe(other);
  PointSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= other.words_[w];
  return out;
}

PointSet PointSet::complement() const {
  PointSet out(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (universe_ % 64 != 0 && !out.words_.empty())
    out.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  return out;
}

// ---------------------------------------------------------------------------
// SetSystem

SetSystem::SetSystem(std::vector<std::string> ground,
                     std::vector<PointSet> family)
    : ground_(std::move(ground)), family_(std::move(family)) {
  std::vector<std::string> sorted = ground_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("ground labels must be pairwise distinct");
  for (const auto& s : family_)
    if (s.universe() != ground_.size())
      throw DomainError("family member is not a subset of the ground");
  std::sort(family_.begin(), family_.end());
  family_.erase(std::unique(family_.begin(), family_.end()), family_.end());
}

SetSystem SetSystem::from_indices(
    std::vector<std::string> ground,
    const std::vector<std::vector<std::size_t>>& family) {
  std::vector<PointSet> members;
  members.reserve(family.size());
  for (const auto& m : family) members.push_back(PointSet::of(ground.size(), m));
  return SetSystem(std::move(ground), std::move(members));
}

std::size_t SetSystem::index_of(const std::string& label) const {
  auto it = std::find(ground_.begin(), ground_.end(), label);
  if (it == ground_.end())
    throw DomainError("label '" + label + "' is not in the ground set");
  return static_cast<std::size_t>(it - ground_.begin());
}

PointSet SetSystem::make_set(std::span<const std::size_t> indices) const {
  return PointSet::of(ground_.size(), indices);
}

PointSet SetSystem::make_set(const std::vector<std::string>& labels) const {
  PointSet s(ground_.size());
  for (const auto& l : labels) s.set(index_of(l));
  return s;
}

// ---------------------------------------------------------------------------
// Shattering

namespace {

void require_in_ground(const SetSystem& sys, const PointSet& s,
                       const char* what) {
  if (s.universe() != sys.ground_size())
    throw DomainError(std::string(what) + " is not a subset of the ground");
}

// Trace of `member` on the target points, as a mask over their positions.
TraceMask trace_of(const PointSet& member,
                   const std::vector<std::size_t>& target) {
  TraceMask m = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (member.test(target[i])) m |= TraceMask{1} << i;
  return m;
}

// Number of distinct traces of the family on `target`, stopping once
// `stop_at` is reached.
std::size_t distinct_traces(const SetSystem& sys,
                            const std::vector<std::size_t>& target,
                            std::vector<char>& seen, std::size_t stop_at) {
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t distinct = 0;
  for (const auto& s : sys.family()) {
    TraceMask m = trace_of(s, target);
    if (!seen[m]) {
      seen[m] = 1;
      if (++distinct >= stop_at) break;
    }
  }
  return distinct;
}

}  // namespace

std::optional<PointSet> cuts_out(const SetSystem& sys, const PointSet& target,
                                 const PointSet& sub) {
  require_in_ground(sys, target, "target");
  require_in_ground(sys, sub, "subset");
  if (!sub.is_subset_of(target))
    throw DomainError("subset is not contained in the target");
  for (const auto& s : sys.family())
    if ((s & target) == sub) return s;
  return std::nullopt;
}

SetShatterReport shatters(const SetSystem& sys, const PointSet& target,
                          std::size_t cap) {
  require_in_ground(sys, target, "target");
  SetShatterReport report;
  report.target = target.indices();
  if (report.target.size() > cap || report.target.size() >= 64)
    throw ResourceError("target of size " +
                        std::to_string(report.target.size()) +
                        " exceeds shatter cap " + std::to_string(cap));
  for (const auto& s : sys.family()) {
    TraceMask m = trace_of(s, report.target);
    report.witnesses.try_emplace(m, s);
  }
  for (TraceMask m = 0; m < report.subset_count(); ++m)
    if (!report.witnesses.contains(m)) report.missing.push_back(m);
  report.shattered = report.missing.empty();
  return report;
}

std::optional<std::size_t> vc_dimension_exact(const SetSystem& sys,
                                              std::size_t cap) {
  if (sys.family().empty()) return std::nullopt;
  // Shattering is inherited by subsets, so once no n-set is shattered no
  // larger set is either.
  std::size_t best = 0;
  const std::size_t ground = sys.ground_size();
  for (std::size_t n = 1; n <= ground && n < 64; ++n) {
    if (sys.family().size() < (std::size_t{1} << n)) break;
    if (n > cap) throw VcCapExceeded(best, cap);
    std::vector<char> seen(std::size_t{1} << n);
    const std::size_t full = std::size_t{1} << n;
    bool found = !for_each_combination(
        ground, n, [&](const std::vector<std::size_t>& target) {
          return distinct_traces(sys, target, seen, full) < full;
        });
    if (!found) break;
    best = n;
  }
  return best;
}

std::size_t shatter_function(const SetSystem& sys, std::size_t n,
                             std::size_t cap) {
  if (n > sys.ground_size())
    throw DomainError("n = " + std::to_string(n) + " exceeds ground size " +
                      std::to_string(sys.ground_size()));
  if (n > cap || n >= 64)
    throw ResourceError("n = " + std::to_string(n) +
                        " exceeds shatter cap " + std::to_string(cap));
  const std::size_t ceiling =
      std::min<std::size_t>(std::size_t{1} << n, sys.family().size());
  std::vector<char> seen(std::size_t{1} << n);
  std::size_t best = 0;
  for_each_combination(sys.ground_size(), n,
                       [&](const std::vector<std::size_t>& target) {
                         best = std::max(best, distinct_traces(sys, target,
                                                               seen, ceiling));
                         return best < ceiling;
                       });
  return best;
}

// ---------------------------------------------------------------------------
// Constructions

SetSystem complement_system(const SetSystem& sys) {
  std::vector<PointSet> members;
  members.reserve(sys.family().size());
  for (const auto& s : sys.family()) members.push_back(s.complement());
  return SetSystem(sys.ground(), std::move(members));
}

SetSystem intersection_system(const SetSystem& s1, const SetSystem& s2) {
  if (s1.ground() != s2.ground())
    throw DomainError("intersection of systems over different grounds");
  std::vector<PointSet> members;
  members.reserve(s1.family().size() * s2.family().size());
  for (const auto& a : s1.family())
    for (const auto& b : s2.family()) members.push_back(a & b);
  return SetSystem(s1.ground(), std::move(members));
}

SetSystem preimage_system(std::vector<std::string> new_ground,
                          std::span<const std::size_t> f,
                          const SetSystem& sys) {
  if (f.size() != new_ground.size())
    throw DomainError("point map must assign an image to every new point");
  for (std::size_t y : f)
    if (y >= sys.ground_size())
      throw DomainError("point map image " + std::to_string(y) +
                        " is outside the ground");
  std::vector<PointSet> members;
  members.reserve(sys.family().size());
  for (const auto& s : sys.family()) {
    PointSet pre(new_ground.size());
    for (std::size_t x = 0; x < f.size(); ++x)
      if (s.test(f[x])) pre.set(x);
    members.push_back(std::move(pre));
  }
  return SetSystem(std::move(new_ground), std::move(members));
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const SetSystem& sys) {
  nlohmann::json family = nlohmann::json::array();
  for (const auto& s : sys.family()) family.push_back(s.indices());
  return {{"ground", sys.ground()}, {"family", family}};
}

SetSystem set_system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("ground") || !j.contains("family"))
    throw DomainError("set system JSON needs \"ground\" and \"family\"");
  std::vector<std::string> ground;
  for (const auto& label : j.at("ground")) {
    if (!label.is_string())
      throw DomainError("ground labels must be strings");
    ground.push_back(label.get<std::string>());
  }
  std::vector<std::vector<std::size_t>> family;
  for (const auto& member : j.at("family")) {
    std::vector<std::size_t> idx;
    for (const auto& i : member) {
      if (!i.is_number_unsigned())
        throw DomainError("family entries must be ground indices");
      idx.push_back(i.get<std::size_t>());
    }
    family.push_back(std::move(idx));
  }
  return SetSystem::from_indices(std::move(ground), family);
}

}  // namespace progvc
