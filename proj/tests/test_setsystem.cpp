#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "progvc/bounds.hpp"
#include "progvc/errors.hpp"
#include "progvc/setsystem.hpp"

using namespace progvc;

namespace {

std::vector<std::string> labels(std::size_t n, int offset = 0) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(static_cast<int>(i) + offset));
  return out;
}

SetSystem cosets_z6() {
  return SetSystem::from_indices(labels(6), {{0, 3}, {1, 4}, {2, 5}});
}

SetSystem intervals(int lo, int hi) {
  std::vector<std::vector<std::size_t>> fam;
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::vector<std::size_t> s;
      for (std::size_t i = a; i <= b; ++i) s.push_back(i);
      fam.push_back(s);
    }
  }
  return SetSystem::from_indices(labels(n, lo), fam);
}

// Brute force over bit masks: ground <= 16 points.
std::vector<std::uint32_t> as_masks(const SetSystem& sys) {
  std::vector<std::uint32_t> out;
  for (const auto& s : sys.family()) {
    std::uint32_t m = 0;
    for (auto i : s.indices()) m |= 1U << i;
    out.push_back(m);
  }
  return out;
}

std::size_t oracle_traces(const std::vector<std::uint32_t>& fam, std::uint32_t a) {
  std::set<std::uint32_t> t;
  for (auto s : fam) t.insert(s & a);
  return t.size();
}

std::size_t oracle_pi(const std::vector<std::uint32_t>& fam, std::size_t ground,
                      std::size_t n) {
  std::size_t best = 0;
  for (std::uint32_t a = 0; a < (1U << ground); ++a)
    if (static_cast<std::size_t>(std::popcount(a)) == n)
      best = std::max(best, oracle_traces(fam, a));
  return best;
}

std::optional<std::size_t> oracle_vc(const std::vector<std::uint32_t>& fam,
                                     std::size_t ground) {
  if (fam.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::uint32_t a = 0; a < (1U << ground); ++a) {
    auto n = static_cast<std::size_t>(std::popcount(a));
    if (oracle_traces(fam, a) == (std::size_t{1} << n)) best = std::max(best, n);
  }
  return best;
}

SetSystem random_system(std::mt19937_64& rng, std::size_t ground) {
  std::uniform_int_distribution<std::size_t> count(0, 24);
  std::bernoulli_distribution coin(0.4);
  std::vector<PointSet> fam;
  for (std::size_t m = count(rng); m > 0; --m) {
    PointSet s(ground);
    for (std::size_t i = 0; i < ground; ++i)
      if (coin(rng)) s.set(i);
    fam.push_back(s);
  }
  return SetSystem(labels(ground), fam);
}

}  // namespace

TEST_CASE("point sets") {
  std::vector<std::size_t> idx{0, 5, 70};
  auto s = PointSet::of(100, idx);
  CHECK(s.count() == 3);
  CHECK(s.test(70));
  CHECK(s.indices() == idx);
  CHECK(s.complement().count() == 97);
  CHECK((s & s.complement()).none());
  CHECK((s | s.complement()) == PointSet::full(100));
  CHECK_THROWS_AS(s.set(100), DomainError);
  CHECK_THROWS_AS((void)(s & PointSet(99)), DomainError);
}

TEST_CASE("construction validates and deduplicates") {
  auto sys = SetSystem::from_indices(labels(3), {{0}, {0}, {1, 2}});
  CHECK(sys.family().size() == 2);
  CHECK_THROWS_AS(SetSystem(std::vector<std::string>{"x", "x"}, {}), DomainError);
  CHECK_THROWS_AS(SetSystem(labels(3), {PointSet(4)}), DomainError);
  CHECK(sys.index_of("2") == 2);
  CHECK_THROWS_AS(sys.index_of("7"), DomainError);
}

TEST_CASE("cuts_out on cosets") {
  auto sys = cosets_z6();
  auto w = cuts_out(sys, sys.make_set(std::vector<std::string>{"0", "1"}),
                    sys.make_set(std::vector<std::string>{"0"}));
  REQUIRE(w);
  CHECK(*w == sys.make_set(std::vector<std::string>{"0", "3"}));
  CHECK_FALSE(cuts_out(sys, sys.make_set(std::vector<std::string>{"0", "3"}),
                       sys.make_set(std::vector<std::string>{"0"})));
  PointSet empty(6);
  CHECK(cuts_out(sys, empty, empty));
  CHECK_THROWS_AS(cuts_out(sys, empty, sys.make_set(std::vector<std::string>{"0"})),
                  DomainError);
}

TEST_CASE("shatters on intervals") {
  auto sys = intervals(-20, 20);
  auto at = [&](std::vector<std::string> ls) { return sys.make_set(ls); };
  auto two = shatters(sys, at({"0", "5"}));
  CHECK(two.shattered);
  CHECK(two.witnesses.size() == 4);
  for (const auto& [m, w] : two.witnesses) {
    PointSet expect(sys.ground_size());
    for (auto p : two.points_of(m)) expect.set(p);
    CHECK((w & at({"0", "5"})) == expect);
  }
  auto three = shatters(sys, at({"0", "5", "10"}));
  CHECK_FALSE(three.shattered);
  CHECK(std::find(three.missing.begin(), three.missing.end(), TraceMask{0b101}) !=
        three.missing.end());
  CHECK(shatters(sys, PointSet(sys.ground_size())).shattered);
  CHECK_THROWS_AS(shatters(sys, PointSet::full(sys.ground_size())), ResourceError);
}

TEST_CASE("vc dimension") {
  CHECK(vc_dimension_exact(cosets_z6()) == 1);
  std::vector<std::vector<std::size_t>> all;
  for (unsigned m = 0; m < 8; ++m) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < 3; ++i)
      if (m >> i & 1U) s.push_back(i);
    all.push_back(s);
  }
  CHECK(vc_dimension_exact(SetSystem::from_indices(labels(3), all)) == 3);
  CHECK(vc_dimension_exact(intervals(-20, 20)) == 2);
  CHECK_FALSE(vc_dimension_exact(SetSystem(labels(4), {})).has_value());
  CHECK(vc_dimension_exact(SetSystem::from_indices(labels(4), {{}})) == 0);

  try {
    (void)vc_dimension_exact(SetSystem::from_indices(labels(3), all), 2);
    FAIL("expected the cap to trip");
  } catch (const VcCapExceeded& e) {
    CHECK(e.lower_bound() == 2);
  }
}

TEST_CASE("shatter function") {
  auto sys = cosets_z6();
  CHECK(shatter_function(sys, 2) == 3);
  CHECK(shatter_function(sys, 0) == 1);
  CHECK_THROWS_AS(shatter_function(sys, 7), DomainError);
}

TEST_CASE("constructions") {
  auto sys = cosets_z6();
  auto comp = complement_system(sys);
  auto expect = SetSystem::from_indices(labels(6), {{1, 2, 4, 5}, {0, 2, 3, 5}, {0, 1, 3, 4}});
  CHECK(comp.family() == expect.family());

  auto whole = SetSystem(labels(6), {PointSet::full(6)});
  CHECK(intersection_system(sys, whole).family() == sys.family());
  CHECK_THROWS_AS(intersection_system(sys, intervals(0, 2)), DomainError);

  std::vector<std::size_t> fold;
  for (std::size_t i = 0; i < 12; ++i) fold.push_back(i % 6);
  auto pre = preimage_system(labels(12), fold, sys);
  CHECK(pre.family().size() == 3);
  for (const auto& s : pre.family()) CHECK(s.count() == 4);
  std::vector<std::size_t> bad{0, 6};
  CHECK_THROWS_AS(preimage_system(labels(2), bad, sys), DomainError);
}

TEST_CASE("json round trip") {
  auto sys = cosets_z6();
  auto j = to_json(sys);
  CHECK(j["family"].size() == 3);
  auto back = set_system_from_json(j);
  CHECK(back.ground() == sys.ground());
  CHECK(back.family() == sys.family());
  CHECK_THROWS_AS(set_system_from_json(nlohmann::json::parse(R"({"ground":["a"],"family":[[3]]})")),
                  DomainError);
}

TEST_CASE("random systems agree with the mask oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t ground = 1 + trial % 9;
    auto sys = random_system(rng, ground);
    auto masks = as_masks(sys);
    CHECK(vc_dimension_exact(sys) == oracle_vc(masks, ground));
    for (std::size_t n = 0; n <= ground; ++n)
      CHECK(shatter_function(sys, n) == oracle_pi(masks, ground, n));
  }
}

TEST_CASE("properties on random systems") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t ground = 1 + trial % 8;
    auto s1 = random_system(rng, ground);
    auto s2 = random_system(rng, ground);
    auto vc = vc_dimension_exact(s1);
    auto comp = complement_system(s1);
    auto inter = intersection_system(s1, s2);
    for (std::size_t n = 0; n <= ground; ++n) {
      const auto pi = shatter_function(s1, n);
      if (vc) CHECK(BigInt(pi) <= bounds::capital_c(*vc, n));
      CHECK(shatter_function(comp, n) == pi);
      CHECK(shatter_function(inter, n) <= pi * shatter_function(s2, n));
      // pi(n) = 2^n iff an n-set is shattered.
      if (vc) CHECK((pi == (std::size_t{1} << n)) == (n <= *vc));
    }
  }
}

TEST_CASE("shattering is inherited by subsets") {
  auto sys = intervals(-3, 3);
  for_each_combination(sys.ground_size(), 2, [&](const std::vector<std::size_t>& a) {
    auto target = sys.make_set(a);
    if (shatters(sys, target).shattered) {
      for (auto i : a) {
        std::vector<std::size_t> one{i};
        CHECK(shatters(sys, sys.make_set(one)).shattered);
      }
    }
    return true;
  });
}
