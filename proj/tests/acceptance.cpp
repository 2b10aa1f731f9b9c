// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "progvc/bounds.hpp"
#include "progvc/freegroup.hpp"
#include "progvc/heisenberg.hpp"
#include "progvc/setsystem.hpp"

using namespace progvc;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

// --- 1 ----------------------------------------------------------------------

Verdict membership_oracle() {
  using namespace heisenberg;
  std::size_t cells = 0, bad = 0;
  for (std::int64_t n1 = 0; n1 <= 5; ++n1) {
    for (std::int64_t n2 = 0; n2 <= 5; ++n2) {
      auto bfs = enumerate_progression(n1, n2);
      std::set<SmallPoint> enumerated(bfs.begin(), bfs.end());
      std::set<SmallPoint> closed;
      const std::int64_t box = n1 * n2 + 1;
      for (std::int64_t a = -n1; a <= n1; ++a)
        for (std::int64_t b = -n2; b <= n2; ++b)
          for (std::int64_t c = -box; c <= box; ++c)
            if (membership(BigInt(n1), BigInt(n2), HPoint{a, b, c})) closed.insert({a, b, c});
      ++cells;
      bad += enumerated != closed;
    }
  }
  return {bad == 0, std::to_string(cells - bad) + "/" + std::to_string(cells) +
                        " cells with set equality"};
}

// --- 2 ----------------------------------------------------------------------

Verdict small_progressions() {
  using namespace heisenberg;
  auto p11 = enumerate_progression(1, 1);
  auto p22 = enumerate_progression(2, 2);
  bool up = std::binary_search(p22.begin(), p22.end(), SmallPoint{0, 0, 1});
  bool down = std::binary_search(p22.begin(), p22.end(), SmallPoint{0, 0, -1});
  bool closed = membership(2, 2, HPoint{0, 0, 1}) && membership(2, 2, HPoint{0, 0, -1});
  return {p11.size() == 13 && up && down && closed,
          "|P(1,1)| = " + std::to_string(p11.size()) + ", (0,0,1) " +
              (up ? "in" : "not in") + " P(2,2), (0,0,-1) " + (down ? "in" : "not in") +
              " P(2,2)"};
}

// --- 3 ----------------------------------------------------------------------

Verdict word_properties() {
  using namespace heisenberg;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  std::uniform_int_distribution<int> letter(0, 3);
  const std::size_t words = 100'000;
  std::size_t violations = 0, corner_cases = 0;
  for (std::size_t t = 0; t < words; ++t) {
    HWord w(len(rng));
    for (auto& l : w) l = static_cast<Letter>(letter(rng));
    std::uniform_int_distribution<std::size_t> cut(0, w.size());
    const std::size_t at = cut(rng);
    HWord u(w.begin(), w.begin() + static_cast<long>(at));
    HWord v(w.begin() + static_cast<long>(at), w.end());

    const HPoint p = word_eval(w);
    const auto n = letter_counts(w);
    bool ok = word_eval(w) == h_mul(word_eval(u), word_eval(v));
    ok = ok && word_eval(reverse_word(w)) == HPoint{p.a, p.b, p.a * p.b - p.c};
    ok = ok && BigInt(n.n_a()) + p.a == 2 * BigInt(n.a_plus);
    ok = ok && BigInt(n.n_b()) + p.b == 2 * BigInt(n.b_plus);
    ok = ok && abs(p.a) <= n.n_a() && abs(p.b) <= n.n_b();
    if (p.a >= 0 && p.b >= 0) {
      ++corner_cases;
      ok = ok && p.c <= BigInt(n.a_plus) * n.b_plus;
    }
    violations += !ok;
  }
  return {violations == 0, std::to_string(words) + " words, " + std::to_string(violations) +
                               " violations (" + std::to_string(corner_cases) +
                               " in the corner case)"};
}

// --- 4 ----------------------------------------------------------------------

Verdict thresholds() {
  using namespace bounds;
  const bool t267 = translate_family_inequality(267);
  const bool t268 = translate_family_inequality(268);
  const bool f35 = fixed_progression_inequality(35);
  const bool f36 = fixed_progression_inequality(36);
  auto t = verify_heisenberg_translate_threshold();
  auto f = verify_heisenberg_fixed_threshold();
  const bool pass = !t267 && t268 && f35 && !f36 && t.bound == 267 && f.bound == 140;
  std::ostringstream s;
  s << std::boolalpha << "translate n=267 " << t267 << ", n=268 " << t268 << ", bound "
    << t.bound << "; fixed n=35 " << f35 << ", n=36 " << f36 << ", bound " << f.bound;
  return {pass, s.str()};
}

// --- 5 ----------------------------------------------------------------------

Verdict f2_example() {
  using namespace free;
  std::ifstream in(std::string(PROGVC_DATA_DIR) + "/f2_example.json");
  if (!in) return {false, "fixture missing"};
  auto fx = nlohmann::json::parse(in);
  std::map<std::string, FWord> pts{{"e", FWord(2)}};
  std::vector<FWord> xs;
  for (const auto& [name, word] : fx["points"].items()) {
    pts.emplace(name, parse_word(2, word.get<std::string>()));
    xs.push_back(pts.at(name));
  }
  std::size_t rows_ok = 0, dists_ok = 0;
  std::string wrong;
  for (const auto& row : fx["rows"]) {
    FProgressionSpec spec{row["bounds"].get<std::vector<std::uint64_t>>(),
                          pts.at(row["translate"].get<std::string>())};
    std::set<FWord> want, got;
    for (const auto& s : row["subset"]) want.insert(pts.at(s.get<std::string>()));
    for (const auto& x : xs)
      if (progression_contains(spec, x)) got.insert(x);
    if (got == want) {
      ++rows_ok;
    } else {
      wrong += " " + row["subset"].dump() + "->" + row["translate"].get<std::string>() +
               "P" + row["bounds"].dump();
    }
  }
  for (const auto& d : fx["distances"]) {
    auto got = dist_vector(pts.at(d["pair"][0]), pts.at(d["pair"][1]));
    if (got == d["d"].get<std::vector<std::size_t>>()) {
      ++dists_ok;
    } else {
      wrong += " d" + d["pair"].dump() + "=" + nlohmann::json(got).dump() + " not " +
               d["d"].dump();
    }
  }
  const auto rows = fx["rows"].size(), dists = fx["distances"].size();
  std::string detail = std::to_string(rows_ok) + "/" + std::to_string(rows) +
                       " rows verified, " + std::to_string(dists_ok) + "/" +
                       std::to_string(dists) + " distances matched";
  if (!wrong.empty()) detail += "; mismatches:" + wrong;
  return {rows_ok == 16 && rows == 16 && dists_ok == 10 && dists == 10, detail};
}

// --- 6 ----------------------------------------------------------------------

Verdict intervals_vc() {
  const int lo = -20, hi = 20;
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::string> ground;
  for (int v = lo; v <= hi; ++v) ground.push_back(std::to_string(v));
  std::vector<std::vector<std::size_t>> fam;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      std::vector<std::size_t> s;
      for (std::size_t i = a; i <= b; ++i) s.push_back(i);
      fam.push_back(s);
    }
  auto sys = SetSystem::from_indices(ground, fam);
  auto vc = vc_dimension_exact(sys);
  std::vector<std::string> pair{"0", "5"};
  const bool pair_shattered = shatters(sys, sys.make_set(pair)).shattered;

  // The same question through the free-group decision procedure in F_1.
  std::size_t triples = 0, shattered_triples = 0;
  for_each_combination(n, 3, [&](const std::vector<std::size_t>& idx) {
    std::vector<free::FWord> xs;
    for (auto i : idx)
      xs.push_back(free::FWord::generator(1, 1, static_cast<std::int64_t>(i) + lo));
    ++triples;
    shattered_triples += free::CutSearch(xs).shattered();
    return true;
  });
  const bool free_pair = free::is_shattered_free(
                             {free::FWord::generator(1, 1, 0), free::FWord::generator(1, 1, 5)})
                             .shattered;
  return {vc == 2 && pair_shattered && free_pair && shattered_triples == 0,
          "VC(intervals on [-20,20]) = " + (vc ? std::to_string(*vc) : "undefined") +
              ", {0,5} shattered, " + std::to_string(shattered_triples) + " of " +
              std::to_string(triples) + " 3-subsets shattered in F_1"};
}

// --- 7 ----------------------------------------------------------------------

Verdict generator_witnesses() {
  std::size_t cases = 0, failures = 0;
  for (std::size_t k : {2, 3}) {
    for (std::size_t nmask = 0; nmask < (std::size_t{1} << k); ++nmask) {
      std::vector<std::uint64_t> bounds(k);
      for (std::size_t i = 0; i < k; ++i) bounds[i] = (nmask >> i & 1U) ? 2 : 1;
      for (std::size_t ymask = 0; ymask < (std::size_t{1} << k); ++ymask) {
        std::vector<std::size_t> ys;
        for (std::size_t i = 0; i < k; ++i)
          if (ymask >> i & 1U) ys.push_back(i + 1);
        ++cases;
        try {
          auto spec = free::generator_shatter_witness(k, bounds, ys);
          for (std::size_t i = 0; i < k; ++i) {
            bool in = free::progression_contains(
                spec, free::FWord::generator(k, static_cast<int>(i + 1)));
            if (in != static_cast<bool>(ymask >> i & 1U)) {
              ++failures;
              break;
            }
          }
        } catch (const std::exception&) {
          ++failures;
        }
      }
    }
  }
  return {failures == 0,
          std::to_string(cases) + " (k, N, Y) cases, " + std::to_string(failures) + " failures"};
}

// --- 8 ----------------------------------------------------------------------

Verdict consistency_search() {
  free::SearchConfig cfg;
  cfg.rank = 2;
  cfg.set_size = 6;
  cfg.samples = 10'000;
  cfg.max_length = 12;
  cfg.seed = 42;
  auto r = free::search_shattered(cfg);
  return {r.sampled == 10'000 && r.shattered.empty(),
          std::to_string(r.sampled) + " six-point sets in F_2 (seed 42, length <= 12), " +
              std::to_string(r.shattered.size()) + " shattered, " +
              std::to_string(r.leaf_deficient) + " leaf-deficient, " +
              std::to_string(r.with_tripod) + " with a tripod"};
}

// --- 9 ----------------------------------------------------------------------

Verdict set_system_properties() {
  std::mt19937_64 rng(777);
  std::size_t violations = 0, checks = 0;
  const std::size_t systems = 1000;
  auto labels = [](std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
    return out;
  };
  auto random_system = [&](std::size_t ground) {
    std::uniform_int_distribution<std::size_t> members(0, 20);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    const double p = density(rng);
    std::bernoulli_distribution coin(p);
    std::vector<PointSet> fam;
    for (std::size_t m = members(rng); m > 0; --m) {
      PointSet s(ground);
      for (std::size_t i = 0; i < ground; ++i)
        if (coin(rng)) s.set(i);
      fam.push_back(s);
    }
    return SetSystem(labels(ground), fam);
  };
  std::uniform_int_distribution<std::size_t> ground_size(1, 12);
  for (std::size_t t = 0; t < systems; ++t) {
    const std::size_t g = ground_size(rng);
    auto s1 = random_system(g);
    auto s2 = random_system(g);
    auto comp = complement_system(s1);
    auto inter = intersection_system(s1, s2);
    const std::size_t g2 = ground_size(rng);
    std::uniform_int_distribution<std::size_t> image(0, g - 1);
    std::vector<std::size_t> f(g2);
    for (auto& y : f) y = image(rng);
    auto pre = preimage_system(labels(g2), f, s1);

    const auto vc = vc_dimension_exact(s1);
    std::vector<std::size_t> pi1(g + 1);
    for (std::size_t n = 0; n <= g; ++n) pi1[n] = shatter_function(s1, n);
    for (std::size_t n = 0; n <= g; ++n) {
      if (vc) {
        ++checks;
        violations += BigInt(pi1[n]) > bounds::capital_c(*vc, n);
      }
      ++checks;
      violations += shatter_function(comp, n) != pi1[n];
      ++checks;
      violations += shatter_function(inter, n) > pi1[n] * shatter_function(s2, n);
    }
    for (std::size_t n = 0; n <= g2; ++n) {
      std::size_t best = 0;
      for (std::size_t k = 0; k <= std::min(n, g); ++k) best = std::max(best, pi1[k]);
      ++checks;
      violations += shatter_function(pre, n) > best;
    }
  }
  return {violations == 0, std::to_string(systems) + " systems, " + std::to_string(checks) +
                               " checks, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"heisenberg membership equals BFS enumeration for N1, N2 <= 5", membership_oracle},
      {"|P(1,1)| = 13 and (0,0,+-1) in P(2,2)", small_progressions},
      {"word identities on 1e5 random words of length <= 40", word_properties},
      {"threshold inequalities 267/268 and 35/36", thresholds},
      {"four-point example in F_2: rows and distance table", f2_example},
      {"intervals: VC = 2 and no shattered 3-subset of [-20,20]", intervals_vc},
      {"generator shattering witnesses for k in {2,3}, N_i in {1,2}", generator_witnesses},
      {"no shattered six-point set among 1e4 samples in F_2", consistency_search},
      {"set-system shatter-function properties on 1e3 random systems", set_system_properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("[%s] %zu. %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
