#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_config.hpp"
#include "progvc/bounds.hpp"
#include "progvc/errors.hpp"
#include "progvc/freegroup.hpp"
#include "progvc/heisenberg.hpp"
#include "progvc/parallel.hpp"
#include "progvc/setsystem.hpp"

namespace progvc::cli {

namespace {

using nlohmann::json;

// Raised for well-formed requests the command cannot serve (e.g. CSV for
// a nested report).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct Outcome {
  json report;
  int code = kOk;
  // Flat table for --format csv; empty when the report is nested.
  std::vector<std::vector<std::string>> table;
};

Outcome report_only(json report) {
  Outcome o;
  o.report = std::move(report);
  return o;
}

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::uint64_t> parse_naturals(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || item.find('-') != std::string::npos)
      throw DomainError("expected a natural number, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json words_json(const std::vector<free::FWord>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(free::to_string(w));
  return a;
}

// ---------------------------------------------------------------------------
// heisenberg

struct HeisenbergVerifyArgs {
  std::uint64_t nmax = 5;
  std::uint64_t cap = heisenberg::kDefaultEnumerationCap;
  bool inject_fault = false;
};

Outcome heisenberg_verify(const HeisenbergVerifyArgs& a) {
  using namespace heisenberg;
  json cells = json::array();
  std::size_t mismatched = 0;
  for (std::uint64_t n1 = 0; n1 <= a.nmax; ++n1) {
    for (std::uint64_t n2 = 0; n2 <= a.nmax; ++n2) {
      auto bfs = enumerate_progression(n1, n2, a.cap);
      std::set<SmallPoint> enumerated(bfs.begin(), bfs.end());
      std::set<SmallPoint> closed;
      const auto i1 = static_cast<std::int64_t>(n1), i2 = static_cast<std::int64_t>(n2);
      const std::int64_t box = i1 * i2 + 1;
      for (std::int64_t x = -i1; x <= i1; ++x)
        for (std::int64_t y = -i2; y <= i2; ++y)
          for (std::int64_t z = -box; z <= box; ++z)
            if (membership(BigInt(n1), BigInt(n2), HPoint{x, y, z}))
              closed.insert({x, y, z});
      if (a.inject_fault && n1 == a.nmax && n2 == a.nmax) {
        // Negative control: drop the identity from the closed form.
        closed.erase(SmallPoint{});
      }
      std::size_t diff = 0;
      for (const auto& p : enumerated) diff += !closed.contains(p);
      for (const auto& p : closed) diff += !enumerated.contains(p);
      mismatched += diff > 0;
      cells.push_back({{"n1", n1}, {"n2", n2}, {"size", enumerated.size()},
                       {"mismatches", diff}});
    }
  }
  Outcome o;
  o.report = {{"command", "heisenberg verify"},
              {"nmax", a.nmax},
              {"cells", cells},
              {"cells_verified", cells.size() - mismatched},
              {"cells_failed", mismatched},
              {"verified", mismatched == 0}};
  o.code = mismatched == 0 ? kOk : kVerificationFailed;
  return o;
}

struct HeisenbergPointArgs {
  std::string n1 = "0", n2 = "0";
  std::string point;
  std::string translate = "0,0,0";
};

BigInt parse_bound(const std::string& s) {
  BigInt v;
  try {
    v = BigInt(s);
  } catch (const std::exception&) {
    throw DomainError("expected an integer bound, got '" + s + "'");
  }
  if (v < 0) throw DomainError("progression bounds must be >= 0");
  return v;
}

Outcome heisenberg_member(const HeisenbergPointArgs& a) {
  using namespace heisenberg;
  ProgressionSpec spec{parse_bound(a.n1), parse_bound(a.n2), parse_point(a.translate)};
  auto p = parse_point(a.point);
  Outcome o;
  o.report = {{"command", "heisenberg member"},
              {"n1", big(spec.n1)},
              {"n2", big(spec.n2)},
              {"translate", to_string(spec.translate)},
              {"point", to_string(p)},
              {"member", membership(spec, p)}};
  return o;
}

Outcome heisenberg_enumerate(std::uint64_t n1, std::uint64_t n2, std::uint64_t cap) {
  using namespace heisenberg;
  auto pts = enumerate_progression(n1, n2, cap);
  Outcome o;
  o.report = {{"command", "heisenberg enumerate"},
              {"n1", n1},
              {"n2", n2},
              {"size", pts.size()},
              {"points", to_json(pts)}};
  o.table.push_back({"a", "b", "c"});
  for (const auto& p : pts)
    o.table.push_back({std::to_string(p.a), std::to_string(p.b), std::to_string(p.c)});
  return o;
}

Outcome heisenberg_witness(const HeisenbergPointArgs& a) {
  using namespace heisenberg;
  auto n1 = parse_bound(a.n1), n2 = parse_bound(a.n2);
  auto p = parse_point(a.point);
  auto w = witness_word(p, n1, n2);
  auto counts = letter_counts(w);
  Outcome o;
  o.report = {{"command", "heisenberg witness"},
              {"point", to_string(p)},
              {"n1", big(n1)},
              {"n2", big(n2)},
              {"word", to_string(w)},
              {"n_a", counts.n_a()},
              {"n_b", counts.n_b()},
              {"evaluates_to", to_string(word_eval(w))}};
  return o;
}

struct HeisenbergShatterArgs {
  bool experimental = false;
  std::int64_t radius = -1;
  std::int64_t max_n = 2;
  std::string points;
};

Outcome heisenberg_shatter(const HeisenbergShatterArgs& a) {
  using namespace heisenberg;
  if (!a.experimental)
    throw UsageError("heisenberg shatter is a heuristic search; pass --experimental");
  if (a.radius < 0) throw UsageError("--translate-window is required");
  std::vector<HPoint> pts;
  for (const auto& item : split(a.points, ';')) pts.push_back(parse_point(item));
  auto cuts = search_window_cuts(pts, {a.radius, a.max_n});
  json rows = json::array();
  std::size_t missing = 0;
  for (std::size_t m = 0; m < cuts.size(); ++m) {
    json subset = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (m >> i & 1U) subset.push_back(to_string(pts[i]));
    json row = {{"subset", subset}, {"found", cuts[m].has_value()}};
    if (cuts[m]) {
      row["translate"] = to_string(cuts[m]->translate);
      row["n1"] = cuts[m]->n1;
      row["n2"] = cuts[m]->n2;
    } else {
      ++missing;
    }
    rows.push_back(row);
  }
  Outcome o;
  o.report = {{"command", "heisenberg shatter"},
              {"experimental", true},
              {"translate_window", a.radius},
              {"max_n", a.max_n},
              {"decision_procedure", false},
              {"note", "window search only: a subset missing here may still be "
                       "cut out by a translate outside the window"},
              {"shattered_within_window", missing == 0},
              {"subsets", rows}};
  return o;
}

// ---------------------------------------------------------------------------
// bounds

Outcome bounds_verify() {
  auto t = bounds::verify_heisenberg_translate_threshold();
  auto f = bounds::verify_heisenberg_fixed_threshold();
  const bool ok = t.fails(267) && t.holds(268) && t.bound == 267 && f.holds(35) &&
                  f.fails(36) && f.bound == 140;
  Outcome o;
  o.report = {{"command", "bounds verify-heisenberg"},
              {"reports", json::array({to_json(t), to_json(f)})},
              {"verified", ok}};
  o.code = ok ? kOk : kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------
// free

std::vector<free::FWord> parse_points(std::size_t k, const std::string& text) {
  if (k == 0) throw DomainError("--k must be >= 1");
  return free::parse_word_list(k, text);
}

Outcome free_shatter(std::size_t k, const std::string& points, std::size_t cap,
                     unsigned threads) {
  auto xs = parse_points(k, points);
  auto report = free::is_shattered_free(xs, cap, threads);
  Outcome o;
  o.report = free::to_json(report);
  o.report["command"] = "free shatter";
  o.report["k"] = k;
  o.report["verdict"] = report.shattered ? "shattered" : "not-shattered";
  return o;
}

Outcome free_example(const std::string& fixture_path) {
  using namespace free;
  std::ifstream in(fixture_path);
  if (!in) throw UsageError("cannot read fixture " + fixture_path);
  json fx = json::parse(in);
  const std::size_t k = fx.at("rank").get<std::size_t>();
  std::map<std::string, FWord> pts{{"e", FWord(k)}};
  std::vector<FWord> xs;
  for (const auto& [name, word] : fx.at("points").items()) {
    pts.emplace(name, parse_word(k, word.get<std::string>()));
    xs.push_back(pts.at(name));
  }
  auto word_of = [&](const json& name) {
    auto it = pts.find(name.get<std::string>());
    if (it == pts.end()) throw UsageError("fixture names unknown point " + name.dump());
    return it->second;
  };

  auto check_row = [&](const json& row) {
    FProgressionSpec spec{row.at("bounds").get<std::vector<std::uint64_t>>(),
                          word_of(row.at("translate"))};
    std::set<FWord> want, got;
    for (const auto& s : row.at("subset")) want.insert(word_of(s));
    json cut = json::array();
    for (const auto& x : xs)
      if (progression_contains(spec, x)) {
        got.insert(x);
        cut.push_back(to_string(x));
      }
    return json{{"subset", row.at("subset")},
                {"spec", to_string(spec)},
                {"cuts_out", cut},
                {"ok", got == want}};
  };

  json rows = json::array(), dists = json::array(), fixes = json::array();
  std::size_t rows_ok = 0, dists_ok = 0;
  for (const auto& row : fx.at("rows")) {
    auto r = check_row(row);
    rows_ok += r["ok"].get<bool>();
    rows.push_back(r);
  }
  Outcome o;
  o.table.push_back({"u", "v", "d1", "d2", "expected_d1", "expected_d2", "match"});
  for (const auto& d : fx.at("distances")) {
    auto u = word_of(d.at("pair")[0]), v = word_of(d.at("pair")[1]);
    auto got = dist_vector(u, v);
    auto want = d.at("d").get<std::vector<std::size_t>>();
    bool ok = got == want;
    dists_ok += ok;
    dists.push_back({{"pair", d.at("pair")}, {"computed", got}, {"expected", want},
                     {"ok", ok}});
    std::vector<std::string> line{d.at("pair")[0], d.at("pair")[1]};
    for (auto x : got) line.push_back(std::to_string(x));
    for (auto x : want) line.push_back(std::to_string(x));
    line.push_back(ok ? "true" : "false");
    o.table.push_back(line);
  }
  bool fixes_ok = true;
  if (fx.contains("corrections")) {
    for (const auto& row : fx["corrections"].at("rows")) {
      auto r = check_row(row);
      fixes_ok = fixes_ok && r["ok"].get<bool>();
      fixes.push_back(r);
    }
    for (const auto& d : fx["corrections"].at("distances")) {
      bool ok = dist_vector(word_of(d.at("pair")[0]), word_of(d.at("pair")[1])) ==
                d.at("d").get<std::vector<std::size_t>>();
      fixes_ok = fixes_ok && ok;
      fixes.push_back({{"pair", d.at("pair")}, {"expected", d.at("d")}, {"ok", ok}});
    }
  }
  auto decision = is_shattered_free(xs);
  const bool ok = rows_ok == rows.size() && dists_ok == dists.size();
  o.report = {{"command", "free example-f2"},
              {"fixture", fixture_path},
              {"rows_verified", rows_ok},
              {"rows_total", rows.size()},
              {"distances_matched", dists_ok},
              {"distances_total", dists.size()},
              {"rows", rows},
              {"distances", dists},
              {"corrections", fixes},
              {"corrections_verified", fixes_ok},
              {"shattered_by_decision_procedure", decision.shattered},
              {"verified", ok}};
  o.code = ok ? kOk : kVerificationFailed;
  return o;
}

Outcome free_search(free::SearchConfig cfg) {
  auto r = free::search_shattered(cfg);
  Outcome o;
  o.report = free::to_json(r);
  o.report["command"] = "free search";
  // A shattered set of size >= 3k would contradict VC <= 3k - 1.
  const bool contradiction = cfg.set_size >= 3 * cfg.rank && !r.shattered.empty();
  o.report["contradiction"] = contradiction;
  o.code = contradiction ? kVerificationFailed : kOk;
  return o;
}

Outcome free_witness(std::size_t k, const std::string& bounds_text,
                     const std::string& subset_text) {
  auto bounds = parse_naturals(bounds_text);
  std::vector<std::size_t> ys;
  if (!subset_text.empty())
    for (auto y : parse_naturals(subset_text)) ys.push_back(static_cast<std::size_t>(y));
  auto spec = free::generator_shatter_witness(k, bounds, ys);
  Outcome o;
  o.report = free::to_json(spec);
  o.report["command"] = "free witness";
  o.report["k"] = k;
  o.report["subset"] = ys;
  o.report["spec"] = free::to_string(spec);
  json members = json::array();
  for (std::size_t i = 1; i <= k; ++i)
    if (free::progression_contains(spec, free::FWord::generator(k, static_cast<int>(i))))
      members.push_back(i);
  o.report["cuts_out"] = members;
  return o;
}

Outcome free_tripod(std::size_t k, const std::string& points) {
  auto xs = parse_points(k, points);
  auto t = free::tripod_profile(xs);
  Outcome o;
  o.report = {{"command", "free tripod"},
              {"points", words_json(xs)},
              {"leaf_complete", free::leaves(xs).size() == xs.size()},
              {"tripod", t.has_value()}};
  if (t) {
    o.report["center"] = free::to_string(t->center);
    json parts = json::array();
    for (const auto& b : t->branches)
      parts.push_back(words_json(std::vector<free::FWord>(b.begin(), b.end())));
    o.report["branches"] = parts;
  }
  return o;
}

// ---------------------------------------------------------------------------
// setsystem

SetSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read set system " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(path + " is not valid JSON: " + e.what());
  }
  return set_system_from_json(j);
}

Outcome setsystem_vc(const std::string& path, std::size_t cap) {
  auto sys = load_system(path);
  auto vc = vc_dimension_exact(sys, cap);
  Outcome o;
  o.report = {{"command", "setsystem vc"},
              {"ground_size", sys.ground_size()},
              {"family_size", sys.family().size()},
              {"vc", vc ? json(*vc) : json(nullptr)},
              {"verdict", vc ? "finite" : "undefined"}};
  return o;
}

Outcome setsystem_shatter(const std::string& path, const std::string& target,
                          std::size_t cap) {
  auto sys = load_system(path);
  std::vector<std::string> labels;
  if (!target.empty()) labels = split(target, ',');
  auto report = shatters(sys, sys.make_set(labels), cap);
  auto names = [&](TraceMask m) {
    json a = json::array();
    for (auto i : report.points_of(m)) a.push_back(sys.ground()[i]);
    return a;
  };
  json missing = json::array(), witnesses = json::array();
  for (auto m : report.missing) missing.push_back(names(m));
  for (const auto& [m, w] : report.witnesses) {
    json member = json::array();
    for (auto i : w.indices()) member.push_back(sys.ground()[i]);
    witnesses.push_back({{"subset", names(m)}, {"member", member}});
  }
  Outcome o;
  o.report = {{"command", "setsystem shatter"},
              {"target", labels},
              {"shattered", report.shattered},
              {"verdict", report.shattered ? "shattered" : "not-shattered"},
              {"missing", missing},
              {"witnesses", witnesses}};
  return o;
}

Outcome setsystem_pi(const std::string& path, std::size_t n, std::size_t cap) {
  auto sys = load_system(path);
  Outcome o;
  o.report = {{"command", "setsystem pi"}, {"n", n}, {"pi", shatter_function(sys, n, cap)}};
  return o;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Outcome& o, const std::string& format) {
  if (format == "json") return o.report.dump(2) + "\n";
  if (format == "csv") {
    if (o.table.empty())
      throw UsageError("csv output is only available for flat tables");
    std::string out;
    for (const auto& row : o.table) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(row[i]);
      }
      out += '\n';
    }
    return out;
  }
  std::string out;
  for (const auto& [key, value] : o.report.items())
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized progressions, shattering and VC bounds", "progvc"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the command-line flags");
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--output", g.output, "Write the report to this file");
  app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: PROGVC_THREADS or all cores)")
      ->envname("PROGVC_THREADS");

  std::function<Outcome()> action;
  auto on = [&](CLI::App* cmd, std::function<Outcome()> fn) {
    cmd->fallthrough();
    cmd->callback([&action, fn] { action = fn; });
  };

  // heisenberg ---------------------------------------------------------------
  auto* heis = app.add_subcommand("heisenberg", "Progressions in the Heisenberg group");
  heis->require_subcommand(1);
  heis->fallthrough();

  HeisenbergVerifyArgs hv;
  auto* hverify = heis->add_subcommand("verify", "Closed-form membership against BFS");
  hverify->add_option("--nmax", hv.nmax, "Largest N1, N2")->capture_default_str();
  hverify->add_option("--cap", hv.cap, "Enumeration cap on N1 + N2")->capture_default_str();
  hverify->add_flag("--inject-fault", hv.inject_fault)->group("");
  on(hverify, [&] { return heisenberg_verify(hv); });

  HeisenbergPointArgs hp;
  auto* hmember = heis->add_subcommand("member", "Membership in g P(N1, N2)");
  hmember->add_option("--n1", hp.n1)->required();
  hmember->add_option("--n2", hp.n2)->required();
  hmember->add_option("--point", hp.point, "a,b,c")->required();
  hmember->add_option("--translate", hp.translate, "a,b,c")->capture_default_str();
  on(hmember, [&] { return heisenberg_member(hp); });

  std::uint64_t en1 = 0, en2 = 0, ecap = heisenberg::kDefaultEnumerationCap;
  auto* henum = heis->add_subcommand("enumerate", "List P(N1, N2)");
  henum->add_option("--n1", en1)->required();
  henum->add_option("--n2", en2)->required();
  henum->add_option("--cap", ecap)->capture_default_str();
  on(henum, [&] { return heisenberg_enumerate(en1, en2, ecap); });

  auto* hwit = heis->add_subcommand("witness", "A word within budgets for a point");
  hwit->add_option("--n1", hp.n1)->required();
  hwit->add_option("--n2", hp.n2)->required();
  hwit->add_option("--point", hp.point, "a,b,c")->required();
  on(hwit, [&] { return heisenberg_witness(hp); });

  HeisenbergShatterArgs hs;
  auto* hshat = heis->add_subcommand("shatter", "Heuristic shattering search in a translate window");
  hshat->add_flag("--experimental", hs.experimental);
  hshat->add_option("--translate-window", hs.radius, "Translates with |a|,|b|,|c| <= R");
  hshat->add_option("--max-n", hs.max_n)->capture_default_str();
  hshat->add_option("--points", hs.points, "a,b,c;a,b,c;...")->required();
  on(hshat, [&] { return heisenberg_shatter(hs); });

  // bounds -------------------------------------------------------------------
  auto* bnd = app.add_subcommand("bounds", "Exact bound arithmetic");
  bnd->require_subcommand(1);
  bnd->fallthrough();
  std::uint64_t bd = 0, bk = 1, bn = 0, bl = 1, bs = 1;

  auto* bcd = bnd->add_subcommand("cd", "Sum_{i<=d} C(n, i)");
  bcd->add_option("--d", bd)->required();
  bcd->add_option("--n", bn)->required();
  on(bcd, [&] {
    return report_only({{"command", "bounds cd"}, {"d", bd}, {"n", bn},
                    {"value", big(bounds::capital_c(bd, bn))}});
  });
  auto* bf = bnd->add_subcommand("f", "min n with C_d(n)^k < 2^n");
  bf->add_option("--d", bd)->required();
  bf->add_option("--k", bk)->required();
  on(bf, [&] {
    return report_only({{"command", "bounds f"}, {"d", bd}, {"k", bk},
                    {"value", bounds::f_bound(bd, bk)},
                    {"upper_estimate", bounds::f_upper_estimate(std::max<std::uint64_t>(bd, 1), bk)},
                    {"upper_estimate_is_approximate", true}});
  });
  auto* bg = bnd->add_subcommand("g", "k (min n with k C_d(n) < 2^n, minus 1)");
  bg->add_option("--d", bd)->required();
  bg->add_option("--k", bk)->required();
  on(bg, [&] {
    return report_only({{"command", "bounds g"}, {"d", bd}, {"k", bk},
                    {"value", bounds::g_bound(bd, bk)}});
  });
  auto* bkm = bnd->add_subcommand("km", "d (2d-1)^(l-1) Sum_{i<=l} 2^i C(sn, i)");
  bkm->add_option("--d", bd)->required();
  bkm->add_option("--l", bl)->required();
  bkm->add_option("--s", bs)->required();
  bkm->add_option("--n", bn)->required();
  on(bkm, [&] {
    return report_only({{"command", "bounds km"}, {"d", bd}, {"l", bl}, {"s", bs}, {"n", bn},
                    {"value", big(bounds::km_bound(bd, bl, bs, bn))}});
  });
  auto* bver = bnd->add_subcommand("verify-heisenberg", "Threshold checks for the Heisenberg bounds");
  on(bver, [&] { return bounds_verify(); });

  // free ---------------------------------------------------------------------
  auto* fr = app.add_subcommand("free", "Progressions in free groups");
  fr->require_subcommand(1);
  fr->fallthrough();
  std::size_t fk = 2, fcap = free::kDefaultCutCap;
  std::string fpoints;

  auto* fshat = fr->add_subcommand("shatter", "Decide whether progressions shatter a set");
  fshat->add_option("--k", fk, "Rank")->required();
  fshat->add_option("--points", fpoints, "Comma-separated words, e.g. 1^10,2^-10")->required();
  fshat->add_option("--cap", fcap)->capture_default_str();
  on(fshat, [&] { return free_shatter(fk, fpoints, fcap, g.threads); });

  std::string fixture = std::string(PROGVC_DATA_DIR) + "/f2_example.json";
  auto* fex = fr->add_subcommand("example-f2", "Check the four-point example table");
  fex->add_option("--fixture", fixture)->capture_default_str();
  on(fex, [&] { return free_example(fixture); });

  free::SearchConfig scfg;
  auto* fsearch = fr->add_subcommand("search", "Sample sets and decide shattering");
  fsearch->add_option("--k", scfg.rank)->capture_default_str();
  fsearch->add_option("--size", scfg.set_size)->capture_default_str();
  fsearch->add_option("--samples", scfg.samples)->capture_default_str();
  fsearch->add_option("--max-length", scfg.max_length)->capture_default_str();
  on(fsearch, [&] {
    auto c = scfg;
    c.seed = g.seed;
    c.threads = g.threads;
    return free_search(c);
  });

  std::string wbounds, wsubset;
  auto* fwit = fr->add_subcommand("witness", "Translate cutting a subset of the generators");
  fwit->add_option("--k", fk)->required();
  fwit->add_option("--bounds", wbounds, "N_1,...,N_k")->required();
  fwit->add_option("--subset", wsubset, "Generator indices, e.g. 1,3");
  on(fwit, [&] { return free_witness(fk, wbounds, wsubset); });

  auto* ftri = fr->add_subcommand("tripod", "Look for a balanced three-branch vertex");
  ftri->add_option("--k", fk)->required();
  ftri->add_option("--points", fpoints)->required();
  on(ftri, [&] { return free_tripod(fk, fpoints); });

  // setsystem ----------------------------------------------------------------
  auto* ss = app.add_subcommand("setsystem", "Finite set systems from JSON");
  ss->require_subcommand(1);
  ss->fallthrough();
  std::string input, target;
  std::size_t scap = kDefaultShatterCap, pin = 0;

  auto* svc = ss->add_subcommand("vc", "Exact VC dimension");
  svc->add_option("--input", input)->required();
  svc->add_option("--cap", scap)->capture_default_str();
  on(svc, [&] { return setsystem_vc(input, scap); });
  auto* sshat = ss->add_subcommand("shatter", "Shattering report for a target");
  sshat->add_option("--input", input)->required();
  sshat->add_option("--target", target, "Comma-separated ground labels");
  sshat->add_option("--cap", scap)->capture_default_str();
  on(sshat, [&] { return setsystem_shatter(input, target, scap); });
  auto* spi = ss->add_subcommand("pi", "Shatter function value");
  spi->add_option("--input", input)->required();
  spi->add_option("--n", pin)->required();
  spi->add_option("--cap", scap)->capture_default_str();
  on(spi, [&] { return setsystem_pi(input, pin, scap); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (!action) throw UsageError("no command selected");
    Outcome o = action();
    o.report["schema_version"] = kSchemaVersion;
    o.report["seed"] = g.seed;
    std::string text = render(o, g.format);
    if (g.output.empty()) {
      out << text;
    } else {
      std::ofstream file(g.output);
      if (!file) throw UsageError("cannot write " + g.output);
      file << text;
    }
    return o.code;
  } catch (const VcCapExceeded& e) {
    err << "error: " << e.what() << " (lower bound " << e.lower_bound() << ")\n";
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace progvc::cli
