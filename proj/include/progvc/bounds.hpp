#pragma once

// Exact evaluation of the Sauer-Shelah polynomial and the bound functions
// derived from it. Every "log x < n" comparison is carried out as x < 2^n
// on big integers; logarithms are base 2.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "progvc/bigint.hpp"

namespace progvc::bounds {

inline constexpr std::uint64_t kScanCeiling = 1'000'000;

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Sum_{i=0}^{d} C(n, i).
BigInt capital_c(std::uint64_t d, std::uint64_t n);

/// min{n : k log C_d(n) < n}, i.e. the least n with C_d(n)^k < 2^n.
std::uint64_t f_bound(std::uint64_t d, std::uint64_t k,
                      std::uint64_t ceiling = kScanCeiling);

/// k * (min{n : log(k C_d(n)) < n} - 1).
std::uint64_t g_bound(std::uint64_t d, std::uint64_t k,
                      std::uint64_t ceiling = kScanCeiling);

/// d (2d-1)^(l-1) Sum_{i=0}^{l} 2^i C(s n, i): the Karpinski-Macintyre
/// shatter-function bound for a family of s polynomials of parameter
/// degree d in l parameter variables.
BigInt km_bound(std::uint64_t d, std::uint64_t l, std::uint64_t s,
                std::uint64_t n);

/// Upper estimate d k log(c k log(c k)) with c = 2^(1/(dk)) (e + log e),
/// evaluated in 50-digit floating point and nudged upward. Approximate.
double f_upper_estimate(std::uint64_t d, std::uint64_t k);

/// A threshold check: the n at which an inequality was evaluated and the
/// outcome, plus the VC bound it implies.
struct ThresholdReport {
  std::string check;
  std::vector<std::uint64_t> holds_at;
  std::vector<std::uint64_t> fails_at;
  std::uint64_t bound = 0;

  bool holds(std::uint64_t n) const;
  bool fails(std::uint64_t n) const;
};

nlohmann::json to_json(const ThresholdReport& r);

/// (648 Sum_{i=0}^{5} 2^i C(14n, i))^4 < 2^n, where 648 = 4 * km_bound
/// constant for (d, l, s) = (2, 5, 14). Translate family of progressions
/// in the Heisenberg group.
bool translate_family_inequality(std::uint64_t n);

/// 2^n <= 288 Sum_{i=0}^{3} 2^i C(14n, i), where 288 = 4 * 72 and
/// 72 = 4 * km constant for (d, l, s) = (2, 3, 14). A fixed progression.
bool fixed_progression_inequality(std::uint64_t n);

/// Scans n = 1, 2, ... for the first n where the translate-family
/// inequality holds; the bound is one less.
ThresholdReport verify_heisenberg_translate_threshold();

/// Scans for the first n where the fixed-progression inequality fails;
/// with four cosets the bound is 4 (n - 1).
ThresholdReport verify_heisenberg_fixed_threshold();

}  // namespace progvc::bounds
