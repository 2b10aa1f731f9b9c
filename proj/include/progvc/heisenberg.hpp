#pragma once

// The integer Heisenberg group as triples (a, b, c) with
//   (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x y'),
// words over A = (1,0,0), B = (0,1,0) and their inverses, and the
// progressions P(N1, N2) of elements representable by a word using A^{±1}
// at most N1 times and B^{±1} at most N2 times.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "progvc/bigint.hpp"

namespace progvc::heisenberg {

inline constexpr std::uint64_t kDefaultEnumerationCap = 12;

template <class Int>
struct BasicPoint {
  Int a{0};
  Int b{0};
  Int c{0};

  friend bool operator==(const BasicPoint&, const BasicPoint&) = default;
  // Lexicographic; cpp_int has no three-way comparison, so spelled out.
  friend bool operator<(const BasicPoint& l, const BasicPoint& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  }
};

/// Group element with arbitrary-precision coordinates.
using HPoint = BasicPoint<BigInt>;
/// Group element for the enumeration fast path; arithmetic is overflow
/// checked.
using SmallPoint = BasicPoint<std::int64_t>;

HPoint h_mul(const HPoint& p, const HPoint& q);
HPoint h_inv(const HPoint& p);
/// Throws OverflowError if any coordinate leaves int64.
SmallPoint h_mul(const SmallPoint& p, const SmallPoint& q);
SmallPoint h_inv(const SmallPoint& p);

HPoint widen(const SmallPoint& p);

/// "a,b,c"
std::string to_string(const HPoint& p);
std::string to_string(const SmallPoint& p);
/// Parses "a,b,c"; throws DomainError on malformed text.
HPoint parse_point(std::string_view text);

enum class Letter : std::uint8_t { A, AInv, B, BInv };

/// A formal, unreduced word over {A, A^-1, B, B^-1}.
using HWord = std::vector<Letter>;

/// Text form over {A, a, B, b}; lowercase is the inverse ("ABab" = [A,B]).
std::string to_string(const HWord& w);
HWord parse_word(std::string_view text);

struct LetterCounts {
  std::uint64_t a_plus = 0;
  std::uint64_t a_minus = 0;
  std::uint64_t b_plus = 0;
  std::uint64_t b_minus = 0;

  std::uint64_t n_a() const { return a_plus + a_minus; }
  std::uint64_t n_b() const { return b_plus + b_minus; }
  friend bool operator==(const LetterCounts&, const LetterCounts&) = default;
};

LetterCounts letter_counts(const HWord& w);

/// Evaluates a word in closed form: a and b are exponent sums and c is the
/// sum of e_i e_j over pairs with an A-letter at i before a B-letter at j.
HPoint word_eval(const HWord& w);

HWord reverse_word(const HWord& w);
/// Swaps A <-> A^-1. Maps (a, b, c) to (-a, b, -c).
HWord flip_a(const HWord& w);
/// Swaps B <-> B^-1. Maps (a, b, c) to (a, -b, -c).
HWord flip_b(const HWord& w);

struct TraceStep {
  HWord word;
  std::int64_t j = 0;
};

/// Steps of the sorting procedure that moves every B-letter in front of
/// every A-letter, one adjacent swap A^d B^e -> B^e A^d at a time (always
/// the right-most such pair), accumulating d e into j. Each state satisfies
/// word_eval(word) * C^j = word_eval(input).
struct ReductionTrace {
  std::vector<TraceStep> steps;
};

ReductionTrace reduction_trace(const HWord& w);

struct ProgressionSpec {
  BigInt n1 = 0;
  BigInt n2 = 0;
  HPoint translate{};  // identity for the untranslated progression
};

/// Closed-form membership of p in translate * P(n1, n2).
bool membership(const ProgressionSpec& spec, const HPoint& p);
bool membership(const BigInt& n1, const BigInt& n2, const HPoint& p);

/// floor((n1 + a) / 2) * floor((n2 + b) / 2), the largest central
/// coordinate over (a, b) in P(n1, n2). Requires 0 <= a <= n1, 0 <= b <= n2.
BigInt max_central(const BigInt& a, const BigInt& b, const BigInt& n1,
                   const BigInt& n2);

/// Every element of P(n1, n2), by breadth-first search over states
/// (element, A-letters used, B-letters used). Sorted lexicographically.
/// Throws ResourceError if n1 + n2 > cap.
std::vector<SmallPoint> enumerate_progression(
    std::uint64_t n1, std::uint64_t n2,
    std::uint64_t cap = kDefaultEnumerationCap);

/// A word within budgets (n1, n2) evaluating to p. Throws DomainError if p
/// is not in P(n1, n2).
HWord witness_word(const HPoint& p, const BigInt& n1, const BigInt& n2);

/// Sorted triple list [[a, b, c], ...].
nlohmann::json to_json(const std::vector<SmallPoint>& points);

// ---------------------------------------------------------------------------
// Experimental shattering search. There is no known bound on where the
// cutting translates for a given target must lie, so this only searches a
// window and a "not found" answer proves nothing.

struct TranslateWindow {
  std::int64_t radius = 0;  // translates with |a|, |b|, |c| <= radius
  std::int64_t max_n = 0;   // progressions with n1, n2 <= max_n
};

struct WindowCut {
  SmallPoint translate;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

/// For each subset mask of `points` (bit i = points[i]), the first window
/// translate/bounds pair found cutting it out, in the order translate
/// (lexicographic), then n1, then n2.
std::vector<std::optional<WindowCut>> search_window_cuts(
    const std::vector<HPoint>& points, const TranslateWindow& window);

}  // namespace progvc::heisenberg
