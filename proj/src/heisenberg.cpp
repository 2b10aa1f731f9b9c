#include "progvc/heisenberg.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <stdexcept>
#include <set>
#include <tuple>

#include "progvc/errors.hpp"

namespace progvc::heisenberg {

// ---------------------------------------------------------------------------
// Group law

HPoint h_mul(const HPoint& p, const HPoint& q) {
  return {p.a + q.a, p.b + q.b, p.c + q.c + p.a * q.b};
}

HPoint h_inv(const HPoint& p) { return {-p.a, -p.b, p.a * p.b - p.c}; }

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r))
    throw OverflowError("int64 overflow in Heisenberg arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r))
    throw OverflowError("int64 overflow in Heisenberg arithmetic");
  return r;
}

std::int64_t checked_neg(std::int64_t x) { return checked_mul(x, -1); }

std::int64_t narrow(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("coordinate does not fit in int64");
  return static_cast<std::int64_t>(v);
}

}  // namespace

SmallPoint h_mul(const SmallPoint& p, const SmallPoint& q) {
  return {checked_add(p.a, q.a), checked_add(p.b, q.b),
          checked_add(checked_add(p.c, q.c), checked_mul(p.a, q.b))};
}

SmallPoint h_inv(const SmallPoint& p) {
  return {checked_neg(p.a), checked_neg(p.b),
          checked_add(checked_mul(p.a, p.b), checked_neg(p.c))};
}

HPoint widen(const SmallPoint& p) { return {p.a, p.b, p.c}; }

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const HPoint& p) {
  return p.a.str() + "," + p.b.str() + "," + p.c.str();
}

std::string to_string(const SmallPoint& p) {
  return std::to_string(p.a) + "," + std::to_string(p.b) + "," +
         std::to_string(p.c);
}

namespace {

BigInt parse_integer(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  std::size_t i = 0;
  if (!trimmed.empty() && (trimmed[0] == '-' || trimmed[0] == '+')) i = 1;
  if (i == trimmed.size())
    throw DomainError("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t k = i; k < trimmed.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(trimmed[k])))
      throw DomainError("expected an integer, got '" + std::string(text) + "'");
  BigInt v(std::string(trimmed.substr(i)));
  return trimmed[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

HPoint parse_point(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3)
    throw DomainError("a point is written a,b,c; got '" + std::string(text) + "'");
  return {parse_integer(parts[0]), parse_integer(parts[1]),
          parse_integer(parts[2])};
}

std::string to_string(const HWord& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) {
    switch (l) {
      case Letter::A: s += 'A'; break;
      case Letter::AInv: s += 'a'; break;
      case Letter::B: s += 'B'; break;
      case Letter::BInv: s += 'b'; break;
    }
  }
  return s;
}

HWord parse_word(std::string_view text) {
  HWord w;
  w.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'A': w.push_back(Letter::A); break;
      case 'a': w.push_back(Letter::AInv); break;
      case 'B': w.push_back(Letter::B); break;
      case 'b': w.push_back(Letter::BInv); break;
      default:
        throw DomainError(std::string("invalid letter '") + ch +
                          "' (alphabet is A, a, B, b)");
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Words

namespace {

bool is_a(Letter l) { return l == Letter::A || l == Letter::AInv; }
bool is_b(Letter l) { return l == Letter::B || l == Letter::BInv; }
int sign(Letter l) { return (l == Letter::A || l == Letter::B) ? 1 : -1; }

}  // namespace

LetterCounts letter_counts(const HWord& w) {
  LetterCounts n;
  for (Letter l : w) {
    switch (l) {
      case Letter::A: ++n.a_plus; break;
      case Letter::AInv: ++n.a_minus; break;
      case Letter::B: ++n.b_plus; break;
      case Letter::BInv: ++n.b_minus; break;
    }
  }
  return n;
}

HPoint word_eval(const HWord& w) {
  // The running A-exponent sum pairs each B-letter with every earlier
  // A-letter. Words are far shorter than 2^31, so int64 cannot overflow.
  std::int64_t a = 0, b = 0, c = 0;
  for (Letter l : w) {
    if (is_a(l)) {
      a += sign(l);
    } else {
      b += sign(l);
      c += a * sign(l);
    }
  }
  return {a, b, c};
}

HWord reverse_word(const HWord& w) { return HWord(w.rbegin(), w.rend()); }

HWord flip_a(const HWord& w) {
  HWord out = w;
  for (auto& l : out) {
    if (l == Letter::A) l = Letter::AInv;
    else if (l == Letter::AInv) l = Letter::A;
  }
  return out;
}

HWord flip_b(const HWord& w) {
  HWord out = w;
  for (auto& l : out) {
    if (l == Letter::B) l = Letter::BInv;
    else if (l == Letter::BInv) l = Letter::B;
  }
  return out;
}

namespace {

// Runs the sorting procedure on `w`, calling visit(word, j) on the initial
// state and after every swap; stops early when visit returns false.
//
// Termination: each swap turns one adjacent (A-letter, B-letter) pair into
// (B-letter, A-letter), which lowers the number of A-before-B index pairs
// by exactly one. That number starts at most n_A * n_B, which is therefore
// also a hard cap on the number of swaps.
template <class Visit>
void walk_trace(HWord w, Visit&& visit) {
  std::int64_t j = 0;
  if (!visit(static_cast<const HWord&>(w), j)) return;
  if (w.size() < 2) return;
  const LetterCounts n = letter_counts(w);
  const std::uint64_t max_swaps = n.n_a() * n.n_b();
  std::uint64_t swaps = 0;
  // Right-most A-letter immediately followed by a B-letter. After a swap at
  // i the only new candidate to the right of i - 1 is i + 1, so scanning
  // resumes there.
  std::size_t scan = w.size() - 2;
  for (;;) {
    std::size_t i = scan + 1;
    bool found = false;
    while (i-- > 0) {
      if (is_a(w[i]) && is_b(w[i + 1])) {
        found = true;
        break;
      }
    }
    if (!found) return;
    j += sign(w[i]) * sign(w[i + 1]);
    std::swap(w[i], w[i + 1]);
    if (++swaps > max_swaps)
      throw std::logic_error("reduction trace exceeded n_A * n_B swaps");
    if (!visit(static_cast<const HWord&>(w), j)) return;
    scan = std::min(i + 1, w.size() - 2);
  }
}

}  // namespace

ReductionTrace reduction_trace(const HWord& w) {
  ReductionTrace trace;
  walk_trace(w, [&](const HWord& word, std::int64_t j) {
    trace.steps.push_back({word, j});
    return true;
  });
  return trace;
}

// ---------------------------------------------------------------------------
// Membership

namespace {

template <class Int>
bool member_impl(const Int& n1, const Int& n2, const Int& a, const Int& b,
                 const Int& c) {
  // Every bracketed quantity below is nonnegative inside its case, so
  // truncating division is floor division.
  if (0 <= a && a <= n1 && 0 <= b && b <= n2) {
    Int corner = ((n1 + a) / 2) * ((n2 + b) / 2);
    return a * b - corner <= c && c <= corner;
  }
  if (-n1 <= a && a < 0 && -n2 <= b && b < 0) {
    Int corner = ((n1 - a) / 2) * ((n2 - b) / 2);
    return a * b - corner <= c && c <= corner;
  }
  if (0 <= a && a <= n1 && -n2 <= b && b < 0) {
    Int corner = ((n1 + a) / 2) * ((n2 - b) / 2);
    return -corner <= c && c <= a * b + corner;
  }
  if (-n1 <= a && a < 0 && 0 <= b && b <= n2) {
    Int corner = ((n1 - a) / 2) * ((n2 + b) / 2);
    return -corner <= c && c <= a * b + corner;
  }
  return false;
}

void require_budgets(const BigInt& n1, const BigInt& n2) {
  if (n1 < 0 || n2 < 0) throw DomainError("progression bounds must be >= 0");
}

}  // namespace

bool membership(const BigInt& n1, const BigInt& n2, const HPoint& p) {
  require_budgets(n1, n2);
  return member_impl<BigInt>(n1, n2, p.a, p.b, p.c);
}

bool membership(const ProgressionSpec& spec, const HPoint& p) {
  return membership(spec.n1, spec.n2, h_mul(h_inv(spec.translate), p));
}

BigInt max_central(const BigInt& a, const BigInt& b, const BigInt& n1,
                   const BigInt& n2) {
  if (a < 0 || b < 0 || a > n1 || b > n2)
    throw DomainError("max_central needs 0 <= a <= n1 and 0 <= b <= n2");
  return ((n1 + a) / 2) * ((n2 + b) / 2);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<SmallPoint> enumerate_progression(std::uint64_t n1,
                                              std::uint64_t n2,
                                              std::uint64_t cap) {
  if (n1 + n2 > cap)
    throw ResourceError("enumeration of P(" + std::to_string(n1) + "," +
                        std::to_string(n2) + ") exceeds cap n1 + n2 <= " +
                        std::to_string(cap));
  // Budget usage only grows along a word, so the reachable states are
  // exactly the prefixes of words in W(n1, n2).
  using State = std::tuple<SmallPoint, std::uint64_t, std::uint64_t>;
  auto state_less = [](const State& l, const State& r) {
    const auto& [pl, al, bl] = l;
    const auto& [pr, ar, br] = r;
    if (pl == pr) return std::tie(al, bl) < std::tie(ar, br);
    return pl < pr;
  };
  std::set<State, decltype(state_less)> seen(state_less);
  std::set<SmallPoint> elements;
  std::deque<State> frontier;

  const SmallPoint steps_a[] = {{1, 0, 0}, {-1, 0, 0}};
  const SmallPoint steps_b[] = {{0, 1, 0}, {0, -1, 0}};

  State start{SmallPoint{}, 0, 0};
  seen.insert(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    auto [g, used_a, used_b] = frontier.front();
    frontier.pop_front();
    elements.insert(g);
    auto push = [&](const SmallPoint& next, std::uint64_t ua, std::uint64_t ub) {
      State s{next, ua, ub};
      if (seen.insert(s).second) frontier.push_back(s);
    };
    if (used_a < n1)
      for (const auto& s : steps_a) push(h_mul(g, s), used_a + 1, used_b);
    if (used_b < n2)
      for (const auto& s : steps_b) push(h_mul(g, s), used_a, used_b + 1);
  }
  return {elements.begin(), elements.end()};
}

nlohmann::json to_json(const std::vector<SmallPoint>& points) {
  std::vector<SmallPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : sorted) out.push_back({p.a, p.b, p.c});
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

constexpr std::int64_t kMaxWitnessLength = 1'000'000;

void append(HWord& w, Letter positive, Letter negative, std::int64_t power) {
  Letter l = power >= 0 ? positive : negative;
  for (std::int64_t i = 0; i < (power >= 0 ? power : -power); ++i) w.push_back(l);
}

}  // namespace

HWord witness_word(const HPoint& p, const BigInt& n1, const BigInt& n2) {
  if (!membership(n1, n2, p))
    throw DomainError("(" + to_string(p) + ") is not in P(" + n1.str() + "," +
                      n2.str() + ")");
  if (n1 + n2 > kMaxWitnessLength)
    throw ResourceError("witness words are limited to " +
                        std::to_string(kMaxWitnessLength) + " letters");

  // Normalize into the quadrant a, b >= 0: A-flip first, then B-flip.
  BigInt a = p.a, b = p.b, c = p.c;
  const bool flipped_a = a < 0;
  if (flipped_a) { a = -a; c = -c; }
  const bool flipped_b = b < 0;
  if (flipped_b) { b = -b; c = -c; }

  const std::int64_t ai = narrow(a), bi = narrow(b);
  const std::int64_t half1 = narrow((n1 + a) / 2);
  const std::int64_t half2 = narrow((n2 + b) / 2);
  const std::int64_t corner = half1 * half2;

  // B^(b - h2) A^h1 B^h2 A^(a - h1) evaluates to (a, b, corner). Its trace
  // raises j from 0 to corner in unit steps, and the word at j evaluates to
  // (a, b, corner - j).
  HWord top;
  append(top, Letter::B, Letter::BInv, bi - half2);
  append(top, Letter::A, Letter::AInv, half1);
  append(top, Letter::B, Letter::BInv, half2);
  append(top, Letter::A, Letter::AInv, ai - half1);

  // Central values below zero come from reversing a word for a b - c.
  const std::int64_t ci = narrow(c);
  const bool reverse = ci < 0;
  const std::int64_t target = corner - (reverse ? ai * bi - ci : ci);

  std::optional<HWord> found;
  walk_trace(top, [&](const HWord& word, std::int64_t j) {
    if (j == target) {
      found = word;
      return false;
    }
    return true;
  });
  if (!found) throw std::logic_error("witness trace missed its target");

  HWord w = reverse ? reverse_word(*found) : *found;
  if (flipped_a) w = flip_a(w);
  if (flipped_b) w = flip_b(w);
  return w;
}

// ---------------------------------------------------------------------------
// Experimental window search

std::vector<std::optional<WindowCut>> search_window_cuts(
    const std::vector<HPoint>& points, const TranslateWindow& window) {
  if (points.size() > 20)
    throw ResourceError("window search is limited to 20 points");
  if (window.radius < 0 || window.max_n < 0)
    throw DomainError("window radius and max_n must be >= 0");
  std::vector<SmallPoint> pts;
  for (const auto& p : points) pts.push_back({narrow(p.a), narrow(p.b), narrow(p.c)});

  std::vector<std::optional<WindowCut>> cuts(std::size_t{1} << pts.size());
  const std::int64_t r = window.radius;
  for (std::int64_t ga = -r; ga <= r; ++ga)
    for (std::int64_t gb = -r; gb <= r; ++gb)
      for (std::int64_t gc = -r; gc <= r; ++gc) {
        const SmallPoint inv = h_inv(SmallPoint{ga, gb, gc});
        std::vector<SmallPoint> local;
        local.reserve(pts.size());
        for (const auto& p : pts) local.push_back(h_mul(inv, p));
        for (std::int64_t n1 = 0; n1 <= window.max_n; ++n1)
          for (std::int64_t n2 = 0; n2 <= window.max_n; ++n2) {
            std::size_t mask = 0;
            for (std::size_t i = 0; i < local.size(); ++i)
              if (member_impl<std::int64_t>(n1, n2, local[i].a, local[i].b,
                                            local[i].c))
                mask |= std::size_t{1} << i;
            if (!cuts[mask]) cuts[mask] = WindowCut{{ga, gb, gc}, n1, n2};
          }
      }
  return cuts;
}

}  // namespace progvc::heisenberg
