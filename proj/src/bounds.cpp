#include "progvc/bounds.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "progvc/errors.hpp"

namespace progvc::bounds {

namespace {

BigInt pow2(std::uint64_t n) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(n);
  return r;
}

// Sum_{i=0}^{l} 2^i C(m, i), built incrementally from C(m, i) = C(m, i-1)
// (m - i + 1) / i.
BigInt weighted_binomial_sum(std::uint64_t m, std::uint64_t l) {
  BigInt sum = 0;
  BigInt term = 1;  // C(m, i)
  for (std::uint64_t i = 0; i <= l; ++i) {
    if (i > 0) {
      if (i > m) break;
      term *= (m - i + 1);
      term /= i;
    }
    sum += (BigInt{1} << static_cast<unsigned>(i)) * term;
  }
  return sum;
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt capital_c(std::uint64_t d, std::uint64_t n) {
  BigInt sum = 0;
  BigInt term = 1;
  const std::uint64_t top = std::min(d, n);
  for (std::uint64_t i = 0; i <= top; ++i) {
    if (i > 0) {
      term *= (n - i + 1);
      term /= i;
    }
    sum += term;
  }
  return sum;
}

std::uint64_t f_bound(std::uint64_t d, std::uint64_t k,
                      std::uint64_t ceiling) {
  if (k == 0) throw DomainError("f_bound needs k >= 1");
  for (std::uint64_t n = 0; n <= ceiling; ++n) {
    if (boost::multiprecision::pow(capital_c(d, n), static_cast<unsigned>(k)) <
        pow2(n))
      return n;
  }
  throw ResourceError("f_bound scan passed ceiling " + std::to_string(ceiling));
}

std::uint64_t g_bound(std::uint64_t d, std::uint64_t k,
                      std::uint64_t ceiling) {
  if (k == 0) throw DomainError("g_bound needs k >= 1");
  for (std::uint64_t n = 0; n <= ceiling; ++n) {
    if (BigInt(k) * capital_c(d, n) < pow2(n)) {
      // n = 0 never satisfies k C_d(0) = k < 1, so n >= 1 here.
      return k * (n - 1);
    }
  }
  throw ResourceError("g_bound scan passed ceiling " + std::to_string(ceiling));
}

BigInt km_bound(std::uint64_t d, std::uint64_t l, std::uint64_t s,
                std::uint64_t n) {
  if (d < 1 || l < 1 || s < 1)
    throw DomainError("km_bound needs d, l, s >= 1");
  BigInt lead = BigInt(d) * boost::multiprecision::pow(BigInt(2 * d - 1),
                                                       static_cast<unsigned>(l - 1));
  return lead * weighted_binomial_sum(s * n, l);
}

double f_upper_estimate(std::uint64_t d, std::uint64_t k) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  if (d < 1 || k < 1) throw DomainError("f_upper_estimate needs d, k >= 1");
  const Float e = boost::multiprecision::exp(Float(1));
  const Float ln2 = boost::multiprecision::log(Float(2));
  auto log2 = [&](const Float& x) { return boost::multiprecision::log(x) / ln2; };
  const Float dk = Float(d) * Float(k);
  const Float c = boost::multiprecision::pow(Float(2), Float(1) / dk) * (e + log2(e));
  const Float ck = c * Float(k);
  Float value = dk * log2(ck * log2(ck));
  // Round the result away from the comparison it feeds (f <= value).
  value *= Float("1.0000000000000000000000000000001");
  return static_cast<double>(value) * (1.0 + 1e-12);
}

bool ThresholdReport::holds(std::uint64_t n) const {
  return std::find(holds_at.begin(), holds_at.end(), n) != holds_at.end();
}

bool ThresholdReport::fails(std::uint64_t n) const {
  return std::find(fails_at.begin(), fails_at.end(), n) != fails_at.end();
}

nlohmann::json to_json(const ThresholdReport& r) {
  return {{"check", r.check},
          {"holds_at", r.holds_at},
          {"fails_at", r.fails_at},
          {"bound", r.bound}};
}

bool translate_family_inequality(std::uint64_t n) {
  // 648 Sum = 4 * (2 * 3^4 * Sum); the 4 counts the cosets of 2Z x 2Z.
  BigInt per_conjunct = 4 * km_bound(2, 5, 14, n);
  return boost::multiprecision::pow(per_conjunct, 4) < pow2(n);
}

bool fixed_progression_inequality(std::uint64_t n) {
  // 72 Sum = 4 * (2 * 3^2 * Sum); 288 = 4 * 72 from the coset-union lemma.
  BigInt per_coset = 4 * km_bound(2, 3, 14, n);
  return pow2(n) <= 4 * per_coset;
}

ThresholdReport verify_heisenberg_translate_threshold() {
  ThresholdReport r;
  r.check = "heisenberg-translate-family";
  std::uint64_t n = 1;
  while (!translate_family_inequality(n)) {
    if (++n > kScanCeiling)
      throw ResourceError("translate threshold scan passed ceiling");
  }
  // VC <= n - 1 at the first n where the inequality holds.
  r.holds_at.push_back(n);
  r.fails_at.push_back(n - 1);
  r.bound = n - 1;
  return r;
}

ThresholdReport verify_heisenberg_fixed_threshold() {
  ThresholdReport r;
  r.check = "heisenberg-fixed-progression";
  std::uint64_t n = 1;
  while (fixed_progression_inequality(n)) {
    if (++n > kScanCeiling)
      throw ResourceError("fixed threshold scan passed ceiling");
  }
  // A violation at n rules out VC > 4 (n - 1).
  r.holds_at.push_back(n - 1);
  r.fails_at.push_back(n);
  r.bound = 4 * (n - 1);
  return r;
}

}  // namespace progvc::bounds
