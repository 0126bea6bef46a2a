#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rodcut/geometry.hpp"

namespace rodcut {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// xor-shift-multiply with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
/// Chosen so generated instances are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Integer in [lo, hi] (modulo reduction; the small bias is irrelevant here).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

 private:
  std::uint64_t state_;
};

enum class GenKind { triple, random, weave };

struct GenSpec {
  GenKind kind = GenKind::random;
  std::size_t count = 5;
  std::int64_t lo = -64, hi = 64;  // coordinate box, every axis
  std::uint64_t seed = 1;
  std::size_t rows = 2, cols = 2;
  std::size_t max_retries = 10'000;

  void validate() const {
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    if (lo >= hi) throw std::invalid_argument("coordinate box is degenerate");
    if (rows < 1 || cols < 1) throw std::invalid_argument("weave dimensions must be at least 1x1");
  }
};

namespace detail {

inline Point3 point(std::int64_t x, std::int64_t y, std::int64_t z) { return {Rational(x), Rational(y), Rational(z)}; }

/// "s1".."s9" for small n, zero padded otherwise so that string order
/// equals numeric order.
inline std::string numbered(const std::string& prefix, std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(n).size();
  return prefix + std::string(width - digits.size(), '0') + digits;
}

}  // namespace detail

/// Three rods whose depth relation is the cycle s1 ≻ s2 ≻ s3 ≻ s1.
inline std::vector<Segment3> gen_cycle_triple() {
  using detail::point;
  return {
      Segment3("s1", point(0, 0, 2), point(6, 0, 2)),
      Segment3("s2", point(1, -1, 0), point(3, 3, 6)),
      Segment3("s3", point(5, -1, 3), point(1, 3, 3)),
  };
}

/// Integer rods drawn one at a time; a rod is redrawn until the set stays in
/// general position.
inline std::vector<Segment3> gen_random(const GenSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  std::vector<Segment3> out;
  out.reserve(spec.count);
  for (std::size_t i = 1; i <= spec.count; ++i) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < spec.max_retries && !placed; ++attempt) {
      std::int64_t c[6];
      for (auto& v : c) v = rng.uniform(spec.lo, spec.hi);
      if (c[0] == c[3] && c[1] == c[4]) continue;
      out.emplace_back(detail::numbered("s", i, spec.count), detail::point(c[0], c[1], c[2]),
                       detail::point(c[3], c[4], c[5]));
      try {
        all_crossings(out);
        placed = true;
      } catch (const DegenerateInput&) {
        out.pop_back();
      }
    }
    if (!placed) throw std::runtime_error("retry budget exhausted while placing segment " + std::to_string(i));
  }
  return out;
}

/// rows horizontal rods over cols vertical rods, every pair crossing once.
/// Rods are straight, so heights along a rod are linear in its parameter and
/// the over/under pattern cannot be prescribed freely; slopes alternate by
/// row and column parity to make cycles likely.
inline std::vector<Segment3> gen_weave(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  GenSpec{GenKind::weave, 1, 0, 1, seed, rows, cols}.validate();
  SplitMix64 rng(seed);
  const auto w = static_cast<std::int64_t>(2 * cols);
  const auto h = static_cast<std::int64_t>(2 * rows);
  constexpr std::int64_t amplitude = 8, noise = 4;

  for (int attempt = 0; attempt < 10'000; ++attempt) {
    std::vector<Segment3> out;
    for (std::size_t i = 0; i < rows; ++i) {
      const std::int64_t sign = i % 2 == 0 ? 1 : -1;
      const auto y = static_cast<std::int64_t>(2 * i + 1);
      out.emplace_back(detail::numbered("h", i + 1, rows),
                       detail::point(0, y, sign * amplitude + rng.uniform(-noise, noise)),
                       detail::point(w, y, -sign * amplitude + rng.uniform(-noise, noise)));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const std::int64_t sign = j % 2 == 0 ? -1 : 1;
      const auto x = static_cast<std::int64_t>(2 * j + 1);
      out.emplace_back(detail::numbered("v", j + 1, cols),
                       detail::point(x, 0, sign * amplitude + rng.uniform(-noise, noise)),
                       detail::point(x, h, -sign * amplitude + rng.uniform(-noise, noise)));
    }
    try {
      all_crossings(out);
      return out;
    } catch (const DegenerateInput&) {
    }
  }
  throw std::runtime_error("could not draw a weave without equal heights at a crossing");
}

inline std::vector<Segment3> generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenKind::triple: return gen_cycle_triple();
    case GenKind::weave: return gen_weave(spec.rows, spec.cols, spec.seed);
    case GenKind::random: break;
  }
  return gen_random(spec);
}

}  // namespace rodcut
