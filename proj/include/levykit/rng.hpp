#pragma once
// Deterministic random number generation.
//
// Engines and samplers are pinned here instead of <random> distributions: the standard
// leaves distribution algorithms implementation-defined, and identical seeds must give
// identical streams on any toolchain (the output contract is byte-reproducible CSV).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace levykit {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based per-path seed: mixes (master, index) so ensemble results do not depend
// on scheduling or on how many paths run before this one.
inline std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  const std::uint64_t a = splitmix64(s);
  const std::uint64_t b = splitmix64(s);
  return a ^ (b << 1) ^ (b >> 63);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  // xoshiro256++
  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)

  double uniform_pos() {  // (0,1)
    double u;
    do { u = uniform(); } while (u == 0.0);
    return u;
  }

  double normal() {  // Marsaglia polar, spare cached
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  double exponential() { return -std::log1p(-uniform()); }

  // Exact Poisson. Inversion by uniform products for small means; larger means use
  // additivity N(m) = sum of N(m/k), keeping every factor within double range.
  std::uint64_t poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) throw std::invalid_argument("poisson: bad mean");
    if (mean == 0.0) return 0;
    if (mean <= 30.0) {
      const double limit = std::exp(-mean);
      std::uint64_t count = 0;
      double prod = uniform_pos();
      while (prod > limit) {
        prod *= uniform_pos();
        ++count;
      }
      return count;
    }
    const auto k = static_cast<std::uint64_t>(std::ceil(mean / 25.0));
    const double part = mean / static_cast<double>(k);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < k; ++i) total += poisson(part);
    return total;
  }

  // Pareto radius with tail r^{-alpha} on (lower, upper]; upper may be infinity.
  double pareto(double alpha, double lower, double upper) {
    const double u = uniform();
    if (!std::isfinite(upper)) return lower * std::pow(1.0 - u, -1.0 / alpha);
    const double ratio = std::pow(lower / upper, alpha);
    return lower * std::pow(1.0 - u * (1.0 - ratio), -1.0 / alpha);
  }

  // Index into a cumulative weight table (strictly increasing, last = total mass).
  std::size_t categorical(const std::vector<double>& cumulative) {
    const double u = uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u) lo = mid + 1; else hi = mid;
    }
    return lo;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4]{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace levykit
