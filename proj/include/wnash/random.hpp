#pragma once

// Seed-deterministic randomness for instance generation and the axiom
// suites.  Draws go through explicit helpers on top of mt19937_64 rather
// than std distributions, so streams are identical across standard
// libraries, not just across runs of one build.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "core.hpp"

namespace wnash {

// Identity string recorded in suite reports; bump on any stream change.
inline constexpr const char* kGeneratorId = "mt19937_64/splitmix64-v1";

// Mixer used to derive independent per-trial seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound).  Plain modulo: the bias is negligible for the
  // small bounds used here and the mapping is portable.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  // Uniform on [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // True with probability p (clamped to [0, 1]) via a 53-bit threshold.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    const auto threshold =
        static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
    return (next() >> 11) < threshold;
  }

  template <class T>
  const T& pick(const std::vector<T>& pool) {
    return pool[next_below(pool.size())];
  }

 private:
  std::mt19937_64 engine_;
};

struct GenConfig {
  int agents = 2;
  int goods = 4;
  double density = 0.5;                 // Bernoulli parameter per valuation
  std::vector<Rational> weight_pool;    // empty pool means all weights 1
};

// Agents "a1".."an", goods "g1".."gm".  Draw order is part of the
// reproducibility contract: weights first (agent ascending), then the
// valuation matrix row-major.
inline Instance random_instance(RandomSource& rng, const GenConfig& cfg) {
  if (cfg.agents < 1) throw std::invalid_argument("need at least one agent");
  if (cfg.goods < 0) throw std::invalid_argument("negative good count");
  if (cfg.density < 0.0 || cfg.density > 1.0)
    throw std::invalid_argument("density must lie in [0, 1]");
  Instance inst;
  for (int i = 1; i <= cfg.agents; ++i)
    inst.agent_names.push_back("a" + std::to_string(i));
  for (int g = 1; g <= cfg.goods; ++g)
    inst.good_names.push_back("g" + std::to_string(g));
  for (int i = 0; i < cfg.agents; ++i)
    inst.weights.push_back(cfg.weight_pool.empty() ? Rational(1)
                                                   : rng.pick(cfg.weight_pool));
  inst.valuations.assign(static_cast<std::size_t>(cfg.agents),
                         std::vector<std::uint8_t>(
                             static_cast<std::size_t>(cfg.goods), 0));
  for (int i = 0; i < cfg.agents; ++i)
    for (int g = 0; g < cfg.goods; ++g)
      inst.valuations[static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(g)] =
          rng.bernoulli(cfg.density) ? 1 : 0;
  return inst;
}

}  // namespace wnash
