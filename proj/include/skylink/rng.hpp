#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace skylink {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(const std::string& s);

// Derives an independent substream seed from (run seed, label). Used for
// attacker draw isolation: a passive attacker's draws never perturb the
// main stream.
std::uint64_t derive_seed(std::uint64_t run_seed, const std::string& label);

// Deterministic RNG. mt19937_64 output is pinned by the standard; the
// uniform/gaussian mappings below are hand-rolled so traces do not depend
// on the stdlib's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t draw_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs cached.
  double gaussian();

  double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace skylink
