// SPDX-License-Identifier: Apache-2.0
//
// Seeded randomness with named sub-streams. Each stochastic process
// (control-loss, data-loss, shadowing, ...) draws from its own generator, so
// reconfiguring one process never perturbs the draw sequence of another and
// A/B comparisons stay paired. Distribution mapping is hand-rolled: the same
// seed yields the same values on every compiler.
#ifndef HANDOFF_RANDOM_HPP
#define HANDOFF_RANDOM_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>

namespace handoff {

class RandomStream {
 public:
  class Stream {
   public:
    explicit Stream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0,1) with 53-bit resolution.
    double u01() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

    bool bernoulli(double p) {
      if (p <= 0.0) return false;
      if (p >= 1.0) return true;
      return u01() < p;
    }

    // Zero-mean normal via Box-Muller (no spare caching).
    double normal(double sigma);

   private:
    std::mt19937_64 eng_;
  };

  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Lazily creates the named sub-stream. Same (seed, name) gives an
  // identical draw sequence regardless of how other streams interleave.
  Stream& stream(const std::string& name);

 private:
  std::uint64_t seed_;
  std::map<std::string, Stream> streams_;
};

}  // namespace handoff

#endif
