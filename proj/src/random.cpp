// SPDX-License-Identifier: Apache-2.0
#include "handoff/random.hpp"

#include <cmath>

namespace handoff {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

double RandomStream::Stream::normal(double sigma) {
  if (sigma == 0.0) return 0.0;
  double u1 = u01();
  if (u1 <= 0.0) u1 = 1.0 / 9007199254740992.0;
  const double u2 = u01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return sigma * r * std::cos(6.28318530717958647692 * u2);
}

RandomStream::Stream& RandomStream::stream(const std::string& name) {
  auto it = streams_.find(name);
  if (it == streams_.end()) {
    const std::uint64_t s = splitmix64(seed_ ^ (fnv1a64(name) * 0x9E3779B97F4A7C15ULL));
    it = streams_.emplace(name, Stream(s)).first;
  }
  return it->second;
}

}  // namespace handoff
