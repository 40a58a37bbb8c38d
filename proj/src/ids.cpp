// SPDX-License-Identifier: Apache-2.0
#include "handoff/ids.hpp"

#include <cstdio>
#include <stdexcept>

namespace handoff {

std::string MacAddr::str() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                (unsigned)((value >> 40) & 0xff), (unsigned)((value >> 32) & 0xff),
                (unsigned)((value >> 24) & 0xff), (unsigned)((value >> 16) & 0xff),
                (unsigned)((value >> 8) & 0xff), (unsigned)(value & 0xff));
  return buf;
}

MacAddr MacAddr::parse(const std::string& text) {
  unsigned b[6];
  if (std::sscanf(text.c_str(), "%x:%x:%x:%x:%x:%x", &b[0], &b[1], &b[2], &b[3],
                  &b[4], &b[5]) != 6) {
    throw std::invalid_argument("bad MAC address: " + text);
  }
  std::uint64_t v = 0;
  for (unsigned x : b) v = (v << 8) | (x & 0xff);
  return MacAddr{v};
}

std::string IpAddr::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (value >> 24) & 0xff,
                (value >> 16) & 0xff, (value >> 8) & 0xff, value & 0xff);
  return buf;
}

IpAddr IpAddr::parse(const std::string& text, IpKind kind) {
  unsigned a, b, c, d;
  if (std::sscanf(text.c_str(), "%u.%u.%u.%u", &a, &b, &c, &d) != 4 || a > 255 ||
      b > 255 || c > 255 || d > 255) {
    throw std::invalid_argument("bad IP address: " + text);
  }
  return ipv4(a, b, c, d, kind);
}

}  // namespace handoff
