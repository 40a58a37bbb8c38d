// SPDX-License-Identifier: Apache-2.0
#ifndef HANDOFF_IDS_HPP
#define HANDOFF_IDS_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace handoff {

using NodeId = int;
constexpr NodeId kNoNode = -1;

// 48-bit MAC address, also used as a BSSID.
struct MacAddr {
  std::uint64_t value = 0;

  auto operator<=>(const MacAddr&) const = default;
  std::string str() const;
  static MacAddr parse(const std::string& text);
};

enum class IpKind : std::uint8_t {
  Private,  // per-radio auto-configured address, never seen outside
  Virtual,  // the MN's radio-independent VIP
  Infra,    // AP / gateway infrastructure address
};

struct IpAddr {
  std::uint32_t value = 0;
  IpKind kind = IpKind::Infra;

  // Ordering and equality ignore the kind tag: an address is an address.
  bool operator==(const IpAddr& o) const { return value == o.value; }
  bool operator<(const IpAddr& o) const { return value < o.value; }
  std::string str() const;
  static IpAddr parse(const std::string& text, IpKind kind = IpKind::Infra);
};

inline IpAddr ipv4(unsigned a, unsigned b, unsigned c, unsigned d,
                   IpKind kind = IpKind::Infra) {
  return IpAddr{(a << 24) | (b << 16) | (c << 8) | d, kind};
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace handoff

#endif
