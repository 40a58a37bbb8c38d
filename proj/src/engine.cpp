// SPDX-License-Identifier: Apache-2.0
#include "handoff/engine.hpp"

#include <cstdio>

namespace handoff {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Timer: return "timer";
    case EventKind::MessageDelivery: return "message-delivery";
    case EventKind::ScanTick: return "scan-tick";
    case EventKind::TrafficTick: return "traffic-tick";
    case EventKind::MobilityTick: return "mobility-tick";
  }
  return "?";
}

EventId Engine::schedule(EventKind kind, int target, SimTime delay,
                         std::function<void()> fn) {
  const EventId id = next_id_++;
  const SimTime fire = now_ + delay;
  queue_.emplace(Key{fire, id}, Rec{kind, target, std::move(fn)});
  index_.emplace(id, fire);
  return id;
}

bool Engine::cancel(EventId id) {
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  queue_.erase(Key{it->second, id});
  index_.erase(it);
  return true;
}

std::size_t Engine::run_until(SimTime t_end) {
  if (t_end < now_) {
    throw EngineFault("run_until: t_end precedes current simulated time");
  }
  std::size_t fired = 0;
  while (!queue_.empty()) {
    auto it = queue_.begin();
    const Key key = it->first;
    if (key.first > t_end) break;
    Rec rec = std::move(it->second);
    queue_.erase(it);
    index_.erase(key.second);
    now_ = key.first;
    if (trace_) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "t=%llu fire seq=%llu kind=%s target=%d",
                    (unsigned long long)now_, (unsigned long long)key.second,
                    event_kind_name(rec.kind), rec.target);
      trace_->push_back(buf);
    }
    try {
      rec.fn();
    } catch (const std::exception& e) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "event seq=%llu kind=%s target=%d t=%lluus: ",
                    (unsigned long long)key.second, event_kind_name(rec.kind),
                    rec.target, (unsigned long long)now_);
      throw EngineFault(std::string(buf) + e.what());
    }
    ++fired;
  }
  now_ = t_end;
  return fired;
}

}  // namespace handoff
