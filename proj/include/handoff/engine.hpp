// SPDX-License-Identifier: Apache-2.0
//
// Deterministic discrete-event scheduler. Events fire in strict
// (fire_time, insertion_seq) order; ties between events scheduled for the
// same microsecond resolve by insertion sequence, so traces are reproducible
// run to run.
#ifndef HANDOFF_ENGINE_HPP
#define HANDOFF_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "handoff/time.hpp"

namespace handoff {

enum class EventKind {
  Timer,
  MessageDelivery,
  ScanTick,
  TrafficTick,
  MobilityTick,
};

const char* event_kind_name(EventKind k);

using EventId = std::uint64_t;

// Raised when an event handler faults; names the offending event.
class EngineFault : public std::runtime_error {
 public:
  explicit EngineFault(const std::string& what) : std::runtime_error(what) {}
};

class Engine {
 public:
  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  SimTime now() const { return now_; }

  // Enqueues a handler at now()+delay. Zero delay is legal: the event fires
  // after events already queued for the current instant.
  EventId schedule(EventKind kind, int target, SimTime delay,
                   std::function<void()> fn);

  // True iff the event existed and had not fired. A cancelled event's
  // handler is never invoked.
  bool cancel(EventId id);

  // Fires all events with fire_time <= t_end, then clamps now() to t_end.
  // Returns the number of handlers invoked.
  std::size_t run_until(SimTime t_end);

  bool pending(EventId id) const { return index_.count(id) != 0; }
  std::size_t queue_size() const { return queue_.size(); }

  // Optional sink receiving one line per fired event (determinism checks).
  void set_event_trace(std::vector<std::string>* sink) { trace_ = sink; }

 private:
  struct Rec {
    EventKind kind;
    int target;
    std::function<void()> fn;
  };
  using Key = std::pair<SimTime, EventId>;

  SimTime now_ = 0;
  EventId next_id_ = 1;
  std::map<Key, Rec> queue_;
  std::unordered_map<EventId, SimTime> index_;
  std::vector<std::string>* trace_ = nullptr;
};

}  // namespace handoff

#endif
