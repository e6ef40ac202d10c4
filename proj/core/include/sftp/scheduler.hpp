#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <vector>

namespace sftp {

using Tick = std::uint64_t;

enum class EventKind { Broadcast, Receive, Ack, Timeout, PingReq, PingResp };

std::string_view to_string(EventKind kind);

/// Log entry for one dispatched event.
struct DispatchedEvent {
  Tick tick = 0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::Broadcast;
};

/**
 * @brief Single-threaded discrete-event loop.
 *
 * Events dequeue in (tick, sequence) order, where sequence is the insertion
 * counter, so equal-tick events run first-in first-out. Scheduling into the
 * past throws std::logic_error.
 */
class Scheduler {
 public:
  using Action = std::function<void()>;

  explicit Scheduler(Tick start = 0) : now_(start) {}

  Tick now() const noexcept { return now_; }
  bool empty() const noexcept { return queue_.empty(); }

  std::uint64_t schedule(Tick at, EventKind kind, Action action);
  std::uint64_t schedule_in(Tick delay, EventKind kind, Action action) {
    return schedule(now_ + delay, kind, std::move(action));
  }

  /// Dispatches one event. Returns false when the queue is empty.
  bool step();
  void run();

  const std::vector<DispatchedEvent>& dispatched() const noexcept { return log_; }

 private:
  struct Pending {
    Tick tick;
    std::uint64_t sequence;
    EventKind kind;
    Action action;
  };
  struct Later {
    bool operator()(const Pending& a, const Pending& b) const {
      return a.tick != b.tick ? a.tick > b.tick : a.sequence > b.sequence;
    }
  };

  Tick now_;
  std::uint64_t next_sequence_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  std::vector<DispatchedEvent> log_;
};

}  // namespace sftp
