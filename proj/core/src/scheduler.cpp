#include "sftp/scheduler.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace sftp {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Broadcast: return "broadcast";
    case EventKind::Receive: return "receive";
    case EventKind::Ack: return "ack";
    case EventKind::Timeout: return "timeout";
    case EventKind::PingReq: return "ping_req";
    case EventKind::PingResp: return "ping_resp";
  }
  return "unknown";
}

std::uint64_t Scheduler::schedule(Tick at, EventKind kind, Action action) {
  if (at < now_) {
    throw std::logic_error("event scheduled at tick " + std::to_string(at) + " before now " +
                           std::to_string(now_));
  }
  const std::uint64_t seq = next_sequence_++;
  queue_.push(Pending{at, seq, kind, std::move(action)});
  return seq;
}

bool Scheduler::step() {
  if (queue_.empty()) return false;
  Pending next = queue_.top();
  queue_.pop();
  now_ = next.tick;
  log_.push_back(DispatchedEvent{next.tick, next.sequence, next.kind});
  if (next.action) next.action();
  return true;
}

void Scheduler::run() {
  while (step()) {
  }
}

}  // namespace sftp
