#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sftp/error.hpp"
#include "sftp/simulator.hpp"
#include "support.hpp"

using namespace sftp;
using namespace sftp::test;

namespace {

const std::vector<NodeId> kDRoute = {"S", "a", "c", "d", "g", "i", "D"};
const std::vector<NodeId> kFRoute = {"S", "a", "c", "f", "g", "i", "D"};

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sftp::Error");
  return Errc::InvalidScenario;
}

PacketOutcome delivered(std::uint64_t seq, std::uint64_t bytes, Tick delay) {
  PacketOutcome p;
  p.sequence = seq;
  p.payload_size = bytes;
  p.delivered = true;
  p.end_to_end_delay = delay;
  p.attempts.resize(1);
  return p;
}

PacketOutcome lost(std::uint64_t seq) {
  PacketOutcome p;
  p.sequence = seq;
  p.payload_size = 10;
  p.attempts.resize(1);
  return p;
}

}  // namespace

TEST_CASE("metrics examples") {
  const std::vector<PacketOutcome> one = {delivered(1, 100, 8)};
  const Metrics m = compute_metrics(one, 8);
  CHECK(m.throughput == doctest::Approx(12.5));
  CHECK(m.packet_delivery_rate == 1.0);
  CHECK(m.end_to_end_delay == 8.0);

  const std::vector<PacketOutcome> none = {lost(1), lost(2), lost(3), lost(4), lost(5)};
  const Metrics z = compute_metrics(none, 20);
  CHECK(z.packet_delivery_rate == 0.0);
  CHECK(z.throughput == 0.0);
  CHECK_FALSE(z.end_to_end_delay.has_value());

  const std::vector<PacketOutcome> half = {delivered(1, 10, 2), lost(2), delivered(3, 10, 4), lost(4)};
  const Metrics h = compute_metrics(half, 10);
  CHECK(h.packet_delivery_rate == 0.5);
  CHECK(h.end_to_end_delay == 3.0);
  CHECK(h.throughput == doctest::Approx(2.0));

  const Metrics e = compute_metrics({}, 0);
  CHECK_FALSE(e.packet_delivery_rate.has_value());
  CHECK(e.packets_sent == 0);
  CHECK(e.throughput == 0.0);
}

TEST_CASE("retransmissions count once toward the delivery rate") {
  PacketOutcome p = delivered(1, 100, 8);
  p.attempts.resize(2);
  const std::vector<PacketOutcome> v = {p};
  const Metrics m = compute_metrics(v, 15);
  CHECK(m.packets_sent == 1);
  CHECK(m.transmissions == 2);
  CHECK(m.retransmissions == 1);
  CHECK(m.packet_delivery_rate == 1.0);
}

TEST_CASE("honest run of the worked example") {
  Scenario s = example_scenario();
  s.malicious.clear();
  const Report r = run_scenario(s);
  CHECK(r.outcome == RunOutcome::Delivered);
  CHECK(r.unreachable == std::vector<NodeId>{"j", "k", "l", "m"});
  CHECK(r.repaired.empty());
  CHECK(r.discovery.primary.hops == kDRoute);
  REQUIRE(r.packets.size() == 1);
  CHECK(r.packets[0].attempts.size() == 1);
  CHECK(r.detections.empty());
  CHECK(r.metrics.clock == 8);
  CHECK(r.metrics.throughput == doctest::Approx(12.5));
  CHECK(r.metrics.packet_delivery_rate == 1.0);

  // Ping round trip to D is 16 plus one timeout slack; phases abut.
  CHECK(r.ping_phase.start == 0);
  CHECK(r.discovery_phase.start == r.ping_phase.end);
  CHECK(r.data_phase.start == r.discovery_phase.end);
  CHECK(r.data_phase.end - r.data_phase.start == 8);
}

TEST_CASE("blackhole run falls back and delivers") {
  const Report r = run_scenario(example_scenario());
  CHECK(r.outcome == RunOutcome::Delivered);
  REQUIRE(r.detections.size() == 1);
  CHECK(r.detections[0].event.node == "d");
  CHECK(r.detections[0].event.kind == DetectionKind::Dropper);
  CHECK(r.excluded == std::set<NodeId>{"d"});

  const auto& attempts = r.packets.at(0).attempts;
  REQUIRE(attempts.size() == 2);
  CHECK(attempts[0].route.hops == kDRoute);
  CHECK(attempts[0].status == DeliveryStatus::Dropped);
  CHECK(attempts[1].route.hops == kFRoute);
  CHECK(attempts[1].sent_at == attempts[0].finished_at);
  CHECK(attempts[1].end_to_end_delay == 8u);

  // Drop noticed at 1 + 1 + (2 * 2 + 1) = 7 ticks into the data phase,
  // then 8 more along the fallback.
  CHECK(r.metrics.clock == 15);
  CHECK(r.metrics.retransmissions == 1);
  CHECK(r.metrics.packet_delivery_rate == 1.0);
}

TEST_CASE("every route through an attacker ends in NoSafeRoute") {
  Scenario s;
  s.nodes = {"S", "x", "y", "D"};
  s.edges = {{"S", "x", 1}, {"x", "y", 1}, {"x", "D", 2}, {"y", "D", 1}};
  s.threshold = 4;
  s.source = "S";
  s.dest = "D";
  s.malicious = {"x"};
  s.packet_count = 3;
  const Report r = run_scenario(s);
  CHECK(r.outcome == RunOutcome::NoSafeRoute);
  CHECK(r.metrics.packets_sent == 3);
  CHECK(r.metrics.packets_delivered == 0);
  CHECK(r.metrics.packet_delivery_rate == 0.0);
  for (const auto& p : r.packets) {
    CHECK_FALSE(p.delivered);
    CHECK(p.failure == Errc::NoSafeRoute);
  }
}

TEST_CASE("unreachable destination reports NoRoute") {
  Scenario s = example_scenario();
  s.dest = "k";
  const Report r = run_scenario(s);
  CHECK(r.outcome == RunOutcome::NoRoute);
  CHECK(r.packets.at(0).failure == Errc::NoRoute);
  CHECK(r.metrics.packet_delivery_rate == 0.0);
}

TEST_CASE("a failed relay is repaired around before discovery") {
  Scenario s = example_scenario();
  s.malicious.clear();
  s.failed = {"e"};
  const Report r = run_scenario(s);
  REQUIRE(r.repaired.size() == 2);
  CHECK(r.routing_graph.base.weight("f", "b") == 3);
  CHECK(r.routing_graph.base.weight("b", "h") == 3);
  CHECK(degree(r.routing_graph, "e") == 0);
  CHECK(r.outcome == RunOutcome::Delivered);
  for (const auto& route : r.discovery.recorded) CHECK_FALSE(route.contains("e"));
}

TEST_CASE("scenario validation") {
  auto bad = [](auto mutate) {
    Scenario s = example_scenario();
    mutate(s);
    return error_code([&] { run_scenario(s); });
  };
  CHECK(bad([](Scenario& s) { s.dest = "S"; }) == Errc::SameEndpoint);
  CHECK(bad([](Scenario& s) { s.source = "zz"; }) == Errc::UnknownNode);
  CHECK(bad([](Scenario& s) { s.malicious = {"zz"}; }) == Errc::UnknownNode);
  CHECK(bad([](Scenario& s) { s.malicious = {"S"}; }) == Errc::InvalidScenario);
  CHECK(bad([](Scenario& s) { s.failed = {"D"}; }) == Errc::InvalidScenario);
  CHECK(bad([](Scenario& s) { s.delayers = {{"c", 0}}; }) == Errc::InvalidScenario);
  CHECK(bad([](Scenario& s) { s.threshold = 0; }) == Errc::InvalidThreshold);
  CHECK(bad([](Scenario& s) { s.collision = {true, -0.1}; }) == Errc::InvalidScenario);
  CHECK(bad([](Scenario& s) { s.edges.push_back({"a", "c", 2}); }) == Errc::DuplicateEdge);
}

TEST_CASE("property: discovery-only runs leave the data phase untouched") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 8);
    const Scenario s = random_connected(rng, size(rng));
    const Report partial = run_scenario(s, RunPhases::ThroughDiscovery);
    const Report full = run_scenario(s);
    CHECK(partial.packets.empty());
    CHECK(partial.discovery.recorded == full.discovery.recorded);
    CHECK(partial.discovery.trace == full.discovery.trace);
    CHECK(partial.discovery_phase.end == full.discovery_phase.end);
  }
}

TEST_CASE("property: detections lie on attempted routes and fallbacks avoid them") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> size(4, 8);
    Scenario s = random_connected(rng, size(rng));
    s.packet_count = 2;
    std::vector<NodeId> relays;
    for (const auto& n : s.nodes) {
      if (n != s.source && n != s.dest) relays.push_back(n);
    }
    std::shuffle(relays.begin(), relays.end(), rng);
    std::uniform_int_distribution<std::size_t> how_many(0, 2);
    const std::size_t k = std::min(how_many(rng), relays.size());
    s.malicious.insert(relays.begin(), relays.begin() + static_cast<std::ptrdiff_t>(k));

    const Report r = run_scenario(s);
    std::set<NodeId> seen;
    for (const auto& p : r.packets) {
      for (const auto& a : p.attempts) {
        for (const auto& ex : seen) CHECK_FALSE(a.route.contains(ex));
        for (const auto& ev : a.detections) {
          CHECK(a.route.contains(ev.node));
          CHECK(s.malicious.count(ev.node) == 1);
          seen.insert(ev.node);
        }
      }
    }
    CHECK(seen == r.excluded);
    if (r.outcome == RunOutcome::Delivered) CHECK(r.metrics.packets_delivered == s.packet_count);
  }
}
