#include "sftp/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sftp/error.hpp"

namespace sftp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(Errc::InvalidScenario, "field '" + field + "': " + what);
}

std::string require_label(const json& v, const std::string& field) {
  if (!v.is_string()) field_error(field, "expected a node label string");
  return v.get<std::string>();
}

std::int64_t require_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    field_error(field, "integer out of range");
  }
  return v.get<std::int64_t>();
}

std::uint64_t require_count(const json& v, const std::string& field) {
  const std::int64_t n = require_int(v, field);
  if (n < 0) field_error(field, "must be non-negative");
  return static_cast<std::uint64_t>(n);
}

std::set<NodeId> label_set(const json& v, const std::string& field) {
  if (!v.is_array()) field_error(field, "expected an array of node labels");
  std::set<NodeId> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.insert(require_label(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <class Labels>
ordered_json sorted_labels(const Labels& labels) {
  std::vector<NodeId> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end(), LabelLess{});
  return out;
}

ordered_json matrix_json(const WeightedAdjacency& adj) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < adj.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < adj.size(); ++j) row.push_back(adj.weight(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json optional_json(const auto& value) {
  if (value) return ordered_json(*value);
  return nullptr;
}

ordered_json route_json(const Route& r) {
  ordered_json j;
  j["hops"] = r.hops;
  j["total_delay"] = r.total_delay;
  return j;
}

ordered_json detection_json(const DetectionEvent& e) {
  ordered_json j;
  j["node"] = e.node;
  j["kind"] = to_string(e.kind);
  j["hop"] = e.hop;
  j["sent_at"] = e.sent_at;
  j["observed_at"] = e.observed_at;
  j["expected"] = e.expected;
  return j;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(Errc::InvalidScenario, line_column(text, e.byte) + ": " + what);
  }
  if (!doc.is_object()) throw Error(Errc::InvalidScenario, "scenario must be a JSON object");

  static const std::set<std::string> known = {
      "nodes", "edges", "threshold", "source", "dest", "failed", "malicious", "delayers",
      "packet_count", "payload_size", "collision_mode", "seed"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) field_error(key, "unknown field");
  }
  for (const char* key : {"nodes", "edges", "threshold", "source", "dest"}) {
    if (!doc.contains(key)) field_error(key, "missing required field");
  }

  Scenario s;
  const json& nodes = doc["nodes"];
  if (!nodes.is_array()) field_error("nodes", "expected an array of node labels");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.nodes.push_back(require_label(nodes[i], "nodes[" + std::to_string(i) + "]"));
  }

  const json& edges = doc["edges"];
  if (!edges.is_array()) field_error("edges", "expected an array of [u, v, w] triples");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) field_error(field, "expected an [u, v, w] triple");
    s.edges.push_back({require_label(e[0], field + "[0]"), require_label(e[1], field + "[1]"),
                       require_int(e[2], field + "[2]")});
  }

  s.threshold = require_int(doc["threshold"], "threshold");
  s.source = require_label(doc["source"], "source");
  s.dest = require_label(doc["dest"], "dest");
  if (doc.contains("failed")) s.failed = label_set(doc["failed"], "failed");
  if (doc.contains("malicious")) s.malicious = label_set(doc["malicious"], "malicious");
  if (doc.contains("delayers")) {
    const json& d = doc["delayers"];
    if (!d.is_object()) field_error("delayers", "expected an object of label -> multiplier");
    for (const auto& [node, factor] : d.items()) {
      const std::int64_t f = require_int(factor, "delayers." + node);
      if (f < 1 || f > std::numeric_limits<std::uint32_t>::max()) {
        field_error("delayers." + node, "multiplier must be a positive integer");
      }
      s.delayers[node] = static_cast<std::uint32_t>(f);
    }
  }
  if (doc.contains("packet_count")) s.packet_count = require_count(doc["packet_count"], "packet_count");
  if (doc.contains("payload_size")) s.payload_size = require_count(doc["payload_size"], "payload_size");
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      field_error("seed", "expected a non-negative integer");
    }
    s.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("collision_mode")) {
    const json& c = doc["collision_mode"];
    if (c.is_string() && c.get<std::string>() == "off") {
      s.collision = {};
    } else if (c.is_object() && c.size() == 1 && c.contains("on") && c["on"].is_number()) {
      const double p = c["on"].get<double>();
      if (!(p >= 0.0 && p <= 1.0)) field_error("collision_mode.on", "probability must lie in [0, 1]");
      s.collision = {true, p};
    } else {
      field_error("collision_mode", "expected \"off\" or {\"on\": p}");
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading scenario file '" + path.string() + "'");
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

ordered_json scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["nodes"] = s.nodes;
  ordered_json edges = ordered_json::array();
  for (const auto& e : s.edges) edges.push_back(ordered_json::array({e.u, e.v, e.weight}));
  j["edges"] = std::move(edges);
  j["threshold"] = s.threshold;
  j["source"] = s.source;
  j["dest"] = s.dest;
  j["failed"] = sorted_labels(s.failed);
  j["malicious"] = sorted_labels(s.malicious);
  ordered_json delayers = ordered_json::object();
  for (const auto& [node, factor] : s.delayers) delayers[node] = factor;
  j["delayers"] = std::move(delayers);
  j["packet_count"] = s.packet_count;
  j["payload_size"] = s.payload_size;
  if (s.collision.enabled) {
    j["collision_mode"] = ordered_json{{"on", s.collision.probability}};
  } else {
    j["collision_mode"] = "off";
  }
  j["seed"] = s.seed;
  return j;
}

ordered_json report_to_json(const Report& r) {
  ordered_json j;
  j["source"] = r.source;
  j["dest"] = r.dest;
  j["seed"] = r.seed;
  j["outcome"] = to_string(r.outcome);

  ordered_json coverage;
  coverage["nodes"] = r.nodes;
  coverage["threshold"] = r.coverage.threshold;
  coverage["matrix"] = matrix_json(r.coverage.base);
  j["coverage"] = std::move(coverage);
  j["components"] = r.components;
  j["unreachable"] = r.unreachable;

  ordered_json statuses = ordered_json::array();
  for (const auto& s : r.ping.statuses) {
    statuses.push_back({{"node", s.node}, {"state", to_string(s.state)}, {"resolved_at", s.resolved_at}});
  }
  j["statuses"] = std::move(statuses);
  ordered_json ping_log = ordered_json::array();
  for (const auto& p : r.ping.log) {
    ping_log.push_back({{"tick", p.tick}, {"event", to_string(p.kind)}, {"node", p.node}});
  }
  j["ping_log"] = std::move(ping_log);

  ordered_json table = ordered_json::array();
  for (const auto& e : r.table.entries()) {
    table.push_back({{"node", e.node}, {"links", e.links}, {"priority", e.priority}});
  }
  j["connection_table"] = std::move(table);
  ordered_json repaired = ordered_json::array();
  for (const auto& e : r.repaired) {
    repaired.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}, {"bridged", e.bridged}});
  }
  j["repaired_edges"] = std::move(repaired);
  j["routing_matrix"] = matrix_json(r.routing_graph.base);

  if (r.discovery.found()) {
    j["primary_route"] = r.discovery.primary.hops;
    j["primary_delay"] = r.discovery.primary.total_delay;
  } else {
    j["primary_route"] = nullptr;
    j["primary_delay"] = nullptr;
  }
  ordered_json rrep;
  rrep["request_id"] = r.discovery.request.request_id;
  rrep["route"] = r.discovery.reply.route;
  rrep["completed_at"] = optional_json(r.discovery.reply_completed);
  j["rrep"] = std::move(rrep);
  ordered_json recorded = ordered_json::array();
  for (const auto& route : r.discovery.recorded) recorded.push_back(route_json(route));
  j["recorded_routes"] = std::move(recorded);

  ordered_json detections = ordered_json::array();
  for (const auto& d : r.detections) {
    ordered_json e;
    e["sequence"] = d.sequence;
    e.update(detection_json(d.event));
    detections.push_back(std::move(e));
  }
  j["detection_events"] = std::move(detections);
  j["excluded"] = sorted_labels(r.excluded);

  ordered_json packets = ordered_json::array();
  for (const auto& p : r.packets) {
    ordered_json pj;
    pj["sequence"] = p.sequence;
    pj["payload_size"] = p.payload_size;
    pj["delivered"] = p.delivered;
    pj["end_to_end_delay"] = optional_json(p.end_to_end_delay);
    pj["failure"] = p.failure ? ordered_json(to_string(*p.failure)) : ordered_json(nullptr);
    ordered_json attempts = ordered_json::array();
    for (const auto& a : p.attempts) {
      ordered_json aj;
      aj["route"] = a.route.hops;
      aj["status"] = a.status == DeliveryStatus::Delivered ? "Delivered" : "DroppedAt";
      aj["sent_at"] = a.sent_at;
      aj["finished_at"] = a.finished_at;
      aj["hop_timestamps"] = a.hop_timestamps;
      aj["end_to_end_delay"] = optional_json(a.end_to_end_delay);
      ordered_json events = ordered_json::array();
      for (const auto& e : a.detections) events.push_back(detection_json(e));
      aj["detections"] = std::move(events);
      attempts.push_back(std::move(aj));
    }
    pj["attempts"] = std::move(attempts);
    packets.push_back(std::move(pj));
  }
  j["packets"] = std::move(packets);

  const Metrics& m = r.metrics;
  ordered_json metrics;
  metrics["packets_sent"] = m.packets_sent;
  metrics["packets_delivered"] = m.packets_delivered;
  metrics["transmissions"] = m.transmissions;
  metrics["retransmissions"] = m.retransmissions;
  metrics["clock"] = m.clock;
  metrics["end_to_end_delay"] = optional_json(m.end_to_end_delay);
  metrics["packet_delivery_rate"] = optional_json(m.packet_delivery_rate);
  metrics["throughput"] = m.throughput;
  j["metrics"] = std::move(metrics);

  ordered_json phases;
  phases["ping"] = {r.ping_phase.start, r.ping_phase.end};
  phases["discovery"] = {r.discovery_phase.start, r.discovery_phase.end};
  phases["data"] = {r.data_phase.start, r.data_phase.end};
  j["phases"] = std::move(phases);

  ordered_json trace = ordered_json::array();
  for (const auto& t : r.discovery.trace) {
    ordered_json tj;
    tj["tick"] = t.tick;
    tj["action"] = to_string(t.action);
    tj["node"] = t.node;
    tj["peers"] = t.peers;
    tj["routes"] = t.routes;
    trace.push_back(std::move(tj));
  }
  j["flooding_trace"] = std::move(trace);
  return j;
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace sftp
