#include "sftp/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <vector>

#include "sftp/error.hpp"

namespace sftp {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(Errc::InvalidScenario, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::string paint(std::string_view text, const char* code, bool color) {
  if (!color) return std::string(text);
  return std::string("\x1b[") + code + "m" + std::string(text) + "\x1b[0m";
}

}  // namespace

std::string format_matrix(const WeightedAdjacency& adj) {
  std::ostringstream out;
  for (const auto& label : adj.labels()) out << '\t' << label;
  out << '\n';
  for (std::size_t i = 0; i < adj.size(); ++i) {
    out << adj.label(i);
    for (std::size_t j = 0; j < adj.size(); ++j) out << '\t' << adj.weight(i, j);
    out << '\n';
  }
  return out.str();
}

WeightedAdjacency parse_matrix(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) return WeightedAdjacency{};
  const auto header = split_fields(lines.front());
  std::vector<NodeId> labels(header.begin(), header.end());
  if (lines.size() != labels.size() + 1) {
    throw Error(Errc::InvalidScenario, "matrix has " + std::to_string(lines.size() - 1) + " rows for " +
                                           std::to_string(labels.size()) + " columns");
  }
  WeightedAdjacency adj(labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto fields = split_fields(lines[i + 1]);
    if (fields.size() != labels.size() + 1 || fields.front() != labels[i]) {
      throw Error(Errc::InvalidScenario, "malformed matrix row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto w = parse_number<Weight>(fields[j + 1], "weight");
      if (i == j) {
        if (w != 0) throw Error(Errc::SelfLoop, "nonzero diagonal at '" + labels[i] + "'");
        continue;
      }
      if (j < i) {
        if (adj.weight(i, j) != w) throw Error(Errc::InvalidScenario, "matrix is not symmetric");
        continue;
      }
      adj.set_link(i, j, w);
    }
  }
  return adj;
}

std::string format_connection_table(const ConnectionTable& table, std::span<const NodeId> order) {
  static constexpr std::string_view kNode = "Node";
  static constexpr std::string_view kLinks = "Communication Links";
  std::size_t node_width = kNode.size();
  for (const auto& e : table.entries()) node_width = std::max(node_width, e.node.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(node_width + 2)) << kNode
      << std::setw(static_cast<int>(kLinks.size() + 2)) << kLinks << "Priority\n";
  for (const auto& node : order) {
    const ConnectionEntry* e = table.find(node);
    if (!e) continue;
    out << std::setw(static_cast<int>(node_width + 2)) << e->node
        << std::setw(static_cast<int>(kLinks.size() + 2)) << e->links << e->priority << '\n';
  }
  return out.str();
}

ConnectionTable parse_connection_table(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || split_fields(lines.front()).size() != 4) {
    throw Error(Errc::InvalidScenario, "missing connection table header");
  }
  std::vector<ConnectionEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3) throw Error(Errc::InvalidScenario, "malformed table row " + std::to_string(i));
    entries.push_back({std::string(fields[0]), parse_number<std::size_t>(fields[1], "link count"),
                       parse_number<std::size_t>(fields[2], "priority")});
  }
  std::sort(entries.begin(), entries.end(),
            [](const ConnectionEntry& a, const ConnectionEntry& b) { return a.priority < b.priority; });
  return ConnectionTable(std::move(entries));
}

std::string format_hops(std::span<const NodeId> hops) {
  std::string out = "[";
  for (std::size_t i = 0; i < hops.size(); ++i) {
    if (i) out += ", ";
    out += hops[i];
  }
  return out + "]";
}

std::string format_report_text(const Report& r, bool color) {
  std::ostringstream out;
  out << "outcome: ";
  out << paint(to_string(r.outcome), r.outcome == RunOutcome::Delivered ? "32" : "31", color) << '\n';
  if (!r.unreachable.empty()) out << "unreachable: " << format_hops(r.unreachable) << '\n';
  for (const auto& s : r.ping.statuses) {
    if (s.state == NodeState::Inactive) out << "inactive: " << s.node << '\n';
  }
  for (const auto& e : r.repaired) {
    out << "repaired: " << e.u << " - " << e.v << " (weight " << e.weight << ", around " << e.bridged << ")\n";
  }
  if (r.discovery.found()) {
    out << "primary: " << format_hops(r.discovery.primary.hops) << " delay " << r.discovery.primary.total_delay
        << '\n';
  }
  for (const auto& route : r.discovery.recorded) {
    out << "recorded: " << format_hops(route.hops) << " delay " << route.total_delay << '\n';
  }
  for (const auto& p : r.packets) {
    for (const auto& a : p.attempts) {
      out << "packet " << p.sequence << ": " << format_hops(a.route.hops) << ' ';
      if (a.status == DeliveryStatus::Delivered) {
        out << paint("delivered", "32", color) << " in " << a.end_to_end_delay.value_or(0) << " ticks";
      } else {
        out << paint("DroppedAt(" + a.detections.front().node + ")", "31", color);
      }
      out << '\n';
    }
    if (p.failure) out << "packet " << p.sequence << ": " << paint(to_string(*p.failure), "31", color) << '\n';
  }
  for (const auto& d : r.detections) {
    out << "detected: " << to_string(d.event.kind) << '(' << d.event.node << ")\n";
  }
  const Metrics& m = r.metrics;
  out << "end_to_end_delay: ";
  if (m.end_to_end_delay) out << *m.end_to_end_delay; else out << "n/a";
  out << "\npacket_delivery_rate: ";
  if (m.packet_delivery_rate) out << *m.packet_delivery_rate; else out << "n/a";
  out << "\nthroughput: " << m.throughput << " bytes/tick\n";
  out << "transmissions: " << m.transmissions << " (retransmissions " << m.retransmissions << ")\n";
  return out.str();
}

}  // namespace sftp
