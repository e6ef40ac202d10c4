#include "sftp/dot_trace.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace sftp {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string flood_trace_to_dot(const CoverageGraph& graph, const Discovery& discovery) {
  std::set<NodeId> involved;
  std::map<Tick, std::vector<const FloodRecord*>> by_tick;
  for (const auto& rec : discovery.trace) {
    involved.insert(rec.node);
    involved.insert(rec.peers.begin(), rec.peers.end());
    by_tick[rec.tick].push_back(&rec);
  }
  std::vector<NodeId> nodes;
  for (const auto& label : graph.base.labels()) {
    if (involved.count(label)) nodes.push_back(label);
  }

  std::ostringstream out;
  std::set<NodeId> forwarded;
  for (const auto& [tick, records] : by_tick) {
    std::map<NodeId, std::string> state;
    for (const auto& n : forwarded) state[n] = "forwarded";
    for (const FloodRecord* rec : records) {
      switch (rec->action) {
        case FloodAction::Broadcast: state[rec->node] = "broadcast"; break;
        case FloodAction::Suppress:
          if (!state.count(rec->node) || state[rec->node] == "forwarded") state[rec->node] = "suppressed";
          break;
        case FloodAction::Collision: state[rec->node] = "collision"; break;
        case FloodAction::Record: state[rec->node] = "record"; break;
        case FloodAction::Receive:
        case FloodAction::Reply: break;
      }
    }

    out << "digraph " << quoted("tick_" + std::to_string(tick)) << " {\n";
    out << "  label=" << quoted("tick " + std::to_string(tick)) << ";\n";
    out << "  node [shape=circle];\n";
    for (const auto& n : nodes) {
      out << "  " << quoted(n) << " [";
      if (n == discovery.request.dest) out << "shape=doublecircle, ";
      if (n == discovery.request.source) out << "penwidth=2, ";
      const auto it = state.find(n);
      const std::string s = it == state.end() ? "idle" : it->second;
      if (s == "broadcast") out << "style=filled, fillcolor=orange, ";
      else if (s == "forwarded") out << "style=filled, fillcolor=lightgray, ";
      else if (s == "suppressed") out << "style=dashed, ";
      else if (s == "collision") out << "style=dashed, color=red, ";
      else if (s == "record") out << "style=filled, fillcolor=palegreen, ";
      out << "xlabel=" << quoted(s) << "];\n";
    }
    for (const FloodRecord* rec : records) {
      if (rec->action == FloodAction::Broadcast) {
        for (const auto& peer : rec->peers) {
          out << "  " << quoted(rec->node) << " -> " << quoted(peer)
              << " [label=" << quoted(std::to_string(graph.base.weight(rec->node, peer))) << "];\n";
        }
      } else if (rec->action == FloodAction::Reply) {
        out << "  " << quoted(rec->peers.front()) << " -> " << quoted(rec->node)
            << " [style=dashed, color=blue, label=\"RREP\"];\n";
      }
    }
    out << "}\n";

    for (const FloodRecord* rec : records) {
      if (rec->action == FloodAction::Broadcast) forwarded.insert(rec->node);
    }
  }
  return out.str();
}

}  // namespace sftp
