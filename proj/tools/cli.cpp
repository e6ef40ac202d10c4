#include "cli.hpp"

#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sftp/dot_trace.hpp"
#include "sftp/error.hpp"
#include "sftp/json_io.hpp"
#include "sftp/simulator.hpp"
#include "sftp/text_format.hpp"

namespace sftp::cli {

namespace {

struct Options {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string trace;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--scenario", opts.scenario, "Scenario JSON file")->required();
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
  cmd->add_option("--out", opts.out, "Write output to this file instead of stdout");
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

// Writes to --out when given, otherwise to stdout.
void emit(const Options& opts, Streams& io, const std::string& text) {
  if (opts.out.empty()) {
    io.out << text;
  } else {
    write_file(opts.out, text);
  }
}

Scenario load(const Options& opts) {
  Scenario s = load_scenario(opts.scenario);
  if (opts.seed) s.seed = *opts.seed;
  validate(s);
  return s;
}

CoverageGraph coverage_of(const Scenario& s) {
  return apply_threshold(build_adjacency(s.nodes, s.edges), s.threshold);
}

int cmd_threshold(const Options& opts, Streams& io) {
  const Scenario s = load(opts);
  const CoverageGraph g = coverage_of(s);
  if (opts.format == "json") {
    nlohmann::ordered_json doc;
    doc["nodes"] = g.base.labels();
    doc["threshold"] = g.threshold;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g.base.weight(i, j));
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    emit(opts, io, dump_json(doc));
  } else {
    emit(opts, io, format_matrix(g.base));
  }
  return kOk;
}

int cmd_table(const Options& opts, Streams& io) {
  const Scenario s = load(opts);
  const CoverageGraph g = coverage_of(s);
  const ConnectionTable table = build_connection_table(g, ping_sweep(g, s.failed, s.source).active());
  if (opts.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& e : table.entries()) {
      rows.push_back({{"node", e.node}, {"links", e.links}, {"priority", e.priority}});
    }
    emit(opts, io, dump_json(rows));
  } else {
    emit(opts, io, format_connection_table(table, s.nodes));
  }
  return kOk;
}

int cmd_route(const Options& opts, Streams& io) {
  const Scenario s = load(opts);
  const Report r = run_scenario(s, RunPhases::ThroughDiscovery);
  if (!opts.trace.empty()) write_file(opts.trace, flood_trace_to_dot(r.routing_graph, r.discovery));

  if (opts.format == "json") {
    nlohmann::ordered_json doc;
    if (r.discovery.found()) {
      doc["primary"] = {{"hops", r.discovery.primary.hops}, {"total_delay", r.discovery.primary.total_delay}};
    } else {
      doc["primary"] = nullptr;
    }
    nlohmann::ordered_json recorded = nlohmann::ordered_json::array();
    for (const auto& route : r.discovery.recorded) {
      recorded.push_back({{"hops", route.hops}, {"total_delay", route.total_delay}});
    }
    doc["recorded"] = std::move(recorded);
    emit(opts, io, dump_json(doc));
  } else {
    std::ostringstream text;
    if (r.discovery.found()) {
      text << "primary: " << format_hops(r.discovery.primary.hops) << " delay "
           << r.discovery.primary.total_delay << '\n';
      for (const auto& route : r.discovery.recorded) {
        text << "recorded: " << format_hops(route.hops) << " delay " << route.total_delay << '\n';
      }
    } else {
      text << "no route from " << s.source << " to " << s.dest << '\n';
    }
    emit(opts, io, text.str());
  }
  return r.discovery.found() ? kOk : kUndeliverable;
}

int cmd_run(const Options& opts, Streams& io) {
  const Scenario s = load(opts);
  const Report r = run_scenario(s);
  const std::string report = dump_json(report_to_json(r));
  if (!opts.out.empty()) write_file(opts.out, report);
  if (!opts.trace.empty()) write_file(opts.trace, flood_trace_to_dot(r.routing_graph, r.discovery));
  if (opts.format == "json") {
    if (opts.out.empty()) io.out << report;
  } else {
    io.out << format_report_text(r, io.color);
  }
  return r.outcome == RunOutcome::Delivered ? kOk : kUndeliverable;
}

}  // namespace

int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Deterministic MANET simulator: coverage thresholding, fault-tolerant repair, "
               "route discovery with blackhole detection"};
  app.name("sftp-sim");
  app.require_subcommand(1);

  Options opts;
  CLI::App* threshold = app.add_subcommand("threshold", "Print the coverage matrix after thresholding");
  CLI::App* table = app.add_subcommand("table", "Print the node connection table");
  CLI::App* route = app.add_subcommand("route", "Run route discovery and print primary + recorded routes");
  CLI::App* run_cmd = app.add_subcommand("run", "Run the full scenario and write the report");
  for (CLI::App* cmd : {threshold, table, route, run_cmd}) add_common(cmd, opts);
  for (CLI::App* cmd : {route, run_cmd}) {
    cmd->add_option("--trace", opts.trace, "Write the flooding trace as Graphviz DOT");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto used = app.get_subcommands();
    io.out << (used.empty() ? app.help() : used.front()->help());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (threshold->parsed()) return cmd_threshold(opts, io);
    if (table->parsed()) return cmd_table(opts, io);
    if (route->parsed()) return cmd_route(opts, io);
    return cmd_run(opts, io);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return e.code() == Errc::NoRoute || e.code() == Errc::NoSafeRoute ? kUndeliverable : kInvalidInput;
  }
}

}  // namespace sftp::cli
