#pragma once

#include <string>

#include "sftp/routing.hpp"
#include "sftp/topology.hpp"

namespace sftp {

/**
 * Renders a discovery's flooding trace as Graphviz, one digraph per tick
 * with activity. Each node carries an xlabel with its state at that tick:
 * "broadcast" (transmitting now), "forwarded" (transmitted earlier),
 * "suppressed" (ignored a late copy now), "collision" or "record"
 * (destination storing routes). Broadcast edges are labelled with their
 * link weight; RREP hops are dashed.
 */
std::string flood_trace_to_dot(const CoverageGraph& graph, const Discovery& discovery);

}  // namespace sftp
