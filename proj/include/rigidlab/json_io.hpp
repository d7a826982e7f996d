#pragma once

#include <string>

#include <json.hpp>

#include "rigidlab/closure.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/partition.hpp"
#include "rigidlab/regularity.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

using Json = nlohmann::json;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {d, n, rank, target, verdict, trials, error_bound, seed, prime}
Json to_json(const RigidityVerdict& v);
Json to_json(const GrowthResult& r);
Json to_json(const GSigmaAuditRow& row);
Json to_json(const GSigmaTrace& trace);
Json to_json(const DpuzReport& report);
Json to_json(const ExactPipelineTrace& trace);
Json to_json(const Coloring& c);
Json to_json(const StrongPartitionCertificate& cert);
Json to_json(const ColoringDistribution& dist);
Json to_json(const BipartiteRefinementState& st);
Json to_json(const ExpansionStats& st, bool include_out_edges = false);
Json to_json(const Rational& r);
Json to_json(const RegularityVerdict& v);
Json to_json(const SuperRegularTriple& t);

/// Two-column "vertex,class" CSV with a header row.
std::string coloring_csv(const Coloring& c);

}  // namespace rigidlab
