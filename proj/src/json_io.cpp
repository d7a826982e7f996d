#include "rigidlab/json_io.hpp"

#include <sstream>

namespace rigidlab {

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (Edge e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.n()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) { return parse_graph(j.dump(), GraphFormat::json); }

Json to_json(const RigidityVerdict& v) {
  return {{"d", v.d},
          {"n", v.n},
          {"rank", v.estimated_rank},
          {"target", v.target_rank},
          {"verdict", verdict_name(v.verdict)},
          {"trials", v.trials},
          {"error_bound", v.error_bound},
          {"seed", v.seed},
          {"prime", v.prime}};
}

Json to_json(const GrowthResult& r) {
  return {{"rigid_set", r.rigid_set},
          {"attachment_order", r.attachment_order},
          {"seed_verdict", to_json(r.seed_verdict)},
          {"spans_graph", r.spans_graph}};
}

Json to_json(const GSigmaAuditRow& row) {
  return {{"sigma_index", row.sigma_index},
          {"edge_total", row.edge_total},
          {"bound", row.bound},
          {"violated", row.violated}};
}

Json to_json(const GSigmaTrace& trace) {
  Json records = Json::array();
  for (const auto& r : trace.records)
    records.push_back({{"vertex", r.vertex},
                       {"N_sigma", r.earlier_neighbors},
                       {"deg_sigma", r.earlier_degree},
                       {"rule", sigma_rule_name(r.rule)},
                       {"chosen", r.chosen}});
  return {{"sigma", trace.sigma}, {"records", records}, {"edge_total", trace.edge_total},
          {"g_sigma", graph_to_json(trace.g_sigma)}};
}

Json to_json(const DpuzReport& report) {
  Json vertices = Json::array();
  for (const auto& v : report.vertices)
    vertices.push_back({{"vertex", v.vertex},
                        {"state", dpuz_state_name(v.state)},
                        {"maximal_cliques", v.maximal_cliques},
                        {"max_intersection", v.max_intersection}});
  return {{"d", report.d},
          {"min_degree_ok", report.min_degree_ok},
          {"no_clique_neighborhood", report.no_clique_neighborhood},
          {"small_intersections", report.small_intersections},
          {"capped_vertices", report.capped_vertices},
          {"hypotheses_hold", report.hypotheses_hold()},
          {"vertices", vertices}};
}

Json to_json(const ExactPipelineTrace& t) {
  Json j = {{"n", t.n},
            {"d", t.d},
            {"min_degree", t.min_degree},
            {"hypotheses_hold", t.hypotheses_hold},
            {"closure_edges", t.closure_edges},
            {"closure_error_bound", t.closure_error_bound},
            {"simplicial_vertex", nullptr},
            {"clique", t.clique},
            {"clique_size", t.clique.size()},
            {"absorption_order", t.absorption_order},
            {"final_clique_size", t.final_clique_size},
            {"verdict", t.verdict()},
            {"closure_violation", t.closure_violation},
            {"cross_check", to_json(t.cross_check)},
            {"flagged", t.flagged}};
  if (t.simplicial_vertex) j["simplicial_vertex"] = *t.simplicial_vertex;
  if (t.closure_violation) j["closure_violation_detail"] = t.closure_violation_detail;
  return j;
}

Json to_json(const Coloring& c) { return {{"k", c.k}, {"assignment", c.assignment}}; }

Json to_json(const StrongPartitionCertificate& cert) {
  Json pairs = Json::array();
  for (const auto& p : cert.verified_pairs) pairs.push_back({{"i", p.i}, {"j", p.j}, {"connected", p.connected}});
  Json j = {{"partition", to_json(cert.partition)}, {"verified_pairs", pairs}, {"overall", cert.overall}};
  if (!cert.diagnostic.empty()) j["diagnostic"] = cert.diagnostic;
  return j;
}

Json to_json(const ColoringDistribution& dist) {
  return {{"d", dist.d},
          {"degree_threshold", dist.degree_threshold},
          {"L", dist.high_degree},
          {"ell", dist.ell},
          {"d_prime", dist.d_prime},
          {"L_prime", dist.pinned},
          {"q", dist.q}};
}

Json to_json(const BipartiteRefinementState& st) {
  const auto& b = st.betas;
  return {{"original_a", st.original_a},
          {"original_b", st.original_b},
          {"betas",
           {{"beta", b.beta},
            {"beta_prime", b.beta_prime},
            {"beta_circ", b.beta_circ},
            {"beta_0", b.beta_0},
            {"beta_1", b.beta_1},
            {"beta_star", b.beta_star}}},
          {"moves", st.moves},
          {"move_cap", st.move_cap},
          {"move_budget", st.move_budget},
          {"cap_hit", st.cap_hit},
          {"a", st.a},
          {"b", st.b},
          {"exceptional_a", st.exceptional_a},
          {"exceptional_b", st.exceptional_b}};
}

Json to_json(const ExpansionStats& st, bool include_out_edges) {
  Json j = {{"n", st.n},
            {"K", st.k},
            {"d", st.d},
            {"trials", st.trials},
            {"success_count", st.success_count},
            {"digraph_success_count", st.digraph_success_count},
            {"empirical_rate", st.empirical_rate},
            {"paper_bound", st.paper_bound},
            {"hypothesis_ok", st.hypothesis_ok},
            {"mean_neighborhood", st.mean_neighborhood}};
  if (include_out_edges) j["out_edges"] = st.out_edges;
  return j;
}

Json to_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}, {"value", r.value()}}; }

Json to_json(const RegularityVerdict& v) {
  Json j = {{"a", v.a},
            {"b", v.b},
            {"density", to_json(v.density)},
            {"criterion", criterion_name(v.criterion)},
            {"mode", v.mode == CheckMode::exhaustive ? "exhaustive" : "sampled"},
            {"verdict", outcome_name(v.outcome)},
            {"epsilon", v.epsilon},
            {"delta", v.delta},
            {"reason", v.reason}};
  if (v.mode == CheckMode::sampled) j["samples"] = v.samples;
  if (v.outcome == PairOutcome::fail && !v.witness_x.empty()) {
    j["witness"] = {{"X", v.witness_x}, {"Y", v.witness_y}};
    if (v.witness_density) j["witness"]["density"] = to_json(*v.witness_density);
  }
  if (v.degree_violation) j["degree_violation"] = *v.degree_violation;
  return j;
}

Json to_json(const SuperRegularTriple& t) {
  Json removed = Json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) removed.push_back({{"i", i}, {"j", j}, {"vertices", t.removed[i][j]}});
  Json failures = Json::array();
  for (auto [v, side] : t.degree_failures) failures.push_back({{"vertex", v}, {"side", side}});
  return {{"m", t.m},
          {"m_prime", t.m_prime},
          {"epsilon", t.epsilon},
          {"delta", t.delta},
          {"removed", removed},
          {"trimmed", t.trimmed},
          {"size_bound_holds", t.size_bound_holds},
          {"degree_condition_holds", t.degree_condition_holds},
          {"degree_failures", failures}};
}

std::string coloring_csv(const Coloring& c) {
  std::ostringstream out;
  out << "vertex,class\n";
  for (std::size_t v = 0; v < c.assignment.size(); ++v) out << v << ',' << c.assignment[v] << '\n';
  return out.str();
}

}  // namespace rigidlab
