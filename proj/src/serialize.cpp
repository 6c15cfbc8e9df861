#include "crk/serialize.hpp"

namespace crk {

namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json to_json(const VertexSet& s) { return Json(std::vector<Vertex>(s.begin(), s.end())); }

Json to_json(const Bipartition& b) {
  return {{"block1", to_json(b.block1)},
          {"block2", to_json(b.block2)},
          {"ground_size", b.ground_size()},
          {"balanced", b.balanced()}};
}

Json to_json(const SampleReport& r, std::string_view model) {
  return {{"model", model},
          {"n", r.graph.num_vertices()},
          {"m", r.graph.num_edges()},
          {"max_degree", r.graph.max_degree()},
          {"regular_degree", opt(r.graph.regular_degree())},
          {"seed", r.seed},
          {"rejected_attempts", r.rejected_attempts},
          {"collapsed_multiedges", r.collapsed_multiedges},
          {"removed_loops", r.removed_loops}};
}

Json to_json(const SpectralSummary& s) {
  Json j = {{"n", s.n},
            {"lambda1", s.lambda1},
            {"mu", s.mu},
            {"mu_safe", s.mu_safe()},
            {"method", s.method == SpectralMethod::Dense ? "DENSE" : "ITERATIVE"},
            {"residual", s.residual},
            {"connected", s.connected},
            {"matvecs", s.matvecs}};
  j["full_spectrum"] = s.full_spectrum.empty() ? Json(nullptr) : Json(s.full_spectrum);
  j["warnings"] = s.warnings;
  return j;
}

Json to_json(const BisectionResult& r) {
  return {{"partition", to_json(r.partition)}, {"cut", r.cut}, {"exact", r.exact}};
}

Json to_json(const WitnessChain& c) {
  Json levels = Json::array();
  for (const WitnessLevel& l : c.levels)
    levels.push_back({{"edge_class", l.edge_class},
                      {"domain_size", l.domain.size()},
                      {"bisection", to_json(l.bisection)},
                      {"width", l.width}});
  Json nested = Json::array();
  for (const VertexSet& y : c.nested)
    nested.push_back(to_json(y));
  Json pre = Json::array();
  for (const auto& [x, y] : c.pre_trim_sizes)
    pre.push_back({x, y});
  return {{"k", c.k},
          {"levels", levels},
          {"y_sets", nested},
          {"pre_trim_sizes", pre},
          {"a", to_json(c.a)},
          {"b", to_json(c.b)},
          {"e_ab", c.e_ab},
          {"width_sum", c.width_sum()},
          {"holds", c.e_ab <= c.width_sum()}};
}

Json to_json(const Certificate& c) {
  return {{"n", c.n},
          {"d", c.d},
          {"k", c.k},
          {"mu_safe", c.mu_safe},
          {"alpha", c.alpha},
          {"density_lb", c.density_lb},
          {"width_lb", c.width_lb},
          {"degree_term", c.degree_term},
          {"crossing_lb", c.crossing_lb},
          {"degenerate", c.degenerate},
          {"constants_ok", c.constants_ok},
          {"alpha_eff", c.alpha_eff},
          {"warnings", c.warnings},
          {"transcript", c.transcript()}};
}

Json to_json(const DensityEstimate& e) {
  return {{"kind", "ESTIMATE"},
          {"note", "not a certificate: the graph is not regular"},
          {"n", e.n},
          {"k", e.k},
          {"t", e.t},
          {"p_hat", e.p_hat},
          {"min_pair_density", e.min_pair_density},
          {"exhaustive", e.exhaustive},
          {"sampled_pairs", e.sampled_pairs},
          {"threshold_binomial", e.threshold_binomial},
          {"threshold_square", e.threshold_square},
          {"meets_binomial", static_cast<double>(e.min_pair_density) >= e.threshold_binomial},
          {"meets_square", static_cast<double>(e.min_pair_density) >= e.threshold_square}};
}

Json to_json(const TrialRecord& r, bool timing) {
  Json j = {{"model", r.model},
            {"n", r.n},
            {"d", opt(r.d)},
            {"p", opt(r.p)},
            {"k", r.k},
            {"trial", r.trial},
            {"seed", r.seed},
            {"edges", r.edges},
            {"max_degree", r.max_degree},
            {"collapsed_multiedges", r.collapsed_multiedges},
            {"removed_loops", r.removed_loops},
            {"rejected_attempts", r.rejected_attempts},
            {"regular", r.regular},
            {"connected", r.connected},
            {"mu_safe", opt(r.mu_safe)},
            {"friedman_ok", opt(r.friedman_ok)},
            {"max_degree_ok", opt(r.max_degree_ok)},
            {"alpha", opt(r.alpha)},
            {"density_lb", opt(r.density_lb)},
            {"width_lb", opt(r.width_lb)},
            {"degree_term", opt(r.degree_term)},
            {"crossing_lb", opt(r.crossing_lb)},
            {"degenerate", opt(r.degenerate)},
            {"constants_ok", opt(r.constants_ok)},
            {"certified", opt(r.certified)},
            {"witness_eab", opt(r.witness_eab)},
            {"witness_width_sum", opt(r.witness_width_sum)},
            {"status", r.status}};
  if (timing)
    j["wall_time_s"] = opt(r.wall_time_s);
  return j;
}

Json to_json(const ScalingFit& f) {
  return {{"exponent", f.exponent},
          {"intercept", f.intercept},
          {"r2", f.r2},
          {"used", f.used},
          {"excluded", f.excluded}};
}

Json to_json(const CellRate& r) {
  return {{"model", r.model}, {"n", r.n},          {"d", opt(r.d)},
          {"p", opt(r.p)},    {"k", r.k},          {"trials", r.trials},
          {"hits", r.hits},   {"rate", r.rate}};
}

} // namespace crk
