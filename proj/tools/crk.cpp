// crk: sampling, spectra, bisections, witness chains, certificates and
// seeded experiment sweeps over random graphs.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crk/certifier.hpp"
#include "crk/experiment.hpp"
#include "crk/graph.hpp"
#include "crk/partition.hpp"
#include "crk/random_models.hpp"
#include "crk/serialize.hpp"
#include "crk/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

/// Bad flags or inputs; reported with exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool quiet = false;
};

crk::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open edge-list file '" + path + "'");
  return crk::read_edge_list(in);
}

/// JSON to --out when given, else to stdout.
void emit(const Globals& g, const crk::Json& j) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(g.out);
  if (!out)
    throw ConfigError("cannot write '" + g.out + "'");
  out << j.dump(2) << '\n';
}

void note(const Globals& g, const std::string& msg) {
  if (!g.quiet)
    std::cerr << msg << '\n';
}

int cmd_sample(const Globals& g, const std::string& model, std::size_t n, std::optional<double> p,
               std::optional<std::size_t> d) {
  if (g.out.empty())
    throw ConfigError("sample needs --out FILE for the edge list");
  crk::SampleReport rep;
  if (model == "gnp") {
    if (!p || d)
      throw ConfigError("gnp takes --p and not --d");
    rep.graph = crk::sample_gnp(n, *p, g.seed);
    rep.seed = g.seed;
  } else {
    if (!d || p)
      throw ConfigError("regular models take --d and not --p");
    rep = crk::sample_regular(n, *d, crk::parse_regular_model(model), g.seed);
  }
  std::ofstream out(g.out);
  if (!out)
    throw ConfigError("cannot write '" + g.out + "'");
  crk::write_edge_list(out, rep.graph);
  std::cout << crk::to_json(rep, model).dump(2) << '\n';
  return kExitOk;
}

int cmd_spectrum(const Globals& g, const std::string& in, bool full, double tol,
                 std::size_t dense_cap, std::size_t budget) {
  const crk::Graph graph = load_graph(in);
  const crk::SpectralSummary s =
      full ? crk::spectrum_full(graph, dense_cap) : crk::mu_bound(graph, tol, budget);
  emit(g, crk::to_json(s));
  return kExitOk;
}

int cmd_bisect(const Globals& g, const std::string& in, bool exact, std::size_t cap,
               std::size_t restarts) {
  const crk::Graph graph = load_graph(in);
  const crk::BisectionResult r = exact
                                     ? crk::exact_bisection(graph, cap)
                                     : crk::local_search_bisection(graph, g.seed, {restarts, 50});
  emit(g, crk::to_json(r));
  return kExitOk;
}

int cmd_witness(const Globals& g, const std::string& in, std::size_t k,
                const std::string& partition, bool exact, std::size_t cap) {
  const crk::Graph graph = load_graph(in);
  crk::EdgePartition ep;
  if (partition == "random") {
    ep = crk::random_edge_partition(graph, k, crk::derive_seed(g.seed, 1));
  } else {
    std::ifstream pin(partition);
    if (!pin)
      throw ConfigError("cannot open partition file '" + partition + "'");
    ep = crk::read_edge_partition(pin, graph, k);
  }
  const crk::BisectionOracle oracle =
      exact ? crk::exact_oracle(cap) : crk::local_search_oracle(crk::derive_seed(g.seed, 2));
  emit(g, crk::to_json(crk::witness_chain(graph, ep, oracle)));
  return kExitOk;
}

int cmd_certify(const Globals& g, const std::string& in, std::size_t k, double tol,
                std::size_t samples, std::optional<std::size_t> op_d, double eps) {
  if (op_d) {
    // Operating point: smallest n at which a graph meeting the Ramanujan-type
    // bound would receive a non-degenerate certificate.
    const double mu = crk::friedman_threshold(*op_d, eps);
    const auto n = crk::min_nondegenerate_n(*op_d, k, mu);
    crk::Json j = {{"d", *op_d}, {"k", k}, {"mu", mu}, {"eps", eps},
                   {"min_nondegenerate_n", n ? crk::Json(*n) : crk::Json(nullptr)}};
    if (n)
      j["certificate"] = crk::to_json(crk::certificate_from_chain(*n, *op_d, k, mu));
    emit(g, j);
    return kExitOk;
  }
  if (in.empty())
    throw ConfigError("certify needs --in FILE or --operating-point D");
  const crk::Graph graph = load_graph(in);
  if (!graph.regular_degree()) {
    note(g, "graph is not regular: reporting a non-certified ESTIMATE");
    emit(g, crk::to_json(crk::estimate_pair_density(graph, k, g.seed, samples)));
    return kExitOk;
  }
  const crk::SpectralSummary s = crk::mu_bound(graph, tol);
  emit(g, crk::to_json(crk::certify_k_planar_lb(graph, k, s)));
  return kExitOk;
}

/// Number of leading cells fully present in an existing CSV, after checking
/// the rows match what this config would produce.
std::size_t completed_cells(const crk::ExperimentConfig& cfg,
                            const std::vector<crk::TrialRecord>& rows) {
  const std::vector<crk::GridCell> cells = crk::grid_cells(cfg);
  const std::size_t done = std::min(rows.size() / cfg.trials, cells.size());
  for (std::size_t i = 0; i < done * cfg.trials; ++i) {
    const crk::TrialRecord& r = rows[i];
    const crk::GridCell& c = cells[i / cfg.trials];
    if (r.model != cfg.model || r.n != c.n || r.d != c.d || r.p != c.p || r.k != cfg.k ||
        r.trial != i % cfg.trials || r.seed != crk::derive_seed(cfg.master_seed, i))
      throw ConfigError("resume: existing output does not match this configuration at row " +
                        std::to_string(i + 1));
  }
  return done;
}

int cmd_experiment(const Globals& g, crk::ExperimentConfig cfg, bool resume) {
  cfg.master_seed = g.seed;
  const std::string format = g.format.empty() ? "csv" : g.format;
  try {
    crk::validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::size_t first_cell = 0;
  std::vector<crk::TrialRecord> kept;
  if (resume) {
    if (format != "csv" || g.out.empty())
      throw ConfigError("--resume needs --format csv and --out FILE");
    if (std::filesystem::exists(g.out)) {
      std::ifstream prev(g.out);
      std::string header;
      std::getline(prev, header);
      if (header != crk::csv_header(cfg.timing))
        throw ConfigError("resume: header of '" + g.out + "' does not match");
      prev.seekg(0);
      kept = crk::read_csv(prev);
      first_cell = completed_cells(cfg, kept);
      kept.resize(first_cell * cfg.trials);
      note(g, "resuming after " + std::to_string(first_cell) + " completed cells");
    }
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out, std::ios::trunc);
    if (!file)
      throw ConfigError("cannot write '" + g.out + "'");
  }
  std::ostream& out = g.out.empty() ? std::cout : file;

  std::size_t failures = 0;
  for (const crk::TrialRecord& r : kept)
    failures += r.failed();

  std::vector<crk::TrialRecord> records;
  const std::size_t total_cells = crk::grid_cells(cfg).size();
  std::size_t cell = first_cell;
  crk::CellSink sink;
  if (format == "csv") {
    out << crk::csv_header(cfg.timing) << '\n';
    for (const crk::TrialRecord& r : kept)
      out << crk::csv_row(r, cfg.timing) << '\n';
    out.flush();
    sink = [&](std::span<const crk::TrialRecord> rows) {
      for (const crk::TrialRecord& r : rows) {
        out << crk::csv_row(r, cfg.timing) << '\n';
        failures += r.failed();
      }
      out.flush();
      note(g, "cell " + std::to_string(++cell) + "/" + std::to_string(total_cells) + " done");
    };
  } else if (format == "json") {
    sink = [&](std::span<const crk::TrialRecord> rows) {
      for (const crk::TrialRecord& r : rows)
        failures += r.failed();
      note(g, "cell " + std::to_string(++cell) + "/" + std::to_string(total_cells) + " done");
    };
  } else {
    throw ConfigError("unknown --format '" + format + "'");
  }

  records = crk::run_experiment(cfg, sink, first_cell);
  if (format == "json") {
    crk::Json arr = crk::Json::array();
    for (const crk::TrialRecord& r : records)
      arr.push_back(crk::to_json(r, cfg.timing));
    out << arr.dump(2) << '\n';
  }
  if (failures) {
    note(g, std::to_string(failures) + " trial(s) failed; see the status column");
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_fit(const Globals& g, const std::string& in, const std::string& x, const std::string& y,
            const std::string& rate) {
  std::ifstream file(in);
  if (!file)
    throw ConfigError("cannot open '" + in + "'");
  const std::vector<crk::TrialRecord> records = crk::read_csv(file);
  if (!rate.empty()) {
    crk::Json arr = crk::Json::array();
    for (const crk::CellRate& c : crk::summarize_frequencies(records, rate))
      arr.push_back(crk::to_json(c));
    emit(g, {{"field", rate}, {"cells", arr}});
    return kExitOk;
  }
  crk::Json j = crk::to_json(crk::fit_scaling(records, x, y));
  j["x"] = x;
  j["y"] = y;
  emit(g, j);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-planar crossing-number lower bounds and random-graph experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format for experiment")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", g.quiet, "Suppress progress on stderr");

  std::string model;
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<std::size_t> d;
  auto* sample = app.add_subcommand("sample", "Sample a random graph to an edge-list file");
  sample->add_option("--model", model, "gnp|perm|cycle|matching|uniform")->required();
  sample->add_option("--n", n, "Vertices")->required();
  sample->add_option("--p", p, "Edge probability (gnp)");
  sample->add_option("--d", d, "Degree (regular models)");

  std::string in;
  bool full = false;
  double tol = 1e-8;
  std::size_t dense_cap = crk::kDefaultDenseCap;
  std::size_t budget = crk::kDefaultMatvecBudget;
  auto* spectrum = app.add_subcommand("spectrum", "Adjacency spectrum summary");
  spectrum->add_option("--in", in, "Edge-list file")->required();
  spectrum->add_flag("--full", full, "Dense full spectrum");
  spectrum->add_option("--tol", tol, "Residual tolerance (iterative)");
  spectrum->add_option("--dense-cap", dense_cap, "Largest n for --full");
  spectrum->add_option("--budget", budget, "Matrix-vector product budget");

  bool exact = false;
  std::size_t cap = crk::kDefaultExactCap;
  std::size_t restarts = 8;
  auto* bisect = app.add_subcommand("bisect", "Balanced 1/3-2/3 bisection");
  bisect->add_option("--in", in, "Edge-list file")->required();
  bisect->add_flag("--exact", exact, "Exhaustive search");
  bisect->add_option("--cap", cap, "Largest n for --exact");
  bisect->add_option("--restarts", restarts, "Local search restarts");

  std::size_t k = 2;
  std::string partition = "random";
  auto* witness = app.add_subcommand("witness", "Separated witness sets for an edge partition");
  witness->add_option("--in", in, "Edge-list file")->required();
  witness->add_option("--k", k, "Number of edge classes")->required();
  witness->add_option("--partition", partition, "Edge-partition file or 'random'");
  witness->add_flag("--exact", exact, "Exact bisections at every level");
  witness->add_option("--cap", cap, "Largest n for --exact");

  std::size_t samples = 2000;
  std::optional<std::size_t> op_d;
  double eps = 0.2;
  auto* certify = app.add_subcommand("certify", "Crossing lower bound certificate");
  certify->add_option("--in", in, "Edge-list file");
  certify->add_option("--k", k, "Planarity parameter k >= 2")->required();
  certify->add_option("--tol", tol, "Residual tolerance");
  certify->add_option("--samples", samples, "Sampled pairs for the irregular estimate");
  certify->add_option("--operating-point", op_d,
                      "Degree d: report the smallest n with a non-degenerate certificate");
  certify->add_option("--eps", eps, "Slack over 2 sqrt(d-1) for --operating-point");

  crk::ExperimentConfig cfg;
  bool resume = false;
  auto* experiment = app.add_subcommand("experiment", "Seeded sweep over a parameter grid");
  experiment->add_option("--model", cfg.model, "gnp|perm|cycle|matching|uniform")->required();
  experiment->add_option("--n", cfg.ns, "Vertex counts")->required();
  experiment->add_option("--d", cfg.ds, "Degrees (regular models)");
  experiment->add_option("--p", cfg.ps, "Edge probabilities (gnp)");
  experiment->add_option("--k", cfg.k, "Planarity parameter");
  experiment->add_option("--trials", cfg.trials, "Trials per cell");
  experiment->add_option("--tol", cfg.tol, "Spectral tolerance");
  experiment->add_option("--eps", cfg.eps, "Slack for the friedman_ok column");
  experiment->add_flag("--witness", cfg.witness, "Also build a witness chain per trial");
  experiment->add_option("--threads", cfg.threads, "Worker threads per cell");
  experiment->add_flag("--timing", cfg.timing, "Add wall_time_s (output no longer reproducible)");
  experiment->add_flag("--resume", resume, "Keep completed cells of an existing CSV");

  std::string x_field = "n";
  std::string y_field = "crossing_lb";
  std::string rate;
  auto* fit = app.add_subcommand("fit", "Power-law fit or frequency summary of an experiment CSV");
  fit->add_option("--in", in, "Experiment CSV")->required();
  fit->add_option("--x", x_field, "Abscissa field");
  fit->add_option("--y", y_field, "Ordinate field");
  fit->add_option("--rate", rate, "Boolean field: per-cell true rate instead of a fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sample)
      return cmd_sample(g, model, n, p, d);
    if (*spectrum)
      return cmd_spectrum(g, in, full, tol, dense_cap, budget);
    if (*bisect)
      return cmd_bisect(g, in, exact, cap, restarts);
    if (*witness)
      return cmd_witness(g, in, k, partition, exact, cap);
    if (*certify)
      return cmd_certify(g, in, k, tol, samples, op_d, eps);
    if (*experiment)
      return cmd_experiment(g, cfg, resume);
    if (*fit)
      return cmd_fit(g, in, x_field, y_field, rate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
