#include "crk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "crk/certifier.hpp"
#include "crk/partition.hpp"
#include "crk/random_models.hpp"
#include "crk/spectral.hpp"

namespace crk {

namespace {

bool is_gnp(const std::string& model) { return model == "gnp"; }

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell_text(const std::optional<double>& v) { return v ? fmt_double(*v) : ""; }
std::string cell_text(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : ""; }
template <typename Int>
std::string cell_text(const std::optional<Int>& v) {
  return v ? std::to_string(*v) : "";
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty())
    return std::nullopt;
  return std::stod(s);
}
std::optional<std::size_t> parse_size(const std::string& s) {
  if (s.empty())
    return std::nullopt;
  return static_cast<std::size_t>(std::stoull(s));
}
std::optional<bool> parse_bool(const std::string& s) {
  if (s.empty())
    return std::nullopt;
  if (s == "true")
    return true;
  if (s == "false")
    return false;
  throw std::invalid_argument("csv: bad boolean '" + s + "'");
}

} // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.ns.empty())
    throw std::invalid_argument("experiment: empty n grid");
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment: trials must be >= 1");
  if (!(cfg.tol > 0.0))
    throw std::invalid_argument("experiment: tol must be positive");
  if (is_gnp(cfg.model)) {
    if (cfg.ps.empty())
      throw std::invalid_argument("experiment: gnp model needs a p grid");
    for (double p : cfg.ps)
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("experiment: p outside [0,1]");
  } else {
    parse_regular_model(cfg.model);
    if (cfg.ds.empty())
      throw std::invalid_argument("experiment: regular model needs a d grid");
  }
  if (cfg.k < 2)
    throw std::invalid_argument("experiment: k must be >= 2");
}

std::vector<GridCell> grid_cells(const ExperimentConfig& cfg) {
  std::vector<GridCell> cells;
  for (std::size_t n : cfg.ns) {
    if (is_gnp(cfg.model)) {
      for (double p : cfg.ps)
        cells.push_back({cells.size(), n, std::nullopt, p});
    } else {
      for (std::size_t d : cfg.ds)
        cells.push_back({cells.size(), n, d, std::nullopt});
    }
  }
  return cells;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const GridCell& cell, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.model = cfg.model;
  r.n = cell.n;
  r.d = cell.d;
  r.p = cell.p;
  r.k = cfg.k;
  r.trial = trial;
  r.seed = derive_seed(cfg.master_seed, cell.index * cfg.trials + trial);

  try {
    Graph g;
    if (is_gnp(cfg.model)) {
      g = sample_gnp(cell.n, *cell.p, r.seed);
      if (*cell.p > 0.0)
        r.max_degree_ok = max_degree_ok(g, *cell.p);
    } else {
      SampleReport rep = sample_regular(cell.n, *cell.d, parse_regular_model(cfg.model), r.seed);
      g = std::move(rep.graph);
      r.collapsed_multiedges = rep.collapsed_multiedges;
      r.removed_loops = rep.removed_loops;
      r.rejected_attempts = rep.rejected_attempts;
    }
    r.edges = g.num_edges();
    r.max_degree = g.max_degree();
    const auto reg = g.regular_degree();
    r.regular = cell.d ? (reg && *reg == *cell.d) : reg.has_value();
    r.connected = g.is_connected();

    const SpectralSummary spectrum = mu_bound(g, cfg.tol);
    r.mu_safe = spectrum.mu_safe();

    if (cell.d) {
      const std::size_t d = *cell.d;
      if (d >= 1)
        r.friedman_ok = spectrum.mu <= friedman_threshold(d, cfg.eps);
      const Certificate c = certificate_from_chain(cell.n, d, cfg.k, *r.mu_safe);
      r.alpha = c.alpha_eff;
      r.density_lb = c.density_lb;
      r.width_lb = c.width_lb;
      r.degree_term = c.degree_term;
      r.crossing_lb = c.crossing_lb;
      r.degenerate = c.degenerate;
      r.constants_ok = c.constants_ok;
      r.certified = r.regular && r.connected && !c.degenerate;
    }

    if (cfg.witness && cell.n >= witness_min_vertices(cfg.k)) {
      const EdgePartition ep = random_edge_partition(g, cfg.k, derive_seed(r.seed, 1));
      const WitnessChain chain = witness_chain(g, ep, local_search_oracle(derive_seed(r.seed, 2)));
      r.witness_eab = chain.e_ab;
      r.witness_width_sum = chain.width_sum();
    }
  } catch (const std::exception& e) {
    r.status = sanitize(std::string("error: ") + e.what());
  }
  if (cfg.timing)
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, const CellSink& sink,
                                        std::size_t first_cell) {
  validate(cfg);
  const std::vector<GridCell> cells = grid_cells(cfg);
  std::vector<TrialRecord> all;
  for (std::size_t c = first_cell; c < cells.size(); ++c) {
    std::vector<TrialRecord> rows(cfg.trials);
    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.trials);
    if (workers == 1) {
      for (std::size_t t = 0; t < cfg.trials; ++t)
        rows[t] = run_trial(cfg, cells[c], t);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (std::size_t t = next++; t < cfg.trials; t = next++)
            rows[t] = run_trial(cfg, cells[c], t);
        });
    }
    if (sink)
      sink(rows);
    all.insert(all.end(), std::make_move_iterator(rows.begin()),
               std::make_move_iterator(rows.end()));
  }
  return all;
}

std::vector<std::string> csv_columns(bool timing) {
  std::vector<std::string> cols = {
      "model",        "n",           "d",          "p",
      "k",            "trial",       "seed",       "edges",
      "max_degree",   "collapsed_multiedges",      "removed_loops",
      "rejected_attempts",           "regular",    "connected",
      "mu_safe",      "friedman_ok", "max_degree_ok",
      "alpha",        "density_lb",  "width_lb",   "degree_term",
      "crossing_lb",  "degenerate",  "constants_ok", "certified",
      "witness_eab",  "witness_width_sum",         "status"};
  if (timing)
    cols.emplace_back("wall_time_s");
  return cols;
}

std::string csv_header(bool timing) {
  std::string out;
  for (const std::string& c : csv_columns(timing))
    out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string csv_row(const TrialRecord& r, bool timing) {
  const std::vector<std::string> fields = {
      r.model,
      std::to_string(r.n),
      cell_text(r.d),
      cell_text(r.p),
      std::to_string(r.k),
      std::to_string(r.trial),
      std::to_string(r.seed),
      std::to_string(r.edges),
      std::to_string(r.max_degree),
      std::to_string(r.collapsed_multiedges),
      std::to_string(r.removed_loops),
      std::to_string(r.rejected_attempts),
      r.regular ? "true" : "false",
      r.connected ? "true" : "false",
      cell_text(r.mu_safe),
      cell_text(r.friedman_ok),
      cell_text(r.max_degree_ok),
      cell_text(r.alpha),
      cell_text(r.density_lb),
      cell_text(r.width_lb),
      cell_text(r.degree_term),
      cell_text(r.crossing_lb),
      cell_text(r.degenerate),
      cell_text(r.constants_ok),
      cell_text(r.certified),
      cell_text(r.witness_eab),
      cell_text(r.witness_width_sum),
      sanitize(r.status)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i)
    out += (i ? "," : "") + fields[i];
  if (timing)
    out += "," + cell_text(r.wall_time_s);
  return out;
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records, bool timing) {
  out << csv_header(timing) << '\n';
  for (const TrialRecord& r : records)
    out << csv_row(r, timing) << '\n';
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv: missing header");
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i)
    col[header[i]] = i;
  for (const std::string& required : csv_columns(false))
    if (!col.contains(required))
      throw std::invalid_argument("csv: missing column '" + required + "'");

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw std::invalid_argument("csv: row has " + std::to_string(f.size()) + " fields, header " +
                                  std::to_string(header.size()));
    const auto at = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
    TrialRecord r;
    r.model = at("model");
    r.n = *parse_size(at("n"));
    r.d = parse_size(at("d"));
    r.p = parse_double(at("p"));
    r.k = *parse_size(at("k"));
    r.trial = *parse_size(at("trial"));
    r.seed = std::stoull(at("seed"));
    r.edges = *parse_size(at("edges"));
    r.max_degree = *parse_size(at("max_degree"));
    r.collapsed_multiedges = *parse_size(at("collapsed_multiedges"));
    r.removed_loops = *parse_size(at("removed_loops"));
    r.rejected_attempts = *parse_size(at("rejected_attempts"));
    r.regular = *parse_bool(at("regular"));
    r.connected = *parse_bool(at("connected"));
    r.mu_safe = parse_double(at("mu_safe"));
    r.friedman_ok = parse_bool(at("friedman_ok"));
    r.max_degree_ok = parse_bool(at("max_degree_ok"));
    r.alpha = parse_double(at("alpha"));
    r.density_lb = parse_double(at("density_lb"));
    r.width_lb = parse_double(at("width_lb"));
    r.degree_term = parse_double(at("degree_term"));
    r.crossing_lb = parse_double(at("crossing_lb"));
    r.degenerate = parse_bool(at("degenerate"));
    r.constants_ok = parse_bool(at("constants_ok"));
    r.certified = parse_bool(at("certified"));
    r.witness_eab = parse_size(at("witness_eab"));
    r.witness_width_sum = parse_size(at("witness_width_sum"));
    r.status = at("status");
    if (col.contains("wall_time_s"))
      r.wall_time_s = parse_double(at("wall_time_s"));
    records.push_back(std::move(r));
  }
  return records;
}

std::optional<double> numeric_field(const TrialRecord& r, const std::string& field) {
  const auto from = [](const auto& v) -> std::optional<double> {
    if (!v)
      return std::nullopt;
    return static_cast<double>(*v);
  };
  if (field == "n")
    return static_cast<double>(r.n);
  if (field == "d")
    return from(r.d);
  if (field == "p")
    return r.p;
  if (field == "k")
    return static_cast<double>(r.k);
  if (field == "edges")
    return static_cast<double>(r.edges);
  if (field == "max_degree")
    return static_cast<double>(r.max_degree);
  if (field == "collapsed_multiedges")
    return static_cast<double>(r.collapsed_multiedges);
  if (field == "mu_safe")
    return r.mu_safe;
  if (field == "alpha")
    return r.alpha;
  if (field == "density_lb")
    return r.density_lb;
  if (field == "width_lb")
    return r.width_lb;
  if (field == "degree_term")
    return r.degree_term;
  if (field == "crossing_lb")
    return r.crossing_lb;
  if (field == "witness_eab")
    return from(r.witness_eab);
  if (field == "witness_width_sum")
    return from(r.witness_width_sum);
  if (field == "wall_time_s")
    return r.wall_time_s;
  if (field == "dn") {
    if (!r.d)
      return std::nullopt;
    return static_cast<double>(*r.d) * static_cast<double>(r.n);
  }
  if (field == "n2p") {
    if (!r.p)
      return std::nullopt;
    return static_cast<double>(r.n) * static_cast<double>(r.n) * *r.p;
  }
  throw std::invalid_argument("unknown numeric field '" + field + "'");
}

std::optional<bool> bool_field(const TrialRecord& r, const std::string& field) {
  if (field == "regular")
    return r.regular;
  if (field == "connected")
    return r.connected;
  if (field == "friedman_ok")
    return r.friedman_ok;
  if (field == "max_degree_ok")
    return r.max_degree_ok;
  if (field == "degenerate")
    return r.degenerate;
  if (field == "constants_ok")
    return r.constants_ok;
  if (field == "certified")
    return r.certified;
  if (field == "failed")
    return r.failed();
  throw std::invalid_argument("unknown boolean field '" + field + "'");
}

ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit: x and y lengths differ");
  ScalingFit fit;
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0 && ys[i] > 0.0 && std::isfinite(xs[i]) && std::isfinite(ys[i])) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(ys[i]));
    } else {
      ++fit.excluded;
    }
  }
  std::vector<double> distinct = lx;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw std::invalid_argument("fit: need at least 3 distinct positive x values with y > 0 (" +
                                std::to_string(fit.excluded) + " points excluded)");
  fit.used = lx.size();
  const double m = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

ScalingFit fit_scaling(std::span<const TrialRecord> records, const std::string& x_field,
                       const std::string& y_field) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t missing = 0;
  for (const TrialRecord& r : records) {
    const auto x = numeric_field(r, x_field);
    const auto y = numeric_field(r, y_field);
    if (!x || !y || r.failed()) {
      ++missing;
      continue;
    }
    xs.push_back(*x);
    ys.push_back(*y);
  }
  ScalingFit fit = fit_power_law(xs, ys);
  fit.excluded += missing;
  return fit;
}

std::vector<CellRate> summarize_frequencies(std::span<const TrialRecord> records,
                                            const std::string& field) {
  if (records.empty())
    throw std::invalid_argument("summarize_frequencies: no records");
  std::vector<CellRate> rates;
  for (const TrialRecord& r : records) {
    const std::optional<bool> value = bool_field(r, field);
    auto it = std::find_if(rates.begin(), rates.end(), [&](const CellRate& c) {
      return c.model == r.model && c.n == r.n && c.d == r.d && c.p == r.p && c.k == r.k;
    });
    if (it == rates.end()) {
      rates.push_back({r.model, r.n, r.d, r.p, r.k, 0, 0, 0.0});
      it = rates.end() - 1;
    }
    if (!value)
      continue;
    ++it->trials;
    it->hits += *value;
  }
  for (CellRate& c : rates)
    c.rate = c.trials ? static_cast<double>(c.hits) / static_cast<double>(c.trials) : 0.0;
  return rates;
}

} // namespace crk
