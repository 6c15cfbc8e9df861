#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crk {

/// Parameter sweep over (n, d) for a regular model or (n, p) for "gnp".
struct ExperimentConfig {
  std::string model = "matching";
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ds;
  std::vector<double> ps;
  std::size_t k = 2;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  double tol = 1e-6;
  double eps = 0.2;
  bool witness = false;
  std::size_t threads = 1;
  /// Adds a wall-time column; timing makes output non-reproducible.
  bool timing = false;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const ExperimentConfig& cfg);

struct GridCell {
  std::size_t index = 0;
  std::size_t n = 0;
  std::optional<std::size_t> d;
  std::optional<double> p;
};

/// Cells in canonical order: n outer, then d (or p).
std::vector<GridCell> grid_cells(const ExperimentConfig& cfg);

struct TrialRecord {
  std::string model;
  std::size_t n = 0;
  std::optional<std::size_t> d;
  std::optional<double> p;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;

  std::size_t edges = 0;
  std::size_t max_degree = 0;
  std::uint64_t collapsed_multiedges = 0;
  std::uint64_t removed_loops = 0;
  std::uint64_t rejected_attempts = 0;
  bool regular = false;
  bool connected = false;

  std::optional<double> mu_safe;
  std::optional<bool> friedman_ok;
  std::optional<bool> max_degree_ok;

  std::optional<double> alpha;
  std::optional<double> density_lb;
  std::optional<double> width_lb;
  std::optional<double> degree_term;
  std::optional<double> crossing_lb;
  std::optional<bool> degenerate;
  std::optional<bool> constants_ok;
  /// Regular, connected and non-degenerate: crossing_lb is a proven bound.
  std::optional<bool> certified;

  std::optional<std::size_t> witness_eab;
  std::optional<std::size_t> witness_width_sum;

  std::string status = "ok";
  std::optional<double> wall_time_s;

  bool failed() const { return status != "ok"; }
};

/// One trial; failures are captured in status rather than thrown.
TrialRecord run_trial(const ExperimentConfig& cfg, const GridCell& cell, std::size_t trial);

/// Called with each completed cell's records, in canonical order.
using CellSink = std::function<void(std::span<const TrialRecord>)>;

/**
   Run every (cell, trial) starting at grid cell first_cell. Trials of a cell
   may run on several threads; results are always returned and streamed in
   canonical (cell, trial) order.
 */
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, const CellSink& sink = {},
                                        std::size_t first_cell = 0);

std::vector<std::string> csv_columns(bool timing);
std::string csv_header(bool timing);
std::string csv_row(const TrialRecord& r, bool timing);
void write_csv(std::ostream& out, std::span<const TrialRecord> records, bool timing);
std::vector<TrialRecord> read_csv(std::istream& in);

/// Numeric view of a named field; nullopt when the field is empty for r.
std::optional<double> numeric_field(const TrialRecord& r, const std::string& field);
std::optional<bool> bool_field(const TrialRecord& r, const std::string& field);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;
};

/// Least squares of log y on log x. Needs >= 3 distinct x among points with y > 0.
ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys);
ScalingFit fit_scaling(std::span<const TrialRecord> records, const std::string& x_field,
                       const std::string& y_field);

struct CellRate {
  std::string model;
  std::size_t n = 0;
  std::optional<std::size_t> d;
  std::optional<double> p;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double rate = 0.0;
};

/// Fraction of trials per cell whose boolean field is true (empty entries skipped).
std::vector<CellRate> summarize_frequencies(std::span<const TrialRecord> records,
                                            const std::string& field);

} // namespace crk
