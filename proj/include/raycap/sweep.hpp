#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "raycap/channel.hpp"
#include "raycap/quadrature.hpp"

namespace raycap {

// Grid and evaluation settings for a power sweep.
struct SweepOptions {
  double snr_db_min = -10.0;
  double snr_db_max = 35.0;
  double snr_db_step = 0.5;
  // When non-empty, these Ω² values replace the dB grid (the only way to
  // include a literal zero-power row, since dB cannot express it).
  std::vector<double> omega_sq_list;
  int quad_order = 15;
  int inner_order = 15;
  bool with_discrete = false;
  double tol = 1e-9;
};

// One emitted row: the full operating point plus the sweep-only columns.
struct SweepRow {
  InfoPoint point;
  std::optional<double> cap_discrete2;   // engaged by with_discrete
  double pct_lost_vs_mi = 0.0;           // 100·(1 − lb/mi), 0 when mi = 0
  std::optional<double> pct_lost_vs_cap; // 100·(1 − lb/cap), needs discrete
};

// The Ω² evaluation grid: either the explicit list or
// 10^(snr_db/10) over the inclusive dB range.  Throws
// std::invalid_argument for a non-positive step, an empty range, or
// negative/non-finite Ω² entries.
std::vector<double> sweep_grid(const SweepOptions& options);

// One row at a given power.  Throws convergence_error if the discrete
// capacity search fails.
SweepRow compute_sweep_row(double omega_sq, const SweepOptions& options,
                           const QuadratureRule& outer_rule,
                           const QuadratureRule& inner_rule);

// The frozen CSV header (no trailing newline).
extern const char kSweepCsvHeader[];

// CSV writers: "%.12g" rendering, '.' decimal separator, LF endings.
// Disabled discrete columns are emitted empty; a zero-power row prints
// "-inf" for snr_db.
void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_row(std::ostream& out, const SweepRow& row);

// JSON writer for a complete (or partial) sweep.  `error` non-empty marks
// a sweep aborted by a convergence failure after `rows` were finished.
void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows,
                      const std::string& error);

// Validation-report settings.
struct CheckOptions {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  int quad_order = 15;
  int inner_order = 15;
};

// Runs every reference-vs-closed-form comparison and invariant suite and
// renders the JSON report (schema_version field included).  *all_pass is
// set to whether every check passed.  Deterministic for fixed options;
// convergence failures propagate as convergence_error.
std::string run_check_report(const CheckOptions& options, bool* all_pass);

}  // namespace raycap
