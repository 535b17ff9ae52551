#pragma once

#include <string>

#include "analytic.hpp"
#include "solver.hpp"

namespace modalfit {

// One fully specified analysis run (problem + discretization + reporting).
struct RunConfig {
  Problem problem;
  std::string name;              // tag used for output files / summaries
  int degree_x = 0, degree_y = 0;
  int nx = 0, ny = 0;            // interior counts per axis (1D uses nx)
  int boundary_per_edge = 0;     // 2D only
  int k_modes = 5;
  int grid_x = 0, grid_y = 0;    // reporting grid (defaults applied on parse)
  double rank_tol = 1e-10;
  double zero_tol = 1e-8;
  bool allow_ridge = false;
  long long seed = 0;            // reserved; features are deterministic
};

struct PhaseTimings {
  double assembly_ms = 0, projection_ms = 0, eigensolve_ms = 0, reconstruction_ms = 0;
};

struct RunResult {
  RunConfig config;
  ModeSet modes;
  std::vector<double> omega_pred, omega_exact, abs_err, rel_err;
  double asymmetry = 0.0;
  bool ridge_applied = false;
  double ridge_value = 0.0;
  bool boundary_rank_deficient = false;
  int n_phi = 0;
  int boundary_rows = 0;
  int boundary_rank = 0;
  int reduced_dim = 0;
  PhaseTimings timings;
};

// JSON config document (schema_version 1). Field errors name their path.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig&);

// Full pipeline: basis -> assembly -> projection -> eigensolve -> selection ->
// reconstruction -> oracle comparison.
RunResult run(const RunConfig&);

// Bundled desk-scale benchmark configurations.
int benchmark_count();
const char* benchmark_name(int idx);
RunConfig benchmark_config(int idx);

// Serialized outputs. All numeric formatting is deterministic.
std::string report_json(const RunResult&);
std::string frequencies_csv(const RunResult&);
std::string mode_csv(const RunResult&, int mode_index);   // 1-based mode index

}  // namespace modalfit
