#include "pipeline.hpp"

#include <chrono>
#include <cstdio>

#include <json.hpp>

#include "errors.hpp"

namespace modalfit {

namespace {

using json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
T require_field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

template <typename T>
T optional_field(const json& j, const std::string& path, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: document must be a JSON object");
  const std::string path = "config";
  const int schema = optional_field<int>(j, path, "schema_version", 1);
  if (schema != 1) throw ConfigError("config.schema_version: unsupported version");
  RunConfig cfg;
  cfg.name = optional_field<std::string>(j, path, "name", "");
  const std::string kind = require_field<std::string>(j, path, "problem");
  if (kind == "beam") {
    BeamProblem beam;
    beam.E = require_field<double>(j, path, "E");
    beam.I = require_field<double>(j, path, "I");
    beam.rho = require_field<double>(j, path, "rho");
    beam.area = require_field<double>(j, path, "area");
    beam.L = require_field<double>(j, path, "L");
    const std::string bc = require_field<std::string>(j, path, "bc");
    if (bc == "simply_supported") beam.bc = BeamBC::SimplySupported;
    else if (bc == "fixed_fixed") beam.bc = BeamBC::FixedFixed;
    else if (bc == "fixed_free") beam.bc = BeamBC::FixedFree;
    else throw ConfigError("config.bc: unknown variant '" + bc + "'");
    cfg.problem = beam;
    cfg.degree_x = require_field<int>(j, path, "degree");
    cfg.nx = require_field<int>(j, path, "nx");
    cfg.grid_x = optional_field<int>(j, path, "grid", 1001);
    if (cfg.name.empty()) cfg.name = "beam";
  } else if (kind == "cavity") {
    CavityProblem cav;
    cav.L = require_field<double>(j, path, "L");
    cav.H = require_field<double>(j, path, "H");
    cav.c = require_field<double>(j, path, "c");
    cfg.problem = cav;
    cfg.degree_x = require_field<int>(j, path, "degree_x");
    cfg.degree_y = require_field<int>(j, path, "degree_y");
    cfg.nx = require_field<int>(j, path, "nx");
    cfg.ny = require_field<int>(j, path, "ny");
    cfg.boundary_per_edge = require_field<int>(j, path, "boundary_per_edge");
    cfg.grid_x = optional_field<int>(j, path, "grid_x", 61);
    cfg.grid_y = optional_field<int>(j, path, "grid_y", 37);
    if (cfg.name.empty()) cfg.name = "cavity";
  } else {
    throw ConfigError("config.problem: unknown kind '" + kind + "'");
  }
  cfg.k_modes = optional_field<int>(j, path, "k", 5);
  cfg.rank_tol = optional_field<double>(j, path, "rank_tol", 1e-10);
  cfg.zero_tol = optional_field<double>(j, path, "zero_tol", 1e-8);
  cfg.allow_ridge = optional_field<bool>(j, path, "allow_ridge", false);
  cfg.seed = optional_field<long long>(j, path, "seed", 0);
  if (cfg.k_modes < 1) throw ConfigError("config.k: must be at least 1");
  if (cfg.nx < 1) throw ConfigError("config.nx: must be positive");
  if (!(cfg.rank_tol > 0)) throw ConfigError("config.rank_tol: must be positive");
  if (!(cfg.zero_tol > 0)) throw ConfigError("config.zero_tol: must be positive");
  // Degree/operator-order and count/feature-count checks live in basis_for /
  // generate_interior; trigger them here so bad configs fail before any work.
  const BasisSpec spec = basis_for(cfg.problem, cfg.degree_x, cfg.degree_y);
  (void)generate_interior(cfg.problem, spec, cfg.nx, cfg.ny);
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["name"] = cfg.name;
  if (const auto* beam = std::get_if<BeamProblem>(&cfg.problem)) {
    j["problem"] = "beam";
    switch (beam->bc) {
      case BeamBC::SimplySupported: j["bc"] = "simply_supported"; break;
      case BeamBC::FixedFixed: j["bc"] = "fixed_fixed"; break;
      case BeamBC::FixedFree: j["bc"] = "fixed_free"; break;
    }
    j["E"] = beam->E;
    j["I"] = beam->I;
    j["rho"] = beam->rho;
    j["area"] = beam->area;
    j["L"] = beam->L;
    j["degree"] = cfg.degree_x;
    j["nx"] = cfg.nx;
    j["grid"] = cfg.grid_x;
  } else {
    const auto& cav = std::get<CavityProblem>(cfg.problem);
    j["problem"] = "cavity";
    j["L"] = cav.L;
    j["H"] = cav.H;
    j["c"] = cav.c;
    j["degree_x"] = cfg.degree_x;
    j["degree_y"] = cfg.degree_y;
    j["nx"] = cfg.nx;
    j["ny"] = cfg.ny;
    j["boundary_per_edge"] = cfg.boundary_per_edge;
    j["grid_x"] = cfg.grid_x;
    j["grid_y"] = cfg.grid_y;
  }
  j["k"] = cfg.k_modes;
  j["rank_tol"] = cfg.rank_tol;
  j["zero_tol"] = cfg.zero_tol;
  j["allow_ridge"] = cfg.allow_ridge;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

RunResult run(const RunConfig& cfg) {
  RunResult res;
  res.config = cfg;

  auto t0 = clock_type::now();
  const BasisSpec spec = basis_for(cfg.problem, cfg.degree_x, cfg.degree_y);
  const InteriorSet interior = generate_interior(cfg.problem, spec, cfg.nx, cfg.ny);
  const auto constraints = boundary_constraints(cfg.problem, cfg.boundary_per_edge);
  const DesignMatrices dm = assemble_design(spec, cfg.problem, interior);
  const Mat B = assemble_boundary(spec, constraints);
  res.n_phi = spec.size();
  res.boundary_rows = static_cast<int>(B.rows());
  res.timings.assembly_ms = ms_since(t0);

  t0 = clock_type::now();
  const AdmissibleMap map = nullspace_map(B, cfg.rank_tol);
  ReducedSystem sys = reduce(dm, map);
  ensure_spd(sys, cfg.allow_ridge);
  res.boundary_rank = map.rank;
  res.boundary_rank_deficient = map.rank_deficient;
  res.reduced_dim = static_cast<int>(map.T.cols());
  res.asymmetry = sys.asymmetry;
  res.ridge_applied = sys.ridge_applied;
  res.ridge_value = sys.ridge_value;
  res.timings.projection_ms = ms_since(t0);

  t0 = clock_type::now();
  const auto pairs = solve_gep(sys);
  res.modes = select_modes(pairs, cfg.problem, map, cfg.k_modes, cfg.zero_tol);
  refine_modes(res.modes, dm, map);
  res.timings.eigensolve_ms = ms_since(t0);

  t0 = clock_type::now();
  res.modes.samples.reserve(res.modes.modes.size());
  for (const auto& m : res.modes.modes)
    res.modes.samples.push_back(sample_mode(spec, m.beta, cfg.grid_x, cfg.grid_y));
  res.omega_pred.reserve(res.modes.modes.size());
  for (const auto& m : res.modes.modes) res.omega_pred.push_back(m.omega);
  res.omega_exact = exact_frequencies(cfg.problem, cfg.k_modes);
  const FrequencyErrors errs = frequency_errors(res.omega_pred, res.omega_exact);
  res.abs_err = errs.abs_err;
  res.rel_err = errs.rel_err;
  res.timings.reconstruction_ms = ms_since(t0);
  return res;
}

namespace {

const char* kBenchmarkNames[] = {"beam_ss", "beam_ff", "beam_cf", "cavity"};

}  // namespace

int benchmark_count() { return 4; }

const char* benchmark_name(int idx) {
  if (idx < 0 || idx >= benchmark_count()) throw ConfigError("benchmark index out of range");
  return kBenchmarkNames[idx];
}

RunConfig benchmark_config(int idx) {
  RunConfig cfg;
  cfg.name = benchmark_name(idx);
  if (idx < 3) {
    BeamProblem beam;
    beam.E = 2.1e11;
    beam.I = 2e-12;
    beam.rho = 7800.0;
    beam.area = 6e-6;
    beam.L = 0.12;
    beam.bc = idx == 0   ? BeamBC::SimplySupported
              : idx == 1 ? BeamBC::FixedFixed
                         : BeamBC::FixedFree;
    cfg.problem = beam;
    cfg.degree_x = 23;
    cfg.nx = 2000;
    cfg.grid_x = 1001;
  } else {
    cfg.problem = CavityProblem{5.0, 3.0, 340.0};
    cfg.degree_x = cfg.degree_y = 13;
    cfg.nx = cfg.ny = 60;
    cfg.boundary_per_edge = 40;
    cfg.grid_x = 61;
    cfg.grid_y = 37;
  }
  cfg.k_modes = 5;
  return cfg;
}

std::string report_json(const RunResult& res) {
  json j;
  j["schema_version"] = 1;
  j["config"] = json::parse(config_to_json(res.config));
  json modes = json::array();
  for (std::size_t k = 0; k < res.omega_pred.size(); ++k) {
    json m;
    m["mode_index"] = k + 1;
    m["lambda"] = res.modes.modes[k].lambda;
    m["omega_predicted"] = res.omega_pred[k];
    m["omega_exact"] = res.omega_exact[k];
    m["abs_error"] = res.abs_err[k];
    m["rel_error"] = res.rel_err[k];
    modes.push_back(std::move(m));
  }
  j["modes"] = std::move(modes);
  j["asymmetry"] = res.asymmetry;
  j["ridge_applied"] = res.ridge_applied;
  j["ridge_value"] = res.ridge_value;
  j["boundary"] = {{"rows", res.boundary_rows},
                   {"rank", res.boundary_rank},
                   {"rank_deficient", res.boundary_rank_deficient}};
  j["eigen_counts"] = {{"n_phi", res.n_phi},
                       {"reduced_dim", res.reduced_dim},
                       {"retained", res.modes.retained},
                       {"filtered", res.modes.filtered}};
  j["timings_ms"] = {{"assembly", res.timings.assembly_ms},
                     {"projection", res.timings.projection_ms},
                     {"eigensolve", res.timings.eigensolve_ms},
                     {"reconstruction", res.timings.reconstruction_ms}};
  return j.dump(2) + "\n";
}

std::string frequencies_csv(const RunResult& res) {
  std::string out = "mode_index,omega_predicted,omega_exact,abs_error,rel_error\n";
  for (std::size_t k = 0; k < res.omega_pred.size(); ++k) {
    out += std::to_string(k + 1);
    out += ',';
    out += fmt17(res.omega_pred[k]);
    out += ',';
    out += fmt17(res.omega_exact[k]);
    out += ',';
    out += fmt17(res.abs_err[k]);
    out += ',';
    out += fmt17(res.rel_err[k]);
    out += '\n';
  }
  return out;
}

std::string mode_csv(const RunResult& res, int mode_index) {
  if (mode_index < 1 || mode_index > static_cast<int>(res.modes.samples.size()))
    throw ConfigError("mode index out of range");
  const SampledMode& s = res.modes.samples[mode_index - 1];
  std::string out;
  if (s.ys.empty()) {
    out = "x,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out += fmt17(s.xs[i]) + "," + fmt17(s.values[i]) + "\n";
  } else {
    out = "x,y,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out += fmt17(s.xs[i]) + "," + fmt17(s.ys[i]) + "," + fmt17(s.values[i]) + "\n";
  }
  return out;
}

}  // namespace modalfit
