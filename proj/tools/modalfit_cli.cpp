// modalfit command-line front end. Talks to the core exclusively through the
// shared C API; owns only argument parsing, config overrides, and file I/O.
#include <modalfit/modalfit.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct ResultDeleter {
  void operator()(mf_result* r) const { mf_result_free(r); }
};
using ResultPtr = std::unique_ptr<mf_result, ResultDeleter>;

// Maps an API status to the process exit code and prints the category.
int report_failure(mf_status st) {
  const char* category = "internal error";
  int code = 1;
  if (st == MF_ERR_CONFIG) {
    category = "config error";
    code = 2;
  } else if (st == MF_ERR_NUMERIC) {
    category = "numerical failure";
    code = 3;
  }
  std::fprintf(stderr, "%s: %s\n", category, mf_last_error());
  return code;
}

// Two-call buffer protocol wrapper for string-returning accessors.
template <typename F>
std::string fetch_string(F&& call) {
  size_t needed = 0;
  if (call(nullptr, 0, &needed) != MF_OK) throw mf_last_error();
  std::string out(needed, '\0');
  if (call(out.data(), out.size(), &needed) != MF_OK) throw mf_last_error();
  out.resize(needed - 1);  // drop the NUL
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Overrides {
  int k = 0;
  int degree = 0;
  int nx = 0;
};

// Applies flag overrides onto the parsed config document. --degree touches
// whichever degree keys the problem kind uses.
std::string apply_overrides(const std::string& config_text, const Overrides& ov) {
  if (ov.k == 0 && ov.degree == 0 && ov.nx == 0) return config_text;
  ordered_json doc = ordered_json::parse(config_text, nullptr, true, true);
  if (ov.k > 0) doc["k"] = ov.k;
  if (ov.degree > 0) {
    if (doc.contains("degree_x") || doc.contains("degree_y")) {
      doc["degree_x"] = ov.degree;
      doc["degree_y"] = ov.degree;
    } else {
      doc["degree"] = ov.degree;
    }
  }
  if (ov.nx > 0) doc["nx"] = ov.nx;
  return doc.dump(2) + "\n";
}

struct RunArtifacts {
  ResultPtr result;
  double wall_seconds = 0.0;
};

RunArtifacts execute(const std::string& config_json) {
  mf_result* raw = nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  const mf_status st = mf_run_json(config_json.c_str(), &raw);
  const auto t1 = std::chrono::steady_clock::now();
  if (st != MF_OK) {
    std::exit(report_failure(st));
  }
  RunArtifacts out;
  out.result.reset(raw);
  out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return out;
}

void write_run_outputs(const mf_result* r, const fs::path& dir, bool modes_out) {
  fs::create_directories(dir);
  write_file(dir / "report.json", fetch_string([&](char* b, size_t c, size_t* n) {
               return mf_result_report_json(r, b, c, n);
             }));
  write_file(dir / "frequencies.csv", fetch_string([&](char* b, size_t c, size_t* n) {
               return mf_result_frequencies_csv(r, b, c, n);
             }));
  if (modes_out) {
    const int k = mf_result_mode_count(r);
    for (int m = 1; m <= k; ++m) {
      write_file(dir / ("mode_" + std::to_string(m) + ".csv"),
                 fetch_string([&](char* b, size_t c, size_t* n) {
                   return mf_result_mode_csv(r, m, b, c, n);
                 }));
    }
  }
}

void print_mode_table(const mf_result* r) {
  const int k = mf_result_mode_count(r);
  std::vector<double> pred(k), exact(k), abs_e(k), rel_e(k);
  mf_result_frequencies(r, pred.data(), pred.size());
  mf_result_exact_frequencies(r, exact.data(), exact.size());
  mf_result_errors(r, abs_e.data(), rel_e.data(), abs_e.size());
  std::printf("%-6s %-18s %-18s %-12s\n", "mode", "omega_predicted", "omega_exact",
              "rel_error");
  for (int i = 0; i < k; ++i)
    std::printf("%-6d %-18.10e %-18.10e %-12.3e\n", i + 1, pred[i], exact[i], rel_e[i]);
}

int cmd_run(const std::string& config_path, const fs::path& out_dir, bool modes_out,
            const Overrides& ov) {
  std::string text = apply_overrides(read_file(config_path), ov);
  RunArtifacts art = execute(text);
  write_run_outputs(art.result.get(), out_dir, modes_out);
  print_mode_table(art.result.get());
  std::printf("wrote %s and %s\n", (out_dir / "report.json").c_str(),
              (out_dir / "frequencies.csv").c_str());
  return 0;
}

int cmd_modes(const std::string& config_path, const fs::path& out_dir, const Overrides& ov) {
  std::string text = apply_overrides(read_file(config_path), ov);
  RunArtifacts art = execute(text);
  fs::create_directories(out_dir);
  const int k = mf_result_mode_count(art.result.get());
  for (int m = 1; m <= k; ++m) {
    const fs::path p = out_dir / ("mode_" + std::to_string(m) + ".csv");
    write_file(p, fetch_string([&](char* b, size_t c, size_t* n) {
                 return mf_result_mode_csv(art.result.get(), m, b, c, n);
               }));
    std::printf("wrote %s\n", p.c_str());
  }
  return 0;
}

int cmd_bench(const fs::path& out_dir, bool modes_out) {
  // Per-benchmark acceptance bounds: max relative frequency error and wall time.
  const double rel_bound[] = {1e-8, 1e-8, 1e-7, 1e-6};
  const double time_bound_s[] = {2.0, 2.0, 2.0, 3.0};
  const int n = mf_benchmark_count();
  bool all_ok = true;
  std::printf("%-10s %-8s %-12s %-12s %-10s %-6s\n", "case", "modes", "max_rel_err",
              "bound", "time_s", "ok");
  for (int i = 0; i < n; ++i) {
    const std::string name = mf_benchmark_name(i);
    const std::string cfg = fetch_string([&](char* b, size_t c, size_t* nd) {
      return mf_benchmark_config(i, b, c, nd);
    });
    RunArtifacts art = execute(cfg);
    write_run_outputs(art.result.get(), out_dir / name, modes_out);

    const int k = mf_result_mode_count(art.result.get());
    std::vector<double> abs_e(k), rel_e(k);
    mf_result_errors(art.result.get(), abs_e.data(), rel_e.data(), abs_e.size());
    double max_rel = 0.0;
    for (double e : rel_e) max_rel = std::max(max_rel, e);

    const bool ok = max_rel <= rel_bound[i] && art.wall_seconds <= time_bound_s[i];
    all_ok = all_ok && ok;
    std::printf("%-10s %-8d %-12.3e %-12.1e %-10.3f %-6s\n", name.c_str(), k, max_rel,
                rel_bound[i], art.wall_seconds, ok ? "yes" : "NO");
  }
  if (!all_ok) {
    std::fprintf(stderr, "acceptance violation: at least one benchmark exceeded its bound\n");
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modalfit: mesh-free modal analysis of beams and acoustic cavities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  bool modes_out = false;
  Overrides ov;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config)
      sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory (default: out)");
    sub->add_option("--k", ov.k, "override number of modes")->check(CLI::PositiveNumber);
    sub->add_option("--degree", ov.degree, "override basis degree")
        ->check(CLI::PositiveNumber);
    sub->add_option("--nx", ov.nx, "override interior point count along x")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one config and write its report");
  add_common(run_cmd, true);
  run_cmd->add_flag("--modes-out", modes_out, "also write per-mode sample CSVs");

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run the four bundled benchmarks and check bounds");
  bench_cmd->add_option("--out", out_dir, "output directory (default: out)");
  bench_cmd->add_flag("--modes-out", modes_out, "also write per-mode sample CSVs");

  CLI::App* modes_cmd =
      app.add_subcommand("modes", "run one config and write only mode-shape samples");
  add_common(modes_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, bad usage is a config error
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_dir, modes_out, ov);
    if (bench_cmd->parsed()) return cmd_bench(out_dir, modes_out);
    if (modes_cmd->parsed()) return cmd_modes(config_path, out_dir, ov);
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const char* msg) {
    std::fprintf(stderr, "internal error: %s\n", msg);
    return 1;
  }
  return 0;
}
