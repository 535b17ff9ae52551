#include <modalfit/modalfit.h>

#include <cstring>
#include <exception>
#include <string>

#include "errors.hpp"
#include "pipeline.hpp"

using namespace modalfit;

struct mf_result {
  RunResult run;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const std::string& msg) { g_last_error = msg; }

// Translate the active exception into a status code + thread-local message.
mf_status from_exception() {
  try {
    throw;
  } catch (const ConfigError& e) {
    set_error(e.what());
    return MF_ERR_CONFIG;
  } catch (const NumericError& e) {
    set_error(e.what());
    return MF_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MF_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return MF_ERR_INTERNAL;
  }
}

// Buffer protocol shared by all string-returning accessors.
mf_status fill_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  const size_t required = s.size() + 1;
  if (needed != nullptr) *needed = required;
  if (buf == nullptr) return MF_OK;
  if (cap < required) {
    set_error("buffer too small: need " + std::to_string(required) + " bytes, have " +
              std::to_string(cap));
    return MF_ERR_ARGUMENT;
  }
  std::memcpy(buf, s.c_str(), required);
  return MF_OK;
}

mf_status fill_doubles(const std::vector<double>& v, double* out, size_t cap) {
  if (out == nullptr) {
    set_error("output array is NULL");
    return MF_ERR_ARGUMENT;
  }
  if (cap < v.size()) {
    set_error("output array too small: need " + std::to_string(v.size()) + " entries");
    return MF_ERR_ARGUMENT;
  }
  std::memcpy(out, v.data(), v.size() * sizeof(double));
  return MF_OK;
}

mf_status bad_handle() {
  set_error("result handle is NULL");
  return MF_ERR_ARGUMENT;
}

// Validate a 1-based mode index against the handle; returns 0-based index or -1.
int check_mode_index(const mf_result* r, int mode_index) {
  const int k = static_cast<int>(r->run.modes.modes.size());
  if (mode_index < 1 || mode_index > k) {
    set_error("mode_index " + std::to_string(mode_index) + " out of range [1, " +
              std::to_string(k) + "]");
    return -1;
  }
  return mode_index - 1;
}

}  // namespace

extern "C" {

int mf_api_version(void) { return MF_API_VERSION; }

const char* mf_last_error(void) { return g_last_error.c_str(); }

mf_status mf_run_json(const char* config_json, mf_result** out) {
  if (config_json == nullptr || out == nullptr) {
    set_error("config_json and out must be non-NULL");
    return MF_ERR_ARGUMENT;
  }
  *out = nullptr;
  try {
    RunConfig cfg = config_from_json(config_json);
    auto* handle = new mf_result{run(cfg)};
    *out = handle;
    return MF_OK;
  } catch (...) {
    return from_exception();
  }
}

int mf_benchmark_count(void) { return benchmark_count(); }

const char* mf_benchmark_name(int idx) {
  if (idx < 0 || idx >= benchmark_count()) return nullptr;
  return benchmark_name(idx);
}

mf_status mf_benchmark_config(int idx, char* buf, size_t cap, size_t* needed) {
  if (idx < 0 || idx >= benchmark_count()) {
    set_error("benchmark index " + std::to_string(idx) + " out of range [0, " +
              std::to_string(benchmark_count() - 1) + "]");
    return MF_ERR_ARGUMENT;
  }
  try {
    return fill_string(config_to_json(benchmark_config(idx)), buf, cap, needed);
  } catch (...) {
    return from_exception();
  }
}

int mf_result_mode_count(const mf_result* r) {
  if (r == nullptr) return -1;
  return static_cast<int>(r->run.modes.modes.size());
}

mf_status mf_result_eigenvalues(const mf_result* r, double* out, size_t cap) {
  if (r == nullptr) return bad_handle();
  std::vector<double> v;
  for (const auto& m : r->run.modes.modes) v.push_back(m.lambda);
  return fill_doubles(v, out, cap);
}

mf_status mf_result_frequencies(const mf_result* r, double* out, size_t cap) {
  if (r == nullptr) return bad_handle();
  return fill_doubles(r->run.omega_pred, out, cap);
}

mf_status mf_result_exact_frequencies(const mf_result* r, double* out, size_t cap) {
  if (r == nullptr) return bad_handle();
  return fill_doubles(r->run.omega_exact, out, cap);
}

mf_status mf_result_errors(const mf_result* r, double* abs_out, double* rel_out, size_t cap) {
  if (r == nullptr) return bad_handle();
  const mf_status sa = fill_doubles(r->run.abs_err, abs_out, cap);
  if (sa != MF_OK) return sa;
  return fill_doubles(r->run.rel_err, rel_out, cap);
}

double mf_result_asymmetry(const mf_result* r) {
  if (r == nullptr) return -1.0;
  return r->run.asymmetry;
}

int mf_result_reduced_dim(const mf_result* r) {
  if (r == nullptr) return -1;
  return r->run.reduced_dim;
}

int mf_result_retained(const mf_result* r) {
  if (r == nullptr) return -1;
  return r->run.modes.retained;
}

int mf_result_filtered(const mf_result* r) {
  if (r == nullptr) return -1;
  return r->run.modes.filtered;
}

int mf_result_ridge_applied(const mf_result* r) {
  if (r == nullptr) return -1;
  return r->run.ridge_applied ? 1 : 0;
}

mf_status mf_result_timings_ms(const mf_result* r, double out[4]) {
  if (r == nullptr) return bad_handle();
  if (out == nullptr) {
    set_error("output array is NULL");
    return MF_ERR_ARGUMENT;
  }
  out[0] = r->run.timings.assembly_ms;
  out[1] = r->run.timings.projection_ms;
  out[2] = r->run.timings.eigensolve_ms;
  out[3] = r->run.timings.reconstruction_ms;
  return MF_OK;
}

mf_status mf_result_report_json(const mf_result* r, char* buf, size_t cap, size_t* needed) {
  if (r == nullptr) return bad_handle();
  try {
    return fill_string(report_json(r->run), buf, cap, needed);
  } catch (...) {
    return from_exception();
  }
}

mf_status mf_result_frequencies_csv(const mf_result* r, char* buf, size_t cap,
                                    size_t* needed) {
  if (r == nullptr) return bad_handle();
  try {
    return fill_string(frequencies_csv(r->run), buf, cap, needed);
  } catch (...) {
    return from_exception();
  }
}

mf_status mf_result_mode_csv(const mf_result* r, int mode_index, char* buf, size_t cap,
                             size_t* needed) {
  if (r == nullptr) return bad_handle();
  if (check_mode_index(r, mode_index) < 0) return MF_ERR_ARGUMENT;
  try {
    return fill_string(mode_csv(r->run, mode_index), buf, cap, needed);
  } catch (...) {
    return from_exception();
  }
}

mf_status mf_result_mode_sample_count(const mf_result* r, int mode_index, size_t* count,
                                      int* dim) {
  if (r == nullptr) return bad_handle();
  const int i = check_mode_index(r, mode_index);
  if (i < 0) return MF_ERR_ARGUMENT;
  const auto& s = r->run.modes.samples[static_cast<size_t>(i)];
  if (count != nullptr) *count = s.values.size();
  if (dim != nullptr) *dim = s.ys.empty() ? 1 : 2;
  return MF_OK;
}

mf_status mf_result_mode_samples(const mf_result* r, int mode_index, double* xs, double* ys,
                                 double* values, size_t cap) {
  if (r == nullptr) return bad_handle();
  const int i = check_mode_index(r, mode_index);
  if (i < 0) return MF_ERR_ARGUMENT;
  const auto& s = r->run.modes.samples[static_cast<size_t>(i)];
  const bool two_d = !s.ys.empty();
  if (xs == nullptr || values == nullptr || (two_d && ys == nullptr)) {
    set_error("xs/values (and ys for 2D) must be non-NULL");
    return MF_ERR_ARGUMENT;
  }
  if (cap < s.values.size()) {
    set_error("output arrays too small: need " + std::to_string(s.values.size()) +
              " entries");
    return MF_ERR_ARGUMENT;
  }
  const size_t n = s.values.size();
  std::memcpy(xs, s.xs.data(), n * sizeof(double));
  if (two_d) std::memcpy(ys, s.ys.data(), n * sizeof(double));
  std::memcpy(values, s.values.data(), n * sizeof(double));
  return MF_OK;
}

void mf_result_free(mf_result* r) { delete r; }

}  // extern "C"
