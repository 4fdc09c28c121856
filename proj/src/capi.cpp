#include "tail_lab.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "taillab/resonance.hpp"
#include "taillab/runner.hpp"

using namespace taillab;

struct tl_rate_table {
  RateTable table;
};
struct tl_resonance_family {
  ResonanceFamily family;
};
struct tl_run_config {
  RunConfig config;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
tl_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
      case Error::Kind::InvalidArgument:
      case Error::Kind::Degenerate:
        return TL_EINVAL;
      case Error::Kind::Numeric:
        return TL_ENUMERIC;
    }
    return TL_ENUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TL_ENUMERIC;
  }
}

tl_status einval(const char* msg) {
  g_last_error = msg;
  return TL_EINVAL;
}

Problem parse_problem(const char* problem) {
  const std::string p = problem ? problem : "";
  if (p == "wave") return Problem::Wave;
  if (p == "dirac") return Problem::Dirac;
  throw InvalidArgumentError("problem must be 'wave' or 'dirac'");
}

// Append the stage log to <output_dir>/run.log, optionally echoing to stdout.
tl_status run_stage(const tl_run_config* config, int echo, int* all_pass,
                    int stage) {
  if (!config) return einval("null config");
  return guarded([&]() -> tl_status {
    std::ostringstream log;
    bool pass = true;
    switch (stage) {
      case 0: cmd_simulate(config->config, log); break;
      case 1: pass = cmd_verify(config->config, log).all_pass; break;
      default: cmd_report(config->config, log); break;
    }
    std::ofstream(config->config.output_dir + "/run.log", std::ios::app)
        << log.str();
    if (echo) std::fputs(log.str().c_str(), stdout);
    if (all_pass) *all_pass = pass ? 1 : 0;
    if (!pass) {
      g_last_error = "verification failed";
      return TL_EVERIFY;
    }
    return TL_OK;
  });
}

}  // namespace

extern "C" {

const char* tl_last_error(void) { return g_last_error.c_str(); }

tl_status tl_ln_gamma(double re, double im, double* out_re, double* out_im) {
  if (!out_re || !out_im) return einval("null output pointer");
  return guarded([&]() -> tl_status {
    const Complex v = ln_gamma(Complex(re, im));
    *out_re = v.real();
    *out_im = v.imag();
    return TL_OK;
  });
}

tl_status tl_hyp2f1(double a_re, double a_im, double b_re, double b_im,
                    double c_re, double c_im, double x, double* out_re,
                    double* out_im) {
  if (!out_re || !out_im) return einval("null output pointer");
  return guarded([&]() -> tl_status {
    const Complex v = hyp2f1(Complex(a_re, a_im), Complex(b_re, b_im),
                             Complex(c_re, c_im), x);
    *out_re = v.real();
    *out_im = v.imag();
    return TL_OK;
  });
}

tl_status tl_rate_table_create(const char* problem, int n, double coupling,
                               int mode_max, tl_rate_table** out) {
  if (!out) return einval("null output pointer");
  return guarded([&]() -> tl_status {
    RateTable table =
        predicted_rates(parse_problem(problem), n, coupling, mode_max);
    *out = new tl_rate_table{std::move(table)};
    return TL_OK;
  });
}

void tl_rate_table_destroy(tl_rate_table* table) { delete table; }

tl_status tl_rate_table_rates(const tl_rate_table* table, double* rate_C_plus,
                              double* rate_tf_plus, int* sharpness_notice) {
  if (!table) return einval("null table");
  if (rate_C_plus) *rate_C_plus = table->table.rate_C_plus;
  if (rate_tf_plus) *rate_tf_plus = table->table.rate_tf_plus;
  if (sharpness_notice) *sharpness_notice = table->table.sharpness_notice ? 1 : 0;
  return TL_OK;
}

tl_status tl_rate_table_mode_count(const tl_rate_table* table, int* count) {
  if (!table || !count) return einval("null argument");
  *count = static_cast<int>(table->table.per_mode.size());
  return TL_OK;
}

tl_status tl_rate_table_mode_row(const tl_rate_table* table, int index,
                                 int* mode, double* rate_C_plus,
                                 double* rate_tf_plus, int* exceptional) {
  if (!table) return einval("null table");
  if (index < 0 || index >= static_cast<int>(table->table.per_mode.size()))
    return einval("mode row index out of range");
  const RateRow& row = table->table.per_mode[index];
  if (mode) *mode = row.mode;
  if (rate_C_plus) *rate_C_plus = row.rate_C_plus;
  if (rate_tf_plus) *rate_tf_plus = row.rate_tf_plus;
  if (exceptional) *exceptional = row.exceptional ? 1 : 0;
  return TL_OK;
}

tl_status tl_resonances_closed_form(int n, double coupling, int j, int kmax,
                                    tl_resonance_family** out) {
  if (!out) return einval("null output pointer");
  return guarded([&]() -> tl_status {
    ResonanceFamily family =
        closed_form_resonances(ModeSpec::wave(n, coupling, j), kmax);
    *out = new tl_resonance_family{std::move(family)};
    return TL_OK;
  });
}

void tl_resonances_destroy(tl_resonance_family* family) { delete family; }

tl_status tl_resonances_count(const tl_resonance_family* family, int* count) {
  if (!family || !count) return einval("null argument");
  *count = static_cast<int>(family->family.resonances.size());
  return TL_OK;
}

tl_status tl_resonances_get(const tl_resonance_family* family, int index,
                            double* re, double* im) {
  if (!family) return einval("null family");
  if (index < 0 || index >= static_cast<int>(family->family.resonances.size()))
    return einval("resonance index out of range");
  const Complex& z = family->family.resonances[index];
  if (re) *re = z.real();
  if (im) *im = z.imag();
  return TL_OK;
}

tl_status tl_resonances_locate(int n, double coupling, int j, double re_lo,
                               double re_hi, double im_lo, double im_hi,
                               int grid, double* out_re, double* out_im,
                               int capacity, int* found) {
  if (!out_re || !out_im || !found || capacity < 0)
    return einval("bad output buffer");
  return guarded([&]() -> tl_status {
    const auto zeros = locate_resonances_numeric(
        ModeSpec::wave(n, coupling, j), {re_lo, re_hi, im_lo, im_hi}, grid);
    *found = static_cast<int>(zeros.size());
    for (int i = 0; i < capacity && i < *found; ++i) {
      out_re[i] = zeros[i].real();
      out_im[i] = zeros[i].imag();
    }
    return TL_OK;
  });
}

tl_status tl_config_parse(const char* json_text, tl_run_config** out) {
  if (!json_text || !out) return einval("null argument");
  return guarded([&]() -> tl_status {
    *out = new tl_run_config{parse_config(json_text)};
    return TL_OK;
  });
}

tl_status tl_config_load(const char* path, tl_run_config** out) {
  if (!path || !out) return einval("null argument");
  return guarded([&]() -> tl_status {
    *out = new tl_run_config{load_config_file(path)};
    return TL_OK;
  });
}

void tl_config_destroy(tl_run_config* config) { delete config; }

tl_status tl_simulate(const tl_run_config* config, int echo) {
  return run_stage(config, echo, nullptr, 0);
}

tl_status tl_verify(const tl_run_config* config, int echo, int* all_pass) {
  return run_stage(config, echo, all_pass, 1);
}

tl_status tl_report(const tl_run_config* config, int echo) {
  return run_stage(config, echo, nullptr, 2);
}

}  // extern "C"
