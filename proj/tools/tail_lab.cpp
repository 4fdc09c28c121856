// tail-lab: resonance lattices, decay-rate tables, radial evolutions and
// late-time tail verification, driven by flags or a JSON config.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tail_lab.h"

namespace {

int fail(tl_status status) {
  std::fprintf(stderr, "error: %s\n", tl_last_error());
  return static_cast<int>(status);
}

bool parse_complex(const std::string& text, double* re, double* im) {
  *re = 0.0;
  *im = 0.0;
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      *re = std::stod(text);
    } else {
      *re = std::stod(text.substr(0, comma));
      *im = std::stod(text.substr(comma + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int run_hypergeo(const std::string& a, const std::string& b,
                 const std::string& c, double x) {
  double ar, ai, br, bi, cr, ci;
  if (!parse_complex(a, &ar, &ai) || !parse_complex(b, &br, &bi) ||
      !parse_complex(c, &cr, &ci)) {
    std::fprintf(stderr, "error: complex flags take the form \"re\" or \"re,im\"\n");
    return 2;
  }
  double re, im;
  const tl_status status = tl_hyp2f1(ar, ai, br, bi, cr, ci, x, &re, &im);
  if (status != TL_OK) return fail(status);
  std::printf("%.15g %+.15gi\n", re, im);
  return 0;
}

int run_rates(const std::string& problem, int n, double coupling, int jmax,
              bool csv) {
  tl_rate_table* table = nullptr;
  tl_status status = tl_rate_table_create(problem.c_str(), n, coupling, jmax, &table);
  if (status != TL_OK) return fail(status);
  double rate_C, rate_tf;
  int notice = 0, count = 0;
  tl_rate_table_rates(table, &rate_C, &rate_tf, &notice);
  tl_rate_table_mode_count(table, &count);
  if (csv) {
    std::printf("mode,rate_C_plus,rate_tf_plus,exceptional\n");
  } else {
    std::printf("problem %s, n = %d, coupling = %g\n", problem.c_str(), n, coupling);
    std::printf("rays r = gamma t  : t^-%.9f\n", rate_C);
    std::printf("fixed spatial pts : t^-%.9f\n", rate_tf);
    std::printf("%-6s %-14s %-14s %s\n", "mode", "C_plus", "tf_plus", "flags");
  }
  for (int i = 0; i < count; ++i) {
    int mode, exceptional;
    double mc, mtf;
    tl_rate_table_mode_row(table, i, &mode, &mc, &mtf, &exceptional);
    if (csv)
      std::printf("%d,%.12g,%.12g,%d\n", mode, mc, mtf, exceptional);
    else
      std::printf("%-6d %-14.9f %-14.9f %s\n", mode, mc, mtf,
                  exceptional ? "exceptional (no timelike-infinity tail)" : "");
  }
  if (notice && !csv) std::printf("notice: sharpness not asserted at zero coupling\n");
  tl_rate_table_destroy(table);
  return 0;
}

int run_resonances(int n, double coupling, int jmax, int kmax, bool numeric) {
  for (int j = 0; j <= jmax; ++j) {
    tl_resonance_family* family = nullptr;
    tl_status status = tl_resonances_closed_form(n, coupling, j, kmax, &family);
    if (status != TL_OK) return fail(status);
    int count = 0;
    tl_resonances_count(family, &count);
    std::printf("j = %d:", j);
    double im_min = 0.0;
    for (int k = 0; k < count; ++k) {
      double re, im;
      tl_resonances_get(family, k, &re, &im);
      std::printf(" %+.9f%+.9fi", re, im);
      im_min = im < im_min ? im : im_min;
    }
    std::printf("\n");
    tl_resonances_destroy(family);

    if (numeric) {
      const int capacity = kmax + 2;
      std::vector<double> re(capacity), im(capacity);
      int found = 0;
      status = tl_resonances_locate(n, coupling, j, -0.5, 0.5, im_min - 0.25,
                                    -0.25, 32, re.data(), im.data(), capacity,
                                    &found);
      if (status != TL_OK) return fail(status);
      std::printf("  numeric (%d found):", found);
      double worst = 0.0;
      for (int i = 0; i < found && i < capacity; ++i) {
        std::printf(" %+.9f%+.9fi", re[i], im[i]);
        // deviation against the closed-form lattice point with matching k
        tl_resonance_family* check = nullptr;
        tl_resonances_closed_form(n, coupling, j, kmax, &check);
        int cc = 0;
        tl_resonances_count(check, &cc);
        double best = 1e300;
        for (int k = 0; k < cc; ++k) {
          double cre, cim;
          tl_resonances_get(check, k, &cre, &cim);
          const double d = std::hypot(cre - re[i], cim - im[i]);
          best = d < best ? d : best;
        }
        tl_resonances_destroy(check);
        worst = best > worst ? best : worst;
      }
      std::printf("\n  max deviation from closed form: %.3e\n", worst);
    }
  }
  return 0;
}

int run_pipeline(const std::string& config_path, int stage) {
  tl_run_config* config = nullptr;
  tl_status status = tl_config_load(config_path.c_str(), &config);
  if (status != TL_OK) return fail(status);
  int all_pass = 1;
  switch (stage) {
    case 0: status = tl_simulate(config, 1); break;
    case 1: status = tl_verify(config, 1, &all_pass); break;
    default: status = tl_report(config, 1); break;
  }
  tl_config_destroy(config);
  if (status == TL_EVERIFY) return 1;  // verdicts already printed
  if (status != TL_OK) return fail(status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"late-time tail laboratory"};
  app.require_subcommand(1);

  auto* res = app.add_subcommand("resonances", "resonance lattice of a wave sector");
  int res_n = 3, res_jmax = 0, res_kmax = 3;
  double res_coupling = 1.0;
  bool res_numeric = false;
  res->add_option("--n", res_n, "spatial dimension");
  res->add_option("--coupling", res_coupling, "inverse-square coupling");
  res->add_option("--jmax", res_jmax, "largest mode number");
  res->add_option("--kmax", res_kmax, "largest lattice index");
  res->add_flag("--numeric", res_numeric, "also locate zeros numerically");

  auto* rates = app.add_subcommand("rates", "predicted decay-rate table");
  std::string rates_problem = "wave";
  int rates_n = 3, rates_jmax = 5;
  double rates_coupling = 0.0, rates_Z = 0.0;
  bool rates_csv = false;
  rates->add_option("--problem", rates_problem, "wave or dirac")
      ->check(CLI::IsMember({"wave", "dirac"}));
  rates->add_option("--n", rates_n, "spatial dimension (wave)");
  auto* opt_coupling = rates->add_option("--coupling", rates_coupling, "coupling f");
  auto* opt_Z = rates->add_option("--Z", rates_Z, "charge Z");
  opt_coupling->excludes(opt_Z);
  rates->add_option("--jmax", rates_jmax, "modes listed");
  rates->add_flag("--csv", rates_csv, "CSV output");

  auto* hyp = app.add_subcommand("hypergeo", "evaluate the hypergeometric function");
  std::string hyp_a = "1", hyp_b = "1", hyp_c = "2";
  double hyp_x = 0.0;
  hyp->add_option("--a", hyp_a, "parameter a as re or re,im");
  hyp->add_option("--b", hyp_b, "parameter b");
  hyp->add_option("--c", hyp_c, "parameter c");
  hyp->add_option("--x", hyp_x, "argument in [0,1)")->required();

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "run the configured evolutions");
  sim->add_option("--config", config_path, "JSON config file")->required();
  auto* ver = app.add_subcommand("verify", "fit tails and check predicted rates");
  ver->add_option("--config", config_path, "JSON config file")->required();
  auto* rep = app.add_subcommand("report", "emit log-log SVG plots");
  rep->add_option("--config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (res->parsed())
    return run_resonances(res_n, res_coupling, res_jmax, res_kmax, res_numeric);
  if (rates->parsed())
    return run_rates(rates_problem, rates_n,
                     opt_Z->count() ? rates_Z : rates_coupling, rates_jmax,
                     rates_csv);
  if (hyp->parsed()) return run_hypergeo(hyp_a, hyp_b, hyp_c, hyp_x);
  if (sim->parsed()) return run_pipeline(config_path, 0);
  if (ver->parsed()) return run_pipeline(config_path, 1);
  if (rep->parsed()) return run_pipeline(config_path, 2);
  return 2;
}
