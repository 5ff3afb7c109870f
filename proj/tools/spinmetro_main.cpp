#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmetro/tables.hpp"

namespace {

using namespace spinmetro;

struct Options {
  int n = 100;
  double gamma = std::numeric_limits<double>::quiet_NaN();  // NaN: use the grid
  std::string gamma_grid;  // "lo:hi:count" over |gamma|, log-spaced
  double omega_tc = 10.0;
  double w0_tc = 1.0;
  double tau_over_tc = 0.5;
  std::string noise = "ou";
  std::string wz = "0";
  double wz_w0tc = 0.0;
  double wz_tcz = 1.0;
  int ntraj = 10000;
  double dt = 0.0;
  std::uint64_t seed = 12345;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

std::vector<double> gamma_values(const Options& opt) {
  if (!std::isnan(opt.gamma)) {
    if (opt.gamma > 0.0) throw std::invalid_argument("--gamma must be <= 0");
    return {opt.gamma};
  }
  if (opt.gamma_grid.empty()) return default_gamma_grid();
  double lo = 0.0, hi = 0.0;
  int count = 0;
  if (std::sscanf(opt.gamma_grid.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
      count < 2 || lo <= 0.0 || hi <= lo)
    throw std::invalid_argument("--gamma-grid expects lo:hi:count over |gamma|, lo > 0");
  std::vector<double> gammas{0.0};
  for (int i = 0; i < count; ++i) {
    const double expo =
        std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (count - 1);
    gammas.push_back(-std::pow(10.0, expo));
  }
  return gammas;
}

NoiseModel noisy_model(const Options& opt) {
  const NoiseKind kind =
      opt.noise == "white" ? NoiseKind::kWhite : NoiseKind::kOrnsteinUhlenbeck;
  ZMode mode = ZMode::kZero;
  if (opt.wz == "isotropic") mode = ZMode::kIsotropic;
  if (opt.wz == "custom") mode = ZMode::kCustom;
  return make_noise_model(kind, opt.w0_tc, mode, opt.wz_w0tc, opt.wz_tcz);
}

void write_output(const Table& table, const Options& opt) {
  const std::string text = opt.format == "json" ? to_json(table) : to_csv(table);
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + opt.out);
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spinmetro: collective-spin decoherence under colored Gaussian noise "
      "and the resulting phase-estimation sensitivities"};
  app.set_config("--config", "", "flat key=value config file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();  // shared options may follow the subcommand

  Options opt;
  app.add_option("--n", opt.n, "particle number N")->check(CLI::PositiveNumber);
  app.add_option("--gamma", opt.gamma, "single gamma = U/(N E_J) <= 0");
  app.add_option("--gamma-grid", opt.gamma_grid,
                 "log grid over |gamma|: lo:hi:count (default 1e-2..1e2)");
  app.add_option("--omega-tc", opt.omega_tc, "Omega tau_c");
  app.add_option("--w0-tc", opt.w0_tc, "omega_0 tau_c of the perpendicular channel");
  app.add_option("--tau-over-tc", opt.tau_over_tc, "imprint time tau / tau_c");
  app.add_option("--noise", opt.noise, "noise kind for cfi-imbalance/ftilde: ou|white")
      ->check(CLI::IsMember({"ou", "white"}));
  app.add_option("--wz", opt.wz, "z channel: 0|isotropic|custom")
      ->check(CLI::IsMember({"0", "isotropic", "custom"}));
  app.add_option("--wz-w0tc", opt.wz_w0tc, "custom z channel omega_0 tau_c");
  app.add_option("--wz-tcz", opt.wz_tcz, "custom z channel tau_cz / tau_c");
  app.add_option("--ntraj", opt.ntraj, "Monte-Carlo trajectories")
      ->check(CLI::PositiveNumber);
  app.add_option("--dt", opt.dt, "Monte-Carlo step (0 = auto)");
  app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  app.add_option("--out", opt.out, "output path (default stdout)");
  app.add_option("--format", opt.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* damping = app.add_subcommand(
      "damping", "damping factor exp(-Gamma_+) vs time for several Omega tau_c");
  CLI::App* qfi_sweep = app.add_subcommand(
      "qfi-sweep", "QFI/tau^2 across the two-well ground-state family");
  CLI::App* km_map =
      app.add_subcommand("km-map", "K_m tensor-weight distribution of the inputs");
  CLI::App* cfi = app.add_subcommand(
      "cfi-imbalance", "pulsed population-imbalance CFI vs QFI");
  CLI::App* ftilde =
      app.add_subcommand("ftilde", "one-body-density sensitivity vs QFI");
  CLI::App* mc_validate = app.add_subcommand(
      "mc-validate", "Monte-Carlo cross-check of the analytic evolution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Table table;
    if (damping->parsed()) {
      std::vector<double> t_grid;
      for (int i = 0; i <= 100; ++i) t_grid.push_back(0.05 * i);
      table = damping_table(opt.w0_tc, {0.0, 2.5, 10.0}, t_grid);
    } else if (qfi_sweep->parsed()) {
      table = qfi_sweep_table(opt.n, gamma_values(opt), opt.tau_over_tc,
                              opt.w0_tc, opt.omega_tc, opt.threads);
    } else if (km_map->parsed()) {
      table = km_map_table(opt.n, gamma_values(opt), opt.threads);
    } else if (cfi->parsed()) {
      table = cfi_imbalance_table(opt.n, gamma_values(opt), opt.tau_over_tc,
                                  noisy_model(opt), {2.5, 5.0, 10.0},
                                  opt.threads);
    } else if (ftilde->parsed()) {
      table = ftilde_table(opt.n, gamma_values(opt), opt.tau_over_tc,
                           noisy_model(opt), opt.omega_tc, opt.threads);
    } else if (mc_validate->parsed()) {
      table = mc_validate_table(opt.n, opt.w0_tc, opt.omega_tc, opt.ntraj,
                                opt.dt, opt.seed, opt.threads);
    }
    write_output(table, opt);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
