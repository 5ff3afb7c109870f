#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spinmetro/metrology.hpp"

namespace spinmetro {

using Cell = std::variant<double, std::string>;

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// 12 significant digits, fixed across the code base so identical runs emit
// byte-identical files.
std::string format_value(double v);
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// gamma = 0 followed by -|gamma| log-spaced over [1e-2, 1e2].
std::vector<double> default_gamma_grid(int points_per_decade = 6);

// z-channel selection for the commands that take one noise model.
enum class ZMode { kZero, kIsotropic, kCustom };

// Times in units of the perpendicular tau_c; strengths as omega_0 tau_c.
// OU: kappa_perp = (w0_tc)^2 exp(-|t|), z analogous with (wz_w0tc, wz_tcz).
// White: matched rates 1/T = (omega_0 tau_c)^2 per channel.
NoiseModel make_noise_model(NoiseKind kind, double w0_tc, ZMode z_mode,
                            double wz_w0tc = 0.0, double wz_tcz = 1.0);

// Times are in units of tau_c of the perpendicular channel (tau_c = 1
// internally); omega_tc = Omega tau_c, w0_tc = omega_0 tau_c.

// exp(-Gamma_+) vs t for several Omega tau_c, with the white-noise reference
// exp(-w0_tc^2 t).
Table damping_table(double w0_tc, const std::vector<double>& omega_tc_list,
                    const std::vector<double>& t_grid);

// QFI per tau^2 across the two-well ground-state family: noiseless, colored
// and white noise with w_z = 0, and the isotropic variants.
Table qfi_sweep_table(int n, const std::vector<double>& gammas, double tau,
                      double w0_tc, double omega_tc, int n_threads = 0);

// K_m distribution of the initial state across the family.
Table km_map_table(int n, const std::vector<double>& gammas, int n_threads = 0);

// Pulsed population-imbalance CFI vs QFI under the given noisy model.
Table cfi_imbalance_table(int n, const std::vector<double>& gammas, double tau,
                          const NoiseModel& noisy,
                          const std::vector<double>& omega_tc_list,
                          int n_threads = 0);

// One-body-density sensitivity, noisy and noiseless, with the QFI reference.
Table ftilde_table(int n, const std::vector<double>& gammas, double tau,
                   const NoiseModel& noisy, double omega_tc, int n_threads = 0);

// Monte-Carlo cross-validation of the analytic engine: exact unitary case,
// commuting (z-only) case checked entrywise against 3 standard errors, and
// the isotropic short-time case checked by trace distance.
Table mc_validate_table(int n, double w0_tc, double omega_tc, int n_traj,
                        double dt, std::uint64_t seed, int n_threads = 0);

}  // namespace spinmetro
