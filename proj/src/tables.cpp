#include "spinmetro/tables.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "spinmetro/parallel.hpp"

namespace spinmetro {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

void add_param(Table& t, const std::string& key, double v) {
  t.params.emplace_back(key, format_value(v));
}

NoiseModel colored_wz0(double w0_tc) {
  return NoiseModel::ornstein_uhlenbeck(w0_tc * w0_tc, 1.0);
}
NoiseModel colored_iso(double w0_tc) {
  return NoiseModel::ornstein_uhlenbeck(w0_tc * w0_tc, 1.0, w0_tc * w0_tc, 1.0);
}
// White-noise limit at matched strength: 1/T = w0^2 tau_c.
NoiseModel white_wz0(double w0_tc) { return NoiseModel::white(w0_tc * w0_tc); }
NoiseModel white_iso(double w0_tc) {
  return NoiseModel::white(w0_tc * w0_tc, w0_tc * w0_tc);
}

}  // namespace

std::string format_value(double v) { return fmt("%.12g", v); }

std::string to_csv(const Table& table) {
  std::string out;
  for (size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (std::holds_alternative<double>(row[i]))
        out += format_value(std::get<double>(row[i]));
      else
        out += std::get<std::string>(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["command"] = table.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.params) params[key] = value;
  j["params"] = params;
  j["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell))
        r.push_back(std::get<double>(cell));
      else
        r.push_back(std::get<std::string>(cell));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::vector<double> default_gamma_grid(int points_per_decade) {
  std::vector<double> gammas{0.0};
  const int total = 4 * points_per_decade + 1;
  for (int i = 0; i < total; ++i) {
    const double expo = -2.0 + 4.0 * i / (total - 1);
    gammas.push_back(-std::pow(10.0, expo));
  }
  return gammas;
}

NoiseModel make_noise_model(NoiseKind kind, double w0_tc, ZMode z_mode,
                            double wz_w0tc, double wz_tcz) {
  const double vp = w0_tc * w0_tc;
  if (kind == NoiseKind::kWhite) {
    switch (z_mode) {
      case ZMode::kZero: return NoiseModel::white(vp);
      case ZMode::kIsotropic: return NoiseModel::white(vp, vp);
      case ZMode::kCustom:
        return NoiseModel::white(vp, wz_w0tc * wz_w0tc * wz_tcz);
    }
  }
  switch (z_mode) {
    case ZMode::kZero: return NoiseModel::ornstein_uhlenbeck(vp, 1.0);
    case ZMode::kIsotropic: return NoiseModel::ornstein_uhlenbeck(vp, 1.0, vp, 1.0);
    case ZMode::kCustom:
      return NoiseModel::ornstein_uhlenbeck(vp, 1.0, wz_w0tc * wz_w0tc, wz_tcz);
  }
  throw std::invalid_argument("make_noise_model: unknown mode");
}

Table damping_table(double w0_tc, const std::vector<double>& omega_tc_list,
                    const std::vector<double>& t_grid) {
  Table t;
  t.command = "damping";
  add_param(t, "w0_tc", w0_tc);
  t.columns.push_back("t_over_tc");
  for (double o : omega_tc_list)
    t.columns.push_back("damping_omega_tc_" + fmt("%g", o));
  t.columns.push_back("damping_white");
  const NoiseModel ou = colored_wz0(w0_tc);
  const NoiseModel wn = white_wz0(w0_tc);
  for (double time : t_grid) {
    std::vector<Cell> row{time};
    for (double o : omega_tc_list) {
      const double gp = gamma(ou, NoiseChannel::kPerpendicular, time, o).real();
      row.emplace_back(std::exp(-gp));
    }
    row.emplace_back(
        std::exp(-gamma(wn, NoiseChannel::kPerpendicular, time, 0.0).real()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table qfi_sweep_table(int n, const std::vector<double>& gammas, double tau,
                      double w0_tc, double omega_tc, int n_threads) {
  Table t;
  t.command = "qfi-sweep";
  add_param(t, "n", n);
  add_param(t, "tau_over_tc", tau);
  add_param(t, "w0_tc", w0_tc);
  add_param(t, "omega_tc", omega_tc);
  t.columns = {"gamma",
               "fq_tau2_noiseless",
               "fq_tau2_colored_wz0",
               "fq_tau2_white_wz0",
               "fq_tau2_colored_iso",
               "fq_tau2_white_iso"};
  const SpinSystem sys(n);
  const TensorBasis basis(sys);
  const double tau2 = tau * tau;
  const NoiseModel models[] = {NoiseModel::none(), colored_wz0(w0_tc),
                               white_wz0(w0_tc), colored_iso(w0_tc),
                               white_iso(w0_tc)};
  t.rows.resize(gammas.size());
  parallel_for(
      static_cast<int>(gammas.size()),
      [&](int i) {
        const Matrix rho0 = make_bh_ground(sys, gammas[i]);
        std::vector<Cell> row{gammas[i]};
        for (const NoiseModel& model : models) {
          const EvolutionSpec spec{sys, rho0, model, omega_tc, tau};
          row.emplace_back(qfi_exact(spec, basis) / tau2);
        }
        t.rows[i] = std::move(row);
      },
      n_threads);
  return t;
}

Table km_map_table(int n, const std::vector<double>& gammas, int n_threads) {
  Table t;
  t.command = "km-map";
  add_param(t, "n", n);
  t.columns = {"gamma", "m", "km"};
  const SpinSystem sys(n);
  const TensorBasis basis(sys);
  std::vector<RealVector> kms(gammas.size());
  parallel_for(
      static_cast<int>(gammas.size()),
      [&](int i) {
        kms[i] = km_distribution(basis, make_bh_ground(sys, gammas[i]));
      },
      n_threads);
  for (size_t i = 0; i < gammas.size(); ++i)
    for (int m = 0; m <= n; ++m)
      t.rows.push_back({gammas[i], double(m), kms[i](m)});
  return t;
}

Table cfi_imbalance_table(int n, const std::vector<double>& gammas, double tau,
                          const NoiseModel& noisy,
                          const std::vector<double>& omega_tc_list,
                          int n_threads) {
  Table t;
  t.command = "cfi-imbalance";
  add_param(t, "n", n);
  add_param(t, "tau_over_tc", tau);
  t.params.emplace_back("noise",
                        noisy.kind == NoiseKind::kWhite ? "white" : "ou");
  t.columns = {"gamma", "omega_tc", "fq_tau2", "f_tau2"};
  const SpinSystem sys(n);
  const TensorBasis basis(sys);
  const double tau2 = tau * tau;
  const NoiseModel& model = noisy;
  const int n_omega = static_cast<int>(omega_tc_list.size());
  const int n_gamma = static_cast<int>(gammas.size());
  t.rows.resize(size_t(n_omega) * n_gamma);
  parallel_for(
      n_omega * n_gamma,
      [&](int idx) {
        const int oi = idx / n_gamma;
        const int gi = idx % n_gamma;
        const Matrix rho0 = make_bh_ground(sys, gammas[gi]);
        const EvolutionSpec spec{sys, rho0, model, omega_tc_list[oi], tau};
        t.rows[idx] = {gammas[gi], omega_tc_list[oi],
                       qfi_exact(spec, basis) / tau2,
                       cfi_imbalance(spec, basis, Pulse::kHalfPiX) / tau2};
      },
      n_threads);
  return t;
}

Table ftilde_table(int n, const std::vector<double>& gammas, double tau,
                   const NoiseModel& noisy, double omega_tc, int n_threads) {
  Table t;
  t.command = "ftilde";
  add_param(t, "n", n);
  add_param(t, "tau_over_tc", tau);
  add_param(t, "omega_tc", omega_tc);
  t.params.emplace_back("noise",
                        noisy.kind == NoiseKind::kWhite ? "white" : "ou");
  t.columns = {"gamma", "ftilde_tau2_noisy", "ftilde_tau2_noiseless", "fq_tau2_noisy"};
  const SpinSystem sys(n);
  const TensorBasis basis(sys);
  const double tau2 = tau * tau;
  t.rows.resize(gammas.size());
  parallel_for(
      static_cast<int>(gammas.size()),
      [&](int i) {
        const Matrix rho0 = make_bh_ground(sys, gammas[i]);
        const EvolutionSpec spec{sys, rho0, noisy, omega_tc, tau};
        const EvolutionSpec clean{sys, rho0, NoiseModel::none(), omega_tc, tau};
        t.rows[i] = {gammas[i], ftilde_density(spec) / tau2,
                     ftilde_density(clean) / tau2, qfi_exact(spec, basis) / tau2};
      },
      n_threads);
  return t;
}

Table mc_validate_table(int n, double w0_tc, double omega_tc, int n_traj,
                        double dt, std::uint64_t seed, int n_threads) {
  Table t;
  t.command = "mc-validate";
  add_param(t, "n", n);
  add_param(t, "w0_tc", w0_tc);
  add_param(t, "omega_tc", omega_tc);
  add_param(t, "n_traj", n_traj);
  add_param(t, "seed", double(seed));
  t.columns = {"case",         "t_over_tc",      "trace_distance",
               "stderr_scale", "max_dev_sigmas", "threshold",
               "pass"};
  const SpinSystem sys(n);
  const TensorBasis basis(sys);
  const Matrix noon = make_noon(sys);

  struct Case {
    std::string name;
    NoiseModel model;
    double time;
    bool entrywise;  // per-entry 3 sigma instead of trace distance
    double threshold;
  };
  const double v = w0_tc * w0_tc;
  std::vector<Case> cases;
  cases.push_back({"unitary", NoiseModel::none(), 1.0, false, 1e-10});
  for (double time : {0.5, 1.0, 2.0})
    cases.push_back({"z_only", NoiseModel::ornstein_uhlenbeck(0.0, 1.0, v, 1.0),
                     time, true, 3.0});
  cases.push_back({"isotropic", colored_iso(w0_tc), 0.25, false, 0.02});

  for (const Case& c : cases) {
    const EvolutionSpec spec{sys, noon, c.model, omega_tc, c.time};
    MCConfig mc;
    mc.n_traj = c.name == "unitary" ? 1 : n_traj;
    mc.dt = dt;
    mc.seed = seed;
    mc.n_threads = n_threads;
    mc.n_batches = std::min(20, mc.n_traj);
    const MCResult res = evolve_montecarlo(spec, mc);
    const Matrix ana = evolve_analytic(spec, basis);
    const double dist = trace_distance(res.rho_mean, ana);
    double max_sigmas = 0.0;
    if (c.entrywise) {
      const Matrix dev = res.rho_mean - ana;
      for (int a = 0; a < sys.dim(); ++a)
        for (int b = 0; b < sys.dim(); ++b) {
          const double floor = 1e-12;
          max_sigmas = std::max(
              max_sigmas, std::abs(dev(a, b).real()) /
                              std::max(res.stderr_re(a, b), floor));
          max_sigmas = std::max(
              max_sigmas, std::abs(dev(a, b).imag()) /
                              std::max(res.stderr_im(a, b), floor));
        }
    }
    const bool pass = c.entrywise
                          ? max_sigmas <= c.threshold
                          : dist <= std::max(c.threshold, 5.0 * res.stderr_scale);
    t.rows.push_back({c.name, c.time, dist, res.stderr_scale, max_sigmas,
                      c.threshold, pass ? 1.0 : 0.0});
  }
  return t;
}

}  // namespace spinmetro
