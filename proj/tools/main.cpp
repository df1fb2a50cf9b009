#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <spingyro/cli/commands.hpp>

namespace {

using spingyro::HalfInt;
using namespace spingyro::cli;

// Raw flag values; merged over the config file only where actually given.
struct FlagSet {
  std::optional<std::string> config;
  std::optional<int> n;
  std::optional<std::string> s, i, mode, s_total, m_i, initial_file;
  std::optional<std::string> pulse, phi_grid, out, j;
  std::optional<double> omega0_tau, t_min, t_max, from, to;
  std::optional<int> steps, points, n_max;
  bool oracle = false, corrupt = false;
};

RunConfig make_config(const FlagSet& f) {
  RunConfig cfg;
  if (f.config) apply_config_file(cfg, *f.config);
  if (f.n) cfg.n = *f.n;
  if (f.s) cfg.s = HalfInt::parse(*f.s);
  if (f.i) cfg.i = HalfInt::parse(*f.i);
  if (f.mode) cfg.mode = parse_mode(*f.mode);
  if (f.s_total) cfg.s_total = HalfInt::parse(*f.s_total);
  if (f.m_i) cfg.m_i = HalfInt::parse(*f.m_i);
  if (f.initial_file) cfg.initial_file = *f.initial_file;
  if (f.pulse) cfg.pulse_spec = *f.pulse;
  if (f.omega0_tau) cfg.omega0_tau = *f.omega0_tau;
  if (f.t_min) cfg.t_min = *f.t_min;
  if (f.t_max) cfg.t_max = *f.t_max;
  if (f.steps) cfg.steps = *f.steps;
  if (f.phi_grid) cfg.phi_grid = parse_phi_grid(*f.phi_grid);
  if (f.oracle) cfg.oracle = true;
  if (f.out) cfg.out_format = *f.out;
  if (f.from) cfg.sweep_from = *f.from;
  if (f.to) cfg.sweep_to = *f.to;
  if (f.points) cfg.sweep_points = *f.points;
  if (f.j) cfg.j = HalfInt::parse(*f.j);
  if (f.n_max) cfg.n_max = *f.n_max;
  if (f.corrupt) cfg.corrupt = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gyroscopic dynamics of N identical spins coupled to an impurity"};
  app.require_subcommand(1);
  FlagSet f;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", f.n, "number of identical spins N");
    cmd->add_option("--s", f.s, "spin of each identical particle, e.g. 1/2 (default 1/2)");
    cmd->add_option("--i", f.i, "impurity spin, e.g. 1/2 or 1 (default 1/2)");
    cmd->add_option("--mode", f.mode, "representation: full | collective (default full)");
    cmd->add_option("--s-total", f.s_total, "collective sector S (collective mode only)");
    cmd->add_option("--m-i", f.m_i, "impurity projection of the polarized start (default -I)");
    cmd->add_option("--initial-file", f.initial_file, "explicit initial vector, 're im' per line");
    cmd->add_option("--config", f.config, "JSON config file; explicit flags override it");
    cmd->add_option("--out", f.out, "output format: csv | json");
  };
  const auto add_pulse = [&](CLI::App* cmd) {
    cmd->add_option("--pulse", f.pulse, "pulse as inline JSON or a JSON file path");
    cmd->add_option("--omega0-tau", f.omega0_tau, "gaussian pulse with tau = 1 and this omega0");
    cmd->add_option("--t-min", f.t_min, "grid start (default -5 tau)");
    cmd->add_option("--t-max", f.t_max, "grid end (default +5 tau)");
    cmd->add_option("--steps", f.steps, "number of grid points (default 201)");
    cmd->add_option("--phi-grid", f.phi_grid, "sample phi directly: MIN:MAX:POINTS (no pulse)");
  };

  CLI::App* sim = app.add_subcommand("simulate", "emit the observable series along a pulse");
  add_common(sim);
  add_pulse(sim);
  sim->add_flag("--oracle", f.oracle, "add exact-diagonalization oracle columns");

  CLI::App* sweep = app.add_subcommand("sweep", "final polarization against omega0*tau");
  add_common(sweep);
  sweep->add_option("--from", f.from, "first omega0*tau (default 0)");
  sweep->add_option("--to", f.to, "last omega0*tau (default 5)");
  sweep->add_option("--points", f.points, "number of sweep points (default 400)");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant report (exit 3 on breach)");
  add_common(verify);
  verify->add_flag("--corrupt", f.corrupt, "negative control: corrupt K, expect a breach");

  CLI::App* coeff = app.add_subcommand("coefficients", "dump the alpha/beta/gamma table");
  coeff->add_option("--j", f.j, "sector angular momentum J (half-integer)");
  coeff->add_option("--n-max", f.n_max, "highest order n (default 60)");
  coeff->add_option("--config", f.config, "JSON config file; explicit flags override it");
  coeff->add_option("--out", f.out, "output format: csv | json");

  CLI::App* expansion = app.add_subcommand("expansion", "cosine decomposition of <Sz>(phi)");
  add_common(expansion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run_command([&]() -> int {
    const RunConfig cfg = make_config(f);
    if (sim->parsed()) return cmd_simulate(cfg, std::cout);
    if (sweep->parsed()) return cmd_sweep(cfg, std::cout);
    if (verify->parsed()) return cmd_verify(cfg, std::cout);
    if (coeff->parsed()) return cmd_coefficients(cfg, std::cout);
    if (expansion->parsed()) return cmd_expansion(cfg, std::cout);
    return 2;
  });
}
