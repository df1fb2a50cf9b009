#pragma once

#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "format.hpp"

namespace spingyro::cli {

// Uniform tabular emission; both formats render every number through fmt12 so
// output is deterministic byte-for-byte.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline void emit(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt12(row[c]);
      os << "\n";
    }
    return;
  }
  if (format == "json") {
    os << "{\"columns\":[";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      os << (c ? "," : "") << '"' << t.columns[c] << '"';
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      os << (r ? "," : "") << '[';
      for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
        const double v = t.rows[r][c];
        os << (c ? "," : "") << (std::isnan(v) ? std::string("null") : fmt12(v));
      }
      os << ']';
    }
    os << "]}\n";
    return;
  }
  throw config_error("output format must be csv or json, got '" + format + "'");
}

// Time series (or phi series with --phi-grid) of the closed-form observables,
// optionally alongside the eigendecomposition oracle.
inline int cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  const CompositeSystem sys = build_system(cfg);
  const InitialState initial = build_initial(cfg, sys);
  const CoupledBasis basis = couple_basis(sys, initial.m_j);
  const ExpectationEngine engine(sys, basis, initial);

  std::vector<double> ts, phis;
  if (cfg.phi_grid) {
    if (cfg.pulse_spec || cfg.omega0_tau)
      throw config_error("--phi-grid replaces the pulse; give one or the other");
    phis = linspace(cfg.phi_grid->min, cfg.phi_grid->max, cfg.phi_grid->points);
    ts.assign(phis.size(), std::numeric_limits<double>::quiet_NaN());
  } else {
    const Pulse pulse = build_pulse(cfg);
    const auto window = pulse.default_window();
    const double t0 = cfg.t_min.value_or(window.first);
    const double t1 = cfg.t_max.value_or(window.second);
    if (!(t1 > t0)) throw config_error("t_max must exceed t_min");
    if (cfg.steps < 2) throw config_error("steps must be >= 2");
    ts = linspace(t0, t1, cfg.steps);
    phis.reserve(ts.size());
    for (double t : ts) phis.push_back(pulse.phi(t));
  }

  Table tab;
  tab.columns = {"t", "phi", "Sz_closed"};
  std::optional<PropagatorCache> oracle;
  if (cfg.oracle) {
    tab.columns = {"t", "phi", "Sz_closed", "Sz_oracle", "Sx", "Sy", "Iz", "Jz", "JdotS"};
    oracle.emplace(sys);
  }
  const double m_j = engine.m_j().value();
  const double j_dot_s = engine.initial_j_dot_s();
  tab.rows.reserve(phis.size());
  for (std::size_t k = 0; k < phis.size(); ++k) {
    const double phi = phis[k];
    if (!cfg.oracle) {
      tab.rows.push_back({ts[k], phi, engine.sz(phi)});
      continue;
    }
    const Eigen::Vector3d v = engine.expectation(phi);
    const double sz_oracle = oracle->expectation(sys.Sz(), initial.vector, phi);
    tab.rows.push_back(
        {ts[k], phi, v(2), sz_oracle, v(0), v(1), m_j - v(2), m_j, j_dot_s});
  }
  emit(tab, cfg.out_format.value_or("csv"), os);
  return 0;
}

// Final polarization against the dimensionless coupling omega0*tau of a
// gaussian pulse, through phi_inf = sqrt(pi) * omega0 * tau.
inline int cmd_sweep(const RunConfig& cfg, std::ostream& os) {
  if (cfg.pulse_spec)
    throw config_error("sweep always drives a gaussian pulse; --pulse is not accepted");
  if (cfg.omega0_tau) throw config_error("sweep varies omega0_tau itself; use --from/--to");
  if (cfg.phi_grid) throw config_error("--phi-grid does not apply to sweep");
  if (!(cfg.sweep_from <= cfg.sweep_to)) throw config_error("sweep needs from <= to");
  if (cfg.sweep_points < 2) throw config_error("sweep needs at least 2 points");

  const CompositeSystem sys = build_system(cfg);
  const InitialState initial = build_initial(cfg, sys);
  const CoupledBasis basis = couple_basis(sys, initial.m_j);
  const ExpectationEngine engine(sys, basis, initial);

  Table tab;
  tab.columns = {"omega0_tau", "phi_inf", "Sz_final"};
  tab.rows.reserve(static_cast<std::size_t>(cfg.sweep_points));
  for (double x : linspace(cfg.sweep_from, cfg.sweep_to, cfg.sweep_points)) {
    const double phi_inf = std::sqrt(std::numbers::pi) * x;
    tab.rows.push_back({x, phi_inf, engine.sz(phi_inf)});
  }
  emit(tab, cfg.out_format.value_or("csv"), os);
  return 0;
}

// Finite cosine decomposition of <Sz>(phi); frequencies exact as doubled ints.
inline int cmd_expansion(const RunConfig& cfg, std::ostream& os) {
  const std::string format = cfg.out_format.value_or("json");
  if (format != "json") throw config_error("expansion emits JSON only");

  const CompositeSystem sys = build_system(cfg);
  const InitialState initial = build_initial(cfg, sys);
  const CoupledBasis basis = couple_basis(sys, initial.m_j);
  const ExpectationEngine engine(sys, basis, initial);
  const ClosedFormExpansion exp = closed_form_expansion(engine);

  os << "{\"constant\":" << fmt12(exp.constant) << ",\"terms\":[";
  for (std::size_t k = 0; k < exp.terms.size(); ++k)
    os << (k ? "," : "") << "{\"freq_twice\":" << exp.terms[k].freq_twice
       << ",\"amplitude\":" << fmt12(exp.terms[k].amplitude) << "}";
  os << "]}\n";
  return 0;
}

// Relative disagreement between the explicit coefficient formulas and the
// recursion, scaled to max(1, |explicit|).
inline double coefficient_rel_dev(const CoefficientTriple& a, const CoefficientTriple& b) {
  double dev = 0.0;
  const Complex pa[3] = {a.alpha, a.beta, a.gamma};
  const Complex pb[3] = {b.alpha, b.beta, b.gamma};
  for (int k = 0; k < 3; ++k)
    dev = std::max(dev, std::abs(pa[k] - pb[k]) / std::max(1.0, std::abs(pa[k])));
  return dev;
}

inline int cmd_coefficients(const RunConfig& cfg, std::ostream& os) {
  if (!cfg.j) throw config_error("--j (sector angular momentum) is required");
  if (cfg.n_max < 0) throw config_error("n_max must be >= 0");

  const auto recursive = coefficients_recursive(*cfg.j, cfg.n_max);
  Table tab;
  tab.columns = {"n", "alpha_re", "alpha_im", "beta_re", "beta_im", "gamma_re", "gamma_im", "flag"};
  for (int n = 0; n <= cfg.n_max; ++n) {
    const CoefficientTriple ex = coefficient_explicit(*cfg.j, n);
    const double flag =
        coefficient_rel_dev(ex, recursive[static_cast<std::size_t>(n)]) > 1e-9 ? 1.0 : 0.0;
    tab.rows.push_back({static_cast<double>(n), ex.alpha.real(), ex.alpha.imag(), ex.beta.real(),
                        ex.beta.imag(), ex.gamma.real(), ex.gamma.imag(), flag});
  }
  emit(tab, cfg.out_format.value_or("csv"), os);
  return 0;
}

// Invariant sweep over one system (with --n) or the default matrix
// (N = 1..4, s = 1/2, both impurities).  Prints max deviations; exit 3 on any
// breach.  --corrupt bumps K(0,0) by 1e-6 after construction as a negative
// control: the report must catch it.
inline int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  bool breach = false;
  const auto check = [&](std::ostream& o, const std::string& label, double dev, double tol) {
    const bool ok = dev <= tol;
    if (!ok) breach = true;
    o << "  " << label << ": max dev " << fmt12(dev) << " (tol " << fmt12(tol) << ") "
      << (ok ? "ok" : "BREACH") << "\n";
  };

  struct Case {
    int n;
    HalfInt s, i;
    Mode mode;
    std::optional<HalfInt> s_total;
  };
  std::vector<Case> cases;
  if (cfg.n) {
    cases.push_back({*cfg.n, cfg.s, cfg.i, cfg.mode, cfg.s_total});
  } else {
    for (int n = 1; n <= 4; ++n)
      for (int it : {1, 2})
        cases.push_back({n, HalfInt::from_twice(1), HalfInt::from_twice(it), Mode::FullTensor, {}});
  }

  for (const Case& c : cases) {
    CompositeSystem sys = build_composite(c.n, c.s, c.i, c.mode, c.s_total, cfg.dim_cap);
    if (cfg.corrupt) sys.K(0, 0) += 1e-6;
    os << "system N=" << c.n << " s=" << c.s.str() << " I=" << c.i.str()
       << " mode=" << (c.mode == Mode::FullTensor ? "full" : "collective") << " dim=" << sys.dim
       << "\n";

    const IdentityReport rep = verify_Pn_identities(sys);
    double p_dev = 0.0;
    for (double d : rep.deviations) p_dev = std::max(p_dev, d);
    check(os, "P1..P4 operator identities", p_dev, 1e-12);

    double alg = 0.0;
    const auto sxj = cross_product(sys.S, sys.J);
    const auto jxs = cross_product(sys.J, sys.S);
    for (int u = 0; u < 3; ++u) {
      alg = std::max(alg, max_abs(commutator(sys.K, sys.J[u])));
      alg = std::max(alg, max_abs(commutator(sys.J_dot_S, sys.J[u])));
      alg = std::max(alg, max_abs(jxs[u] + sxj[u] - 2.0 * imag_unit * sys.S[u]));
    }
    check(os, "coupling/rotation algebra", alg, 1e-12);

    const InitialState initial = cfg.n ? build_initial(cfg, sys)
                                       : ferromagnetic_state(sys, -c.i);
    const CoupledBasis basis = couple_basis(sys, initial.m_j);
    const ExpectationEngine engine(sys, basis, initial);
    const PropagatorCache oracle(sys);
    const double jz0 = real_expectation(sys.Jz(), initial.vector);
    const double j2_0 = engine.initial_j2();
    const double jds0 = engine.initial_j_dot_s();

    double dual = 0.0, transverse = 0.0, drift_jz = 0.0, drift_j2 = 0.0, drift_jds = 0.0;
    for (double phi : linspace(0.0, 4.0 * std::numbers::pi, 33)) {
      const Eigen::Vector3d v = engine.expectation(phi);
      dual = std::max(dual, std::abs(v(2) - oracle.expectation(sys.Sz(), initial.vector, phi)));
      transverse = std::max({transverse, std::abs(v(0)), std::abs(v(1))});
      drift_jz = std::max(drift_jz,
                          std::abs(oracle.expectation(sys.Jz(), initial.vector, phi) - jz0));
      drift_j2 = std::max(drift_j2,
                          std::abs(oracle.expectation(sys.J2, initial.vector, phi) - j2_0));
      drift_jds = std::max(
          drift_jds, std::abs(oracle.expectation(sys.J_dot_S, initial.vector, phi) - jds0));
    }
    check(os, "closed form vs oracle <Sz>", dual, 1e-10);
    check(os, "transverse <Sx>,<Sy>", transverse, 1e-11);
    check(os, "<Jz> drift", drift_jz, 1e-11);
    check(os, "<J^2> drift", drift_j2, 1e-11);
    check(os, "<J.S> drift", drift_jds, 1e-11);
  }

  double coeff_dev = 0.0;
  for (int tj = 0; tj <= 12; ++tj) {
    const HalfInt j = HalfInt::from_twice(tj);
    const auto rec = coefficients_recursive(j, 30);
    for (int n = 0; n <= 30; ++n)
      coeff_dev = std::max(
          coeff_dev, coefficient_rel_dev(coefficient_explicit(j, n), rec[static_cast<std::size_t>(n)]));
  }
  os << "coefficients J <= 6, n <= 30\n";
  check(os, "explicit vs recursive", coeff_dev, 1e-9);

  os << (breach ? "RESULT: BREACH\n" : "RESULT: ok\n");
  return breach ? 3 : 0;
}

// Map the error taxonomy onto process exit codes.
template <class F>
int run_command(F&& f) {
  try {
    return f();
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spingyro::cli
