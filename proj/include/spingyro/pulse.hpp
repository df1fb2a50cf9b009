#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace spingyro {

// w(t) = w0 exp(-(t/tau)^2); phi(t) = (sqrt(pi)/2) w0 tau (1 + erf(t/tau)).
struct GaussianPulse {
  double omega0 = 0.0, tau = 1.0;
  GaussianPulse(double omega0_, double tau_) : omega0(omega0_), tau(tau_) {
    if (!(tau > 0.0)) throw config_error("gaussian pulse needs tau > 0");
  }
  double omega(double t) const { return omega0 * std::exp(-(t / tau) * (t / tau)); }
  double phi(double t) const {
    return 0.5 * std::sqrt(std::numbers::pi) * omega0 * tau * (1.0 + std::erf(t / tau));
  }
  double phi_infinity() const { return std::sqrt(std::numbers::pi) * omega0 * tau; }
};

// w = w0 on [t_on, t_off), zero elsewhere.
struct RectangularPulse {
  double omega0 = 0.0, t_on = 0.0, t_off = 0.0;
  RectangularPulse(double omega0_, double t_on_, double t_off_)
      : omega0(omega0_), t_on(t_on_), t_off(t_off_) {
    if (t_off < t_on) throw config_error("rectangular pulse needs t_off >= t_on");
  }
  double omega(double t) const { return (t >= t_on && t < t_off) ? omega0 : 0.0; }
  double phi(double t) const { return omega0 * (std::clamp(t, t_on, t_off) - t_on); }
  double phi_infinity() const { return omega0 * (t_off - t_on); }
};

// Piecewise-linear w from samples; phi by cumulative trapezoids, zero before
// the first sample, frozen at the total after the last.
struct TabulatedPulse {
  std::vector<double> t, w, cum;
  TabulatedPulse(std::vector<double> times, std::vector<double> omegas)
      : t(std::move(times)), w(std::move(omegas)) {
    if (t.size() != w.size()) throw config_error("tabulated pulse needs matching t and omega lists");
    if (t.size() < 2) throw config_error("tabulated pulse needs at least 2 samples");
    for (std::size_t k = 1; k < t.size(); ++k)
      if (!(t[k] > t[k - 1])) throw config_error("tabulated pulse times must strictly increase");
    cum.resize(t.size(), 0.0);
    for (std::size_t k = 1; k < t.size(); ++k)
      cum[k] = cum[k - 1] + 0.5 * (w[k] + w[k - 1]) * (t[k] - t[k - 1]);
  }
  double omega(double x) const {
    if (x <= t.front() || x >= t.back()) {
      if (x == t.front()) return w.front();
      if (x == t.back()) return w.back();
      return 0.0;
    }
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - t.begin());
    const double f = (x - t[k - 1]) / (t[k] - t[k - 1]);
    return w[k - 1] + f * (w[k] - w[k - 1]);
  }
  double phi(double x) const {
    if (x <= t.front()) return 0.0;
    if (x >= t.back()) return cum.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - t.begin());
    const double dt = x - t[k - 1];
    return cum[k - 1] + 0.5 * (w[k - 1] + omega(x)) * dt;
  }
  double phi_infinity() const { return cum.back(); }
};

// Value-semantic pulse; every consumer sees only omega(t), phi(t), phi(inf).
class Pulse {
 public:
  Pulse(GaussianPulse p) : v_(std::move(p)) {}
  Pulse(RectangularPulse p) : v_(std::move(p)) {}
  Pulse(TabulatedPulse p) : v_(std::move(p)) {}

  double omega(double t) const {
    return std::visit([&](const auto& p) { return p.omega(t); }, v_);
  }
  double phi(double t) const {
    return std::visit([&](const auto& p) { return p.phi(t); }, v_);
  }
  double phi_infinity() const {
    return std::visit([&](const auto& p) { return p.phi_infinity(); }, v_);
  }

  // Simulation window when the user gives none: [-5 tau, 5 tau] for Gaussian,
  // the padded support for the others.
  std::pair<double, double> default_window() const {
    if (const auto* g = std::get_if<GaussianPulse>(&v_)) return {-5.0 * g->tau, 5.0 * g->tau};
    if (const auto* r = std::get_if<RectangularPulse>(&v_)) {
      const double span = std::max(r->t_off - r->t_on, 1.0);
      return {r->t_on - 0.1 * span, r->t_off + 0.1 * span};
    }
    const auto& tab = std::get<TabulatedPulse>(v_);
    return {tab.t.front(), tab.t.back()};
  }

 private:
  std::variant<GaussianPulse, RectangularPulse, TabulatedPulse> v_;
};

}  // namespace spingyro
