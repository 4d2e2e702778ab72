// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "polydg/assembly.hpp"
#include "polydg/dg_space.hpp"

namespace polydg {

/// Pointwise ionic membrane model: current density f(u, y) in uA/cm^2 and
/// state rates m(u, y) such that dy/dt = -m. Implementations are immutable
/// and shareable across threads.
class IonicModel {
public:
  virtual ~IonicModel() = default;

  virtual int state_dim() const = 0;
  virtual double current(double u, std::span<const double> y) const = 0;
  virtual void rates(double u, std::span<const double> y, std::span<double> m) const = 0;

  virtual double resting_potential() const = 0;
  virtual void resting_state(std::span<double> y) const = 0;

  /// Admissible (u_min, u_max) and per-component state bounds, used only for
  /// the out-of-range diagnostic.
  virtual std::pair<double, double> potential_bounds() const = 0;
  virtual std::pair<double, double> state_bounds(int component) const = 0;
};

/// Rogers-McCulloch form of the FitzHugh-Nagumo model (one recovery
/// variable). With v = (u - u_min)/(u_max - u_min):
///   f = A (c1 v (v - a)(v - 1) + c2 v w) (u_max - u_min)
///   m = -b (v - d w)
struct FhnParams {
  double a = 0.13;
  double b = 0.013;    // 1/ms
  double c1 = 0.26;    // 1/ms
  double c2 = 0.1;     // 1/ms
  double d = 1.0;
  double u_min = -85.0;  // mV
  double u_max = 20.0;   // mV
  double amp = 1.0;      // uA*ms/(cm^2*mV)
};

class FitzHughNagumo final : public IonicModel {
public:
  explicit FitzHughNagumo(const FhnParams& params = {});

  int state_dim() const override { return 1; }
  double current(double u, std::span<const double> y) const override;
  void rates(double u, std::span<const double> y, std::span<double> m) const override;
  double resting_potential() const override { return p_.u_min; }
  void resting_state(std::span<double> y) const override { y[0] = 0.0; }
  std::pair<double, double> potential_bounds() const override {
    return {p_.u_min, p_.u_max};
  }
  std::pair<double, double> state_bounds(int) const override { return {-1.0, 2.0}; }

  const FhnParams& params() const { return p_; }

private:
  FhnParams p_;
};

/// Factory keyed by the config `ionic.model` name. "fhn" is the bundled
/// default; "barreto-cressman" is a registered slot whose kinetics are not
/// distributed with this code and therefore reports a configuration error.
std::unique_ptr<IonicModel> make_ionic_model(const std::string& name,
                                             const std::map<std::string, double>& params);

/// Discrete state fields: one coefficient vector per model component.
struct IonicStateFields {
  std::vector<Eigen::VectorXd> Y;
};

/// Galerkin projections of the pointwise reaction terms:
///   I_i  = integral of f(u_h, y_h) phi_i,  (G_l)_i = integral of m_l phi_i.
/// Element-local; evaluates the fields at volume quadrature points. Emits a
/// one-line stderr diagnostic if states leave the admissible box by > 10x.
struct IonicTerms {
  Eigen::VectorXd I;
  std::vector<Eigen::VectorXd> G;
};

IonicTerms assemble_ionic_terms(const DGSpace& space, const Eigen::VectorXd& U,
                                const IonicStateFields& Y, const IonicModel& model);

}  // namespace polydg
