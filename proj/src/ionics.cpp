// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/ionics.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

#include "polydg/errors.hpp"
#include "polydg/parallel.hpp"

namespace polydg {

FitzHughNagumo::FitzHughNagumo(const FhnParams& params) : p_(params) {
  if (!(p_.u_max > p_.u_min)) throw ConfigError("fhn: u_max must exceed u_min");
  if (!(p_.b >= 0.0 && p_.c1 > 0.0)) throw ConfigError("fhn: invalid rate constants");
}

double FitzHughNagumo::current(double u, std::span<const double> y) const {
  if (!std::isfinite(u) || !std::isfinite(y[0]))
    throw SolverError("fhn: non-finite state in current evaluation");
  const double span = p_.u_max - p_.u_min;
  const double v = (u - p_.u_min) / span;
  return p_.amp * (p_.c1 * v * (v - p_.a) * (v - 1.0) + p_.c2 * v * y[0]) * span;
}

void FitzHughNagumo::rates(double u, std::span<const double> y, std::span<double> m) const {
  if (!std::isfinite(u) || !std::isfinite(y[0]))
    throw SolverError("fhn: non-finite state in rate evaluation");
  const double v = (u - p_.u_min) / (p_.u_max - p_.u_min);
  m[0] = -p_.b * (v - p_.d * y[0]);
}

std::unique_ptr<IonicModel> make_ionic_model(const std::string& name,
                                             const std::map<std::string, double>& params) {
  if (name == "fhn") {
    FhnParams p;
    for (const auto& [key, value] : params) {
      if (key == "a") p.a = value;
      else if (key == "b") p.b = value;
      else if (key == "c1") p.c1 = value;
      else if (key == "c2") p.c2 = value;
      else if (key == "d") p.d = value;
      else if (key == "u_min") p.u_min = value;
      else if (key == "u_max") p.u_max = value;
      else if (key == "amp") p.amp = value;
      else throw ConfigError("unknown fhn parameter 'ionic.params." + key + "'");
    }
    return std::make_unique<FitzHughNagumo>(p);
  }
  if (name == "barreto-cressman") {
    throw ConfigError(
        "ionic model 'barreto-cressman': the kinetics are not distributed with this "
        "code; implement IonicModel from the published rate equations and register it "
        "here");
  }
  throw ConfigError("unknown ionic model '" + name + "'");
}

IonicTerms assemble_ionic_terms(const DGSpace& space, const Eigen::VectorXd& U,
                                const IonicStateFields& Y, const IonicModel& model) {
  const int n_loc = space.n_local();
  const int n_comp = model.state_dim();
  const int order = 2 * space.degree() + 2;
  if (U.size() != space.dimension())
    throw SolverError("assemble_ionic_terms: potential vector dimension mismatch");
  if (static_cast<int>(Y.Y.size()) != n_comp)
    throw SolverError("assemble_ionic_terms: state field count mismatch");

  IonicTerms out;
  out.I = Eigen::VectorXd::Zero(space.dimension());
  out.G.assign(static_cast<std::size_t>(n_comp),
               Eigen::VectorXd::Zero(space.dimension()));

  const auto [u_lo, u_hi] = model.potential_bounds();
  const double u_slack = 10.0 * (u_hi - u_lo);
  std::atomic<bool> out_of_box{false};

  parallel_for(static_cast<std::size_t>(space.mesh().n_cells()), [&](std::size_t ci) {
    const int c = static_cast<int>(ci);
    const QuadratureRule rule = polygon_quadrature(space.mesh().cell_points(c), order);
    const BasisEval basis = eval_basis(space, c, rule.points);
    const Eigen::Index b0 = space.block_start(c);

    const Eigen::VectorXd u_q = basis.values * U.segment(b0, n_loc);
    Eigen::MatrixXd y_q(static_cast<Eigen::Index>(rule.size()), n_comp);
    for (int l = 0; l < n_comp; ++l)
      y_q.col(l) = basis.values * Y.Y[static_cast<std::size_t>(l)].segment(b0, n_loc);

    std::vector<double> y_pt(static_cast<std::size_t>(n_comp));
    std::vector<double> m_pt(static_cast<std::size_t>(n_comp));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const double u = u_q(qi);
      if (u < u_lo - u_slack || u > u_hi + u_slack) out_of_box.store(true);
      for (int l = 0; l < n_comp; ++l) y_pt[static_cast<std::size_t>(l)] = y_q(qi, l);
      const double f = model.current(u, y_pt);
      model.rates(u, y_pt, m_pt);
      const double w = rule.weights[q];
      const auto phi = basis.values.row(qi).transpose();
      out.I.segment(b0, n_loc) += (w * f) * phi;
      for (int l = 0; l < n_comp; ++l)
        out.G[static_cast<std::size_t>(l)].segment(b0, n_loc) +=
            (w * m_pt[static_cast<std::size_t>(l)]) * phi;
    }
  });

  if (out_of_box.load())
    std::cerr << "polydg: warning: membrane potential left the admissible range by more "
                 "than 10x the model span\n";
  return out;
}

}  // namespace polydg
