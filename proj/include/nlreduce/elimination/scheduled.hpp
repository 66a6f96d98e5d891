#pragma once

#include "nlreduce/elimination/map.hpp"

namespace nlreduce::elimination {

struct ScheduleOptions {
  double initial_tol = 1e-3;
  double rho = 0.5;
  double floor = 0.0;  ///< lower bound for the tolerance; 0 means none
};

/// Inexact elimination y = h_N(x; y0) whose tolerance shrinks by rho after
/// each accepted outer step.
///
/// eliminate() runs the inner solver from the committed warm start without
/// moving it; accept() commits the y of an accepted outer iterate and
/// shrinks the tolerance.
class ScheduledInexactElimination final : public EliminationMap {
 public:
  /// `inner` must outlive the map.
  ScheduledInexactElimination(InnerSolver& inner, Vector y0, ScheduleOptions opts = {});

  Elimination eliminate(const Vector& x) override;
  double tolerance() const override { return tol_; }

  /// warm start <- y, tol <- max(floor, rho * tol).
  void accept(const Vector& y);
  void set_floor(double floor);
  /// Sets the tolerance directly (still bounded below by the floor).
  void tighten_to(double tol);

  double floor() const { return opts_.floor; }
  double rho() const { return opts_.rho; }

 private:
  InnerSolver& inner_;
  ScheduleOptions opts_;
  double tol_;
};

}  // namespace nlreduce::elimination
