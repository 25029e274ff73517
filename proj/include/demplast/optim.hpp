#pragma once

#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "demplast/network.hpp"

namespace demplast {

/// Loss and gradient at `params`; writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> params, ParamVector& grad)>;

struct LbfgsOptions {
  double lr = 0.5;
  int memory = 20;
};

/// Limited-memory BFGS with a fixed step length (no line search).
///
/// Each step evaluates the objective once at the current parameters, folds
/// the new curvature pair into the history and moves along the two-loop
/// direction. With an empty history the step is a gradient step scaled by
/// min(1, 1/|g|_1).
class Lbfgs {
public:
  enum class Status { Ok, NonFinite };

  struct StepResult {
    Status status = Status::Ok;
    double loss = 0.0;  ///< objective at the parameters before the update
  };

  explicit Lbfgs(LbfgsOptions opts = {}) : opts_(opts) {}

  StepResult step(const Objective& objective, ParamVector& params);

  /// Forgets curvature history (next step is a scaled gradient step).
  void reset();

  void set_lr(double lr) { opts_.lr = lr; }
  double lr() const { return opts_.lr; }
  std::size_t history_size() const { return s_.size(); }
  int iterations() const { return iterations_; }

  /// Two-loop product of the inverse-Hessian approximation with `grad`.
  ParamVector direction(std::span<const double> grad) const;

private:
  LbfgsOptions opts_;
  std::deque<ParamVector> s_, y_;
  std::deque<double> rho_;
  ParamVector prev_params_, prev_grad_;
  bool have_prev_ = false;
  int iterations_ = 0;
};

/// Patience-based relative convergence test on the loss history: converged
/// once |mean(last N) - mean(previous N)| / |mean(last N)| <= tol.
class ConvergenceMonitor {
public:
  ConvergenceMonitor(int patience = 10, double tol = 1e-6) : patience_(patience), tol_(tol) {}

  void record(double loss) { history_.push_back(loss); }
  void clear() { history_.clear(); }
  bool converged() const;
  /// The relative change, or a negative value while fewer than 2N samples exist.
  double relative_change() const;

  std::span<const double> history() const { return history_; }
  int patience() const { return patience_; }
  double tol() const { return tol_; }

private:
  int patience_;
  double tol_;
  std::vector<double> history_;
};

struct MinimizeOptions {
  double lr = 0.5;
  int lbfgs_memory = 20;
  int patience = 10;
  double tol = 1e-6;
  int max_iters = 2000;
};

struct MinimizeResult {
  int iterations = 0;
  bool converged = false;
  std::vector<double> losses;
  double lr = 0.0;  ///< learning rate in effect at the end
};

/// Runs L-BFGS until the monitor reports convergence or `max_iters`.
/// A non-finite loss restores the last finite parameters and halves the
/// learning rate once; a second failure throws DivergenceError.
MinimizeResult minimize(const Objective& objective, ParamVector& params, const MinimizeOptions& opts);

}  // namespace demplast
