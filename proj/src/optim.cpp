#include "demplast/optim.hpp"

#include <cmath>
#include <numeric>

#include "demplast/errors.hpp"

namespace demplast {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void Lbfgs::reset() {
  s_.clear();
  y_.clear();
  rho_.clear();
  have_prev_ = false;
}

ParamVector Lbfgs::direction(std::span<const double> grad) const {
  ParamVector q(grad.begin(), grad.end());
  if (s_.empty()) {
    double l1 = 0.0;
    for (double g : grad) l1 += std::abs(g);
    const double scale = l1 > 1.0 ? 1.0 / l1 : 1.0;
    for (auto& v : q) v *= scale;
    return q;
  }
  const std::size_t m = s_.size();
  std::vector<double> alpha(m);
  for (std::size_t i = m; i-- > 0;) {
    alpha[i] = rho_[i] * dot(s_[i], q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * y_[i][k];
  }
  const double gamma = dot(s_.back(), y_.back()) / dot(y_.back(), y_.back());
  for (auto& v : q) v *= gamma;
  for (std::size_t i = 0; i < m; ++i) {
    const double beta = rho_[i] * dot(y_[i], q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += s_[i][k] * (alpha[i] - beta);
  }
  return q;
}

Lbfgs::StepResult Lbfgs::step(const Objective& objective, ParamVector& params) {
  ParamVector grad;
  StepResult r;
  r.loss = objective(params, grad);
  if (!std::isfinite(r.loss) || !all_finite(grad)) {
    r.status = Status::NonFinite;
    return r;
  }

  if (have_prev_) {
    ParamVector s(params.size()), y(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
      s[k] = params[k] - prev_params_[k];
      y[k] = grad[k] - prev_grad_[k];
    }
    const double ys = dot(y, s);
    // Pairs that are non-positive or numerically orthogonal carry no usable
    // curvature.
    if (ys > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (static_cast<int>(s_.size()) >= opts_.memory) {
        s_.pop_front();
        y_.pop_front();
        rho_.pop_front();
      }
      s_.push_back(std::move(s));
      y_.push_back(std::move(y));
      rho_.push_back(1.0 / ys);
    }
  }

  const ParamVector d = direction(grad);
  prev_params_ = params;
  prev_grad_ = std::move(grad);
  have_prev_ = true;
  for (std::size_t k = 0; k < params.size(); ++k) params[k] -= opts_.lr * d[k];
  ++iterations_;
  return r;
}

double ConvergenceMonitor::relative_change() const {
  const auto n = static_cast<std::size_t>(patience_);
  if (n == 0 || history_.size() < 2 * n) return -1.0;
  const auto end = history_.end();
  // Sum in chronological order so that equal histories give equal verdicts.
  const double recent = std::accumulate(end - static_cast<std::ptrdiff_t>(n), end, 0.0) / static_cast<double>(n);
  const double prior = std::accumulate(end - static_cast<std::ptrdiff_t>(2 * n),
                                       end - static_cast<std::ptrdiff_t>(n), 0.0) /
                       static_cast<double>(n);
  const double diff = std::abs(prior - recent);
  if (std::abs(recent) < 1e-300) return diff;
  return diff / std::abs(recent);
}

bool ConvergenceMonitor::converged() const {
  const double r = relative_change();
  return r >= 0.0 && r <= tol_;
}

MinimizeResult minimize(const Objective& objective, ParamVector& params, const MinimizeOptions& opts) {
  Lbfgs opt({opts.lr, opts.lbfgs_memory});
  ConvergenceMonitor monitor(opts.patience, opts.tol);
  MinimizeResult result;
  bool halved = false;
  ParamVector last_good = params;
  while (result.iterations < opts.max_iters) {
    const ParamVector evaluated = params;
    const auto r = opt.step(objective, params);
    if (r.status == Lbfgs::Status::NonFinite) {
      if (halved)
        throw DivergenceError("non-finite loss or gradient after halving the learning rate to " +
                              std::to_string(opt.lr()) + " at iteration " +
                              std::to_string(result.iterations));
      halved = true;
      params = last_good;
      opt.reset();
      opt.set_lr(0.5 * opt.lr());
      continue;
    }
    last_good = evaluated;
    ++result.iterations;
    result.losses.push_back(r.loss);
    monitor.record(r.loss);
    if (monitor.converged()) {
      result.converged = true;
      break;
    }
  }
  result.lr = opt.lr();
  return result;
}

}  // namespace demplast
