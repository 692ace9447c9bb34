#pragma once
#include <span>
#include <string>
#include <vector>

namespace hogboost {

enum class LossKind { logloss, squared_error };

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& s);

// Per-row derivative arrays g1..g4 of the loss w.r.t. the current prediction.
// Arrays above `order` stay empty.
struct GradBundle {
    int order = 2;
    std::vector<double> g1, g2, g3, g4;

    std::size_t n_rows() const { return g1.size(); }
    const std::vector<double>& grad(int k) const;
};

// Analytic derivatives of order 1..`order` at the given predictions.
//
// logloss with p = sigmoid(yhat):
//   g1 = p - y, g2 = p(1-p), g3 = p(1-p)(1-2p), g4 = p(1-p)(1-6p+6p^2)
// squared error l = (y-yhat)^2 / 2:
//   g1 = yhat - y, g2 = 1, g3 = g4 = 0
GradBundle derivatives(LossKind kind, std::span<const double> labels,
                       std::span<const double> predictions, int order);

// Sum of per-row losses. logloss is evaluated via the softplus identity,
// stable for |yhat| up to ~700.
double loss_value(LossKind kind, std::span<const double> labels,
                  std::span<const double> predictions);

// Single-row loss, used by the finite-difference oracle and metrics.
double pointwise_loss(LossKind kind, double label, double prediction);

// Central finite-difference estimate of d^k l / d yhat^k, k in 1..4.
// Uses 4th-order-accurate central stencils (5 points for k=1,2; 7 points for
// k=3,4), so truncation error is O(h^4). Suggested steps at 64-bit precision:
// h = 1e-3 for k=1,2; 1e-2 for k=3; 2e-2 for k=4.
double fd_derivative(LossKind kind, double label, double prediction, int k, double h);

} // namespace hogboost
