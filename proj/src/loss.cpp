#include "hogboost/loss.hpp"
#include "hogboost/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace hogboost {

std::string to_string(LossKind kind) {
    return kind == LossKind::logloss ? "logloss" : "squared_error";
}

LossKind loss_kind_from_string(const std::string& s) {
    if (s == "logloss") return LossKind::logloss;
    if (s == "squared_error") return LossKind::squared_error;
    throw std::invalid_argument("unknown loss '" + s + "'");
}

const std::vector<double>& GradBundle::grad(int k) const {
    switch (k) {
    case 1: return g1;
    case 2: return g2;
    case 3: return g3;
    case 4: return g4;
    default: throw std::invalid_argument("derivative order " + std::to_string(k) + " out of range");
    }
}

namespace {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

} // namespace

GradBundle derivatives(LossKind kind, std::span<const double> labels,
                       std::span<const double> predictions, int order) {
    if (labels.size() != predictions.size())
        throw DataError("labels and predictions differ in length");
    if (order < 1 || order > 4)
        throw std::invalid_argument("unsupported derivative order " + std::to_string(order));

    const std::size_t n = labels.size();
    GradBundle b;
    b.order = order;
    b.g1.resize(n);
    if (order >= 2) b.g2.resize(n);
    if (order >= 3) b.g3.resize(n);
    if (order >= 4) b.g4.resize(n);

    if (kind == LossKind::squared_error) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(predictions[i])) throw DataError("non-finite prediction");
            b.g1[i] = predictions[i] - labels[i];
        }
        if (order >= 2) std::fill(b.g2.begin(), b.g2.end(), 1.0);
        return b;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(predictions[i])) throw DataError("non-finite prediction");
        const double p = sigmoid(predictions[i]);
        const double v = p * (1.0 - p);
        b.g1[i] = p - labels[i];
        if (order >= 2) b.g2[i] = v;
        if (order >= 3) b.g3[i] = v * (1.0 - 2.0 * p);
        if (order >= 4) b.g4[i] = v * (1.0 - 6.0 * p + 6.0 * p * p);
    }
    return b;
}

double pointwise_loss(LossKind kind, double label, double prediction) {
    if (kind == LossKind::squared_error) {
        const double r = label - prediction;
        return 0.5 * r * r;
    }
    // -y*yhat + log(1 + exp(yhat))
    return softplus(prediction) - label * prediction;
}

double loss_value(LossKind kind, std::span<const double> labels,
                  std::span<const double> predictions) {
    if (labels.size() != predictions.size())
        throw DataError("labels and predictions differ in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        sum += pointwise_loss(kind, labels[i], predictions[i]);
    return sum;
}

double fd_derivative(LossKind kind, double label, double prediction, int k, double h) {
    if (k < 1 || k > 4) throw std::invalid_argument("fd_derivative supports k in 1..4");
    if (!(h > 0.0)) throw std::invalid_argument("fd_derivative needs h > 0");

    auto f = [&](double o) { return pointwise_loss(kind, label, prediction + o * h); };

    // 4th-order central stencils (Fornberg coefficients).
    switch (k) {
    case 1:
        return (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
    case 2:
        return (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h * h);
    case 3:
        return (-f(3) + 8.0 * f(2) - 13.0 * f(1) + 13.0 * f(-1) - 8.0 * f(-2) + f(-3)) /
               (8.0 * h * h * h);
    default:
        return (-f(3) / 6.0 + 2.0 * f(2) - 6.5 * f(1) + (28.0 / 3.0) * f(0) - 6.5 * f(-1) +
                2.0 * f(-2) - f(-3) / 6.0) /
               (h * h * h * h);
    }
}

} // namespace hogboost
