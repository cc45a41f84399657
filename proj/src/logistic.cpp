#include "masc/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace masc {

namespace {

// log(1 + exp(z)) without overflow.
double log1p_exp(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

Vector margins(const Vector& weights, const Matrix& x) {
    const Index d = x.cols();
    return (x * weights.head(d)).array() + weights[d];
}

} // namespace

double logistic_loss(const Vector& weights, const Matrix& x, const IntVector& y) {
    const Vector z = margins(weights, x);
    double loss = 0.0;
    for (Index i = 0; i < x.rows(); ++i) {
        // -log sigma(z) for y=1, -log(1 - sigma(z)) for y=0
        loss += y[i] == 1 ? log1p_exp(-z[i]) : log1p_exp(z[i]);
    }
    return loss / static_cast<double>(x.rows());
}

Vector logistic_gradient(const Vector& weights, const Matrix& x, const IntVector& y) {
    const Index n = x.rows();
    const Index d = x.cols();
    const Vector z = margins(weights, x);
    Vector residual(n);
    for (Index i = 0; i < n; ++i) {
        const double prob = 1.0 / (1.0 + std::exp(-z[i]));
        residual[i] = prob - static_cast<double>(y[i]);
    }
    Vector grad(d + 1);
    grad.head(d) = x.transpose() * residual / static_cast<double>(n);
    grad[d] = residual.mean();
    return grad;
}

TrainedModel train_lr(const Matrix& x, const IntVector& y, const LrConfig& config) {
    if (x.rows() < 2) {
        throw std::invalid_argument("train_lr: need at least 2 rows");
    }
    if (x.rows() != y.size()) {
        throw std::invalid_argument("train_lr: feature/label row counts differ");
    }
    const Index positives = y.sum();
    if (positives == 0 || positives == y.size()) {
        throw std::invalid_argument("train_lr: training set contains a single class");
    }

    TrainedModel model;
    model.config = config;
    model.weights = Vector::Zero(x.cols() + 1);
    model.loss_history.reserve(config.max_epochs);

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        const Vector grad = logistic_gradient(model.weights, x, y);
        if (grad.norm() < config.tolerance) {
            model.converged = true;
            break;
        }
        model.weights -= config.learning_rate * grad;
        model.loss_history.push_back(logistic_loss(model.weights, x, y));
    }
    return model;
}

Vector predict_proba(const TrainedModel& model, const Matrix& x) {
    const Vector z = margins(model.weights, x);
    return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

IntVector predict(const TrainedModel& model, const Matrix& x) {
    const Vector proba = predict_proba(model, x);
    IntVector labels(x.rows());
    for (Index i = 0; i < x.rows(); ++i) {
        labels[i] = proba[i] > 0.5 ? 1 : 0;
    }
    return labels;
}

} // namespace masc
