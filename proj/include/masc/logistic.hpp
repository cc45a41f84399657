#pragma once

#include "masc/types.hpp"

#include <cstdint>
#include <vector>

namespace masc {

struct LrConfig {
    double learning_rate = 0.1;
    int max_epochs = 2000;
    double tolerance = 1e-6; // on the gradient norm
    std::uint64_t seed = 42;
};

/// Logistic-regression parameters, bias last. Training is full-batch
/// gradient descent from zero weights, so the fit is deterministic for a
/// fixed config and data order.
struct TrainedModel {
    Vector weights; // length d + 1
    LrConfig config;
    bool converged = false;
    std::vector<double> loss_history; // mean logistic loss per epoch
};

/// Mean logistic loss of weights (bias last) on (x, y).
double logistic_loss(const Vector& weights, const Matrix& x, const IntVector& y);

/// Gradient of the mean logistic loss.
Vector logistic_gradient(const Vector& weights, const Matrix& x, const IntVector& y);

/// Minimizes mean logistic loss by gradient descent; stops at max_epochs or
/// when the gradient norm drops below tolerance. Both classes must appear.
TrainedModel train_lr(const Matrix& x, const IntVector& y, const LrConfig& config = {});

Vector predict_proba(const TrainedModel& model, const Matrix& x);
IntVector predict(const TrainedModel& model, const Matrix& x);

} // namespace masc
