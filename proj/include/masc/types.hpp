#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace masc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

/// Raised for invalid run configuration (bad paths, malformed config files,
/// inconsistent schema). The CLI maps this to exit code 2; every other
/// exception maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace masc
