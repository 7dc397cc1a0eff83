#pragma once

#include <Eigen/Dense>

namespace ccd {

/// Pearson correlation matrix of the columns. Constant columns get zero
/// correlation with everything else and one on the diagonal.
Eigen::MatrixXd correlation_matrix_serial(const Eigen::MatrixXd& samples);
Eigen::MatrixXd correlation_matrix_parallel(const Eigen::MatrixXd& samples);

inline Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& samples) {
    return correlation_matrix_parallel(samples);
}

}  // namespace ccd
