#include "ccd/kernels.hpp"

#include <cmath>

namespace ccd {

namespace {

// Centers and scales each column to unit norm; constant columns become zero.
Eigen::MatrixXd standardize(const Eigen::MatrixXd& x) {
    Eigen::MatrixXd z = x.rowwise() - x.colwise().mean();
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        double norm = z.col(j).norm();
        if (norm > 0) z.col(j) /= norm;
    }
    return z;
}

double clamp_unit(double r) { return r > 1.0 ? 1.0 : (r < -1.0 ? -1.0 : r); }

}  // namespace

Eigen::MatrixXd correlation_matrix_serial(const Eigen::MatrixXd& samples) {
    Eigen::MatrixXd z = standardize(samples);
    const Eigen::Index p = z.cols(), n = z.rows();
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = i + 1; j < p; ++j) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) s += z(k, i) * z(k, j);
            r(i, j) = r(j, i) = clamp_unit(s);
        }
    return r;
}

Eigen::MatrixXd correlation_matrix_parallel(const Eigen::MatrixXd& samples) {
    Eigen::MatrixXd z = standardize(samples);
    const Eigen::Index p = z.cols(), n = z.rows();
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(p, p);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = i + 1; j < p; ++j) {
            double s = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) s += z(k, i) * z(k, j);
            r(i, j) = r(j, i) = clamp_unit(s);
        }
    return r;
}

}  // namespace ccd
