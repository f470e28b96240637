#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace nightgrid {

struct OlsResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    double tss = 0.0;  // about the response mean
    double r2 = 0.0;
    std::size_t n = 0;  // observations
    std::size_t p = 0;  // coefficients, including the constant
};

/// Least squares of `response` on `design` (whose first column is the
/// constant). Solved by column-pivoted Householder QR on unit-norm columns.
/// Standard errors use sigma^2 = rss / (n - p).
///
/// Throws DataError when rows <= columns or when the smallest pivot of the
/// normalized design falls below 1e-10 of the largest ("collinear covariates").
OlsResult ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

}  // namespace nightgrid
