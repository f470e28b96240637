#include "nightgrid/ols.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nightgrid/error.hpp"

namespace nightgrid {

namespace {

constexpr double kCollinearityThreshold = 1e-10;

}  // namespace

OlsResult ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const auto n = design.rows();
    const auto p = design.cols();
    if (response.size() != n) {
        throw DataError(fmt::format("design has {} rows but response has {} entries", n, response.size()));
    }
    if (p < 1 || n <= p) {
        throw DataError(fmt::format("need more observations ({}) than coefficients ({})", n, p));
    }
    if (!design.allFinite() || !response.allFinite()) {
        throw DataError("non-finite value in regression inputs");
    }

    Eigen::VectorXd scale = design.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!(scale(j) > 0.0)) {
            throw DataError("collinear covariates");
        }
    }
    const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const double largest = std::abs(r(0, 0));
    const double smallest = std::abs(r(p - 1, p - 1));
    if (!(smallest > kCollinearityThreshold * largest)) {
        throw DataError("collinear covariates");
    }

    OlsResult out;
    out.n = static_cast<std::size_t>(n);
    out.p = static_cast<std::size_t>(p);
    out.coefficients = qr.solve(response).cwiseQuotient(scale);
    out.residuals = response - design * out.coefficients;
    out.rss = out.residuals.squaredNorm();
    out.tss = (response.array() - response.mean()).matrix().squaredNorm();
    out.r2 = out.tss > 0.0 ? 1.0 - out.rss / out.tss : 1.0;

    // (X^T X)^-1 = D^-1 P R^-1 R^-T P^T D^-1 for scaled = X D^-1 = Q R P^T.
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::VectorXd pivoted_diag = r_inv.rowwise().squaredNorm();
    const double sigma2 = out.rss / static_cast<double>(n - p);
    out.std_errors.resize(p);
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = 0; k < p; ++k) {
        const Eigen::Index j = perm(k);
        out.std_errors(j) = std::sqrt(sigma2 * pivoted_diag(k)) / scale(j);
    }
    return out;
}

}  // namespace nightgrid
