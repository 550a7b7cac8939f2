#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "geneo/error.hpp"

namespace geneo::dice {

struct PcaOptions {
    double tol = 1e-7;     // max change of a unit component between iterations
    int max_iterations = 1000;
    std::size_t guard = 8;  // extra subspace vectors beyond k
    unsigned seed = 12345;  // start block
};

struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // d x k, orthonormal columns
    Eigen::VectorXd explained_variance;
    int iterations = 0;

    std::size_t k() const { return static_cast<std::size_t>(components.cols()); }

    /// Rows of X projected on the first m components (default all).
    Eigen::MatrixXd project(const Eigen::MatrixXd& X, std::size_t m = 0) const {
        if (m == 0) m = k();
        if (m > k()) throw InvalidArgument("requested more components than were fitted");
        if (static_cast<std::size_t>(X.cols()) != static_cast<std::size_t>(mean.size()))
            throw InvalidArgument("data dimension does not match the fitted mean");
        const auto C = components.leftCols(static_cast<Eigen::Index>(m));
        Eigen::MatrixXd Y = X * C;
        Y.rowwise() -= (mean.transpose() * C);
        return Y;
    }
};

/// Top-k principal components of the rows of X by block power iteration on
/// the sample covariance with Rayleigh-Ritz extraction. The covariance and the
/// centered data are never formed. Signs are fixed so that the entry of
/// largest magnitude in each component is positive.
inline PcaModel pca_fit(const Eigen::MatrixXd& X, std::size_t k, const PcaOptions& opt = {}) {
    const auto N = X.rows();
    const auto d = X.cols();
    if (k == 0) throw InvalidArgument("pca needs k >= 1");
    if (static_cast<Eigen::Index>(k) > d || static_cast<Eigen::Index>(k) > N)
        throw InvalidArgument("pca needs k <= min(samples, dimension)");
    if (N < 2) throw InvalidArgument("pca needs at least two samples");

    PcaModel model;
    model.mean = X.colwise().mean().transpose();
    const Eigen::Index p = std::min<Eigen::Index>(static_cast<Eigen::Index>(k + opt.guard), d);
    const double scale = 1.0 / static_cast<double>(N - 1);

    // C Q = X_c^T X_c Q / (N-1) with X_c = X - 1 mean^T.
    auto cov_times = [&](const Eigen::MatrixXd& Q) {
        Eigen::MatrixXd Y = X * Q;
        Y.rowwise() -= model.mean.transpose() * Q;
        Eigen::MatrixXd Z = X.transpose() * Y;
        Z -= model.mean * Y.colwise().sum();
        return Eigen::MatrixXd(Z * scale);
    };
    auto orthonormalize = [&](const Eigen::MatrixXd& A) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        return Eigen::MatrixXd(qr.householderQ() * Eigen::MatrixXd::Identity(d, p));
    };

    // Deterministic start block from a fixed-seed LCG so the result does not
    // depend on Eigen's Random().
    Eigen::MatrixXd Q(d, p);
    std::uint64_t state = opt.seed;
    for (Eigen::Index c = 0; c < p; ++c)
        for (Eigen::Index r = 0; r < d; ++r) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            Q(r, c) = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        }
    Q = orthonormalize(Q);

    Eigen::MatrixXd V_prev;
    Eigen::MatrixXd V;
    Eigen::VectorXd lambda;
    const auto kk = static_cast<Eigen::Index>(k);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        const Eigen::MatrixXd Z = cov_times(Q);
        // Rayleigh-Ritz on span(Q).
        Eigen::MatrixXd T = Q.transpose() * Z;
        T = 0.5 * (T + T.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // Eigen sorts ascending; reverse to descending.
        const Eigen::MatrixXd W = es.eigenvectors().rowwise().reverse();
        lambda = es.eigenvalues().reverse();
        V = Q * W.leftCols(kk);
        for (Eigen::Index c = 0; c < kk; ++c) {
            Eigen::Index at;
            V.col(c).cwiseAbs().maxCoeff(&at);
            if (V(at, c) < 0) V.col(c) *= -1;
        }
        if (V_prev.size() != 0) {
            double change = 0;
            for (Eigen::Index c = 0; c < kk; ++c) change = std::max(change, (V.col(c) - V_prev.col(c)).norm());
            if (change < opt.tol) {
                model.components = V;
                model.explained_variance = lambda.head(kk);
                model.iterations = it;
                return model;
            }
        }
        V_prev = V;
        Q = orthonormalize(Z);
    }
    throw NotConverged("pca block power iteration", opt.max_iterations);
}

}  // namespace geneo::dice
