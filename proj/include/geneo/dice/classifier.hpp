#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geneo/dice/random.hpp"
#include "geneo/error.hpp"

namespace geneo::dice {

/// All monomials of degree 1 and 2 in the inputs: x_1..x_k, then x_i x_j for i <= j.
inline Eigen::MatrixXd quadratic_features(const Eigen::MatrixXd& Z) {
    const Eigen::Index k = Z.cols();
    Eigen::MatrixXd F(Z.rows(), k + k * (k + 1) / 2);
    F.leftCols(k) = Z;
    Eigen::Index c = k;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i; j < k; ++j) F.col(c++) = Z.col(i).cwiseProduct(Z.col(j));
    return F;
}

struct ClassifierOptions {
    double lambda = 1e-4;
    int epochs = 50;
    std::uint64_t shuffle_seed = 0;
};

/// Degree-2 feature map, standardized on the training data, followed by a
/// linear hinge-loss model trained with Pegasos. Class 1 maps to +1.
class QuadraticClassifier {
public:
    static QuadraticClassifier train(const Eigen::MatrixXd& Z, std::span<const int> labels,
                                     const ClassifierOptions& opt = {}) {
        const auto N = Z.rows();
        if (static_cast<std::size_t>(N) != labels.size()) throw InvalidArgument("feature and label counts differ");
        if (Z.cols() == 0 || Z.cols() > 4) throw InvalidArgument("classifier expects 1..4 input features");
        if (opt.lambda <= 0 || opt.epochs <= 0) throw InvalidArgument("lambda and epochs must be positive");
        std::vector<double> y(labels.size());
        bool seen_pos = false, seen_neg = false;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] != 1 && labels[i] != 2) throw InvalidArgument("labels must be 1 or 2");
            y[i] = labels[i] == 1 ? 1.0 : -1.0;
            (labels[i] == 1 ? seen_pos : seen_neg) = true;
        }
        if (!seen_pos || !seen_neg) throw InvalidArgument("training set contains a single class");

        QuadraticClassifier c;
        c.inputs_ = Z.cols();
        Eigen::MatrixXd F = quadratic_features(Z);
        c.mean_ = F.colwise().mean().transpose();
        F.rowwise() -= c.mean_.transpose();
        c.scale_ = (F.colwise().squaredNorm() / static_cast<double>(N)).cwiseSqrt().transpose();
        for (Eigen::Index j = 0; j < c.scale_.size(); ++j)
            if (c.scale_[j] <= 0) c.scale_[j] = 1.0;
        for (Eigen::Index j = 0; j < F.cols(); ++j) F.col(j) /= c.scale_[j];

        c.w_ = Eigen::VectorXd::Zero(F.cols());
        c.b_ = 0;
        Rng rng(opt.shuffle_seed);
        std::vector<std::size_t> order(static_cast<std::size_t>(N));
        std::uint64_t t = 0;
        for (int epoch = 0; epoch < opt.epochs; ++epoch) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            rng.shuffle(std::span(order));
            for (std::size_t i : order) {
                ++t;
                const double eta = 1.0 / (opt.lambda * static_cast<double>(t));
                const auto x = F.row(static_cast<Eigen::Index>(i));
                const double margin = y[i] * (x.dot(c.w_) + c.b_);
                c.w_ *= 1.0 - eta * opt.lambda;
                if (margin < 1) {
                    c.w_ += eta * y[i] * x.transpose();
                    c.b_ += eta * y[i];
                }
            }
        }
        return c;
    }

    /// Signed distance-like score; >= 0 predicts class 1.
    Eigen::VectorXd decision(const Eigen::MatrixXd& Z) const {
        if (Z.cols() != inputs_) throw InvalidArgument("feature count does not match the trained model");
        Eigen::MatrixXd F = quadratic_features(Z);
        F.rowwise() -= mean_.transpose();
        for (Eigen::Index j = 0; j < F.cols(); ++j) F.col(j) /= scale_[j];
        return (F * w_).array() + b_;
    }

    std::vector<int> predict(const Eigen::MatrixXd& Z) const {
        const Eigen::VectorXd s = decision(Z);
        std::vector<int> out(static_cast<std::size_t>(s.size()));
        for (Eigen::Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = s[i] >= 0 ? 1 : 2;
        return out;
    }

    const Eigen::VectorXd& weights() const noexcept { return w_; }
    double bias() const noexcept { return b_; }

private:
    Eigen::Index inputs_ = 0;
    Eigen::VectorXd mean_, scale_, w_;
    double b_ = 0;
};

/// counts[actual-1][predicted-1]
using ConfusionMatrix = std::array<std::array<std::size_t, 2>, 2>;

inline ConfusionMatrix confusion(std::span<const int> actual, std::span<const int> predicted) {
    if (actual.size() != predicted.size()) throw InvalidArgument("label counts differ");
    ConfusionMatrix m{};
    for (std::size_t i = 0; i < actual.size(); ++i)
        ++m[static_cast<std::size_t>(actual[i] - 1)][static_cast<std::size_t>(predicted[i] - 1)];
    return m;
}

inline double accuracy(const ConfusionMatrix& m) {
    const std::size_t total = m[0][0] + m[0][1] + m[1][0] + m[1][1];
    return total ? static_cast<double>(m[0][0] + m[1][1]) / static_cast<double>(total) : 0.0;
}

}  // namespace geneo::dice
