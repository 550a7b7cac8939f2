#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "geneo/error.hpp"
#include "geneo/group.hpp"
#include "geneo/measure.hpp"
#include "geneo/permutation.hpp"

namespace geneo {

inline constexpr double kDefaultCertifyTol = 1e-9;

/// A function X -> R, values[j] = phi(x_j).
struct Signal {
    std::vector<double> values;

    Signal() = default;
    explicit Signal(std::vector<double> v) : values(std::move(v)) {}

    static Signal indicator(std::size_t n, std::size_t j) {
        Signal s(std::vector<double>(n, 0.0));
        s.values[j] = 1.0;
        return s;
    }

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }

    double sup_norm() const {
        double m = 0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    friend bool operator==(const Signal&, const Signal&) = default;
};

/// Dense square matrix of a linear operator on R^X, column convention
/// F(1_{x_j}) = sum_i entries(i, j) 1_{x_i}.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static OperatorMatrix identity(std::size_t n) {
        OperatorMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static OperatorMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        std::vector<std::vector<double>> r;
        for (const auto& row : rows) r.emplace_back(row);
        return from_rows(r);
    }

    static OperatorMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        OperatorMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) throw InvalidArgument("matrix is not square");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (!std::isfinite(rows[i][j])) throw InvalidArgument("matrix entry is not finite");
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> c(n_);
        for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Signal apply(const Signal& phi) const {
        if (phi.size() != n_) throw DegreeMismatch(n_, phi.size());
        Signal out(std::vector<double>(n_, 0.0));
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * phi.values[j];
            out.values[i] = s;
        }
        return out;
    }

    double max_abs_entry() const {
        double m = 0;
        for (double v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
        if (a.n_ != b.n_) throw DegreeMismatch(a.n_, b.n_);
        OperatorMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) {
        if (a.n_ != b.n_) throw DegreeMismatch(a.n_, b.n_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
        return a;
    }

    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) {
        if (a.n_ != b.n_) throw DegreeMismatch(a.n_, b.n_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
        return a;
    }

    friend OperatorMatrix operator*(double s, OperatorMatrix a) {
        for (double& v : a.a_) v *= s;
        return a;
    }

    friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// max |a_ij - b_ij|
inline double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.size() != b.size()) throw DegreeMismatch(a.size(), b.size());
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

/// P(h) with P(h) e_j = e_{h(j)}.
inline OperatorMatrix permutation_matrix(const Permutation& h) {
    OperatorMatrix P(h.degree());
    for (std::size_t j = 0; j < h.degree(); ++j) P(h[j], j) = 1.0;
    return P;
}

/// phi h, i.e. result[j] = phi(h(x_j)).
inline Signal right_translate(const Signal& phi, const Permutation& h) {
    if (phi.size() != h.degree()) throw DegreeMismatch(phi.size(), h.degree());
    Signal out(std::vector<double>(phi.size()));
    for (std::size_t j = 0; j < phi.size(); ++j) out.values[j] = phi.values[h[j]];
    return out;
}

/// F_m(phi) = sum_h m(h) phi h^-1.
inline Signal apply_measure_operator(const SignedMeasure& m, const Signal& phi) {
    if (phi.size() != m.degree()) throw DegreeMismatch(m.degree(), phi.size());
    Signal out(std::vector<double>(phi.size(), 0.0));
    for (const auto& [h, w] : m.weights()) {
        // (phi h^-1)(x_{h(j)}) = phi(x_j)
        for (std::size_t j = 0; j < phi.size(); ++j) out.values[h[j]] += w * phi.values[j];
    }
    return out;
}

/// B = sum_h m(h) P(h).
inline OperatorMatrix matrix_of_measure(const SignedMeasure& m) {
    OperatorMatrix B(m.degree());
    for (const auto& [h, w] : m.weights())
        for (std::size_t j = 0; j < m.degree(); ++j) B(h[j], j) += w;
    return B;
}

struct EquivarianceWitness {
    Permutation g;
    std::size_t row;
    std::size_t col;
    double deviation;
};

struct EquivarianceResult {
    bool equivariant = true;
    std::optional<EquivarianceWitness> witness;

    explicit operator bool() const noexcept { return equivariant; }
};

/// Checks B P(g) = P(g) B entrywise within tol. Only the generators are
/// checked unless `exhaustive` is set; commuting with the generators implies
/// commuting with every product of them.
inline EquivarianceResult is_equivariant(const OperatorMatrix& B, const PermutationGroup& G,
                                         double tol = kDefaultCertifyTol, bool exhaustive = false) {
    if (B.size() != G.degree()) throw DegreeMismatch(B.size(), G.degree());
    if (tol < 0) throw InvalidArgument("tol must be non-negative");
    const auto& gs = exhaustive ? G.elements() : G.generators();
    const std::size_t n = B.size();
    for (const auto& g : gs) {
        const Permutation ginv = g.inverse();
        // (B P(g))_ij = B(i, g(j));  (P(g) B)_ij = B(g^-1(i), j)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double dev = std::abs(B(i, g[j]) - B(ginv[i], j));
                if (dev > tol) return {false, EquivarianceWitness{g, i, j, dev}};
            }
    }
    return {};
}

/// Exact L-inf operator norm: the maximal absolute row sum.
inline double operator_inf_norm(const OperatorMatrix& B) {
    double best = 0;
    for (std::size_t i = 0; i < B.size(); ++i) {
        double s = 0;
        for (double v : B.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

inline bool is_nonexpansive(const OperatorMatrix& B, double tol = kDefaultCertifyTol) {
    if (tol < 0) throw InvalidArgument("tol must be non-negative");
    return operator_inf_norm(B) <= 1.0 + tol;
}

/// For an equivariant B under a transitive G, every row and every column is
/// a permutation of row 0. Verifies the preconditions itself and throws if
/// they do not hold.
inline bool check_row_column_structure(const OperatorMatrix& B, const PermutationGroup& G,
                                       double tol = kDefaultCertifyTol) {
    if (!is_transitive(G)) throw NotTransitive();
    if (auto eq = is_equivariant(B, G, tol); !eq) {
        const auto& w = *eq.witness;
        throw NotEquivariant({w.g.images().begin(), w.g.images().end()}, w.row, w.col, w.deviation);
    }
    const std::size_t n = B.size();
    auto sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto reference = sorted({B.row(0).begin(), B.row(0).end()});
    auto matches = [&](const std::vector<double>& line) {
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(line[k] - reference[k]) > tol) return false;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (!matches(sorted({B.row(i).begin(), B.row(i).end()}))) return false;
        if (!matches(sorted(B.column(i)))) return false;
    }
    return true;
}

}  // namespace geneo
