#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "geneo/error.hpp"
#include "geneo/measure.hpp"
#include "geneo/operator.hpp"
#include "geneo/permutation.hpp"

namespace geneo {

inline constexpr double kDefaultBvnTol = 1e-9;

struct BvnTerm {
    double weight;
    Permutation perm;
};

/// M ~= sum_i weight_i P(perm_i), with weights summing to the line sum.
struct BvnDecomposition {
    std::vector<BvnTerm> terms;
    double residual_norm = 0;  // max |M - sum w_i P(h_i)|
    double line_sum = 0;

    /// The coefficient function c as a (generally non-permutant) measure.
    SignedMeasure coefficients(std::size_t degree) const {
        SignedMeasure c(degree);
        for (const auto& t : terms) c.add(t.perm, t.weight);
        return c;
    }

    OperatorMatrix reconstruct(std::size_t degree) const { return matrix_of_measure(coefficients(degree)); }
};

/// Common row/column sum of a non-negative matrix, within tol.
inline double validate_line_sums(const OperatorMatrix& M, double tol = kDefaultBvnTol) {
    const std::size_t n = M.size();
    if (n == 0) return 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (M(i, j) < -tol) throw NegativeEntry(i, j, M(i, j));
    auto clamped = [&](std::size_t i, std::size_t j) { return std::max(M(i, j), 0.0); };
    double reference = 0;
    for (std::size_t j = 0; j < n; ++j) reference += clamped(0, j);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0, col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            row += clamped(i, j);
            col += clamped(j, i);
        }
        if (std::abs(row - reference) > tol) throw LineSumViolation(true, i, row, reference);
        if (std::abs(col - reference) > tol) throw LineSumViolation(false, i, col, reference);
    }
    return reference;
}

namespace detail {

/// Maximum bipartite matching on the support graph (rows -> columns) by
/// augmenting paths, seeded greedily. Rows are processed in ascending
/// order and candidate columns are tried in ascending order.
class SupportMatching {
public:
    explicit SupportMatching(std::vector<std::vector<std::size_t>> adjacency)
        : adj_(std::move(adjacency)), n_(adj_.size()), row_match_(n_, kNone), col_match_(n_, kNone) {}

    /// True if every row is matched. Otherwise hall_rows() holds the rows
    /// reached by the failed augmentation; they see fewer columns than rows.
    bool solve() {
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c : adj_[r])
                if (col_match_[c] == kNone) {
                    row_match_[r] = c;
                    col_match_[c] = r;
                    break;
                }
        for (std::size_t r = 0; r < n_; ++r) {
            if (row_match_[r] != kNone) continue;
            row_seen_.assign(n_, false);
            col_seen_.assign(n_, false);
            if (!augment(r)) {
                hall_rows_.clear();
                for (std::size_t i = 0; i < n_; ++i)
                    if (row_seen_[i]) hall_rows_.push_back(i);
                return false;
            }
        }
        return true;
    }

    const std::vector<std::size_t>& row_match() const { return row_match_; }
    const std::vector<std::size_t>& hall_rows() const { return hall_rows_; }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    bool augment(std::size_t r) {
        row_seen_[r] = true;
        for (std::size_t c : adj_[r]) {
            if (col_seen_[c]) continue;
            col_seen_[c] = true;
            if (col_match_[c] == kNone || augment(col_match_[c])) {
                row_match_[r] = c;
                col_match_[c] = r;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::size_t n_;
    std::vector<std::size_t> row_match_, col_match_;
    std::vector<bool> row_seen_, col_seen_;
    std::vector<std::size_t> hall_rows_;
};

}  // namespace detail

/// Greedy Birkhoff-von Neumann peeling. Each round finds a perfect matching
/// in {(i,j) : M(i,j) > tol}, subtracts its minimum entry times the matched
/// permutation matrix, and zeroes the entry that attained the minimum.
inline BvnDecomposition decompose(const OperatorMatrix& M, double tol = kDefaultBvnTol) {
    const std::size_t n = M.size();
    BvnDecomposition out;
    out.line_sum = validate_line_sums(M, tol);
    OperatorMatrix work(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work(i, j) = std::max(M(i, j), 0.0);

    double remaining = out.line_sum;
    // Every round zeroes at least one entry, so n^2 rounds is a hard ceiling.
    const std::size_t max_terms = n * n;
    while (work.max_abs_entry() > tol) {
        std::vector<std::vector<std::size_t>> adj(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (work(i, j) > tol) adj[i].push_back(j);
        detail::SupportMatching matching(std::move(adj));
        if (!matching.solve()) {
            // Leftover dust from accumulated rounding, not a real violation.
            if (remaining <= static_cast<double>(n) * tol) break;
            throw NoPerfectMatching(matching.hall_rows());
        }
        const auto& rm = matching.row_match();
        std::size_t arg_row = 0;
        double w = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (work(i, rm[i]) < w) {
                w = work(i, rm[i]);
                arg_row = i;
            }
        std::vector<Index> images(n);
        for (std::size_t i = 0; i < n; ++i) {
            images[rm[i]] = static_cast<Index>(i);
            work(i, rm[i]) -= w;
        }
        work(arg_row, rm[arg_row]) = 0.0;
        out.terms.push_back({w, Permutation(std::move(images))});
        remaining -= w;
        if (out.terms.size() > max_terms)
            throw VerificationFailure("BvN peeling did not terminate within n^2 rounds");
    }
    out.residual_norm = max_abs_difference(M, out.reconstruct(n));
    return out;
}

/// B+ = max(B, 0), B- = max(-B, 0) entrywise.
inline std::pair<OperatorMatrix, OperatorMatrix> split_positive_negative(const OperatorMatrix& B) {
    const std::size_t n = B.size();
    OperatorMatrix pos(n), neg(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            pos(i, j) = std::max(B(i, j), 0.0);
            neg(i, j) = std::max(-B(i, j), 0.0);
        }
    return {std::move(pos), std::move(neg)};
}

}  // namespace geneo
