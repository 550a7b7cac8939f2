#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <utility>
#include <vector>

#include "geneo/error.hpp"

namespace geneo::dice {

/// Dot center coordinates used by the standard face layouts (1-based).
struct FaceLayout {
    int n1 = 6;
    int n2 = 13;
    int n3 = 20;
};

/// Truncated Gaussian spot, sigma = 1, zero beyond Chebyshev distance 3.
inline double dot_value(int da, int db) {
    if (std::abs(da) > 3 || std::abs(db) > 3) return 0.0;
    return std::exp(-0.5 * static_cast<double>(da * da + db * db));
}

/// Dot centers (a, b) for faces showing 1..6 dots: 3 on the main diagonal,
/// 4 on the corners, 5 as 4 plus the center, 6 in two columns of three.
inline std::vector<std::pair<int, int>> dot_centers(int dot_count, const FaceLayout& L = {}) {
    switch (dot_count) {
        case 1: return {{L.n2, L.n2}};
        case 2: return {{L.n1, L.n1}, {L.n3, L.n3}};
        case 3: return {{L.n1, L.n1}, {L.n2, L.n2}, {L.n3, L.n3}};
        case 4: return {{L.n1, L.n1}, {L.n1, L.n3}, {L.n3, L.n1}, {L.n3, L.n3}};
        case 5: return {{L.n1, L.n1}, {L.n1, L.n3}, {L.n2, L.n2}, {L.n3, L.n1}, {L.n3, L.n3}};
        case 6: return {{L.n1, L.n1}, {L.n1, L.n2}, {L.n1, L.n3}, {L.n3, L.n1}, {L.n3, L.n2}, {L.n3, L.n3}};
        default: throw InvalidArgument("dot count must be in 1..6, got " + std::to_string(dot_count));
    }
}

/// An n x n face image, values[(a-1) n + (b-1)].
struct FaceGrid {
    std::size_t n = 0;
    std::vector<double> values;

    double at(int a, int b) const { return values[static_cast<std::size_t>(a - 1) * n + static_cast<std::size_t>(b - 1)]; }
};

/// phi_m(a, b) = sum_i k_i phi_{c_i}(a, b) over the dot centers of the face.
inline FaceGrid render_face(int dot_count, std::span<const double> k, std::size_t n = 25, const FaceLayout& L = {}) {
    const auto centers = dot_centers(dot_count, L);
    if (k.size() != centers.size())
        throw InvalidArgument("expected " + std::to_string(centers.size()) + " dot coefficients, got " +
                              std::to_string(k.size()));
    if (n < 21) throw InvalidArgument("face rendering needs n >= 21");
    FaceGrid face{n, std::vector<double>(n * n, 0.0)};
    const int N = static_cast<int>(n);
    for (std::size_t d = 0; d < centers.size(); ++d) {
        const auto [ca, cb] = centers[d];
        for (int a = std::max(1, ca - 3); a <= std::min(N, ca + 3); ++a)
            for (int b = std::max(1, cb - 3); b <= std::min(N, cb + 3); ++b)
                face.values[static_cast<std::size_t>(a - 1) * n + static_cast<std::size_t>(b - 1)] +=
                    k[d] * dot_value(a - ca, b - cb);
    }
    return face;
}

}  // namespace geneo::dice
