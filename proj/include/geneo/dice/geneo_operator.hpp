#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "geneo/dice/lattice.hpp"
#include "geneo/error.hpp"
#include "geneo/measure.hpp"

namespace geneo::dice {

/// F(phi) = sum_h w(h) phi h^-1 restricted to the cube surface. Each map holds
/// the surface restriction of h^-1, so F(phi)[s] = sum_h w(h) phi[map_h[s]].
class SurfaceOperator {
public:
    SurfaceOperator(const CubeLattice& L, const SignedMeasure& m) : surface_len_(L.surface_len()), measure_(m) {
        if (m.degree() != L.point_count()) throw DegreeMismatch(L.point_count(), m.degree());
        for (const auto& [h, w] : m.weights()) {
            const Permutation hinv = L.restrict_to_surface(h).inverse();
            index_maps_.emplace_back(hinv.images().begin(), hinv.images().end());
            weights_.push_back(w);
        }
    }

    std::size_t surface_len() const noexcept { return surface_len_; }
    const std::vector<std::vector<Index>>& index_maps() const noexcept { return index_maps_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const SignedMeasure& measure() const noexcept { return measure_; }

    template <class In, class Out>
    void apply(std::span<const In> phi, std::span<Out> out) const {
        if (phi.size() != surface_len_ || out.size() != surface_len_)
            throw InvalidArgument("signal length does not match the surface length");
        for (std::size_t s = 0; s < surface_len_; ++s) {
            double acc = 0;
            for (std::size_t t = 0; t < index_maps_.size(); ++t) acc += weights_[t] * static_cast<double>(phi[index_maps_[t][s]]);
            out[s] = static_cast<Out>(acc);
        }
    }

    std::vector<double> apply(std::span<const double> phi) const {
        std::vector<double> out(surface_len_);
        apply<double, double>(phi, out);
        return out;
    }

private:
    std::size_t surface_len_;
    SignedMeasure measure_;
    std::vector<std::vector<Index>> index_maps_;
    std::vector<double> weights_;
};

using GeneoWeights = std::array<double, 3>;

inline constexpr GeneoWeights kDefaultGeneoWeights{0.318, 0.551, 0.131};

/// alpha_1 mu_1 + alpha_2 mu_2 + alpha_3 mu_3, mu_i uniform with mass 1 on H_i.
inline SignedMeasure combined_measure(const CubeSymmetries& S, const GeneoWeights& alpha) {
    if (alpha[0] < 0 || alpha[1] < 0 || alpha[2] < 0) throw InvalidArgument("GENEO weights must be non-negative");
    if (std::abs(alpha[0] + alpha[1] + alpha[2] - 1.0) > 1e-9) throw InvalidArgument("GENEO weights must sum to 1");
    const std::size_t n = S.group.degree();
    const std::array<const Permutant*, 3> H{&S.face_reflections, &S.edge_reflections, &S.central_symmetry};
    SignedMeasure m(n);
    for (std::size_t i = 0; i < 3; ++i)
        for (const auto& h : H[i]->members) m.add(h, alpha[i] / static_cast<double>(H[i]->size()));
    return m;
}

inline SurfaceOperator build_geneo(const CubeLattice& L, const GeneoWeights& alpha = kDefaultGeneoWeights) {
    return SurfaceOperator(L, combined_measure(build_cube_group_and_permutants(L), alpha));
}

}  // namespace geneo::dice
