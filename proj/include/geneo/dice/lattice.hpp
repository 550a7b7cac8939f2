#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "geneo/error.hpp"
#include "geneo/group.hpp"
#include "geneo/permutation.hpp"

namespace geneo::dice {

using Coord = std::array<int, 3>;  // 1-based (i, j, k)

/// The cubic lattice {1..n}^3 with its outer surface indexed in ascending
/// flat order, flat(i,j,k) = (i-1) n^2 + (j-1) n + (k-1).
class CubeLattice {
public:
    explicit CubeLattice(std::size_t n) : n_(n), surface_pos_(n * n * n, -1) {
        if (n < 2) throw InvalidArgument("cube lattice needs n >= 2");
        for (std::size_t f = 0; f < n * n * n; ++f) {
            const Coord c = coords(static_cast<Index>(f));
            if (on_surface(c)) {
                surface_pos_[f] = static_cast<std::int32_t>(surface_index_.size());
                surface_index_.push_back(static_cast<Index>(f));
            }
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t point_count() const noexcept { return n_ * n_ * n_; }
    std::size_t surface_len() const noexcept { return surface_index_.size(); }
    const std::vector<Index>& surface_index() const noexcept { return surface_index_; }

    Index flat(const Coord& c) const {
        return static_cast<Index>((c[0] - 1) * n_ * n_ + (c[1] - 1) * n_ + (c[2] - 1));
    }

    Coord coords(Index f) const {
        const int n = static_cast<int>(n_);
        const int v = static_cast<int>(f);
        return {v / (n * n) + 1, (v / n) % n + 1, v % n + 1};
    }

    bool on_surface(const Coord& c) const {
        const int n = static_cast<int>(n_);
        for (int x : c)
            if (x == 1 || x == n) return true;
        return false;
    }

    /// Surface position of a lattice point, or -1 for interior points.
    std::int32_t surface_position(Index f) const { return surface_pos_[f]; }

    /// r(i) = n + 1 - i
    int reflect(int i) const { return static_cast<int>(n_) + 1 - i; }

    /// The lattice permutation x -> map(x).
    Permutation permutation(const std::function<Coord(const Coord&)>& map) const {
        std::vector<Index> images(point_count());
        for (std::size_t f = 0; f < images.size(); ++f) images[f] = flat(map(coords(static_cast<Index>(f))));
        return Permutation(std::move(images));
    }

    /// Restriction of a surface-preserving lattice permutation to surface positions.
    Permutation restrict_to_surface(const Permutation& h) const {
        if (h.degree() != point_count()) throw DegreeMismatch(point_count(), h.degree());
        std::vector<Index> images(surface_len());
        for (std::size_t s = 0; s < images.size(); ++s) {
            const std::int32_t p = surface_pos_[h[surface_index_[s]]];
            if (p < 0) throw InvalidArgument("permutation does not preserve the cube surface");
            images[s] = static_cast<Index>(p);
        }
        return Permutation(std::move(images));
    }

private:
    std::size_t n_;
    std::vector<Index> surface_index_;
    std::vector<std::int32_t> surface_pos_;
};

/// Rotation group of the cube lattice and the three permutants used to build
/// the dice operators. Quarter turns are positive (right-handed) rotations
/// about the i, j and k axes.
struct CubeSymmetries {
    PermutationGroup group;  // 24 rotations
    Permutant face_reflections;   // H1: reflections in the three mid-planes
    Permutant edge_reflections;   // H2: reflections in the six diagonal planes
    Permutant central_symmetry;   // H3
    std::array<Permutation, 3> quarter_turns;
};

inline CubeSymmetries build_cube_group_and_permutants(const CubeLattice& L) {
    auto r = [&](int x) { return L.reflect(x); };
    auto P = [&](auto f) { return L.permutation([&](const Coord& c) { return f(c[0], c[1], c[2]); }); };

    const Permutation a = P([&](int i, int j, int k) { return Coord{i, r(k), j}; });
    const Permutation b = P([&](int i, int j, int k) { return Coord{r(k), j, i}; });

    CubeSymmetries S{
        PermutationGroup::close({a, b}),
        Permutant({P([&](int i, int j, int k) { return Coord{r(i), j, k}; }),
                   P([&](int i, int j, int k) { return Coord{i, r(j), k}; }),
                   P([&](int i, int j, int k) { return Coord{i, j, r(k)}; })}),
        Permutant({P([&](int i, int j, int k) { return Coord{j, i, k}; }),
                   P([&](int i, int j, int k) { return Coord{r(j), r(i), k}; }),
                   P([&](int i, int j, int k) { return Coord{k, j, i}; }),
                   P([&](int i, int j, int k) { return Coord{r(k), j, r(i)}; }),
                   P([&](int i, int j, int k) { return Coord{i, k, j}; }),
                   P([&](int i, int j, int k) { return Coord{i, r(k), r(j)}; })}),
        Permutant({P([&](int i, int j, int k) { return Coord{r(i), r(j), r(k)}; })}),
        {a, P([&](int i, int j, int k) { return Coord{k, j, r(i)}; }),
         P([&](int i, int j, int k) { return Coord{r(j), i, k}; })},
    };
    return S;
}

}  // namespace geneo::dice
