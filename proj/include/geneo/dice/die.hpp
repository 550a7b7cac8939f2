#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "geneo/dice/face.hpp"
#include "geneo/dice/lattice.hpp"
#include "geneo/dice/random.hpp"
#include "geneo/error.hpp"

namespace geneo::dice {

/// Faces are numbered 2*axis + side: side 0 lies at coordinate 1, side 1 at
/// coordinate n. Face f is opposite face f ^ 1. The in-face coordinates
/// (a, b) are the two remaining axes in increasing order.
inline constexpr std::size_t kFaceCount = 6;

/// Dot count shown on each face.
using FaceAssignment = std::array<int, kFaceCount>;

inline bool opposite_faces_sum_to_seven(const FaceAssignment& f, std::size_t axis) {
    return f[2 * axis] + f[2 * axis + 1] == 7;
}

/// One synthetic die scan. Only surface values are stored; the interior is zero.
struct DieSample {
    int label = 0;  // 1: opposite faces sum to 7; 2: no opposite pair sums to 7
    std::uint64_t seed = 0;
    std::vector<float> surface_values;
};

struct DieOptions {
    double coeff_lo = 0.6;
    double coeff_hi = 1.0;
    int min_turns = 1;
    int max_turns = 5;
    FaceLayout layout{};
};

/// A generated die with the bookkeeping tests need.
struct GeneratedDie {
    DieSample sample;
    FaceAssignment faces_before{};  // assignment before the random rotation
    FaceAssignment faces_after{};   // where each pattern ended up
    int turns = 0;
    int class2_attempts = 0;
};

/// Random face assignment for class 1: each axis gets one of the pairs
/// (1,6), (2,5), (3,4), in random order on the two sides.
inline FaceAssignment sample_class1_assignment(Rng& rng) {
    std::array<std::array<int, 2>, 3> pairs{{{1, 6}, {2, 5}, {3, 4}}};
    rng.shuffle(std::span(pairs));
    FaceAssignment f{};
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const bool flip = rng.below(2) == 1;
        f[2 * axis] = pairs[axis][flip ? 1 : 0];
        f[2 * axis + 1] = pairs[axis][flip ? 0 : 1];
    }
    return f;
}

/// Uniform bijection {1..6} -> faces with no opposite pair summing to 7, by rejection.
inline FaceAssignment sample_class2_assignment(Rng& rng, int* attempts = nullptr) {
    FaceAssignment f{1, 2, 3, 4, 5, 6};
    int tries = 0;
    for (;;) {
        ++tries;
        FaceAssignment g{1, 2, 3, 4, 5, 6};
        rng.shuffle(std::span(g));
        if (!opposite_faces_sum_to_seven(g, 0) && !opposite_faces_sum_to_seven(g, 1) &&
            !opposite_faces_sum_to_seven(g, 2)) {
            f = g;
            break;
        }
    }
    if (attempts) *attempts = tries;
    return f;
}

/// Renders dice on a fixed lattice. Holds the surface restrictions of the
/// three quarter turns, so one instance serves a whole dataset.
class DieGenerator {
public:
    explicit DieGenerator(std::size_t n = 25, DieOptions options = {})
        : lattice_(n), options_(options) {
        if (n < 21) throw InvalidArgument("die generation needs n >= 21");
        if (!(options.coeff_lo <= options.coeff_hi) || options.coeff_lo < 0 || options.coeff_hi > 1)
            throw InvalidArgument("coefficient range must satisfy 0 <= lo <= hi <= 1");
        if (options.min_turns < 0 || options.min_turns > options.max_turns)
            throw InvalidArgument("turn range must satisfy 0 <= min <= max");
        const CubeSymmetries S = build_cube_group_and_permutants(lattice_);
        for (std::size_t t = 0; t < 3; ++t)
            turn_inverse_[t] = lattice_.restrict_to_surface(S.quarter_turns[t]).inverse();
        for (std::size_t f = 0; f < kFaceCount; ++f) face_probe_[f] = face_point(f, 2, 2);
        for (std::size_t t = 0; t < 3; ++t) {
            const Permutation& g = S.quarter_turns[t];
            for (std::size_t f = 0; f < kFaceCount; ++f) turn_face_[t][f] = face_of(g[face_probe_[f]]);
        }
    }

    const CubeLattice& lattice() const noexcept { return lattice_; }
    const DieOptions& options() const noexcept { return options_; }

    /// Draw order: face assignment, dot coefficients (faces 0..5, dots in
    /// layout order), number of turns p, then p turn axes.
    GeneratedDie generate(int label, Rng& rng) const {
        GeneratedDie die;
        die.sample.label = label;
        if (label == 1)
            die.faces_before = sample_class1_assignment(rng);
        else if (label == 2)
            die.faces_before = sample_class2_assignment(rng, &die.class2_attempts);
        else
            throw InvalidArgument("die label must be 1 or 2");

        const std::size_t n = lattice_.n();
        std::vector<double> values(lattice_.surface_len(), 0.0);
        for (std::size_t f = 0; f < kFaceCount; ++f) {
            const int m = die.faces_before[f];
            std::vector<double> k(static_cast<std::size_t>(m));
            for (double& v : k) v = rng.uniform(options_.coeff_lo, options_.coeff_hi);
            const FaceGrid grid = render_face(m, k, n, options_.layout);
            for (int a = 1; a <= static_cast<int>(n); ++a)
                for (int b = 1; b <= static_cast<int>(n); ++b) {
                    const double v = grid.at(a, b);
                    if (v != 0.0) values[static_cast<std::size_t>(lattice_.surface_position(face_point(f, a, b)))] += v;
                }
        }

        die.turns = static_cast<int>(rng.between(options_.min_turns, options_.max_turns));
        die.faces_after = die.faces_before;
        std::vector<double> rotated(values.size());
        for (int t = 0; t < die.turns; ++t) {
            const std::size_t axis = rng.below(3);
            // phi -> phi g^-1 moves the pattern on face f to face g(f).
            const Permutation& ginv = turn_inverse_[axis];
            for (std::size_t s = 0; s < values.size(); ++s) rotated[s] = values[ginv[s]];
            std::swap(values, rotated);
            FaceAssignment moved{};
            for (std::size_t f = 0; f < kFaceCount; ++f) moved[turn_face_[axis][f]] = die.faces_after[f];
            die.faces_after = moved;
        }

        die.sample.surface_values.assign(values.begin(), values.end());
        return die;
    }

    GeneratedDie generate_seeded(int label, std::uint64_t seed) const {
        Rng rng(seed);
        GeneratedDie die = generate(label, rng);
        die.sample.seed = seed;
        return die;
    }

    /// Lattice index of in-face point (a, b) on face f.
    Index face_point(std::size_t f, int a, int b) const {
        const std::size_t axis = f / 2;
        const int fixed = (f % 2 == 0) ? 1 : static_cast<int>(lattice_.n());
        Coord c{};
        c[axis] = fixed;
        c[axis == 0 ? 1 : 0] = a;
        c[axis == 2 ? 1 : 2] = b;
        return lattice_.flat(c);
    }

private:
    /// The face whose interior contains lattice point p.
    std::size_t face_of(Index p) const {
        const Coord c = lattice_.coords(p);
        for (std::size_t axis = 0; axis < 3; ++axis) {
            if (c[axis] == 1) return 2 * axis;
            if (c[axis] == static_cast<int>(lattice_.n())) return 2 * axis + 1;
        }
        throw InvalidArgument("point is not on the surface");
    }

    CubeLattice lattice_;
    DieOptions options_;
    std::array<Permutation, 3> turn_inverse_;
    std::array<Index, kFaceCount> face_probe_{};
    std::array<std::array<std::size_t, kFaceCount>, 3> turn_face_{};
};

/// Worker count: GENEO_THREADS when set and positive, else hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GENEO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

/// Die i has label 1 when i is even (odd iteration counting from 1) and 2
/// otherwise, and is generated from seed ^ i. The output does not depend on
/// the number of workers.
inline std::vector<DieSample> generate_dataset(std::size_t count, std::uint64_t seed, const DieGenerator& gen,
                                               unsigned workers = worker_count()) {
    if (count % 2 != 0) throw InvalidArgument("dataset size must be even");
    std::vector<DieSample> out(count);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < count; i += stride)
            out[i] = gen.generate_seeded(i % 2 == 0 ? 1 : 2, seed ^ static_cast<std::uint64_t>(i)).sample;
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace geneo::dice
