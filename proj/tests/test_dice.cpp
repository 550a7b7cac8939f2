#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "geneo/dice/dataset_io.hpp"
#include "geneo/dice/die.hpp"
#include "geneo/dice/face.hpp"
#include "geneo/dice/geneo_operator.hpp"
#include "geneo/dice/lattice.hpp"
#include "geneo/operator.hpp"
#include "geneo/representation.hpp"
#include "oracles.hpp"

using namespace geneo;
using namespace geneo::dice;

namespace {

const CubeLattice& lattice25() {
    static const CubeLattice L(25);
    return L;
}

const DieGenerator& generator25() {
    static const DieGenerator gen(25);
    return gen;
}

const CubeSymmetries& symmetries25() {
    static const CubeSymmetries S = build_cube_group_and_permutants(lattice25());
    return S;
}

double stencil_mass() {
    double s = 0;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) s += std::exp(-(a * a + b * b) / 2.0);
    return s;
}

// Dot count shown on face f, read from the rendered surface: each face has a
// distinct total mass once all coefficients are 1.
std::vector<double> face_masses(const DieGenerator& gen, const std::vector<float>& v) {
    const auto& L = gen.lattice();
    std::vector<double> m(6, 0.0);
    for (std::size_t f = 0; f < 6; ++f)
        for (int a = 2; a < static_cast<int>(L.n()); ++a)
            for (int b = 2; b < static_cast<int>(L.n()); ++b)
                m[f] += v[static_cast<std::size_t>(L.surface_position(gen.face_point(f, a, b)))];
    return m;
}

}  // namespace

TEST(Lattice, SurfaceSize) {
    EXPECT_EQ(lattice25().surface_len(), 3458u);
    EXPECT_EQ(CubeLattice(3).surface_len(), 26u);
    EXPECT_EQ(CubeLattice(2).surface_len(), 8u);
    EXPECT_THROW(CubeLattice(1), InvalidArgument);
    for (Index f : lattice25().surface_index()) EXPECT_TRUE(lattice25().on_surface(lattice25().coords(f)));
}

TEST(Lattice, GroupAndPermutants) {
    const auto& S = symmetries25();
    EXPECT_EQ(S.group.order(), 24u);
    EXPECT_EQ(S.face_reflections.size(), 3u);
    EXPECT_EQ(S.edge_reflections.size(), 6u);
    EXPECT_EQ(S.central_symmetry.size(), 1u);
    EXPECT_TRUE(is_permutant(S.face_reflections, S.group));
    EXPECT_TRUE(is_permutant(S.edge_reflections, S.group));
    EXPECT_TRUE(is_permutant(S.central_symmetry, S.group));
    for (const auto& g : S.quarter_turns) EXPECT_TRUE(S.group.contains(g));
}

TEST(Lattice, PermutantsAreOrbitsOnTheSmallLattice) {
    const CubeLattice L(3);
    const auto S = build_cube_group_and_permutants(L);
    EXPECT_EQ(S.group.order(), 24u);
    for (const Permutant* H : {&S.face_reflections, &S.edge_reflections, &S.central_symmetry}) {
        // Exhaustive conjugation by every rotation, not just the generators.
        for (const auto& h : H->members)
            for (const auto& g : S.group) EXPECT_TRUE(H->contains(conjugate(g, h)));
        EXPECT_EQ(conjugation_orbit(H->members.front(), S.group).members, H->members);
    }
}

TEST(Lattice, SymmetriesPreserveTheSurface) {
    const auto& L = lattice25();
    const auto& S = symmetries25();
    std::vector<Permutation> all(S.group.begin(), S.group.end());
    for (const Permutant* H : {&S.face_reflections, &S.edge_reflections, &S.central_symmetry})
        all.insert(all.end(), H->members.begin(), H->members.end());
    for (const auto& h : all) EXPECT_NO_THROW(L.restrict_to_surface(h));
}

TEST(Face, DotValues) {
    const std::vector<double> one{1.0};
    const auto f1 = render_face(1, one);
    EXPECT_DOUBLE_EQ(f1.at(13, 13), 1.0);
    EXPECT_NEAR(f1.at(14, 13), 0.60653065971263342, 1e-15);
    EXPECT_EQ(f1.at(17, 13), 0.0);
    EXPECT_EQ(f1.at(9, 9), 0.0);
    EXPECT_GT(f1.at(16, 16), 0.0);

    const std::vector<double> k{0.7, 0.8, 0.9};
    const auto f3 = render_face(3, k);
    EXPECT_DOUBLE_EQ(f3.at(6, 6), 0.7);
    EXPECT_DOUBLE_EQ(f3.at(13, 13), 0.8);
    EXPECT_DOUBLE_EQ(f3.at(20, 20), 0.9);
}

TEST(Face, Validation) {
    const std::vector<double> two{1, 1};
    EXPECT_THROW(render_face(0, two), InvalidArgument);
    EXPECT_THROW(render_face(7, two), InvalidArgument);
    EXPECT_THROW(render_face(3, two), InvalidArgument);
    EXPECT_THROW(render_face(2, two, 20), InvalidArgument);
}

TEST(Face, MassMatchesTheStencil) {
    for (int m = 1; m <= 6; ++m) {
        const std::vector<double> k(static_cast<std::size_t>(m), 1.0);
        const auto f = render_face(m, k);
        double s = 0;
        for (double v : f.values) s += v;
        EXPECT_NEAR(s, m * stencil_mass(), 1e-12);
    }
}

TEST(Die, TotalMassWithUnitCoefficientsAndNoTurns) {
    DieOptions opts;
    opts.coeff_lo = opts.coeff_hi = 1.0;
    opts.min_turns = opts.max_turns = 0;
    const DieGenerator gen(25, opts);
    for (int label : {1, 2}) {
        const auto d = gen.generate_seeded(label, 99);
        double s = 0;
        for (float v : d.sample.surface_values) s += v;
        EXPECT_NEAR(s, 21 * stencil_mass(), 1e-3);
        EXPECT_EQ(d.turns, 0);
        const auto masses = face_masses(gen, d.sample.surface_values);
        for (std::size_t f = 0; f < 6; ++f) EXPECT_NEAR(masses[f], d.faces_before[f] * stencil_mass(), 1e-3);
    }
}

TEST(Die, ClassPredicatesHoldAfterRotation) {
    DieOptions opts;
    opts.coeff_lo = opts.coeff_hi = 1.0;
    const DieGenerator gen(25, opts);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int label = seed % 2 ? 2 : 1;
        const auto d = gen.generate_seeded(label, seed);
        EXPECT_GE(d.turns, 1);
        EXPECT_LE(d.turns, 5);
        // Read the dot counts back from the rendered, rotated surface.
        const auto masses = face_masses(gen, d.sample.surface_values);
        FaceAssignment seen{};
        for (std::size_t f = 0; f < 6; ++f) {
            seen[f] = static_cast<int>(std::lround(masses[f] / stencil_mass()));
            EXPECT_EQ(seen[f], d.faces_after[f]);
        }
        std::multiset<int> counts(seen.begin(), seen.end());
        EXPECT_EQ(counts, (std::multiset<int>{1, 2, 3, 4, 5, 6}));
        for (std::size_t axis = 0; axis < 3; ++axis)
            EXPECT_EQ(opposite_faces_sum_to_seven(seen, axis), label == 1) << "seed " << seed;
        for (float v : d.sample.surface_values) {
            EXPECT_GE(v, 0.0f);
            EXPECT_LE(v, 1.2f);
        }
    }
}

TEST(Die, ClassTwoRejectionRate) {
    Rng rng(5);
    int attempts = 0, total = 0;
    for (int i = 0; i < 2000; ++i) {
        sample_class2_assignment(rng, &attempts);
        total += attempts;
    }
    // Inclusion-exclusion: 720 - (3*144 - 3*48 + 48) = 384 accepted bijections.
    const double acceptance = 2000.0 / total;
    EXPECT_NEAR(acceptance, 384.0 / 720.0, 0.03);
}

TEST(Die, GroupActionPreservesClassPredicate) {
    // Opposite faces stay opposite under every rotation.
    const auto& S = symmetries25();
    const auto& gen = generator25();
    for (const auto& g : S.group) {
        std::array<std::size_t, 6> where{};
        for (std::size_t f = 0; f < 6; ++f) {
            const Coord c = lattice25().coords(g[gen.face_point(f, 13, 13)]);
            for (std::size_t axis = 0; axis < 3; ++axis) {
                if (c[axis] == 1) where[f] = 2 * axis;
                if (c[axis] == 25) where[f] = 2 * axis + 1;
            }
        }
        for (std::size_t f = 0; f < 6; ++f) EXPECT_EQ(where[f ^ 1], where[f] ^ 1);
    }
}

TEST(Die, OptionsValidation) {
    DieOptions bad;
    bad.coeff_lo = 0.9;
    bad.coeff_hi = 0.5;
    EXPECT_THROW(DieGenerator(25, bad), InvalidArgument);
    DieOptions turns;
    turns.min_turns = 3;
    turns.max_turns = 2;
    EXPECT_THROW(DieGenerator(25, turns), InvalidArgument);
    EXPECT_THROW(DieGenerator(10), InvalidArgument);
    EXPECT_THROW(generator25().generate_seeded(3, 0), InvalidArgument);
}

TEST(Dataset, AlternatesAndIsDeterministic) {
    const auto a = generate_dataset(10, 42, generator25(), 1);
    const auto b = generate_dataset(10, 42, generator25(), 3);
    ASSERT_EQ(a.size(), 10u);
    int ones = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].label, i % 2 == 0 ? 1 : 2);
        ones += a[i].label == 1;
        EXPECT_EQ(a[i].seed, 42u ^ i);
        EXPECT_EQ(a[i].surface_values.size(), 3458u);
        EXPECT_EQ(a[i].surface_values, b[i].surface_values);
    }
    EXPECT_EQ(ones, 5);
    EXPECT_THROW(generate_dataset(9, 1, generator25()), InvalidArgument);
    const auto c = generate_dataset(10, 43, generator25(), 1);
    EXPECT_NE(a[0].surface_values, c[0].surface_values);
}

TEST(Dataset, FileRoundTrip) {
    Dataset ds;
    ds.n = 25;
    ds.samples = generate_dataset(6, 7, generator25(), 2);
    const auto path = (std::filesystem::temp_directory_path() / "geneo_dice_test.gdie").string();
    save_dataset(path, ds);
    EXPECT_EQ(std::filesystem::file_size(path), 20u + 6u * (1 + 8 + 4 * 3458));
    const auto back = load_dataset(path);
    EXPECT_EQ(back.n, 25u);
    ASSERT_EQ(back.samples.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(back.samples[i].label, ds.samples[i].label);
        EXPECT_EQ(back.samples[i].seed, ds.samples[i].seed);
        EXPECT_EQ(back.samples[i].surface_values, ds.samples[i].surface_values);
    }
    {
        std::ofstream out(path, std::ios::binary | std::ios::app);
        out.put('x');
    }
    EXPECT_THROW(load_dataset(path), FormatError);
    std::filesystem::remove(path);
    EXPECT_THROW(load_dataset(path), FormatError);
}

TEST(Geneo, WeightsValidation) {
    EXPECT_THROW(build_geneo(CubeLattice(3), {0.5, 0.6, -0.1}), InvalidArgument);
    EXPECT_THROW(build_geneo(CubeLattice(3), {0.5, 0.6, 0.1}), InvalidArgument);
    EXPECT_NO_THROW(build_geneo(CubeLattice(3), {1, 0, 0}));
}

TEST(Geneo, CombinedMeasureIsAPermutantMeasureOfMassOne) {
    const auto& S = symmetries25();
    const auto m = combined_measure(S, kDefaultGeneoWeights);
    EXPECT_EQ(m.support_size(), 10u);
    EXPECT_NEAR(m.total_variation(), 1.0, 1e-15);
    EXPECT_TRUE(is_permutant_measure(m, S.group));
    const auto F = build_geneo(lattice25());
    EXPECT_EQ(F.index_maps().size(), 10u);
    double w = 0;
    for (double x : F.weights()) w += x;
    EXPECT_NEAR(w, 1.0, 1e-15);
    for (const auto& map : F.index_maps()) {
        std::vector<bool> hit(map.size(), false);
        for (Index s : map) hit[s] = true;
        EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
}

TEST(Geneo, FixesSignalsSymmetricUnderTheFaceReflections) {
    const CubeLattice L(25);
    const auto F = build_geneo(L, {1, 0, 0});
    // phi depends only on |i-13|, |j-13|, |k-13|.
    std::vector<double> phi(L.surface_len());
    for (std::size_t s = 0; s < phi.size(); ++s) {
        const Coord c = L.coords(L.surface_index()[s]);
        phi[s] = std::abs(c[0] - 13) + 2.0 * std::abs(c[1] - 13) + 3.5 * std::abs(c[2] - 13);
    }
    const auto out = F.apply(phi);
    for (std::size_t s = 0; s < phi.size(); ++s) EXPECT_NEAR(out[s], phi[s], 1e-12);
}

// On the 27-point lattice the surface operator is the measure operator of
// the combined measure restricted to the surface, and it is equivariant.
TEST(Geneo, MatchesTheMeasureOperatorOnTheSmallLattice) {
    const CubeLattice L(3);
    const auto S = build_cube_group_and_permutants(L);
    const auto m = combined_measure(S, kDefaultGeneoWeights);
    const auto F = SurfaceOperator(L, m);
    const auto B = matrix_of_measure(m);
    EXPECT_TRUE(is_equivariant(B, S.group, 1e-12, true));
    EXPECT_TRUE(is_nonexpansive(B));
    for (std::size_t s = 0; s < L.surface_len(); ++s) {
        std::vector<double> e(L.surface_len(), 0.0);
        e[s] = 1.0;
        const auto col = F.apply(e);
        for (std::size_t t = 0; t < L.surface_len(); ++t)
            EXPECT_NEAR(col[t], B(L.surface_index()[t], L.surface_index()[s]), 1e-15);
    }
}

TEST(Geneo, EquivariantAndNonexpansiveOnDice) {
    const auto& L = lattice25();
    const auto& S = symmetries25();
    const auto F = build_geneo(L);
    std::vector<Permutation> surf;
    for (const auto& g : S.group) surf.push_back(L.restrict_to_surface(g));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto d1 = generator25().generate_seeded(1 + t % 2, rng());
        const auto d2 = generator25().generate_seeded(1 + (t + 1) % 2, rng());
        const std::vector<double> p1(d1.sample.surface_values.begin(), d1.sample.surface_values.end());
        const std::vector<double> p2(d2.sample.surface_values.begin(), d2.sample.surface_values.end());
        const auto f1 = F.apply(p1), f2 = F.apply(p2);
        double in = 0, out = 0;
        for (std::size_t s = 0; s < p1.size(); ++s) {
            in = std::max(in, std::abs(p1[s] - p2[s]));
            out = std::max(out, std::abs(f1[s] - f2[s]));
        }
        EXPECT_LE(out, in + 1e-12);
        for (const auto& g : surf) {
            const auto lhs = F.apply(right_translate(Signal(p1), g).values);
            const auto rhs = right_translate(Signal(f1), g);
            for (std::size_t s = 0; s < p1.size(); ++s) ASSERT_NEAR(lhs[s], rhs[s], 1e-12);
        }
    }
}
