#include <gtest/gtest.h>

#include <random>

#include "geneo/group.hpp"
#include "geneo/permutation.hpp"
#include "oracles.hpp"

using namespace geneo;

namespace {

Permutation cyc(const char* s, std::size_t n) { return Permutation::from_cycles(s, n); }

PermutationGroup s4() { return PermutationGroup::symmetric(4); }

}  // namespace

TEST(Permutation, RejectsNonBijection) {
    EXPECT_THROW(Permutation({0, 0, 1}), InvalidArgument);
    EXPECT_THROW(Permutation({0, 3, 1}), InvalidArgument);
}

TEST(Permutation, ComposeAppliesRightFactorFirst) {
    const Permutation a({1, 2, 0}), b({0, 2, 1});
    const Permutation ab = compose(a, b);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ab[j], a[b[j]]);
}

TEST(Permutation, InvolutionSquaresToIdentity) {
    const Permutation t({1, 0});
    EXPECT_TRUE(compose(t, t).is_identity());
}

TEST(Permutation, IdentityIsNeutral) {
    const Permutation h({2, 0, 3, 1});
    EXPECT_EQ(compose(Permutation::identity(4), h), h);
    EXPECT_EQ(compose(h, Permutation::identity(4)), h);
}

TEST(Permutation, DegreeMismatchThrows) {
    EXPECT_THROW(compose(Permutation::identity(3), Permutation::identity(4)), DegreeMismatch);
}

TEST(Permutation, CycleParsingAndPrinting) {
    const Permutation p = cyc("(1 2)(3 4)", 4);
    EXPECT_EQ(p, Permutation({1, 0, 3, 2}));
    EXPECT_EQ(p.to_cycles(), "(1 2)(3 4)");
    EXPECT_EQ(cyc("(1,3,2)", 3), Permutation({2, 0, 1}));
    EXPECT_EQ(Permutation::identity(3).to_cycles(), "()");
    EXPECT_THROW(cyc("(1 5)", 4), FormatError);
    EXPECT_THROW(cyc("(1 2", 4), FormatError);
    EXPECT_THROW(cyc("(1 2 1)", 4), FormatError);
}

TEST(Permutation, ConjugationExampleFromTheOrbitTable) {
    // (1 2)(1 3)(2 4)(1 2) = (1 4)(2 3): conjugating (1 3)(2 4) by (1 2).
    const Permutation t = cyc("(1 2)", 4);
    EXPECT_EQ(conjugate(t, cyc("(1 3)(2 4)", 4)), cyc("(1 4)(2 3)", 4));
    // Right factor first: (1 2) o (1 3)(2 4) = (1 3 2 4); the other order gives (1 4 2 3).
    EXPECT_EQ(compose(t, cyc("(1 3)(2 4)", 4)), cyc("(1 3 2 4)", 4));
    EXPECT_EQ(compose(cyc("(1 3)(2 4)", 4), t), cyc("(1 4 2 3)", 4));
}

TEST(Permutation, RandomRoundTripsAndAssociativity) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng() % 8;
        const auto a = oracle::random_permutation(n, rng), b = oracle::random_permutation(n, rng),
                   c = oracle::random_permutation(n, rng);
        EXPECT_EQ(a.inverse().inverse(), a);
        EXPECT_TRUE(compose(a, a.inverse()).is_identity());
        EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
        EXPECT_EQ(oracle::images(a * b), oracle::mul(oracle::images(a), oracle::images(b)));
    }
}

TEST(Group, TrivialGroup) {
    const auto G = PermutationGroup::close({Permutation::identity(3)});
    EXPECT_EQ(G.order(), 1u);
}

TEST(Group, CubeRotationsOnTheTwoByTwoByTwoLattice) {
    // Vertices (i,j,k) in {1,2}^3, flat index 4(i-1)+2(j-1)+(k-1), r(x) = 3 - x.
    auto P = [](auto f) {
        std::vector<Index> im(8);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k) {
                    auto [a, b, c] = f(i, j, k);
                    im[4 * (i - 1) + 2 * (j - 1) + (k - 1)] = static_cast<Index>(4 * (a - 1) + 2 * (b - 1) + (c - 1));
                }
        return Permutation(im);
    };
    auto r = [](int x) { return 3 - x; };
    const auto a = P([&](int i, int j, int k) { return std::tuple{i, r(k), j}; });
    const auto b = P([&](int i, int j, int k) { return std::tuple{r(k), j, i}; });
    const auto G = PermutationGroup::close({a, b});
    EXPECT_EQ(G.order(), 24u);
    EXPECT_TRUE(is_transitive(G));
    EXPECT_EQ(point_orbit(G, 0).size(), 8u);
}

TEST(Group, CyclicGroupOfAFourCycle) {
    const Permutation s({1, 2, 3, 0});
    const auto G = PermutationGroup::close({s});
    EXPECT_EQ(G.order(), 4u);
    EXPECT_TRUE(G.contains(s));
    EXPECT_TRUE(G.contains(s * s));
    EXPECT_TRUE(G.contains(s * s * s));
}

TEST(Group, ElementsAreSortedAndClosed) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 5;
        const auto G = PermutationGroup::close({oracle::random_permutation(n, rng), oracle::random_permutation(n, rng)});
        EXPECT_TRUE(std::is_sorted(G.begin(), G.end()));
        EXPECT_TRUE(G.contains(Permutation::identity(n)));
        for (const auto& g : G) {
            EXPECT_TRUE(G.contains(g.inverse()));
            for (const auto& h : G.generators()) EXPECT_TRUE(G.contains(g * h));
        }
        std::uint64_t fact = 1;
        for (std::size_t i = 2; i <= n; ++i) fact *= i;
        EXPECT_EQ(fact % G.order(), 0u);
    }
}

TEST(Group, ElementCapAndDegreeChecks) {
    EXPECT_THROW(PermutationGroup::close({Permutation({1, 2, 3, 4, 5, 0}), Permutation({1, 0, 2, 3, 4, 5})}, 100),
                 GroupTooLarge);
    EXPECT_THROW(PermutationGroup::close({Permutation::identity(2), Permutation::identity(3)}), DegreeMismatch);
    EXPECT_THROW(PermutationGroup::close({}), InvalidArgument);
}

TEST(Group, Transitivity) {
    EXPECT_FALSE(is_transitive(PermutationGroup::trivial(2)));
    EXPECT_TRUE(is_transitive(PermutationGroup::symmetric(2)));
    EXPECT_TRUE(is_transitive(PermutationGroup::close({Permutation({1, 2, 3, 0})})));
    EXPECT_FALSE(is_transitive(PermutationGroup::close({Permutation({1, 0, 3, 2})})));
}

TEST(ConjugationOrbit, IdentityIsAlone) {
    const auto O = conjugation_orbit(Permutation::identity(4), s4());
    EXPECT_EQ(O.size(), 1u);
}

TEST(ConjugationOrbit, TranspositionsInS4) {
    const auto O = conjugation_orbit(cyc("(1 2)", 4), s4());
    ASSERT_EQ(O.size(), 6u);
    for (const char* t : {"(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)"}) EXPECT_TRUE(O.contains(cyc(t, 4)));
}

TEST(ConjugationOrbit, DoubleTranspositionsInS4) {
    const Permutation sigma({1, 2, 3, 0});
    const auto O = conjugation_orbit(sigma * sigma, s4());
    ASSERT_EQ(O.size(), 3u);
    for (const char* t : {"(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"}) EXPECT_TRUE(O.contains(cyc(t, 4)));
}

TEST(ConjugationOrbit, OrbitStabilizerAndConjugateInvariance) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + rng() % 5;
        const auto G = oracle::random_transitive_group(n, rng);
        const auto h = oracle::random_permutation(n, rng);
        const auto O = conjugation_orbit(h, G);
        std::size_t fix = 0;
        for (const auto& g : G) fix += (g * h * g.inverse() == h);
        EXPECT_EQ(G.order(), O.size() * fix);
        EXPECT_EQ(O.stabilizer_size, fix);
        for (const auto& g : G.generators()) EXPECT_EQ(conjugation_orbit(conjugate(g, h), G).members, O.members);
        for (const auto& m : O.members)
            for (const auto& g : G) EXPECT_TRUE(O.contains(conjugate(g, m)));
    }
}

TEST(Centralizer, KnownValues) {
    EXPECT_EQ(centralizer_size_in_symmetric_group(Permutation::identity(4)), 24u);
    EXPECT_EQ(centralizer_size_in_symmetric_group(cyc("(1 2 3 4)", 4)), 4u);
    EXPECT_EQ(centralizer_size_in_symmetric_group(cyc("(1 3)(2 4)", 4)), 8u);
}

TEST(Centralizer, MatchesBruteForceUpToDegreeSix) {
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& h : oracle::all_permutations(n))
            ASSERT_EQ(centralizer_size_in_symmetric_group(Permutation(h)), oracle::brute_centralizer(h));
}

TEST(Permutant, Basics) {
    EXPECT_TRUE(is_permutant(Permutant{}, s4()));
    EXPECT_FALSE(is_permutant(Permutant({Permutation({1, 2, 3, 0})}), s4()));
    EXPECT_TRUE(is_permutant(Permutant(conjugation_orbit(Permutation({1, 2, 3, 0}), s4()).members), s4()));
}

TEST(Permutant, IsAUnionOfOrbits) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const auto G = oracle::random_transitive_group(n, rng);
        std::vector<Permutation> H;
        const std::size_t m = 1 + rng() % 4;
        for (std::size_t i = 0; i < m; ++i) H.push_back(oracle::random_permutation(n, rng));
        std::set<Permutation> closure;
        for (const auto& h : H)
            for (const auto& x : conjugation_orbit(h, G).members) closure.insert(x);
        const Permutant P(H);
        const bool is_union = std::set<Permutation>(H.begin(), H.end()) == closure;
        EXPECT_EQ(is_permutant(P, G), is_union);
        EXPECT_TRUE(is_permutant(Permutant({closure.begin(), closure.end()}), G));
    }
}

TEST(Versatility, Examples) {
    EXPECT_FALSE(is_k_weakly_versatile(PermutationGroup::trivial(4), 1));
    EXPECT_TRUE(is_k_weakly_versatile(s4(), 2));
    EXPECT_FALSE(is_k_weakly_versatile(s4(), 3));
    EXPECT_FALSE(is_k_weakly_versatile(PermutationGroup::close({Permutation({1, 2, 3, 0})}), 1));
    EXPECT_THROW(is_k_weakly_versatile(s4(), 0), InvalidArgument);
}

TEST(Versatility, StabilizerCriterionMatchesLiteralDefinition) {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& G : oracle::two_generated_subgroups(n))
            for (std::size_t k = 1; k <= n; ++k)
                ASSERT_EQ(is_k_weakly_versatile(G, k), oracle::literal_k_weakly_versatile(oracle::elements(G), n, k))
                    << "n=" << n << " |G|=" << G.order() << " k=" << k;
}

TEST(MinPermutant, Examples) {
    EXPECT_EQ(min_nontrivial_permutant_size(s4()), 3u);
    EXPECT_EQ(min_nontrivial_permutant_size(PermutationGroup::trivial(2)), 1u);
    EXPECT_EQ(min_nontrivial_permutant_size(PermutationGroup::symmetric(1)), std::nullopt);
    EXPECT_THROW(min_nontrivial_permutant_size(PermutationGroup::trivial(8)), DegreeTooLarge);
}

TEST(MinPermutant, MatchesBruteForceOrbits) {
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& G : oracle::two_generated_subgroups(n)) {
            std::size_t best = SIZE_MAX;
            for (const auto& O : oracle::brute_orbits(oracle::elements(G), n))
                if (!(O.size() == 1 && Permutation(*O.begin()).is_identity())) best = std::min(best, O.size());
            ASSERT_EQ(min_nontrivial_permutant_size(G).value(), best);
        }
}

// Every permutant other than the empty set and {id} of a k-weakly versatile
// group has more than k elements.
TEST(MinPermutant, VersatileGroupsHaveLargePermutants) {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const auto& G : oracle::two_generated_subgroups(n))
            for (std::size_t k = 1; k <= n; ++k)
                if (is_k_weakly_versatile(G, k)) {
                    const auto m = min_nontrivial_permutant_size(G);
                    ASSERT_TRUE(m.has_value());
                    EXPECT_GT(*m, k);
                }
}
