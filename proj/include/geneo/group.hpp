#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "geneo/error.hpp"
#include "geneo/permutation.hpp"

namespace geneo {

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (Index i : p.images()) {
            h ^= i;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// A finite permutation group stored by exhaustive element list, sorted in
/// lexicographic order of image arrays.
class PermutationGroup {
public:
    /// Smallest group containing `generators`, by breadth-first multiplication.
    static PermutationGroup close(std::vector<Permutation> generators, std::size_t element_cap = kDefaultElementCap) {
        if (generators.empty()) throw InvalidArgument("close: generator list is empty");
        const std::size_t n = generators.front().degree();
        for (const auto& g : generators)
            if (g.degree() != n) throw DegreeMismatch(n, g.degree());

        std::unordered_set<Permutation, PermutationHash> seen;
        std::vector<Permutation> order;
        std::deque<std::size_t> frontier;
        auto visit = [&](Permutation p) {
            if (seen.insert(p).second) {
                if (seen.size() > element_cap) throw GroupTooLarge(element_cap);
                order.push_back(std::move(p));
                frontier.push_back(order.size() - 1);
            }
        };
        visit(Permutation::identity(n));
        while (!frontier.empty()) {
            const std::size_t at = frontier.front();
            frontier.pop_front();
            for (const auto& g : generators) visit(g * order[at]);
        }
        std::sort(order.begin(), order.end());
        PermutationGroup G;
        G.degree_ = n;
        G.elements_ = std::move(order);
        G.generators_ = std::move(generators);
        return G;
    }

    /// Aut(X) on n points, generated by a transposition and an n-cycle.
    static PermutationGroup symmetric(std::size_t n) {
        if (n <= 1) return close({Permutation::identity(n)});
        std::vector<Index> swap(n), cycle(n);
        for (std::size_t j = 0; j < n; ++j) {
            swap[j] = static_cast<Index>(j);
            cycle[j] = static_cast<Index>((j + 1) % n);
        }
        std::swap(swap[0], swap[1]);
        return close({Permutation(swap), Permutation(cycle)});
    }

    static PermutationGroup trivial(std::size_t n) { return close({Permutation::identity(n)}); }

    std::size_t degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<Permutation>& elements() const noexcept { return elements_; }
    const std::vector<Permutation>& generators() const noexcept { return generators_; }

    bool contains(const Permutation& h) const { return std::binary_search(elements_.begin(), elements_.end(), h); }

    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

private:
    std::size_t degree_ = 0;
    std::vector<Permutation> elements_;
    std::vector<Permutation> generators_;
};

/// Orbit of a point under the group, in ascending order.
inline std::vector<Index> point_orbit(const PermutationGroup& G, Index x) {
    std::vector<bool> seen(G.degree(), false);
    std::vector<Index> stack{x}, orbit;
    seen[x] = true;
    while (!stack.empty()) {
        const Index p = stack.back();
        stack.pop_back();
        orbit.push_back(p);
        for (const auto& g : G.generators()) {
            const Index q = g[p];
            if (!seen[q]) {
                seen[q] = true;
                stack.push_back(q);
            }
        }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

inline bool is_transitive(const PermutationGroup& G) {
    if (G.degree() == 0) return true;
    return point_orbit(G, 0).size() == G.degree();
}

/// The orbit O(h) of h under conjugation by G.
struct ConjugationOrbit {
    std::vector<Permutation> members;  // sorted
    /// Number of g in G with g h g^-1 = h, i.e. |G_h|.
    std::size_t stabilizer_size = 0;

    std::size_t size() const noexcept { return members.size(); }
    bool contains(const Permutation& h) const { return std::binary_search(members.begin(), members.end(), h); }
};

inline ConjugationOrbit conjugation_orbit(const Permutation& h, const PermutationGroup& G) {
    if (h.degree() != G.degree()) throw DegreeMismatch(h.degree(), G.degree());
    ConjugationOrbit O;
    std::set<Permutation> members;
    for (const auto& g : G) {
        Permutation c = conjugate(g, h);
        if (c == h) ++O.stabilizer_size;
        members.insert(std::move(c));
    }
    O.members.assign(members.begin(), members.end());
    return O;
}

/// |{f in Aut(X) : h f h^-1 = f}| from the cycle type: prod_k k^{m_k} m_k!.
inline std::uint64_t centralizer_size_in_symmetric_group(const Permutation& h) {
    std::vector<std::uint64_t> multiplicity(h.degree() + 1, 0);
    for (std::size_t len : h.cycle_type()) ++multiplicity[len];
    std::uint64_t result = 1;
    auto mul = [&](std::uint64_t f) {
        if (f != 0 && result > std::numeric_limits<std::uint64_t>::max() / f)
            throw InvalidArgument("centralizer size overflows 64 bits");
        result *= f;
    };
    for (std::size_t k = 1; k < multiplicity.size(); ++k)
        for (std::uint64_t m = 1; m <= multiplicity[k]; ++m) {
            mul(k);
            mul(m);
        }
    return result;
}

/// A subset H of Aut(X) with g H g^-1 = H for all g in G (or empty).
struct Permutant {
    std::vector<Permutation> members;  // sorted, unique

    Permutant() = default;
    explicit Permutant(std::vector<Permutation> hs) : members(std::move(hs)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }
    bool contains(const Permutation& h) const { return std::binary_search(members.begin(), members.end(), h); }
};

/// True iff H is empty or stable under conjugation by G. Stability under
/// the generators is enough: H is finite and conjugation is a bijection.
inline bool is_permutant(const Permutant& H, const PermutationGroup& G) {
    for (const auto& h : H.members) {
        if (h.degree() != G.degree()) throw DegreeMismatch(h.degree(), G.degree());
        for (const auto& g : G.generators())
            if (!H.contains(conjugate(g, h))) return false;
    }
    return true;
}

/// G is k-weakly versatile iff, for all x != z, the orbit of z under the
/// stabilizer of x has more than k points.
inline bool is_k_weakly_versatile(const PermutationGroup& G, std::size_t k) {
    if (k == 0) throw InvalidArgument("k-weak versatility needs k >= 1");
    const std::size_t n = G.degree();
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<const Permutation*> stabilizer;
        for (const auto& g : G)
            if (g[x] == x) stabilizer.push_back(&g);
        for (std::size_t z = 0; z < n; ++z) {
            if (z == x) continue;
            std::vector<bool> hit(n, false);
            std::size_t orbit = 0;
            for (const Permutation* g : stabilizer)
                if (!hit[(*g)[z]]) {
                    hit[(*g)[z]] = true;
                    ++orbit;
                }
            if (orbit <= k) return false;
        }
    }
    return true;
}

inline constexpr std::size_t kMaxEnumerationDegree = 7;

/// Conjugation orbits of all of Aut(X) under G. Enumerates n! permutations,
/// so n is capped at kMaxEnumerationDegree.
inline std::vector<ConjugationOrbit> symmetric_group_orbits(const PermutationGroup& G) {
    const std::size_t n = G.degree();
    if (n > kMaxEnumerationDegree) throw DegreeTooLarge(n, kMaxEnumerationDegree);
    std::set<Permutation> covered;
    std::vector<ConjugationOrbit> orbits;
    std::vector<Index> im(n);
    std::iota(im.begin(), im.end(), Index{0});
    do {
        Permutation h(im);
        if (covered.count(h)) continue;
        ConjugationOrbit O = conjugation_orbit(h, G);
        covered.insert(O.members.begin(), O.members.end());
        orbits.push_back(std::move(O));
    } while (std::next_permutation(im.begin(), im.end()));
    return orbits;
}

/// Minimum cardinality of a permutant other than {} and {id}; that is the
/// smallest conjugation orbit not equal to {id}. Empty when n <= 1.
inline std::optional<std::size_t> min_nontrivial_permutant_size(const PermutationGroup& G) {
    std::optional<std::size_t> best;
    for (const auto& O : symmetric_group_orbits(G)) {
        if (O.size() == 1 && O.members.front().is_identity()) continue;
        if (!best || O.size() < *best) best = O.size();
    }
    return best;
}

}  // namespace geneo
