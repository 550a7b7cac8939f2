#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>

#include "geneo/bvn.hpp"
#include "geneo/error.hpp"
#include "geneo/group.hpp"
#include "geneo/measure.hpp"
#include "geneo/operator.hpp"

namespace geneo {

struct RepresentationTolerances {
    double equivariance = 1e-9;
    double bvn = kDefaultBvnTol;
    double reconstruction = 1e-8;
    double norm_identity = 1e-8;
};

/// A certified permutant measure representing a linear GEO.
struct RepresentationResult {
    SignedMeasure measure;
    double norm_identity_gap = 0;   // |TV(measure) - ||B||_inf|
    double reconstruction_gap = 0;  // max |B - matrix_of_measure(measure)|
    std::size_t orbit_count_used = 0;
    BvnDecomposition positive;  // c+ of B+
    BvnDecomposition negative;  // c- of B-
};

/// Averages a non-negative c along conjugation orbits of G: every member of
/// an orbit O meeting supp(c) receives (sum_{h in O} c(h)) / |O|.
inline SignedMeasure symmetrize(const SignedMeasure& c, const PermutationGroup& G,
                                std::size_t* orbits_touched = nullptr) {
    if (c.degree() != G.degree()) throw DegreeMismatch(c.degree(), G.degree());
    for (const auto& [h, w] : c.weights())
        if (w < 0) throw InvalidArgument("symmetrize: coefficient measure must be non-negative");
    SignedMeasure out(c.degree(), c.zero_tol());
    std::set<Permutation> done;
    std::size_t count = 0;
    for (const auto& [h, w] : c.weights()) {
        if (done.count(h)) continue;
        const ConjugationOrbit O = conjugation_orbit(h, G);
        double mass = 0;
        for (const auto& f : O.members) {
            mass += c.weight(f);
            done.insert(f);
        }
        const double share = mass / static_cast<double>(O.size());
        for (const auto& f : O.members) out.set(f, share);
        ++count;
    }
    if (orbits_touched) *orbits_touched = count;
    return out;
}

/// Number of distinct conjugation orbits meeting supp(m).
inline std::size_t count_support_orbits(const SignedMeasure& m, const PermutationGroup& G) {
    std::set<Permutation> done;
    std::size_t count = 0;
    for (const auto& [h, w] : m.weights()) {
        if (done.count(h)) continue;
        const ConjugationOrbit O = conjugation_orbit(h, G);
        done.insert(O.members.begin(), O.members.end());
        ++count;
    }
    return count;
}

/// Recovers a permutant measure mu with F_mu = F for the operator with
/// matrix B, for G transitive on X.
///
/// B is split into B+ and B-, each is decomposed into weighted permutation
/// matrices, each coefficient function is averaged along the conjugation
/// orbits of G and mu = mu+ - mu-. The result is re-verified before it is
/// returned: the reconstruction gap and |TV(mu) - ||B||_inf| must both be
/// within tolerance, otherwise VerificationFailure is thrown.
inline RepresentationResult geo_to_permutant_measure(const OperatorMatrix& B, const PermutationGroup& G,
                                                     const RepresentationTolerances& tol = {}) {
    if (B.size() != G.degree()) throw DegreeMismatch(B.size(), G.degree());
    if (!is_transitive(G)) throw NotTransitive();
    if (auto eq = is_equivariant(B, G, tol.equivariance); !eq) {
        const auto& w = *eq.witness;
        throw NotEquivariant({w.g.images().begin(), w.g.images().end()}, w.row, w.col, w.deviation);
    }

    const std::size_t n = B.size();
    auto [pos, neg] = split_positive_negative(B);

    RepresentationResult r;
    // Line-constancy of B+ and B- follows from equivariance under a transitive
    // group; decompose() re-checks it and throws LineSumViolation otherwise.
    r.positive = decompose(pos, tol.bvn);
    r.negative = decompose(neg, tol.bvn);

    const SignedMeasure mu_pos = symmetrize(r.positive.coefficients(n), G);
    const SignedMeasure mu_neg = symmetrize(r.negative.coefficients(n), G);
    r.measure = mu_pos - mu_neg;
    r.orbit_count_used = count_support_orbits(r.measure, G);

    r.reconstruction_gap = max_abs_difference(B, matrix_of_measure(r.measure));
    r.norm_identity_gap = std::abs(r.measure.total_variation() - operator_inf_norm(B));
    if (r.reconstruction_gap > tol.reconstruction)
        throw VerificationFailure("reconstruction gap " + std::to_string(r.reconstruction_gap) +
                                  " exceeds tolerance");
    if (r.norm_identity_gap > tol.norm_identity)
        throw VerificationFailure("norm identity gap " + std::to_string(r.norm_identity_gap) + " exceeds tolerance");
    return r;
}

struct GeneoCertificate {
    bool is_geneo = false;
    std::optional<SignedMeasure> measure;  // witnessing measure when is_geneo
    RepresentationResult representation;
};

/// A linear GEO under a transitive G is a GENEO iff its representing
/// permutant measure has total variation at most 1.
inline GeneoCertificate certify_geneo(const OperatorMatrix& B, const PermutationGroup& G,
                                      const RepresentationTolerances& tol = {}) {
    GeneoCertificate cert;
    cert.representation = geo_to_permutant_measure(B, G, tol);
    cert.is_geneo = cert.representation.measure.total_variation() <= 1.0 + tol.norm_identity;
    if (cert.is_geneo) cert.measure = cert.representation.measure;
    return cert;
}

/// Operator-level round trip: m -> B -> mu' -> B'. Measures are not compared
/// because the decomposition is not unique.
inline bool measure_to_geo_roundtrip(const SignedMeasure& m, const PermutationGroup& G,
                                     const RepresentationTolerances& tol = {}) {
    if (!is_permutant_measure(m, G)) throw InvalidArgument("measure is not a permutant measure for G");
    const OperatorMatrix B = matrix_of_measure(m);
    const RepresentationResult r = geo_to_permutant_measure(B, G, tol);
    return max_abs_difference(matrix_of_measure(r.measure), B) <= tol.reconstruction;
}

}  // namespace geneo
