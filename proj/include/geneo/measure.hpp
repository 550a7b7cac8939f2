#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "geneo/error.hpp"
#include "geneo/group.hpp"
#include "geneo/permutation.hpp"

namespace geneo {

inline constexpr double kDefaultZeroTol = 1e-12;

/// Finitely supported signed measure on Aut(X). Weights with magnitude at
/// most `zero_tol` are never stored, so the support is exactly the key set.
class SignedMeasure {
public:
    using WeightMap = std::map<Permutation, double>;

    explicit SignedMeasure(std::size_t degree = 0, double zero_tol = kDefaultZeroTol)
        : degree_(degree), zero_tol_(zero_tol) {
        if (!(zero_tol >= 0)) throw InvalidArgument("zero_tol must be non-negative");
    }

    static SignedMeasure delta(const Permutation& h, double w = 1.0) {
        SignedMeasure m(h.degree());
        m.set(h, w);
        return m;
    }

    /// Uniform mass `total / |H|` on every member of H.
    static SignedMeasure uniform(std::size_t degree, std::span<const Permutation> H, double total = 1.0) {
        SignedMeasure m(degree);
        for (const auto& h : H) m.add(h, total / static_cast<double>(H.size()));
        return m;
    }

    std::size_t degree() const noexcept { return degree_; }
    double zero_tol() const noexcept { return zero_tol_; }
    const WeightMap& weights() const noexcept { return weights_; }
    std::size_t support_size() const noexcept { return weights_.size(); }
    bool empty() const noexcept { return weights_.empty(); }

    std::vector<Permutation> support() const {
        std::vector<Permutation> s;
        s.reserve(weights_.size());
        for (const auto& [h, w] : weights_) s.push_back(h);
        return s;
    }

    double weight(const Permutation& h) const {
        auto it = weights_.find(h);
        return it == weights_.end() ? 0.0 : it->second;
    }

    void set(const Permutation& h, double w) {
        check(h);
        if (std::abs(w) <= zero_tol_)
            weights_.erase(h);
        else
            weights_[h] = w;
    }

    void add(const Permutation& h, double w) { set(h, weight(h) + w); }

    double total_variation() const {
        double s = 0;
        for (const auto& [h, w] : weights_) s += std::abs(w);
        return s;
    }

    double total_mass() const {
        double s = 0;
        for (const auto& [h, w] : weights_) s += w;
        return s;
    }

private:
    void check(const Permutation& h) const {
        if (h.degree() != degree_) throw DegreeMismatch(degree_, h.degree());
    }

    std::size_t degree_;
    double zero_tol_;
    WeightMap weights_;
};

namespace detail {

/// Pointwise op over the union of supports; absent entries read as 0.
inline SignedMeasure combine(const SignedMeasure& a, const SignedMeasure& b,
                             const std::function<double(double, double)>& op) {
    if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
    SignedMeasure out(a.degree(), a.zero_tol());
    for (const auto& [h, w] : a.weights()) out.set(h, op(w, b.weight(h)));
    for (const auto& [h, w] : b.weights())
        if (!a.weights().count(h)) out.set(h, op(0.0, w));
    return out;
}

}  // namespace detail

inline SignedMeasure lattice_min(const SignedMeasure& a, const SignedMeasure& b) {
    return detail::combine(a, b, [](double x, double y) { return std::min(x, y); });
}

inline SignedMeasure lattice_max(const SignedMeasure& a, const SignedMeasure& b) {
    return detail::combine(a, b, [](double x, double y) { return std::max(x, y); });
}

inline SignedMeasure abs_measure(const SignedMeasure& a) {
    SignedMeasure out(a.degree(), a.zero_tol());
    for (const auto& [h, w] : a.weights()) out.set(h, std::abs(w));
    return out;
}

inline SignedMeasure positive_part(const SignedMeasure& a) {
    SignedMeasure out(a.degree(), a.zero_tol());
    for (const auto& [h, w] : a.weights())
        if (w > 0) out.set(h, w);
    return out;
}

inline SignedMeasure negative_part(const SignedMeasure& a) {
    SignedMeasure out(a.degree(), a.zero_tol());
    for (const auto& [h, w] : a.weights())
        if (w < 0) out.set(h, -w);
    return out;
}

inline SignedMeasure linear_combination(std::span<const double> coeffs, std::span<const SignedMeasure> measures) {
    if (coeffs.size() != measures.size()) throw InvalidArgument("linear_combination: length mismatch");
    if (measures.empty()) throw InvalidArgument("linear_combination: no measures");
    SignedMeasure out(measures.front().degree(), measures.front().zero_tol());
    // Accumulate unpruned so that cancellation is decided on the final sum.
    std::map<Permutation, double> acc;
    for (std::size_t i = 0; i < measures.size(); ++i) {
        if (measures[i].degree() != out.degree()) throw DegreeMismatch(out.degree(), measures[i].degree());
        for (const auto& [h, w] : measures[i].weights()) acc[h] += coeffs[i] * w;
    }
    for (const auto& [h, w] : acc) out.set(h, w);
    return out;
}

inline SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
    return detail::combine(a, b, std::plus<>{});
}

inline SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
    return detail::combine(a, b, std::minus<>{});
}

inline SignedMeasure operator*(double s, const SignedMeasure& a) {
    SignedMeasure out(a.degree(), a.zero_tol());
    for (const auto& [h, w] : a.weights()) out.set(h, s * w);
    return out;
}

/// Support-wise equality within `tol`.
inline bool approx_equal(const SignedMeasure& a, const SignedMeasure& b, double tol) {
    if (a.degree() != b.degree()) return false;
    for (const auto& [h, w] : a.weights())
        if (std::abs(w - b.weight(h)) > tol) return false;
    for (const auto& [h, w] : b.weights())
        if (std::abs(w - a.weight(h)) > tol) return false;
    return true;
}

/// m(h) = m(g h g^-1) for every h in the support and every generator g of G,
/// which makes m constant on each conjugation orbit meeting its support.
inline bool is_permutant_measure(const SignedMeasure& m, const PermutationGroup& G) {
    if (m.degree() != G.degree()) throw DegreeMismatch(m.degree(), G.degree());
    for (const auto& [h, w] : m.weights())
        for (const auto& g : G.generators())
            if (std::abs(m.weight(conjugate(g, h)) - w) > m.zero_tol()) return false;
    return true;
}

/// dim PM(G) = |Aut(X)/G| by Burnside: the mean over g in G of the number
/// of permutations commuting with g.
inline std::uint64_t dim_pm(const PermutationGroup& G) {
    std::uint64_t total = 0;
    for (const auto& g : G) total += centralizer_size_in_symmetric_group(g);
    if (total % G.order() != 0) throw VerificationFailure("Burnside sum not divisible by |G|");
    return total / G.order();
}

/// The number of permutants for G, which is 2^exponent.
struct PermutantCount {
    std::uint64_t exponent;
};

inline PermutantCount count_permutants(const PermutationGroup& G) { return {dim_pm(G)}; }

}  // namespace geneo
