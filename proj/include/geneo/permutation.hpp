#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geneo/error.hpp"

namespace geneo {

using Index = std::uint32_t;

/// A bijection of {0..n-1} stored as its image array: `images()[j] == i`
/// means h(x_j) = x_i. Composition is written multiplicatively and applies
/// the right factor first, so (a * b)(j) = a(b(j)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<Index> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (Index i : images_) {
            if (i >= images_.size() || seen[i]) throw InvalidArgument("image array is not a bijection");
            seen[i] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<Index> im(n);
        std::iota(im.begin(), im.end(), Index{0});
        return from_trusted(std::move(im));
    }

    /// Parses cycle notation such as "(1 2)(3 4)" or "(1,3,2)". Points are
    /// 1-based when `one_based` is set. The empty string and "()" give the identity.
    static Permutation from_cycles(std::string_view text, std::size_t n, bool one_based = true);

    std::size_t degree() const noexcept { return images_.size(); }
    Index operator[](std::size_t j) const { return images_[j]; }
    std::span<const Index> images() const noexcept { return images_; }

    bool is_identity() const noexcept {
        for (std::size_t j = 0; j < images_.size(); ++j)
            if (images_[j] != j) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<Index> inv(images_.size());
        for (std::size_t j = 0; j < images_.size(); ++j) inv[images_[j]] = static_cast<Index>(j);
        return from_trusted(std::move(inv));
    }

    /// Lengths of the cycles (fixed points included), sorted descending.
    std::vector<std::size_t> cycle_type() const {
        std::vector<std::size_t> lengths;
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s]) continue;
            std::size_t len = 0;
            for (std::size_t j = s; !seen[j]; j = images_[j]) {
                seen[j] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        return lengths;
    }

    /// Cycle notation without fixed points, e.g. "(1 2)(3 4)"; "()" for the identity.
    std::string to_cycles(bool one_based = true) const {
        std::string out;
        std::vector<bool> seen(images_.size(), false);
        const Index offset = one_based ? 1 : 0;
        for (std::size_t s = 0; s < images_.size(); ++s) {
            if (seen[s] || images_[s] == s) continue;
            out += '(';
            for (std::size_t j = s; !seen[j]; j = images_[j]) {
                if (j != s) out += ' ';
                seen[j] = true;
                out += std::to_string(j + offset);
            }
            out += ')';
        }
        return out.empty() ? "()" : out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        if (a.images_.size() != b.images_.size()) return a.images_.size() <=> b.images_.size();
        for (std::size_t j = 0; j < a.images_.size(); ++j)
            if (a.images_[j] != b.images_[j]) return a.images_[j] <=> b.images_[j];
        return std::strong_ordering::equal;
    }

    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.degree() != b.degree()) throw DegreeMismatch(a.degree(), b.degree());
        std::vector<Index> im(b.degree());
        for (std::size_t j = 0; j < im.size(); ++j) im[j] = a.images_[b.images_[j]];
        return from_trusted(std::move(im));
    }

private:
    static Permutation from_trusted(std::vector<Index> images) {
        Permutation p;
        p.images_ = std::move(images);
        return p;
    }

    std::vector<Index> images_;
};

inline Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }
inline Permutation inverse(const Permutation& h) { return h.inverse(); }

/// g h g^-1
inline Permutation conjugate(const Permutation& g, const Permutation& h) { return g * h * g.inverse(); }

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t n, bool one_based) {
    std::vector<Index> im(n);
    std::iota(im.begin(), im.end(), Index{0});
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_space();
    while (pos < text.size()) {
        if (text[pos] != '(') throw FormatError("cycle notation: expected '(' in \"" + std::string(text) + "\"");
        ++pos;
        std::vector<Index> cycle;
        for (;;) {
            skip_space();
            if (pos >= text.size()) throw FormatError("cycle notation: unterminated cycle");
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (text[pos] < '0' || text[pos] > '9')
                throw FormatError("cycle notation: unexpected character '" + std::string(1, text[pos]) + "'");
            std::size_t value = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') value = value * 10 + (text[pos++] - '0');
            if (one_based) {
                if (value == 0) throw FormatError("cycle notation: point 0 in 1-based notation");
                --value;
            }
            if (value >= n) throw FormatError("cycle notation: point out of range for degree " + std::to_string(n));
            cycle.push_back(static_cast<Index>(value));
        }
        // Cycles are composed right to left, matching the multiplicative notation.
        std::vector<Index> cyc(n);
        std::iota(cyc.begin(), cyc.end(), Index{0});
        std::vector<bool> in_cycle(n, false);
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (in_cycle[cycle[i]]) throw FormatError("cycle notation: repeated point within a cycle");
            in_cycle[cycle[i]] = true;
            cyc[cycle[i]] = cycle[(i + 1) % cycle.size()];
        }
        std::vector<Index> next(n);
        for (std::size_t j = 0; j < n; ++j) next[j] = im[cyc[j]];
        im = std::move(next);
        skip_space();
    }
    return Permutation(std::move(im));
}

}  // namespace geneo
