#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geneo {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class DegreeMismatch : public Error {
public:
    DegreeMismatch(std::size_t a, std::size_t b)
        : Error("degree_mismatch", "degree mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class GroupTooLarge : public Error {
public:
    explicit GroupTooLarge(std::size_t cap)
        : Error("group_too_large", "group too large: closure exceeded " + std::to_string(cap) + " elements") {}
};

class DegreeTooLarge : public Error {
public:
    DegreeTooLarge(std::size_t n, std::size_t limit)
        : Error("degree_too_large",
                "degree " + std::to_string(n) + " exceeds the enumeration limit " + std::to_string(limit)) {}
};

class NotTransitive : public Error {
public:
    NotTransitive()
        : Error("not_transitive",
                "group does not act transitively on X; a linear GEO need not admit a permutant-measure "
                "representation without transitivity") {}
};

class NotEquivariant : public Error {
public:
    NotEquivariant(std::vector<std::size_t> generator_images, std::size_t row, std::size_t col, double deviation)
        : Error("not_equivariant", "operator does not commute with generator at entry (" + std::to_string(row) +
                                       "," + std::to_string(col) + "), deviation " + std::to_string(deviation)),
          generator(std::move(generator_images)), row(row), col(col), deviation(deviation) {}

    std::vector<std::size_t> generator;
    std::size_t row;
    std::size_t col;
    double deviation;
};

class NegativeEntry : public Error {
public:
    NegativeEntry(std::size_t row, std::size_t col, double value)
        : Error("negative_entry", "negative entry " + std::to_string(value) + " at (" + std::to_string(row) + "," +
                                      std::to_string(col) + ")"),
          row(row), col(col) {}

    std::size_t row;
    std::size_t col;
};

class LineSumViolation : public Error {
public:
    LineSumViolation(bool is_row, std::size_t index, double sum, double expected)
        : Error("not_line_constant", std::string("not line-constant: ") + (is_row ? "row " : "column ") +
                                         std::to_string(index) + " sums to " + std::to_string(sum) +
                                         ", expected " + std::to_string(expected)),
          is_row(is_row), index(index) {}

    bool is_row;
    std::size_t index;
};

class NoPerfectMatching : public Error {
public:
    explicit NoPerfectMatching(std::vector<std::size_t> hall_rows)
        : Error("no_perfect_matching", describe(hall_rows)), hall_violating_rows(std::move(hall_rows)) {}

    std::vector<std::size_t> hall_violating_rows;

private:
    static std::string describe(const std::vector<std::size_t>& rows) {
        std::string s = "no perfect matching in support graph; Hall-violating rows {";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(rows[i]);
        }
        return s + "}";
    }
};

class VerificationFailure : public Error {
public:
    explicit VerificationFailure(const std::string& what) : Error("verification_failure", what) {}
};

class NotConverged : public Error {
public:
    NotConverged(const std::string& what, int iterations)
        : Error("not_converged", what + " did not converge after " + std::to_string(iterations) + " iterations"),
          iterations(iterations) {}

    int iterations;
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error("format_error", what) {}
};

}  // namespace geneo
