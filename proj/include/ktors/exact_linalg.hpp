#pragma once

#include <chrono>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ktors {

using Integer = mpz_class;

/// Raised when elimination exceeds its configured bit-size or time budget.
/// This signals coefficient blowup, not a malformed input.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Dense row-major matrix of arbitrary-precision integers.
 *
 * Zero-row and zero-column shapes are valid; they carry the boundary maps at
 * the top and bottom of a chain complex.
 */
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    std::span<const Integer> entries() const noexcept { return entries_; }
    std::span<const Integer> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

    bool is_zero() const;
    IntMatrix transpose() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;
};

/// Invariant factors d1 | d2 | ... | d_r (all positive) and the rank r.
struct SmithForm {
    std::vector<Integer> invariant_factors;
    std::size_t rank = 0;

    friend bool operator==(const SmithForm&, const SmithForm&) = default;
};

/// Limits on an elimination run. The bit budget is the aggregate of
/// `mpz_sizeinbase(x, 2)` over all nonzero working entries.
struct EliminationBudget {
    std::size_t max_total_bits = std::size_t{1} << 20;
    std::optional<std::chrono::milliseconds> time_limit;
};

SmithForm smith_normal_form(const IntMatrix& a, const EliminationBudget& budget = {});

/// Rank over Q, computed by fraction-free (Bareiss) elimination.
std::size_t rank(const IntMatrix& a, const EliminationBudget& budget = {});

/// Determinant of a square matrix (Bareiss). The empty matrix has determinant 1.
Integer determinant(const IntMatrix& a);

/// gcd of all k x k minors; 0 when every such minor vanishes.
/// Throws std::out_of_range unless 1 <= k <= min(rows, cols).
Integer determinantal_divisor(const IntMatrix& a, std::size_t k);

/// Columns form a Z-basis of the integer kernel {x : A x = 0}; shape cols x (cols - rank).
IntMatrix kernel_basis(const IntMatrix& a, const EliminationBudget& budget = {});

std::string to_string(const IntMatrix& a);

} // namespace ktors
