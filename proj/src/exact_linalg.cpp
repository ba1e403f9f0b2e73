#include "ktors/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace ktors {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("IntMatrix: entry count " + std::to_string(entries_.size()) +
                                    " does not match shape " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("IntMatrix: ragged initializer");
        }
        for (long x : r) {
            entries_.emplace_back(x);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("IntMatrix product: inner dimensions differ");
    }
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (sgn(aik) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string to_string(const IntMatrix& a) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j) {
            os << (j ? ", " : "") << a(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

namespace {

class BudgetGuard {
public:
    explicit BudgetGuard(const EliminationBudget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void check(std::span<const Integer> work) const {
        std::size_t bits = 0;
        for (const Integer& x : work) {
            if (sgn(x) != 0) {
                bits += mpz_sizeinbase(x.get_mpz_t(), 2);
            }
        }
        if (bits > budget_.max_total_bits) {
            throw ResourceLimitError("elimination exceeded bit budget: " + std::to_string(bits) +
                                     " > " + std::to_string(budget_.max_total_bits) + " bits");
        }
        if (budget_.time_limit) {
            auto elapsed = std::chrono::steady_clock::now() - start_;
            if (elapsed > *budget_.time_limit) {
                throw ResourceLimitError("elimination exceeded time budget of " +
                                         std::to_string(budget_.time_limit->count()) + " ms");
            }
        }
    }

private:
    EliminationBudget budget_;
    std::chrono::steady_clock::time_point start_;
};

// Working copy with the row/column operations used by the eliminations below.
class Workspace {
public:
    explicit Workspace(const IntMatrix& a)
        : rows_(a.rows()), cols_(a.cols()), w_(a.entries().begin(), a.entries().end()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& at(std::size_t i, std::size_t j) { return w_[i * cols_ + j]; }
    std::span<const Integer> data() const { return w_; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap(at(a, j), at(b, j));
        }
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) {
            std::swap(at(i, a), at(i, b));
        }
    }
    // row[dst] -= q * row[src], touching columns >= from
    void sub_row(std::size_t dst, std::size_t src, const Integer& q, std::size_t from) {
        for (std::size_t j = from; j < cols_; ++j) {
            if (sgn(at(src, j)) != 0) {
                at(dst, j) -= q * at(src, j);
            }
        }
    }
    // col[dst] -= q * col[src], touching rows >= from
    void sub_col(std::size_t dst, std::size_t src, const Integer& q, std::size_t from) {
        for (std::size_t i = from; i < rows_; ++i) {
            if (sgn(at(i, src)) != 0) {
                at(i, dst) -= q * at(i, src);
            }
        }
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Integer> w_;
};

// Quotient of a by p rounded to nearest, so the remainder has |r| <= |p|/2.
Integer nearest_quotient(const Integer& a, const Integer& p) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    Integer twice_r = 2 * abs(r);
    if (twice_r > abs(p)) {
        q += 1;
    }
    return q;
}

bool less_abs(const Integer& a, const Integer& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& a, const EliminationBudget& budget) {
    BudgetGuard guard(budget);
    Workspace w(a);
    guard.check(w.data());

    const std::size_t rows = w.rows();
    const std::size_t cols = w.cols();
    const std::size_t limit = std::min(rows, cols);

    SmithForm out;
    std::size_t t = 0;
    for (; t < limit; ++t) {
        // global minimal-magnitude pivot in the trailing block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                const Integer& x = w.at(i, j);
                if (sgn(x) != 0 && (pi == rows || less_abs(x, w.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == rows) {
            break;
        }
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(w.at(i, t)) != 0) {
                    Integer q = nearest_quotient(w.at(i, t), w.at(t, t));
                    w.sub_row(i, t, q, t);
                    dirty = dirty || sgn(w.at(i, t)) != 0;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(w.at(t, j)) != 0) {
                    Integer q = nearest_quotient(w.at(t, j), w.at(t, t));
                    w.sub_col(j, t, q, t);
                    dirty = dirty || sgn(w.at(t, j)) != 0;
                }
            }
            if (dirty) {
                // a remainder smaller than the pivot survived; promote the smallest one
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (sgn(w.at(i, t)) != 0 && less_abs(w.at(i, t), w.at(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (sgn(w.at(t, j)) != 0 && less_abs(w.at(t, j), w.at(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }

            // row and column of the pivot are clear; enforce divisibility of the block
            std::size_t bad_row = rows;
            for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (sgn(w.at(i, j)) != 0 && !mpz_divisible_p(w.at(i, j).get_mpz_t(), w.at(t, t).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
                }
            }
            if (bad_row == rows) {
                break;
            }
            w.sub_row(t, bad_row, Integer(-1), t);
        }
        out.invariant_factors.push_back(abs(w.at(t, t)));
        guard.check(w.data());
    }
    out.rank = t;
    return out;
}

std::size_t rank(const IntMatrix& a, const EliminationBudget& budget) {
    BudgetGuard guard(budget);
    Workspace w(a);
    const std::size_t rows = w.rows();
    const std::size_t cols = w.cols();

    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t k = 0; k < cols && r < rows; ++k) {
        std::size_t p = r;
        while (p < rows && sgn(w.at(p, k)) == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        w.swap_rows(r, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                Integer v = w.at(r, k) * w.at(i, j) - w.at(i, k) * w.at(r, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(r, k);
        ++r;
        guard.check(w.data());
    }
    return r;
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("determinant: matrix is not square");
    }
    const std::size_t n = a.rows();
    if (n == 0) {
        return 1;
    }
    Workspace w(a);
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(w.at(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(w.at(p, k)) == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            w.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = w.at(k, k);
    }
    return sign * w.at(n - 1, n - 1);
}

namespace {

// Advances a strictly increasing index vector over {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

} // namespace

Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
    if (k < 1 || k > std::min(a.rows(), a.cols())) {
        throw std::out_of_range("determinantal_divisor: k=" + std::to_string(k) +
                                " outside [1, min(rows, cols)]");
    }
    Integer g = 0;
    std::vector<std::size_t> ri(k), ci(k);
    std::iota(ri.begin(), ri.end(), std::size_t{0});
    do {
        std::iota(ci.begin(), ci.end(), std::size_t{0});
        do {
            IntMatrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    minor(i, j) = a(ri[i], ci[j]);
                }
            }
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), determinant(minor).get_mpz_t());
            if (g == 1) {
                return g;
            }
        } while (next_combination(ci, a.cols()));
    } while (next_combination(ri, a.rows()));
    return g;
}

IntMatrix kernel_basis(const IntMatrix& a, const EliminationBudget& budget) {
    BudgetGuard guard(budget);
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    // Column-reduce the stacked matrix [A; I]; zero columns of A carry kernel vectors below.
    IntMatrix stacked(rows + cols, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            stacked(i, j) = a(i, j);
        }
    }
    for (std::size_t j = 0; j < cols; ++j) {
        stacked(rows + j, j) = 1;
    }
    Workspace w(stacked);

    std::size_t pivot_col = 0;
    for (std::size_t i = 0; i < rows && pivot_col < cols; ++i) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t j = pivot_col; j < cols; ++j) {
                if (sgn(w.at(i, j)) != 0 && (best == cols || less_abs(w.at(i, j), w.at(i, best)))) {
                    best = j;
                }
            }
            if (best == cols) {
                break;
            }
            w.swap_cols(pivot_col, best);
            bool clean = true;
            for (std::size_t j = pivot_col + 1; j < cols; ++j) {
                if (sgn(w.at(i, j)) != 0) {
                    Integer q = nearest_quotient(w.at(i, j), w.at(i, pivot_col));
                    w.sub_col(j, pivot_col, q, 0);
                    clean = clean && sgn(w.at(i, j)) == 0;
                }
            }
            if (clean) {
                ++pivot_col;
                break;
            }
        }
        guard.check(w.data());
    }

    IntMatrix basis(cols, cols - pivot_col);
    for (std::size_t j = pivot_col; j < cols; ++j) {
        for (std::size_t i = 0; i < cols; ++i) {
            basis(i, j - pivot_col) = w.at(rows + i, j);
        }
    }
    return basis;
}

} // namespace ktors
