#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library routines they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "ktors/exact_linalg.hpp"
#include "ktors/simplicial.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<long>>;

inline ktors::IntMatrix to_int_matrix(const Matrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    ktors::IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = m[i][j];
    return a;
}

// Leibniz expansion over all permutations.
inline mpz_class leibniz_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    mpz_class total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        mpz_class term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// gcd of all k x k minors by subset enumeration with bitmasks.
inline mpz_class minor_gcd(const ktors::IntMatrix& a, std::size_t k) {
    mpz_class g = 0;
    const std::size_t r = a.rows(), c = a.cols();
    for (std::uint32_t rm = 0; rm < (1u << r); ++rm) {
        if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
        for (std::uint32_t cm = 0; cm < (1u << c); ++cm) {
            if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
            std::vector<std::vector<mpz_class>> sub;
            for (std::size_t i = 0; i < r; ++i) {
                if (!(rm & (1u << i))) continue;
                std::vector<mpz_class> row;
                for (std::size_t j = 0; j < c; ++j)
                    if (cm & (1u << j)) row.push_back(a(i, j));
                sub.push_back(row);
            }
            mpz_class d = leibniz_det(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
    }
    return g;
}

inline ktors::IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    ktors::IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a(i, j) = lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    return a;
}

// Product of random elementary operations: unimodular by construction.
inline ktors::IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
    ktors::IntMatrix u = ktors::IntMatrix::identity(n);
    if (n < 2) {
        if (n == 1 && rng() % 2) u(0, 0) = -1;
        return u;
    }
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = rng() % n;
        std::size_t j = rng() % n;
        if (i == j) j = (j + 1) % n;
        const long q = static_cast<long>(rng() % 5) - 2;
        ktors::IntMatrix e = ktors::IntMatrix::identity(n);
        switch (rng() % 3) {
        case 0: e(i, j) = q; break;                          // add q * row j to row i
        case 1: e(i, i) = 0; e(j, j) = 0; e(i, j) = 1; e(j, i) = 1; break; // swap
        default: e(i, i) = -1; break;                        // negate
        }
        u = e * u;
    }
    return u;
}

// |{2x2 matrices over Z/3 with nonzero determinant}|
inline int count_gl2_mod3() {
    int count = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    if (((a * d - b * c) % 3 + 3) % 3 != 0) ++count;
    return count;
}

// |GL_n(F_q)| = q^{n(n-1)/2} prod_{i=1}^{n} (q^i - 1)
inline mpz_class gl_order(unsigned long q, unsigned long n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, n * (n - 1) / 2);
    for (unsigned long i = 1; i <= n; ++i) {
        mpz_class qi;
        mpz_ui_pow_ui(qi.get_mpz_t(), q, i);
        r *= qi - 1;
    }
    return r;
}

// Catalan's constant as sum_{j<terms} (-1)^j / (2j+1)^2; the alternating tail is below 1/(2*terms+1)^2.
inline long double catalan(std::uint64_t terms) {
    long double s = 0;
    for (std::uint64_t j = terms; j-- > 0;) {
        const long double d = 2.0L * static_cast<long double>(j) + 1.0L;
        s += (j % 2 ? -1.0L : 1.0L) / (d * d);
    }
    return s;
}

// sum_{k<=m} k^-s plus the midpoint of the integral tail bracket.
inline long double zeta_direct(int s, std::uint64_t m) {
    long double sum = 0;
    for (std::uint64_t k = m; k >= 1; --k) sum += 1.0L / std::pow(static_cast<long double>(k), s);
    const long double lo = std::pow(static_cast<long double>(m + 1), 1 - s) / (s - 1);
    const long double hi = std::pow(static_cast<long double>(m), 1 - s) / (s - 1);
    return sum + (lo + hi) / 2;
}

// Kronecker character (D/k) built multiplicatively from prime values, with
// odd-prime values read off a table of squares mod p.
inline int legendre_by_squares(long d, long p) {
    const long r = ((d % p) + p) % p;
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if ((x * x) % p == r) return 1;
    return -1;
}

inline int kronecker_by_residues(long d, long k) {
    int result = 1;
    for (long p = 2; k > 1; ++p) {
        while (k % p == 0) {
            k /= p;
            int v;
            if (p == 2) {
                const long r = ((d % 8) + 8) % 8;
                v = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
            } else {
                v = legendre_by_squares(d, p);
            }
            result *= v;
        }
    }
    return result;
}

inline std::vector<long> primes_up_to(long n) {
    std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
    std::vector<long> ps;
    for (long i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        ps.push_back(i);
        for (long j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return ps;
}

// --- standard triangulations ---

inline ktors::SimplicialComplex tetrahedron_boundary() {
    return ktors::SimplicialComplex::from_top_simplices(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Minimal 6-vertex real projective plane.
inline ktors::SimplicialComplex projective_plane() {
    return ktors::SimplicialComplex::from_top_simplices(
        6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

// n x n grid quotient; `twist` glues the vertical sides with a flip (Klein bottle).
inline ktors::SimplicialComplex grid_surface(unsigned n, bool twist) {
    auto vertex = [n, twist](unsigned i, unsigned j) -> ktors::Vertex {
        if (i == n) {
            i = 0;
            if (twist) j = (n - j % n) % n;
        }
        j %= n;
        return i * n + j;
    };
    std::vector<ktors::Simplex> tris;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            ktors::Simplex a{vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)};
            ktors::Simplex b{vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)};
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            tris.push_back(a);
            tris.push_back(b);
        }
    }
    return ktors::SimplicialComplex::from_top_simplices(n * n, tris);
}

} // namespace oracle
