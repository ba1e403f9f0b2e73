#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ktors/exact_linalg.hpp"

namespace ktors {

using Vertex = std::uint32_t;
/// Strictly increasing vertex list.
using Simplex = std::vector<Vertex>;

/**
 * Finite abstract simplicial complex stored as its full face-closed simplex set.
 *
 * Simplices of each dimension are kept in lexicographic order; that order is
 * the chain basis used by boundary_matrix(). Vertices in [0, vertex_count)
 * that lie in no simplex are not part of the complex.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Builds the face closure of the given maximal simplices. Each simplex must be
    /// nonempty, strictly increasing and inside [0, vertex_count); throws
    /// std::invalid_argument otherwise.
    static SimplicialComplex from_top_simplices(std::size_t vertex_count, const std::vector<Simplex>& tops);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    /// Highest dimension carrying a simplex, or -1 for the empty complex.
    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    std::size_t count(std::size_t n) const noexcept { return n < by_dim_.size() ? by_dim_[n].size() : 0; }
    const std::vector<Simplex>& simplices(std::size_t n) const;
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Maximal simplices in dimension-then-lexicographic order.
    std::vector<Simplex> top_simplices() const;

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
};

struct ComplexProfile {
    std::size_t delta = 0;                  // maximum vertex degree in the 1-skeleton
    std::size_t v = 0;                      // vertex_count
    std::vector<std::size_t> simplex_counts; // per dimension
};

struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Integer> torsion_factors; // each > 1, divisibility chain

    Integer torsion_order() const;
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Matrix of the boundary map C_n -> C_{n-1} (requires n >= 1).
IntMatrix boundary_matrix(const SimplicialComplex& k, std::size_t n);

/// Unreduced integral homology H_n.
HomologyGroup homology(const SimplicialComplex& k, std::size_t n, const EliminationBudget& budget = {});

/// H_0 .. H_dim in one pass, sharing the eliminations between neighbouring degrees.
std::vector<HomologyGroup> homology_all(const SimplicialComplex& k, const EliminationBudget& budget = {});

ComplexProfile profile(const SimplicialComplex& k);

/// Gabber's bound in log form: (#n-simplices) * log(n+2) / 2.
double gabber_log_bound(const SimplicialComplex& k, std::size_t n);

/// Exact integer form of Gabber's bound: |tors H_n|^2 <= (n+2)^(#n-simplices).
bool satisfies_gabber_bound(const HomologyGroup& h, std::size_t simplex_count, std::size_t n);

/// v/(n+1) * C(delta, n), the cap on the number of n-simplices of a (delta, v)-complex.
double simplex_count_cap(std::size_t delta, std::size_t v, std::size_t n);

/// Exact form of the cap: (n+1) * count <= v * C(delta, n).
bool within_simplex_count_cap(std::size_t count, std::size_t delta, std::size_t v, std::size_t n);

/// Both torsion bounds for a (delta, v)-complex, on the log|tors H_n| scale.
struct CountingBound {
    double fine = 0.0;   // simplex_count_cap * log(n+2) / 2
    double coarse = 0.0; // v * delta^n
};
CountingBound counting_log_bound(std::size_t delta, std::size_t v, std::size_t n);

/// Deterministic random complex: greedy insertion of random simplices of dimension
/// <= dim on v vertices, skipping any that would raise a vertex degree above delta_max.
SimplicialComplex random_complex(std::size_t delta_max, std::size_t v, std::size_t dim, std::uint64_t seed);

/// Log of |tors H_n| (sum of logs of the torsion factors).
double log_torsion_order(const HomologyGroup& h);

} // namespace ktors
