#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ktors/exact_linalg.hpp"
#include "ktors/numberfield.hpp"

namespace ktors {

/// alpha(X), delta(X) from Gelander's homotopy-type theorem. Not known
/// explicitly; callers supply them. Both must be positive and finite.
class GelanderConstants {
public:
    GelanderConstants() = default;
    GelanderConstants(double alpha, double delta);

    double alpha() const noexcept { return alpha_; }
    double delta() const noexcept { return delta_; }
    /// True for the 1.0/1.0 placeholders.
    bool is_placeholder() const noexcept { return alpha_ == 1.0 && delta_ == 1.0; }

private:
    double alpha_ = 1.0;
    double delta_ = 1.0;
};

inline constexpr const char* kPlaceholderDisclaimer =
    "placeholder - Gelander constants are non-explicit; alpha and delta are user inputs "
    "and the reported thresholds are only as meaningful as those inputs";

/// gamma(d, N) = |GL_{Nd}(Z/3)| = prod_{i=0}^{Nd-1} (3^{Nd} - 3^i).
Integer minkowski_gamma(unsigned d, unsigned N);

/// log A(N, d) for the archimedean factor of the covolume formula. Swappable so
/// that a different volume normalization can be supplied without touching callers.
using ArchimedeanLogConstant = std::function<BoundedReal(unsigned N, unsigned degree)>;

/// log of (prod_{k=1}^{N-1} k! / (2 pi)^{k+1})^d.
BoundedReal prasad_archimedean_log_constant(unsigned N, unsigned degree);

/// log A + ((N^2-1)/2) log|D_F| + log prod_{k=2}^{N} zeta_F(k).
BoundedReal prasad_log_volume(const ImagQuadField& f, unsigned N, const Real& target_error,
                              const ArchimedeanLogConstant& archimedean = prasad_archimedean_log_constant);

/// Exponent of |D_F| in the covolume for matrix size N: (N^2-1)/2. Requires N odd.
std::uint64_t discriminant_exponent(unsigned N);

struct HomologyBound {
    unsigned n = 0;
    unsigned N = 0;                     // 2n+1
    Integer gamma;                      // gamma(2, N)
    BoundedReal log_gamma;
    BoundedReal log_volume;
    BoundedReal log_bound;              // log alpha + n log delta + log gamma + log_volume
    BoundedReal log_clean_coefficient;  // log(alpha delta^n gamma A 2^(N-1))
    BoundedReal log_clean_bound;        // log_clean_coefficient + 2n(n+1) log|D_F|
    std::uint64_t exponent = 0;         // 2n(n+1)
};

HomologyBound homology_log_bound(const ImagQuadField& f, unsigned n, const GelanderConstants& consts,
                                 const Real& target_error,
                                 const ArchimedeanLogConstant& archimedean = prasad_archimedean_log_constant);

/// Soule's bound |D_F|^(1120 n^4 log n) kept as (exponent, log base).
struct SouleBound {
    Real exponent;      // 1120 n^4 ln n
    Real log_base;      // ln |D_F|
    Real log_value() const { return exponent * log_base; }
};

SouleBound soule_log_bound(const ImagQuadField& f, unsigned n);

/// C |D_F|^2 log|D_F|.
Real k2_log_bound(const ImagQuadField& f, double c);

struct BoundReport {
    explicit BoundReport(const ImagQuadField& f) : field(f) {}

    ImagQuadField field;
    unsigned n = 0;
    unsigned N = 0;
    GelanderConstants consts;
    Real target_error = 0;
    Integer gamma;
    BoundedReal log_gamma;
    BoundedReal log_volume_bound;
    BoundedReal log_homology_bound;
    BoundedReal log_clean_coefficient;
    BoundedReal log_clean_bound;
    /// log of the threshold T on log p: p-torsion is excluded once log p > T.
    BoundedReal log_p_threshold;
    std::uint64_t exponent = 0;
    SouleBound soule;
    std::string excluded_primes_note;
};

BoundReport ktheory_threshold(const ImagQuadField& f, unsigned n, const GelanderConstants& consts,
                              const Real& target_error,
                              const ArchimedeanLogConstant& archimedean = prasad_archimedean_log_constant);

struct ComparisonRow {
    unsigned n = 0;
    std::int64_t m = 0;
    std::int64_t discriminant = 0;
    std::uint64_t new_exponent = 0;   // 2n(n+1)
    Real soule_exponent = 0;          // 1120 n^4 ln n
    BoundedReal log_p_threshold;      // new bound, log scale
    Real soule_log_bound = 0;         // log of Soule's bound on log|tors|
    bool new_is_smaller = false;      // log_p_threshold.upper() < soule_log_bound
    std::string winner() const { return new_is_smaller ? "new" : "soule"; }
};

/// One row per (n, m) in row-major order of the inputs. Rows are evaluated in
/// parallel; the output order does not depend on scheduling.
std::vector<ComparisonRow> compare_bounds(const std::vector<unsigned>& n_range, const std::vector<std::int64_t>& m_list,
                                          const GelanderConstants& consts, const Real& target_error);

} // namespace ktors
