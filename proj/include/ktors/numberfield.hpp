#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "ktors/exact_linalg.hpp"

namespace ktors {

/// IEEE binary128 (113-bit significand, ~34 decimal digits).
using Real = boost::multiprecision::float128;

/// Unit roundoff of Real.
inline const Real kUnitRoundoff = std::numeric_limits<Real>::epsilon() / 2;

/**
 * A real number with a proven absolute error radius: the true value lies in
 * [value - error, value + error]. Arithmetic below widens the radius to cover
 * the rounding of the midpoint computation.
 */
struct BoundedReal {
    Real value = 0;
    Real error = 0;

    Real lower() const { return value - error; }
    Real upper() const { return value + error; }
    bool contains(const Real& x) const { return lower() <= x && x <= upper(); }
    bool contains(const BoundedReal& inner) const {
        return lower() <= inner.lower() && inner.upper() <= upper();
    }

    static BoundedReal exact(const Real& v) { return {v, 0}; }
};

BoundedReal operator+(const BoundedReal& a, const BoundedReal& b);
BoundedReal operator-(const BoundedReal& a, const BoundedReal& b);
BoundedReal operator*(const BoundedReal& a, const BoundedReal& b);
BoundedReal operator*(const Real& scale, const BoundedReal& a);
/// Natural log; requires a.lower() > 0.
BoundedReal log(const BoundedReal& a);
/// Enclosure of max(a, b).
BoundedReal max(const BoundedReal& a, const BoundedReal& b);
/// Natural log of a positive exact integer of any size.
BoundedReal log(const Integer& x);
/// Natural log of a positive double, taken as exact input.
BoundedReal log_of_double(double x);
/// log(2*pi), enclosed.
BoundedReal log_two_pi();

/// Decimal rendering with the full precision of Real, scientific notation.
std::string to_decimal(const Real& x);

/// Raised when a computed quantity contradicts a proven inequality. Signals a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Q(sqrt(m)) for squarefree m < 0.
class ImagQuadField {
public:
    std::int64_t m() const noexcept { return m_; }
    std::int64_t discriminant() const noexcept { return discriminant_; }
    std::uint64_t abs_discriminant() const noexcept { return static_cast<std::uint64_t>(-discriminant_); }
    int unit_order() const noexcept { return unit_order_; }
    static constexpr int degree() noexcept { return 2; }

    friend ImagQuadField make_field(std::int64_t m);
    friend bool operator==(const ImagQuadField&, const ImagQuadField&) = default;

private:
    ImagQuadField(std::int64_t m, std::int64_t d, int w) : m_(m), discriminant_(d), unit_order_(w) {}

    std::int64_t m_;
    std::int64_t discriminant_;
    int unit_order_;
};

/// Throws std::invalid_argument for m >= 0, non-squarefree m, or |D_F| >= 2^63.
ImagQuadField make_field(std::int64_t m);

bool is_squarefree(std::uint64_t n);
bool is_fundamental_discriminant(std::int64_t d);

/// Kronecker symbol (a/n) for any integer a and n >= 1, by quadratic reciprocity.
int kronecker_symbol(std::int64_t a, std::uint64_t n);

/// chi_D(k) = (D/k) for a fundamental discriminant D and k >= 1.
/// Throws std::invalid_argument for non-fundamental D or k < 1.
int kronecker_chi(std::int64_t d, std::int64_t k);

/// The character k -> (D/k) tabulated over one period |D|, with the range of its
/// partial sums (which drive the tail bound of L(s, chi_D)).
class QuadraticCharacter {
public:
    explicit QuadraticCharacter(std::int64_t discriminant);

    std::int64_t discriminant() const noexcept { return discriminant_; }
    std::uint64_t period() const noexcept { return values_.size(); }
    int operator()(std::uint64_t k) const { return values_[k % values_.size()]; }
    /// min and max of S(x) = sum_{k<=x} chi(k) over one period (both include S(0) = 0).
    int partial_sum_min() const noexcept { return sum_min_; }
    int partial_sum_max() const noexcept { return sum_max_; }

private:
    std::int64_t discriminant_;
    std::vector<int> values_; // values_[k mod |D|]
    int sum_min_ = 0;
    int sum_max_ = 0;
};

/// Smallest target error accepted by the zeta evaluators; below it the
/// rounding of Real dominates the truncation.
inline const Real kMinTargetError = Real(1e-25);

BoundedReal riemann_zeta(int s, const Real& target_error);
BoundedReal dirichlet_L(std::int64_t discriminant, int s, const Real& target_error);
/// zeta_F(s) = zeta(s) * L(s, chi_{D_F}).
BoundedReal dedekind_zeta(const ImagQuadField& f, int s, const Real& target_error);

/// prod_{k=2}^{N} zeta_F(k). Throws InvariantViolation if value + error exceeds 2^(N-1).
BoundedReal zeta_product(const ImagQuadField& f, int N, const Real& target_error);

} // namespace ktors
