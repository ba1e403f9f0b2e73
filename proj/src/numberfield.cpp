#include "ktors/numberfield.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <ios>
#include <map>
#include <mutex>
#include <tuple>

#include <boost/math/constants/constants.hpp>

namespace ktors {

namespace {

Real abs_real(const Real& x) { return x < 0 ? Real(-x) : x; }

// Widens a radius to absorb the rounding of the midpoint operation that produced `value`.
Real with_rounding(const Real& radius, const Real& value, int ops) {
    return (radius + ops * kUnitRoundoff * abs_real(value)) * (1 + 4 * kUnitRoundoff);
}

Real pow_int(Real base, unsigned e) {
    Real r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace

BoundedReal operator+(const BoundedReal& a, const BoundedReal& b) {
    Real v = a.value + b.value;
    return {v, with_rounding(a.error + b.error, v, 1)};
}

BoundedReal operator-(const BoundedReal& a, const BoundedReal& b) {
    Real v = a.value - b.value;
    return {v, with_rounding(a.error + b.error, v, 1)};
}

BoundedReal operator*(const BoundedReal& a, const BoundedReal& b) {
    Real v = a.value * b.value;
    Real r = abs_real(a.value) * b.error + abs_real(b.value) * a.error + a.error * b.error;
    return {v, with_rounding(r, v, 1)};
}

BoundedReal operator*(const Real& scale, const BoundedReal& a) {
    return BoundedReal::exact(scale) * a;
}

BoundedReal log(const BoundedReal& a) {
    if (!(a.lower() > 0)) {
        throw std::domain_error("log of an interval that is not strictly positive");
    }
    Real v = boost::multiprecision::log(a.value);
    // |log x - log a.value| <= error / lower on the interval
    Real r = a.error / a.lower() + 4 * kUnitRoundoff * (abs_real(v) + 1);
    return {v, with_rounding(r, v, 0)};
}

BoundedReal max(const BoundedReal& a, const BoundedReal& b) {
    if (a.lower() >= b.upper()) return a;
    if (b.lower() >= a.upper()) return b;
    Real lo = std::max(a.lower(), b.lower());
    Real hi = std::max(a.upper(), b.upper());
    Real v = (lo + hi) / 2;
    return {v, with_rounding((hi - lo) / 2, v, 2)};
}

BoundedReal log(const Integer& x) {
    if (sgn(x) <= 0) {
        throw std::domain_error("log of a nonpositive integer");
    }
    // keep the top 113 bits exactly: x = mant * 2^shift, relative truncation < 2^-112
    const long bits = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
    const long shift = std::max(0L, bits - 113);
    Integer top = x >> static_cast<mp_bitcnt_t>(shift);
    Integer hi = top >> 64;
    Integer lo = top - (hi << 64);
    Real mant = Real(mpz_get_ui(hi.get_mpz_t())) * boost::multiprecision::ldexp(Real(1), 64) +
                Real(mpz_get_ui(lo.get_mpz_t()));
    Real ln2 = boost::math::constants::ln_two<Real>();
    Real v = boost::multiprecision::log(mant) + Real(shift) * ln2;
    Real r = (shift > 0 ? 4 * kUnitRoundoff : Real(0)) +
             Real(shift) * ln2 * 2 * kUnitRoundoff + 4 * kUnitRoundoff * (abs_real(v) + 1);
    return {v, with_rounding(r, v, 2)};
}

BoundedReal log_of_double(double x) {
    if (!(x > 0) || !std::isfinite(x)) {
        throw std::domain_error("log of a nonpositive or non-finite value");
    }
    Real v = boost::multiprecision::log(Real(x));
    return {v, with_rounding(4 * kUnitRoundoff * (abs_real(v) + 1), v, 0)};
}

BoundedReal log_two_pi() {
    Real two_pi = boost::math::constants::two_pi<Real>();
    Real v = boost::multiprecision::log(two_pi);
    return {v, with_rounding(8 * kUnitRoundoff, v, 1)};
}

std::string to_decimal(const Real& x) {
    return x.str(std::numeric_limits<Real>::max_digits10, std::ios_base::scientific);
}

// --- fields and characters --------------------------------------------------

bool is_squarefree(std::uint64_t n) {
    if (n == 0) {
        return false;
    }
    const std::uint64_t original = n;
    // strip primes up to the cube root; what remains has at most two prime factors
    for (std::uint64_t p = 2; static_cast<unsigned __int128>(p) * p * p <= original; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) {
                return false;
            }
        }
    }
    if (n <= 1) {
        return true;
    }
    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<unsigned __int128>(root) * root > n) --root;
    while (static_cast<unsigned __int128>(root + 1) * (root + 1) <= n) ++root;
    return root * root != n;
}

namespace {

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

std::uint64_t magnitude(std::int64_t x) {
    return x < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x);
}

} // namespace

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) {
        return false;
    }
    if (mod4(d) == 1) {
        return is_squarefree(magnitude(d));
    }
    if (mod4(d) != 0) {
        return false;
    }
    std::int64_t m = d / 4;
    return (mod4(m) == 2 || mod4(m) == 3) && is_squarefree(magnitude(m));
}

ImagQuadField make_field(std::int64_t m) {
    if (m >= 0) {
        throw std::invalid_argument("make_field: m must be negative, got " + std::to_string(m));
    }
    if (!is_squarefree(magnitude(m))) {
        throw std::invalid_argument("make_field: m = " + std::to_string(m) + " is not squarefree");
    }
    std::int64_t d = m;
    if (mod4(m) != 1) {
        if (m < std::numeric_limits<std::int64_t>::min() / 4) {
            throw std::invalid_argument("make_field: discriminant 4m overflows 64 bits");
        }
        d = 4 * m;
    }
    int w = d == -3 ? 6 : d == -4 ? 4 : 2;
    return ImagQuadField(m, d, w);
}

namespace {

// Jacobi symbol (a/n), 0 <= a, n odd positive.
int jacobi(std::uint64_t a, std::uint64_t n) {
    a %= n;
    int sign = 1;
    while (a != 0) {
        while ((a & 1u) == 0) {
            a >>= 1;
            const std::uint64_t r = n & 7u;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(a, n);
        if ((a & 3u) == 3 && (n & 3u) == 3) sign = -sign;
        a %= n;
    }
    return n == 1 ? sign : 0;
}

} // namespace

int kronecker_symbol(std::int64_t a, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("kronecker_symbol: n must be >= 1");
    }
    int result = 1;
    while ((n & 1u) == 0) {
        n >>= 1;
        const std::int64_t r = ((a % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    // a mod n in [0, n)
    const std::uint64_t reduced =
        a >= 0 ? static_cast<std::uint64_t>(a) % n : (n - magnitude(a) % n) % n;
    return result * jacobi(reduced, n);
}

int kronecker_chi(std::int64_t d, std::int64_t k) {
    if (!is_fundamental_discriminant(d)) {
        throw std::invalid_argument("kronecker_chi: " + std::to_string(d) + " is not a fundamental discriminant");
    }
    if (k < 1) {
        throw std::invalid_argument("kronecker_chi: k must be positive");
    }
    return kronecker_symbol(d, static_cast<std::uint64_t>(k));
}

QuadraticCharacter::QuadraticCharacter(std::int64_t discriminant) : discriminant_(discriminant) {
    if (!is_fundamental_discriminant(discriminant)) {
        throw std::invalid_argument("QuadraticCharacter: " + std::to_string(discriminant) +
                                    " is not a fundamental discriminant");
    }
    const std::uint64_t q = magnitude(discriminant);
    if (q > 100'000'000) {
        throw std::invalid_argument("QuadraticCharacter: |D| too large to tabulate");
    }
    values_.resize(q);
    int sum = 0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        const int c = kronecker_symbol(discriminant, k);
        values_[k % q] = c;
        sum += c;
        sum_min_ = std::min(sum_min_, sum);
        sum_max_ = std::max(sum_max_, sum);
    }
}

// --- zeta and L values ------------------------------------------------------

namespace {

void check_zeta_args(int s, const Real& target_error) {
    if (s < 2) {
        throw std::invalid_argument("zeta evaluation requires s >= 2, got " + std::to_string(s));
    }
    if (!(target_error >= kMinTargetError)) {
        throw std::invalid_argument("target error below the supported floor of 1e-25");
    }
}

// Smallest M >= 1 with M^s >= scale / target, with a margin for double rounding.
std::uint64_t terms_for(double scale, const Real& target_error, int s) {
    const double t = static_cast<double>(target_error);
    const double m = std::ceil(std::pow(scale / t, 1.0 / s));
    return static_cast<std::uint64_t>(std::max(1.0, m)) + 1;
}

// Terms past the head are summed in hardware long double. The head is summed
// in Real and is long enough that the long double rounding stays below budget / 8.
constexpr std::uint64_t kMinHead = std::uint64_t{1} << 17;

struct PartialSum {
    Real sum = 0;
    Real abs_sum = 0;
    Real rounding = 0; // bound on the accumulated rounding error of sum
};

// sum_{k=1}^{m} c(k) k^{-s}, summed from the smallest terms up.
template <typename Coefficient>
PartialSum sum_terms(std::uint64_t m, int s, const Real& budget, Coefficient c) {
    const auto e = static_cast<unsigned>(s);
    PartialSum out;
    // tail abs sum <= head^{1-s}/(s-1); rounding <= 4 m eps_ld * that
    const double need = std::pow(32.0 * static_cast<double>(m) * (LDBL_EPSILON / 2) /
                                     static_cast<double>(budget), 1.0 / (s - 1));
    const std::uint64_t head =
        std::min(m, std::max(kMinHead, static_cast<std::uint64_t>(std::min(need, 1e18)) + 1));
    if (m > head) {
        long double sum = 0;
        long double abs_sum = 0;
        for (std::uint64_t k = m; k > head; --k) {
            const int ck = c(k);
            if (ck == 0) continue;
            long double base = static_cast<long double>(k);
            long double power = 1;
            for (unsigned x = e; x; x >>= 1) {
                if (x & 1u) power *= base;
                base *= base;
            }
            const long double term = 1 / power;
            sum += ck > 0 ? term : -term;
            abs_sum += term;
        }
        const Real eps = Real(LDBL_EPSILON) / 2;
        out.sum = Real(sum);
        out.abs_sum = Real(abs_sum);
        out.rounding = 2 * Real(m - head + static_cast<std::uint64_t>(s) + 4) * eps * out.abs_sum * 2;
    }
    Real head_sum = 0;
    Real head_abs = 0;
    for (std::uint64_t k = head; k >= 1; --k) {
        const int ck = c(k);
        if (ck == 0) continue;
        const Real term = 1 / pow_int(Real(k), e);
        head_sum += ck > 0 ? term : Real(-term);
        head_abs += term;
    }
    out.rounding += 2 * Real(head + static_cast<std::uint64_t>(s) + 4) * kUnitRoundoff * head_abs;
    out.sum += head_sum;
    out.abs_sum += head_abs;
    out.rounding += 2 * kUnitRoundoff * out.abs_sum;
    return out;
}

std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

// keyed by (D, s, M); D = 1 marks the Riemann zeta function
std::map<std::tuple<std::int64_t, int, std::uint64_t>, BoundedReal>& cache() {
    static std::map<std::tuple<std::int64_t, int, std::uint64_t>, BoundedReal> values;
    return values;
}

template <typename Compute>
BoundedReal memoized(std::int64_t d, int s, std::uint64_t m, Compute compute) {
    const auto key = std::make_tuple(d, s, m);
    {
        std::lock_guard lock(cache_mutex());
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    BoundedReal v = compute();
    std::lock_guard lock(cache_mutex());
    cache().emplace(key, v);
    return v;
}

} // namespace

BoundedReal riemann_zeta(int s, const Real& target_error) {
    check_zeta_args(s, target_error);
    const std::uint64_t m = terms_for(1.0, target_error, s);
    return memoized(1, s, m, [&] {
        const auto e = static_cast<unsigned>(s);
        const PartialSum head = sum_terms(m, s, target_error, [](std::uint64_t) { return 1; });
        const Real& sum = head.sum;
        // integral comparison: (M+1)^{1-s}/(s-1) <= sum_{k>M} k^{-s} <= M^{1-s}/(s-1)
        const Real tail_lo = 1 / (pow_int(Real(m + 1), e - 1) * (s - 1));
        const Real tail_hi = 1 / (pow_int(Real(m), e - 1) * (s - 1));
        const Real value = sum + (tail_lo + tail_hi) / 2;
        const Real rounding = head.rounding;
        const Real radius = (tail_hi - tail_lo) / 2 + 8 * kUnitRoundoff * tail_hi + rounding;
        return BoundedReal{value, with_rounding(radius, value, 2)};
    });
}

BoundedReal dirichlet_L(std::int64_t discriminant, int s, const Real& target_error) {
    check_zeta_args(s, target_error);
    const QuadraticCharacter chi(discriminant);
    const std::uint64_t q = chi.period();
    const int width = chi.partial_sum_max() - chi.partial_sum_min();
    std::uint64_t m = terms_for(static_cast<double>(width), target_error, s);
    m = std::max<std::uint64_t>(q, (m + q - 1) / q * q);
    return memoized(discriminant, s, m, [&] {
        const auto e = static_cast<unsigned>(s);
        const PartialSum head = sum_terms(m, s, target_error, [&chi](std::uint64_t k) { return chi(k); });
        const Real& sum = head.sum;
        // Abel summation with S(M) = 0: the tail lies in [Smin, Smax] * (M+1)^{-s}
        const Real weight = 1 / pow_int(Real(m + 1), e);
        const Real center = Real(chi.partial_sum_min() + chi.partial_sum_max()) / 2 * weight;
        const Real value = sum + center;
        const Real& rounding = head.rounding;
        const Real radius = Real(width) / 2 * weight + 8 * kUnitRoundoff * Real(width + 1) * weight + rounding;
        return BoundedReal{value, with_rounding(radius, value, 2)};
    });
}

BoundedReal dedekind_zeta(const ImagQuadField& f, int s, const Real& target_error) {
    check_zeta_args(s, target_error);
    // both factors lie in (0, zeta(2)) with zeta(2) < 2
    const Real part = target_error / 8;
    return riemann_zeta(s, part) * dirichlet_L(f.discriminant(), s, part);
}

BoundedReal zeta_product(const ImagQuadField& f, int N, const Real& target_error) {
    if (N < 2) {
        throw std::invalid_argument("zeta_product requires N >= 2, got " + std::to_string(N));
    }
    if (!(target_error >= kMinTargetError)) {
        throw std::invalid_argument("target error below the supported floor of 1e-25");
    }
    // Per-factor target rounded down to a power of two so that products for
    // neighbouring N share cached factors. The product stays below prod zeta(k)^2 < 8.
    const double share = static_cast<double>(target_error) / (32.0 * (N - 1));
    int exp2 = 0;
    std::frexp(share, &exp2);
    const Real factor_target = std::max(kMinTargetError, Real(std::ldexp(1.0, exp2 - 1)));

    BoundedReal product = BoundedReal::exact(1);
    for (int k = 2; k <= N; ++k) {
        product = product * dedekind_zeta(f, k, factor_target);
    }
    const Real cap = boost::multiprecision::ldexp(Real(1), N - 1);
    if (!(product.upper() <= cap)) {
        throw InvariantViolation("zeta product for D = " + std::to_string(f.discriminant()) + ", N = " +
                                 std::to_string(N) + " exceeds 2^(N-1): " + to_decimal(product.upper()));
    }
    return product;
}

} // namespace ktors
