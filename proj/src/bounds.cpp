#include "ktors/bounds.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <boost/math/constants/constants.hpp>

namespace ktors {

GelanderConstants::GelanderConstants(double alpha, double delta) : alpha_(alpha), delta_(delta) {
    if (!(alpha > 0) || !std::isfinite(alpha) || !(delta > 0) || !std::isfinite(delta)) {
        throw std::invalid_argument("Gelander constants must be positive and finite");
    }
}

Integer minkowski_gamma(unsigned d, unsigned N) {
    if (d < 1 || N < 2) {
        throw std::invalid_argument("minkowski_gamma requires d >= 1 and N >= 2");
    }
    const unsigned dim = N * d;
    Integer full;
    mpz_ui_pow_ui(full.get_mpz_t(), 3, dim);
    Integer order = 1;
    Integer power = 1; // 3^i
    for (unsigned i = 0; i < dim; ++i) {
        order *= full - power;
        power *= 3;
    }
    return order;
}

BoundedReal prasad_archimedean_log_constant(unsigned N, unsigned degree) {
    if (N < 2) {
        throw std::invalid_argument("archimedean constant requires N >= 2");
    }
    const BoundedReal log_2pi = log_two_pi();
    BoundedReal total = BoundedReal::exact(0);
    Integer factorial = 1;
    for (unsigned k = 1; k + 1 <= N; ++k) {
        factorial *= k;
        total = total + log(factorial) - Real(k + 1) * log_2pi;
    }
    return Real(degree) * total;
}

BoundedReal prasad_log_volume(const ImagQuadField& f, unsigned N, const Real& target_error,
                              const ArchimedeanLogConstant& archimedean) {
    if (N < 2) {
        throw std::invalid_argument("prasad_log_volume requires N >= 2");
    }
    const BoundedReal log_a = archimedean(N, static_cast<unsigned>(ImagQuadField::degree()));
    const Real half_exponent = Real(static_cast<std::uint64_t>(N) * N - 1) / 2;
    const BoundedReal log_disc = log(Integer(static_cast<unsigned long>(f.abs_discriminant())));
    // the product exceeds 1, so its absolute error bounds the error of its log
    const BoundedReal zeta = zeta_product(f, static_cast<int>(N), target_error / 2);
    return log_a + half_exponent * log_disc + log(zeta);
}

std::uint64_t discriminant_exponent(unsigned N) {
    if (N % 2 == 0) {
        throw std::invalid_argument("discriminant_exponent: N must be odd");
    }
    return (static_cast<std::uint64_t>(N) * N - 1) / 2;
}

HomologyBound homology_log_bound(const ImagQuadField& f, unsigned n, const GelanderConstants& consts,
                                 const Real& target_error, const ArchimedeanLogConstant& archimedean) {
    if (n < 2) {
        throw std::invalid_argument("homology_log_bound requires n >= 2");
    }
    HomologyBound b;
    b.n = n;
    b.N = 2 * n + 1;
    b.exponent = 2 * static_cast<std::uint64_t>(n) * (n + 1);
    b.gamma = minkowski_gamma(static_cast<unsigned>(ImagQuadField::degree()), b.N);
    b.log_gamma = log(b.gamma);
    b.log_volume = prasad_log_volume(f, b.N, target_error / 2, archimedean);

    const BoundedReal scale = log_of_double(consts.alpha()) + Real(n) * log_of_double(consts.delta());
    b.log_bound = scale + b.log_gamma + b.log_volume;

    const BoundedReal log_a = archimedean(b.N, static_cast<unsigned>(ImagQuadField::degree()));
    const BoundedReal log_zeta_cap = Real(b.N - 1) * BoundedReal{boost::math::constants::ln_two<Real>(), 4 * kUnitRoundoff};
    b.log_clean_coefficient = scale + b.log_gamma + log_a + log_zeta_cap;
    const BoundedReal log_disc = log(Integer(static_cast<unsigned long>(f.abs_discriminant())));
    b.log_clean_bound = b.log_clean_coefficient + Real(b.exponent) * log_disc;

    if (b.log_bound.lower() > b.log_clean_bound.upper()) {
        throw InvariantViolation("zeta-exact homology bound exceeds its clean form");
    }
    return b;
}

SouleBound soule_log_bound(const ImagQuadField& f, unsigned n) {
    if (n < 2) {
        throw std::invalid_argument("soule_log_bound requires n >= 2");
    }
    const Real nn = n;
    return {1120 * nn * nn * nn * nn * boost::multiprecision::log(nn),
            boost::multiprecision::log(Real(f.abs_discriminant()))};
}

Real k2_log_bound(const ImagQuadField& f, double c) {
    if (!(c > 0) || !std::isfinite(c)) {
        throw std::invalid_argument("k2_log_bound requires a positive constant");
    }
    const Real d = Real(f.abs_discriminant());
    return Real(c) * d * d * boost::multiprecision::log(d);
}

BoundReport ktheory_threshold(const ImagQuadField& f, unsigned n, const GelanderConstants& consts,
                              const Real& target_error, const ArchimedeanLogConstant& archimedean) {
    if (n < 2) {
        throw std::invalid_argument("ktheory_threshold requires n >= 2");
    }
    if (f.unit_order() > 6) {
        throw InvariantViolation("unit group of an imaginary quadratic field has order > 6");
    }
    HomologyBound hb = homology_log_bound(f, n, consts, target_error, archimedean);

    if (discriminant_exponent(hb.N) != hb.exponent) {
        throw InvariantViolation("(N^2-1)/2 differs from 2n(n+1)");
    }
    // the prime cutoff must satisfy gamma >= (n+1)/2 for the K-theory comparison
    if (Integer(2) * hb.gamma < n + 1) {
        throw InvariantViolation("gamma below (n+1)/2");
    }

    BoundReport r(f);
    r.n = n;
    r.N = hb.N;
    r.consts = consts;
    r.target_error = target_error;
    r.gamma = hb.gamma;
    r.log_gamma = hb.log_gamma;
    r.log_volume_bound = hb.log_volume;
    r.log_homology_bound = hb.log_bound;
    r.log_clean_coefficient = hb.log_clean_coefficient;
    r.log_clean_bound = hb.log_clean_bound;
    r.log_p_threshold = max(hb.log_bound, hb.log_gamma);
    r.exponent = hb.exponent;
    r.soule = soule_log_bound(f, n);
    r.excluded_primes_note = "p <= gamma";
    if (r.log_p_threshold.value < r.log_gamma.value) {
        throw InvariantViolation("threshold fell below log gamma");
    }
    return r;
}

std::vector<ComparisonRow> compare_bounds(const std::vector<unsigned>& n_range, const std::vector<std::int64_t>& m_list,
                                          const GelanderConstants& consts, const Real& target_error) {
    std::vector<ImagQuadField> fields;
    fields.reserve(m_list.size());
    for (std::int64_t m : m_list) {
        fields.push_back(make_field(m));
    }
    for (unsigned n : n_range) {
        if (n < 2) {
            throw std::invalid_argument("compare_bounds requires n >= 2");
        }
    }

    const std::size_t total = n_range.size() * fields.size();
    std::vector<ComparisonRow> rows(total);
    std::vector<std::exception_ptr> failures(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                const unsigned n = n_range[i / fields.size()];
                const ImagQuadField& f = fields[i % fields.size()];
                BoundReport rep = ktheory_threshold(f, n, consts, target_error);
                ComparisonRow& row = rows[i];
                row.n = n;
                row.m = f.m();
                row.discriminant = f.discriminant();
                row.new_exponent = rep.exponent;
                row.soule_exponent = rep.soule.exponent;
                row.log_p_threshold = rep.log_p_threshold;
                row.soule_log_bound = rep.soule.log_value();
                row.new_is_smaller = rep.log_p_threshold.upper() < row.soule_log_bound;
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(total, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t + 1 < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return rows;
}

} // namespace ktors
