// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path-to-ktors-cli>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "../oracles.hpp"
#include "ktors/bounds.hpp"
#include "ktors/exact_linalg.hpp"
#include "ktors/numberfield.hpp"
#include "ktors/simplicial.hpp"

using namespace ktors;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) ++failures;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail << "; " << secs << " s)";
    std::cout << line.str() << std::endl;
}

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Fundamental discriminants D < 0 with |D| <= limit, as the m of Q(sqrt m).
std::vector<std::int64_t> fields_up_to(std::int64_t limit) {
    std::vector<std::int64_t> ms;
    for (std::int64_t m = -1; m >= -limit; --m) {
        if (!is_squarefree(static_cast<std::uint64_t>(-m))) continue;
        const std::int64_t d = ((m % 4) + 4) % 4 == 1 ? m : 4 * m;
        if (-d <= limit) ms.push_back(m);
    }
    return ms;
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    if (pclose(pipe) != 0) throw std::runtime_error("command failed: " + command);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "ktors";
    const Real target = Real(1e-10);

    criterion("SNF oracle equivalence: 500 random matrices up to 5x5, entries in [-9,9]", [] {
        const auto start = Clock::now();
        std::mt19937_64 rng(500);
        int bad = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            const IntMatrix a = oracle::random_matrix(rng, r, c, -9, 9);
            const SmithForm s = smith_normal_form(a);
            Integer prefix = 1;
            for (std::size_t k = 1; k <= std::min(r, c); ++k) {
                if (k <= s.rank) prefix *= s.invariant_factors[k - 1];
                const Integer expected = oracle::minor_gcd(a, k);
                if ((k <= s.rank ? prefix : Integer(0)) != expected) {
                    ++bad;
                    break;
                }
            }
        }
        const double secs = elapsed(start);
        return Outcome{bad == 0 && secs < 60, std::to_string(bad) + " failures"};
    });

    criterion("Homology of S^2, RP^2, Klein bottle, torus", [] {
        const auto s2 = homology(oracle::tetrahedron_boundary(), 2);
        const auto rp2 = homology(oracle::projective_plane(), 1);
        const auto kb = homology(oracle::grid_surface(4, true), 1);
        const auto t2 = homology(oracle::grid_surface(4, false), 1);
        const bool ok = s2 == HomologyGroup{1, {}} && rp2.torsion_order() == 2 && rp2.betti == 0 &&
                        kb == HomologyGroup{1, {2}} && t2 == HomologyGroup{2, {}};
        return Outcome{ok, "H2(S^2), tors H1(RP^2), H1(K), H1(T^2)"};
    });

    criterion("Gabber inequality and simplex-count cap on 200 random complexes", [] {
        const auto start = Clock::now();
        std::mt19937_64 rng(200);
        std::size_t pairs = 0, gabber_bad = 0, cap_bad = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t delta = 1 + rng() % 6;
            const std::size_t v = 1 + rng() % 40;
            const std::size_t dim = rng() % (std::min<std::size_t>(delta, 3) + 1);
            const auto k = random_complex(delta, v, dim, rng());
            const auto h = homology_all(k);
            for (std::size_t n = 0; n < h.size(); ++n) {
                ++pairs;
                if (!(log_torsion_order(h[n]) <= gabber_log_bound(k, n)) ||
                    !satisfies_gabber_bound(h[n], k.count(n), n))
                    ++gabber_bad;
                if (!within_simplex_count_cap(k.count(n), delta, v, n)) ++cap_bad;
            }
        }
        const double secs = elapsed(start);
        return Outcome{gabber_bad == 0 && cap_bad == 0 && secs < 300,
                       std::to_string(pairs) + " pairs, " + std::to_string(gabber_bad) + " Gabber violations, " +
                           std::to_string(cap_bad) + " cap violations"};
    });

    criterion("Zeta accuracy: zeta(2), zeta(4) to 1e-10; L(2, chi_-4) to 1e-8 of Catalan", [&] {
        const Real pi = boost::math::constants::pi<Real>();
        const BoundedReal z2 = riemann_zeta(2, target);
        const BoundedReal z4 = riemann_zeta(4, target);
        const Real e2 = pi * pi / 6, e4 = pi * pi * pi * pi / 90;
        const BoundedReal l2 = dirichlet_L(-4, 2, target);
        const long double catalan = oracle::catalan(10000000);
        const long double oracle_err = 1.0L / (2e7L * 2e7L) + 1e-16L;
        const auto lv = static_cast<long double>(l2.value);
        const bool ok = abs(z2.value - e2) <= Real(1e-10) && abs(z4.value - e4) <= Real(1e-10) &&
                        std::fabs(lv - catalan) <= 1e-8L && z2.contains(e2) && z4.contains(e4) &&
                        static_cast<long double>(l2.lower()) - oracle_err <= catalan &&
                        catalan <= static_cast<long double>(l2.upper()) + oracle_err;
        std::ostringstream d;
        d << "|L - Catalan| = " << std::fabs(lv - catalan);
        return Outcome{ok, d.str()};
    });

    criterion("Zeta-product cap: value + error <= 2^(N-1) for |D_F| <= 200, N <= 9", [&] {
        const auto start = Clock::now();
        std::size_t checked = 0, bad = 0;
        std::string first;
        std::set<int> bad_n;
        for (std::int64_t m : fields_up_to(200)) {
            const auto f = make_field(m);
            for (int N = 2; N <= 9; ++N) {
                ++checked;
                try {
                    const BoundedReal p = zeta_product(f, N, target);
                    if (!(p.upper() <= ldexp(Real(1), N - 1))) {
                        ++bad;
                        bad_n.insert(N);
                    }
                } catch (const InvariantViolation&) {
                    bad_n.insert(N);
                    if (first.empty()) first = "D=" + std::to_string(f.discriminant()) + " N=" + std::to_string(N);
                    ++bad;
                }
            }
        }
        const double secs = elapsed(start);
        std::string detail = std::to_string(bad) + "/" + std::to_string(checked) + " violations";
        if (!first.empty()) detail += ", first at " + first;
        for (int n : bad_n) detail += (n == *bad_n.begin() ? ", at N in {" : ",") + std::to_string(n);
        if (!bad_n.empty()) detail += "}";
        return Outcome{bad == 0 && secs < 120, detail};
    });

    criterion("Exponent identity 2n(n+1) == (N^2-1)/2 for n = 2..64", [&] {
        int bad = 0;
        for (unsigned n = 2; n <= 64; ++n) {
            const std::uint64_t N = 2 * n + 1;
            if (discriminant_exponent(static_cast<unsigned>(N)) != 2ull * n * (n + 1) || (N * N - 1) / 2 != 2ull * n * (n + 1))
                ++bad;
        }
        const auto b = homology_log_bound(make_field(-1), 2, GelanderConstants(), target);
        return Outcome{bad == 0 && b.exponent == 12, std::to_string(bad) + " mismatches"};
    });

    criterion("Gamma cross-check: minkowski_gamma(1, 2) == 48 == |GL_2(Z/3)|", [] {
        const int enumerated = oracle::count_gl2_mod3();
        return Outcome{minkowski_gamma(1, 2) == 48 && enumerated == 48, "enumerated " + std::to_string(enumerated)};
    });

    std::vector<BoundReport> reports;
    criterion("Asymptotic improvement over Soule for n = 2..50, |D_F| <= 200, alpha = delta = 1", [&] {
        std::size_t rows = 0, exceptions = 0;
        for (std::int64_t m : fields_up_to(200)) {
            const auto f = make_field(m);
            for (unsigned n = 2; n <= 50; ++n) {
                BoundReport r = ktheory_threshold(f, n, GelanderConstants(), target);
                ++rows;
                if (!(r.log_p_threshold.upper() < r.soule.log_value())) ++exceptions;
                reports.push_back(std::move(r));
            }
        }
        return Outcome{exceptions == 0, std::to_string(rows) + " rows, " + std::to_string(exceptions) + " exceptions"};
    });

    criterion("Threshold floor: log_p_threshold >= log gamma in every report", [&] {
        std::size_t bad = 0;
        for (const auto& r : reports)
            if (!(r.log_p_threshold.value >= r.log_gamma.value) || !(r.log_p_threshold.upper() >= r.log_gamma.lower()))
                ++bad;
        return Outcome{!reports.empty() && bad == 0, std::to_string(reports.size()) + " reports, " + std::to_string(bad) + " below"};
    });

    criterion("Determinism: two runs of compare --seed 7 are byte-identical", [&] {
        const std::string cmd = "'" + cli + "' compare --seed 7 --n 2,3 --m=-1,-2,-3,-7,-11";
        const std::string a = capture(cmd);
        const std::string b = capture(cmd);
        return Outcome{!a.empty() && a == b, std::to_string(a.size()) + " bytes"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
