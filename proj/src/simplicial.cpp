#include "ktors/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace ktors {

namespace {

constexpr std::size_t kMaxSimplexDimension = 24;

void validate_simplex(const Simplex& s, std::size_t vertex_count) {
    if (s.empty()) {
        throw std::invalid_argument("simplex must be nonempty");
    }
    if (s.size() > kMaxSimplexDimension + 1) {
        throw std::invalid_argument("simplex dimension " + std::to_string(s.size() - 1) + " exceeds " +
                                    std::to_string(kMaxSimplexDimension));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= vertex_count) {
            throw std::invalid_argument("vertex " + std::to_string(s[i]) + " outside [0, " +
                                        std::to_string(vertex_count) + ")");
        }
        if (i > 0 && s[i - 1] >= s[i]) {
            throw std::invalid_argument("simplex vertices must be strictly increasing");
        }
    }
}

} // namespace

SimplicialComplex SimplicialComplex::from_top_simplices(std::size_t vertex_count, const std::vector<Simplex>& tops) {
    std::vector<std::set<Simplex>> faces;
    for (const Simplex& top : tops) {
        validate_simplex(top, vertex_count);
        if (faces.size() < top.size()) {
            faces.resize(top.size());
        }
        const std::uint32_t subsets = std::uint32_t{1} << top.size();
        for (std::uint32_t mask = 1; mask < subsets; ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < top.size(); ++i) {
                if (mask & (std::uint32_t{1} << i)) {
                    face.push_back(top[i]);
                }
            }
            faces[face.size() - 1].insert(std::move(face));
        }
    }

    SimplicialComplex k;
    k.vertex_count_ = vertex_count;
    k.by_dim_.reserve(faces.size());
    for (auto& layer : faces) {
        k.by_dim_.emplace_back(layer.begin(), layer.end());
    }
    return k;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t n) const {
    static const std::vector<Simplex> none;
    return n < by_dim_.size() ? by_dim_[n] : none;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > by_dim_.size()) {
        return std::nullopt;
    }
    const auto& layer = by_dim_[s.size() - 1];
    auto it = std::lower_bound(layer.begin(), layer.end(), s);
    if (it == layer.end() || *it != s) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - layer.begin());
}

std::vector<Simplex> SimplicialComplex::top_simplices() const {
    std::vector<Simplex> tops;
    for (std::size_t n = 0; n < by_dim_.size(); ++n) {
        for (const Simplex& s : by_dim_[n]) {
            bool maximal = true;
            if (n + 1 < by_dim_.size()) {
                // s is maximal iff no (n+1)-simplex has it as a face
                for (const Simplex& cof : by_dim_[n + 1]) {
                    if (std::includes(cof.begin(), cof.end(), s.begin(), s.end())) {
                        maximal = false;
                        break;
                    }
                }
            }
            if (maximal) {
                tops.push_back(s);
            }
        }
    }
    return tops;
}

Integer HomologyGroup::torsion_order() const {
    Integer prod = 1;
    for (const Integer& f : torsion_factors) {
        prod *= f;
    }
    return prod;
}

IntMatrix boundary_matrix(const SimplicialComplex& k, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("boundary_matrix: n must be >= 1");
    }
    const auto& cells = k.simplices(n);
    const auto& faces = k.simplices(n - 1);
    IntMatrix d(faces.size(), cells.size());
    Simplex face;
    for (std::size_t j = 0; j < cells.size(); ++j) {
        const Simplex& s = cells[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            face.assign(s.begin(), s.end());
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            auto row = std::lower_bound(faces.begin(), faces.end(), face) - faces.begin();
            d(static_cast<std::size_t>(row), j) = (i % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

namespace {

HomologyGroup assemble(std::size_t cells, std::size_t rank_in, const SmithForm& out_of) {
    HomologyGroup h;
    h.betti = cells - rank_in - out_of.rank;
    for (const Integer& f : out_of.invariant_factors) {
        if (f > 1) {
            h.torsion_factors.push_back(f);
        }
    }
    return h;
}

} // namespace

HomologyGroup homology(const SimplicialComplex& k, std::size_t n, const EliminationBudget& budget) {
    std::size_t rank_in = n == 0 ? 0 : rank(boundary_matrix(k, n), budget);
    SmithForm above = smith_normal_form(boundary_matrix(k, n + 1), budget);
    return assemble(k.count(n), rank_in, above);
}

std::vector<HomologyGroup> homology_all(const SimplicialComplex& k, const EliminationBudget& budget) {
    std::vector<HomologyGroup> groups;
    if (k.dimension() < 0) {
        return groups;
    }
    const auto top = static_cast<std::size_t>(k.dimension());
    std::size_t rank_in = 0;
    for (std::size_t n = 0; n <= top; ++n) {
        SmithForm above = smith_normal_form(boundary_matrix(k, n + 1), budget);
        groups.push_back(assemble(k.count(n), rank_in, above));
        rank_in = above.rank;
    }
    return groups;
}

ComplexProfile profile(const SimplicialComplex& k) {
    ComplexProfile p;
    p.v = k.vertex_count();
    std::vector<std::size_t> degree(k.vertex_count(), 0);
    for (const Simplex& e : k.simplices(1)) {
        ++degree[e[0]];
        ++degree[e[1]];
    }
    p.delta = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
    for (int n = 0; n <= k.dimension(); ++n) {
        p.simplex_counts.push_back(k.count(static_cast<std::size_t>(n)));
    }
    return p;
}

double gabber_log_bound(const SimplicialComplex& k, std::size_t n) {
    return static_cast<double>(k.count(n)) * 0.5 * std::log(static_cast<double>(n + 2));
}

bool satisfies_gabber_bound(const HomologyGroup& h, std::size_t simplex_count, std::size_t n) {
    Integer order = h.torsion_order();
    Integer cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), n + 2, simplex_count);
    return order * order <= cap;
}

namespace {

Integer binomial(std::size_t n, std::size_t k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace

double simplex_count_cap(std::size_t delta, std::size_t v, std::size_t n) {
    return static_cast<double>(v) / static_cast<double>(n + 1) * binomial(delta, n).get_d();
}

bool within_simplex_count_cap(std::size_t count, std::size_t delta, std::size_t v, std::size_t n) {
    return Integer(static_cast<unsigned long>(count)) * static_cast<unsigned long>(n + 1) <=
           Integer(static_cast<unsigned long>(v)) * binomial(delta, n);
}

CountingBound counting_log_bound(std::size_t delta, std::size_t v, std::size_t n) {
    CountingBound b;
    b.fine = simplex_count_cap(delta, v, n) * 0.5 * std::log(static_cast<double>(n + 2));
    b.coarse = static_cast<double>(v) * std::pow(static_cast<double>(delta), static_cast<double>(n));
    return b;
}

SimplicialComplex random_complex(std::size_t delta_max, std::size_t v, std::size_t dim, std::uint64_t seed) {
    if (v == 0 || dim > delta_max) {
        throw std::invalid_argument("random_complex: need v >= 1 and delta_max >= dim");
    }
    std::mt19937_64 rng(seed);
    // modulo reduction keeps the stream identical across standard libraries
    auto below = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

    std::vector<std::set<Vertex>> adjacent(v);
    std::vector<Simplex> tops;
    const std::size_t window = std::min(v, 2 * delta_max + 1);
    std::vector<std::size_t> offsets(window);

    for (std::size_t attempt = 0; attempt < 4 * v; ++attempt) {
        const std::size_t d = below(dim + 1);
        const std::size_t start = below(v);
        if (d + 1 > window) {
            continue;
        }
        // d+1 distinct vertices from a cyclic window, so that simplices share faces
        std::iota(offsets.begin(), offsets.end(), std::size_t{0});
        Simplex s;
        for (std::size_t i = 0; i <= d; ++i) {
            std::swap(offsets[i], offsets[i + below(window - i)]);
            s.push_back(static_cast<Vertex>((start + offsets[i]) % v));
        }
        std::sort(s.begin(), s.end());

        bool fits = true;
        for (std::size_t i = 0; i < s.size() && fits; ++i) {
            std::size_t added = 0;
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j != i && !adjacent[s[i]].contains(s[j])) {
                    ++added;
                }
            }
            fits = adjacent[s[i]].size() + added <= delta_max;
        }
        if (!fits) {
            continue;
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (i != j) {
                    adjacent[s[i]].insert(s[j]);
                }
            }
        }
        tops.push_back(std::move(s));
    }
    return SimplicialComplex::from_top_simplices(v, tops);
}

double log_torsion_order(const HomologyGroup& h) {
    double total = 0.0;
    for (const Integer& f : h.torsion_factors) {
        long exp2 = 0;
        double mant = mpz_get_d_2exp(&exp2, f.get_mpz_t());
        total += std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    }
    return total;
}

} // namespace ktors
