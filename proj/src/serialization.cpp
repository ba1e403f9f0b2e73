#include "ktors/serialization.hpp"

#include <algorithm>

namespace ktors {

std::string integer_to_string(const Integer& x) {
    return x.get_str(10);
}

Integer integer_from_string(const std::string& s) {
    // mpz_set_str tolerates embedded whitespace; require a plain optional sign and digits
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                          [](char c) { return c >= '0' && c <= '9'; })) {
        throw FormatError("not a decimal integer: \"" + s + "\"");
    }
    Integer x;
    x.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    return x;
}

namespace {

std::size_t count_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
    }
    const Json& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Integer entry_from_json(const Json& e) {
    if (e.is_string()) {
        return integer_from_string(e.get<std::string>());
    }
    if (e.is_number_integer()) {
        return Integer(e.get<long>());
    }
    throw FormatError("matrix entries must be decimal strings");
}

} // namespace

Json matrix_to_json(const IntMatrix& a) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            row.push_back(integer_to_string(a(i, j)));
        }
        entries.push_back(std::move(row));
    }
    return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

IntMatrix matrix_from_json(const Json& j) {
    const std::size_t rows = count_field(j, "rows");
    const std::size_t cols = count_field(j, "cols");
    if (!j.contains("entries") || !j.at("entries").is_array()) {
        throw FormatError("missing array field \"entries\"");
    }
    const Json& entries = j.at("entries");
    if (entries.size() != rows) {
        throw FormatError("\"entries\" has " + std::to_string(entries.size()) + " rows, expected " +
                          std::to_string(rows));
    }
    std::vector<Integer> flat;
    flat.reserve(rows * cols);
    for (const Json& row : entries) {
        if (!row.is_array() || row.size() != cols) {
            throw FormatError("every row of \"entries\" must have " + std::to_string(cols) + " entries");
        }
        for (const Json& e : row) {
            flat.push_back(entry_from_json(e));
        }
    }
    return IntMatrix(rows, cols, std::move(flat));
}

Json complex_to_json(const SimplicialComplex& k) {
    Json tops = Json::array();
    for (const Simplex& s : k.top_simplices()) {
        tops.push_back(s);
    }
    return Json{{"vertices", k.vertex_count()}, {"top_simplices", std::move(tops)}};
}

SimplicialComplex complex_from_json(const Json& j) {
    const std::size_t v = count_field(j, "vertices");
    if (!j.contains("top_simplices") || !j.at("top_simplices").is_array()) {
        throw FormatError("missing array field \"top_simplices\"");
    }
    std::vector<Simplex> tops;
    for (const Json& s : j.at("top_simplices")) {
        if (!s.is_array()) {
            throw FormatError("each simplex must be an array of vertex indices");
        }
        Simplex simplex;
        for (const Json& x : s) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::uint64_t>() > UINT32_MAX) {
                throw FormatError("vertex indices must be nonnegative integers");
            }
            simplex.push_back(x.get<Vertex>());
        }
        tops.push_back(std::move(simplex));
    }
    try {
        return SimplicialComplex::from_top_simplices(v, tops);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

Json smith_to_json(const SmithForm& s) {
    Json factors = Json::array();
    for (const Integer& f : s.invariant_factors) {
        factors.push_back(integer_to_string(f));
    }
    return Json{{"rank", s.rank}, {"invariant_factors", std::move(factors)}};
}

Json homology_to_json(std::size_t n, const HomologyGroup& h) {
    Json torsion = Json::array();
    for (const Integer& f : h.torsion_factors) {
        torsion.push_back(integer_to_string(f));
    }
    return Json{{"n", n}, {"betti", h.betti}, {"torsion", std::move(torsion)}};
}

Json bounded_to_json(const BoundedReal& x) {
    return Json{{"value", to_decimal(x.value)}, {"error", to_decimal(x.error)}};
}

Json report_to_json(const BoundReport& r) {
    Json j;
    j["m"] = r.field.m();
    j["discriminant"] = r.field.discriminant();
    j["unit_order"] = r.field.unit_order();
    j["n"] = r.n;
    j["N"] = r.N;
    j["discriminant_exponent"] = r.exponent;
    j["gamma"] = integer_to_string(r.gamma);
    j["log_gamma"] = bounded_to_json(r.log_gamma);
    j["log_volume"] = bounded_to_json(r.log_volume_bound);
    j["log_homology_bound"] = bounded_to_json(r.log_homology_bound);
    j["log_clean_coefficient"] = bounded_to_json(r.log_clean_coefficient);
    j["log_clean_bound"] = bounded_to_json(r.log_clean_bound);
    j["log_p_threshold"] = bounded_to_json(r.log_p_threshold);
    j["soule_log_exponent"] = to_decimal(r.soule.exponent);
    j["soule_log_bound"] = to_decimal(r.soule.log_value());
    j["alpha"] = r.consts.alpha();
    j["delta"] = r.consts.delta();
    j["excluded_primes"] = r.excluded_primes_note;
    j["disclaimer"] = kPlaceholderDisclaimer;
    return j;
}

} // namespace ktors
