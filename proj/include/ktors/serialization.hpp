#pragma once

#include <json.hpp>

#include "ktors/bounds.hpp"
#include "ktors/exact_linalg.hpp"
#include "ktors/numberfield.hpp"
#include "ktors/simplicial.hpp"

namespace ktors {

using Json = nlohmann::ordered_json;

/// Thrown by the loaders for structurally invalid documents.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// {"rows": r, "cols": c, "entries": [["1", "-2"], ...]} with decimal-string entries.
Json matrix_to_json(const IntMatrix& a);
IntMatrix matrix_from_json(const Json& j);

/// {"vertices": v, "top_simplices": [[0, 1, 2], ...]}
Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

Json smith_to_json(const SmithForm& s);
/// {"n": n, "betti": b, "torsion": ["2", ...]}
Json homology_to_json(std::size_t n, const HomologyGroup& h);

/// {"value": "...", "error": "..."}
Json bounded_to_json(const BoundedReal& x);

Json report_to_json(const BoundReport& r);

std::string integer_to_string(const Integer& x);
Integer integer_from_string(const std::string& s);

} // namespace ktors
