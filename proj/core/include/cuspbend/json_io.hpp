#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "cuspbend/bending.hpp"
#include "cuspbend/cusp_classify.hpp"
#include "cuspbend/cusp_models.hpp"
#include "cuspbend/projlin.hpp"

namespace cuspbend {

using Json = nlohmann::json;

/// Exact integers are written as JSON integers, other exact values as "p/q"
/// strings, floats as numbers. Reading
/// accepts integers (exact), "p/q" strings (exact) and other numbers
/// (float). Malformed input throws DomainError.
Json to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j);

Json to_json(const std::vector<Scalar>& v);
std::vector<Scalar> scalars_from_json(const Json& j);

/// Row-major array of rows.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json to_json(const ProjMap& g);
ProjMap projmap_from_json(const Json& j);

/// {"n": n, "psi": [...]}
Json to_json(const CuspParameter& psi);
CuspParameter cusp_parameter_from_json(const Json& j);

/// {"psi": {...}, "d": [...], "v": [...], "sigma": x}. sigma is always
/// recomputed on read.
Json to_json(const CuspGroupElement& g);
CuspGroupElement cusp_group_element_from_json(const Json& j);

/// {"n": n, "generators": {"a": [[...]], ...}, "relators": [["a", "b^-1"], ...]}
Json to_json(const MarkedRep& rep);
MarkedRep marked_rep_from_json(const Json& j, double tol = kDefaultTolerance);

Json to_json(const Word& w);
Word word_from_json(const Json& j);

/// {"kind": "amalgam", "side1": [...], "side2": [...], "edge_words": [...], "centralizer": [[...]]}
/// or {"kind": "hnn", "base": [...], "stable": "g", "edge_words": [...], "centralizer": [[...]]}
Json to_json(const BendingMove& move);
BendingMove bending_move_from_json(const Json& j);

/// {"psi": [...], "type": t, "residual": x, "conjugator": [[...]]}
Json to_json(const ClassifiedCusp& c);

/// {"n": n, "b": [...], "s": [...]} or with "mu" in place of (or beside) "s".
RectangularCuspData cusp_data_from_json(const Json& j);

}  // namespace cuspbend
