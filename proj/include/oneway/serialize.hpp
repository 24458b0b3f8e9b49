#pragma once

// JSON encoding of matrices, vectors and POVMs. Doubles are written in their
// shortest round-trip form (at most 17 significant digits), so decode(encode(m))
// reproduces m bit for bit.
//
//   matrix: {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major)
//   vector: {"dim": n, "data": [[re, im], ...]}
//   povm:   {"labels": [...], "elements": [matrix, ...]}

#include "json.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

nlohmann::json povm_to_json(const Povm& p);
Povm povm_from_json(const nlohmann::json& j);

}  // namespace oneway
