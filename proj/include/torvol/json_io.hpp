#pragma once

// JSON encodings: complex numbers as [re, im], presentations,
// representations and torsion values.

#include "torvol/reps.hpp"
#include "torvol/torsion.hpp"

#include <json.hpp>

#include <string>

namespace torvol {

using Json = nlohmann::ordered_json;

Json to_json(cplx z);
cplx complex_from_json(const Json& j);

Json to_json(const CMatrix& m); ///< row-major list of rows
CMatrix matrix_from_json(const Json& j);

Json to_json(const GroupWord& w); ///< [[idx, exp], ...]
GroupWord word_from_json(const Json& j);

/// {"genus", "boundary", "relator", "separating"}.
Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

/// {"presentation", "images", "seed", "method"}.
Json to_json(const Representation& rep);
Representation representation_from_json(const Json& j);

/// {"abs", "arg", "sign_ambiguous"}.
Json to_json(const TorsionValue& t);

Representation read_representation(const std::string& path);
void write_text(const std::string& path, const std::string& text);

} // namespace torvol
