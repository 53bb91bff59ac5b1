#pragma once

#include "rankshift/matrices.hpp"
#include "rankshift/pressure.hpp"
#include "rankshift/words.hpp"

#include <json.hpp>

#include <string>

namespace rankshift::io {

using json = nlohmann::json;

/// {"rank": r, "alphabet": [...], "matrices": [[[row]...]...]}, row-major.
json family_to_json(const MatrixFamily& family);
/// Parses and validates. Schema errors throw ParseError; a rank field that
/// disagrees with the matrix count throws ShapeMismatch.
MatrixFamily family_from_json(const json& j);

/// {"status": "valid"} or {"status": "invalid", "violations": [{"code", "witness", "message"}]}.
json report_to_json(const ValidationReport& report);

/// {"shape": [...], "labels": [...]}.
json word_to_json(const Word& w);
Word word_from_json(const json& j);

/// {"window": s, "default": v, "entries": [{"word": {...}, "value": v}]}.
json potential_to_json(const Potential& f, std::size_t rank);
Potential potential_from_json(const json& j, std::size_t rank);

json read_json_file(const std::string& path);
MatrixFamily load_family(const std::string& path);
Potential load_potential(const std::string& path, std::size_t rank);

/// Rounds every floating-point number in the tree to 12 significant digits.
json round_floats(const json& j);
double round_significant(double v, int digits = 12);

} // namespace rankshift::io
