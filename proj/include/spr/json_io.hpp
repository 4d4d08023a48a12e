#ifndef SPR_JSON_IO_HPP
#define SPR_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "spr/matrix.hpp"
#include "spr/matroid.hpp"
#include "spr/pattern.hpp"
#include "spr/realization.hpp"

namespace spr {

using Json = nlohmann::ordered_json;

// Scalars: a Q entry is a rational string; a Q(sqrt d) entry is ["a", "b"] meaning a + b sqrt d.
Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const FieldTag& field);

// {"field": tag, "rows": m, "cols": n, "entries": [[...], ...]}
Json matrix_to_json(const ExactMatrix& a);
ExactMatrix matrix_from_json(const Json& j);

// {"rows": m, "cols": n, "pattern": ["+-0", ...]}
Json pattern_to_json(const SignPattern& s);
SignPattern pattern_from_json(const Json& j);
bool is_matrix_json(const Json& j);

// {"ground": n, "bases": [[1,2], ...]}, 1-indexed and sorted.
Json matroid_to_json(const Matroid& m);
Matroid matroid_from_json(const Json& j);
Json element_sets_to_json(const std::vector<ElementSet>& sets);

// {"field": tag, "dim": r, "vectors": [[...], ...]}, one inner array per element (column-major).
Json representation_to_json(const Representation& rep);
Representation representation_from_json(const Json& j);

Json term_rank_to_json(const TermRank& tr);
Json report_to_json(const RealizationReport& rep);
Json verdict_to_json(const Verdict& v);
Json search_to_json(const KapranovSearchResult& r);
Json witness_to_json(const WitnessReport& w);

/// Parses a JSON file; throws ParseError on malformed input.
Json read_json_file(const std::string& path);

}  // namespace spr

#endif  // SPR_JSON_IO_HPP
