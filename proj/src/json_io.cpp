#include "spr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace spr {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what, 0); }

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t size_of(const Json& j, const char* key) {
  const Json& v = field_of(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    schema_error(std::string("'") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

mpq_class rational_from_json(const Json& j) {
  if (!j.is_string()) schema_error("rational entries must be strings");
  return parse_rational(j.get<std::string>());
}

Json indices_to_json(const IndexList& v) {
  Json out = Json::array();
  for (std::size_t i : v) out.push_back(i + 1);
  return out;
}

}  // namespace

Json scalar_to_json(const Scalar& x) {
  if (x.field().is_rationals()) return format_rational(x.rational_part());
  return Json::array({format_rational(x.rational_part()), format_rational(x.radical_part())});
}

Scalar scalar_from_json(const Json& j, const FieldTag& field) {
  if (field.is_rationals()) return Scalar(field, rational_from_json(j));
  if (!j.is_array() || j.size() != 2) schema_error("Q(sqrt:d) entries must be [a, b] pairs");
  return Scalar(field, rational_from_json(j[0]), rational_from_json(j[1]));
}

Json matrix_to_json(const ExactMatrix& a) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(scalar_to_json(a(i, j)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["field"] = a.field().to_string();
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = std::move(entries);
  return out;
}

ExactMatrix matrix_from_json(const Json& j) {
  const Json& tag = field_of(j, "field");
  if (!tag.is_string()) schema_error("'field' must be a string");
  const FieldTag field = FieldTag::parse(tag.get<std::string>());
  const std::size_t m = size_of(j, "rows"), n = size_of(j, "cols");
  const Json& entries = field_of(j, "entries");
  if (!entries.is_array() || entries.size() != m) schema_error("'entries' must have 'rows' rows");
  std::vector<Scalar> values;
  values.reserve(m * n);
  for (const Json& row : entries) {
    if (!row.is_array() || row.size() != n) schema_error("each row must have 'cols' entries");
    for (const Json& e : row) values.push_back(scalar_from_json(e, field));
  }
  return ExactMatrix(field, m, n, std::move(values));
}

Json pattern_to_json(const SignPattern& s) {
  Json out;
  out["rows"] = s.rows();
  out["cols"] = s.cols();
  out["pattern"] = s.to_strings();
  return out;
}

SignPattern pattern_from_json(const Json& j) {
  const std::size_t m = size_of(j, "rows"), n = size_of(j, "cols");
  const Json& rows = field_of(j, "pattern");
  if (!rows.is_array() || rows.size() != m) schema_error("'pattern' must have 'rows' strings");
  std::vector<std::string> strings;
  for (const Json& r : rows) {
    if (!r.is_string() || r.get<std::string>().size() != n) {
      schema_error("each pattern row must be a string of length 'cols'");
    }
    strings.push_back(r.get<std::string>());
  }
  if (m == 0) return SignPattern(0, n);
  return SignPattern::from_strings(strings);
}

bool is_matrix_json(const Json& j) { return j.is_object() && j.contains("entries"); }

Json element_sets_to_json(const std::vector<ElementSet>& sets) {
  Json out = Json::array();
  for (ElementSet s : sets) out.push_back(indices_to_json(elements_of(s)));
  return out;
}

Json matroid_to_json(const Matroid& m) {
  Json out;
  out["ground"] = m.ground_size();
  out["bases"] = element_sets_to_json(m.bases());
  return out;
}

Matroid matroid_from_json(const Json& j) {
  const std::size_t n = size_of(j, "ground");
  const Json& bases = field_of(j, "bases");
  if (!bases.is_array()) schema_error("'bases' must be an array");
  std::vector<ElementSet> sets;
  for (const Json& b : bases) {
    if (!b.is_array()) schema_error("each basis must be an array of element indices");
    std::vector<std::size_t> elems;
    for (const Json& e : b) {
      if (!e.is_number_integer() || e.get<long long>() < 1 ||
          e.get<long long>() > static_cast<long long>(n)) {
        schema_error("basis elements must be integers in 1..ground");
      }
      elems.push_back(e.get<std::size_t>() - 1);
    }
    sets.push_back(set_of(elems));
  }
  return Matroid(n, std::move(sets));
}

Json representation_to_json(const Representation& rep) {
  Json vectors = Json::array();
  for (std::size_t e = 0; e < rep.vectors.cols(); ++e) {
    Json v = Json::array();
    for (std::size_t i = 0; i < rep.vectors.rows(); ++i) v.push_back(scalar_to_json(rep.vectors(i, e)));
    vectors.push_back(std::move(v));
  }
  Json out;
  out["field"] = rep.field.to_string();
  out["dim"] = rep.dim();
  out["vectors"] = std::move(vectors);
  return out;
}

Representation representation_from_json(const Json& j) {
  const Json& tag = field_of(j, "field");
  if (!tag.is_string()) schema_error("'field' must be a string");
  const FieldTag field = FieldTag::parse(tag.get<std::string>());
  const std::size_t dim = size_of(j, "dim");
  const Json& vectors = field_of(j, "vectors");
  if (!vectors.is_array()) schema_error("'vectors' must be an array");
  const std::size_t n = vectors.size();
  std::vector<Scalar> entries(dim * n, Scalar(field));
  for (std::size_t e = 0; e < n; ++e) {
    if (!vectors[e].is_array() || vectors[e].size() != dim) {
      schema_error("each vector must have 'dim' coordinates");
    }
    for (std::size_t i = 0; i < dim; ++i) entries[i * n + e] = scalar_from_json(vectors[e][i], field);
  }
  return {field, ExactMatrix(field, dim, n, std::move(entries))};
}

Json term_rank_to_json(const TermRank& tr) {
  Json matching = Json::array();
  for (const auto& [i, j] : tr.matching.edges) matching.push_back(Json::array({i + 1, j + 1}));
  Json out;
  out["t"] = tr.t;
  out["matching"] = std::move(matching);
  out["cover"] = {{"rows", indices_to_json(tr.cover.rows)}, {"cols", indices_to_json(tr.cover.cols)}};
  return out;
}

Json verdict_to_json(const Verdict& v) {
  Json out;
  out["pattern_equal"] = v.pattern_equal;
  out["rank_equal"] = v.rank_equal;
  out["rational"] = v.rational;
  out["status"] = v.pass() ? "Pass" : "Fail";
  return out;
}

Json report_to_json(const RealizationReport& rep) {
  Json input;
  input["field"] = rep.input_field.to_string();
  input["rows"] = rep.rows;
  input["cols"] = rep.cols;
  input["rank"] = rep.rank;
  input["term_rank"] = term_rank_to_json(rep.term);

  Json stages = Json::array();
  for (const StageRecord& s : rep.stages) {
    Json st;
    st["stage"] = to_string(s.stage);
    st["exponent"] = s.exponent ? Json(*s.exponent) : Json(nullptr);
    if (!s.note.empty()) st["note"] = s.note;
    stages.push_back(std::move(st));
  }
  Json out;
  out["input"] = std::move(input);
  out["stages"] = std::move(stages);
  out["verdict"] = verdict_to_json(rep.verdict);
  out["matrix"] = matrix_to_json(rep.output);
  return out;
}

Json search_to_json(const KapranovSearchResult& r) {
  Json out;
  out["found"] = r.found;
  out["candidates_examined"] = r.candidates_examined;
  out["search_space"] = r.search_space;
  out["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
  return out;
}

Json witness_to_json(const WitnessReport& w) {
  Json out;
  out["dual_matroid"] = matroid_to_json(w.dual_matroid);
  out["dual_representation"] = representation_to_json(w.dual_rep);
  out["cocircuits"] = element_sets_to_json(w.comatrix.cocircuits);
  out["realization"] = matrix_to_json(w.realization);
  out["pattern"] = pattern_to_json(w.pattern);
  out["realization_rank"] = w.realization_rank;
  out["term_rank"] = w.term_rank;
  out["gap"] = w.gap;
  out["search"] = w.search ? search_to_json(*w.search) : Json(nullptr);
  if (!w.search_note.empty()) out["search_note"] = w.search_note;
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in '") + path + "': " + e.what(), e.byte);
  }
}

}  // namespace spr
