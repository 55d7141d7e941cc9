#include "k0s/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace k0s::io {

namespace {

using homotopy::AlgebraPtr;
using homotopy::HomMatrix;
using homotopy::ProjComplex;

[[noreturn]] void schema_error(const std::string& origin, const std::string& pointer, const std::string& what) {
  throw InputError(origin + ": at " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& origin, const std::string& at) {
  if (!j.is_object()) schema_error(origin, at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(origin, at, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& origin, const std::string& at) {
  if (!j.is_string()) schema_error(origin, at, "expected a string");
  return j.get<std::string>();
}

int parse_degree(const std::string& key, const std::string& origin, const std::string& at) {
  int value = 0;
  const auto* end = key.data() + key.size();
  const auto [p, ec] = std::from_chars(key.data() + (!key.empty() && key[0] == '+'), end, value);
  if (ec != std::errc() || p != end || key.empty()) schema_error(origin, at, "degree key \"" + key + "\" is not an integer");
  return value;
}

std::size_t vertex(const pathalg::Algebra& alg, const Json& j, const std::string& origin, const std::string& at) {
  const std::string label = as_string(j, origin, at);
  try {
    return alg.vertex_index(label);
  } catch (const pathalg::AlgebraError& e) {
    schema_error(origin, at, e.what());
  }
}

void add_term(const pathalg::Algebra& alg, pathalg::AlgebraElement& e, const Json& term, const std::string& origin,
              const std::string& at) {
  if (!term.is_object()) schema_error(origin, at, "expected {\"path\": [...], \"coeff\": \"...\"}");
  const Json& word_json = member(term, "path", origin, at);
  if (!word_json.is_array()) schema_error(origin, at + "/path", "expected a list of arrow names");
  std::vector<std::string> word;
  for (std::size_t k = 0; k < word_json.size(); ++k) {
    word.push_back(as_string(word_json[k], origin, at + "/path/" + std::to_string(k)));
  }
  exactmath::Scalar coeff(1, alg.field());
  if (const auto c = term.find("coeff"); c != term.end()) {
    try {
      coeff = c->is_number_integer() ? exactmath::Scalar(c->get<long>(), alg.field())
                                     : exactmath::Scalar::parse(as_string(*c, origin, at + "/coeff"), alg.field());
    } catch (const std::exception& ex) {
      schema_error(origin, at + "/coeff", ex.what());
    }
  }
  std::optional<std::size_t> id;
  try {
    id = alg.find_path(word, e.source);
  } catch (const pathalg::AlgebraError& ex) {
    schema_error(origin, at + "/path", ex.what());
  }
  if (!id) return;  // a path killed by the relations is zero
  const pathalg::Path& p = alg.path(*id);
  if (p.source != e.source || p.target != e.target) {
    schema_error(origin, at, "path " + alg.path_name(*id) + " does not run from vertex " +
                                 alg.vertex_label(e.source) + " to vertex " + alg.vertex_label(e.target));
  }
  e += alg.unit(*id, coeff);
}

HomMatrix matrix_from_json(const pathalg::Algebra& alg, const std::vector<std::size_t>& source,
                           const std::vector<std::size_t>& target, const Json& j, const std::string& origin,
                           const std::string& at) {
  if (!j.is_array() || j.size() != target.size()) {
    schema_error(origin, at, "expected " + std::to_string(target.size()) + " rows");
  }
  HomMatrix m = HomMatrix::zero(alg, source, target);
  for (std::size_t t = 0; t < target.size(); ++t) {
    const std::string row_at = at + "/" + std::to_string(t);
    if (!j[t].is_array() || j[t].size() != source.size()) {
      schema_error(origin, row_at, "expected " + std::to_string(source.size()) + " entries");
    }
    for (std::size_t s = 0; s < source.size(); ++s) {
      const Json& entry = j[t][s];
      const std::string entry_at = row_at + "/" + std::to_string(s);
      if (entry.is_null()) continue;
      if (entry.is_array()) {
        for (std::size_t k = 0; k < entry.size(); ++k) {
          add_term(alg, m.at(t, s), entry[k], origin, entry_at + "/" + std::to_string(k));
        }
      } else {
        add_term(alg, m.at(t, s), entry, origin, entry_at);
      }
    }
  }
  return m;
}

std::string pointer_escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace

exactmath::Field parse_field(std::string_view text) {
  if (text == "Q") return exactmath::Field::rationals();
  if (text.substr(0, 3) == "Fp:") {
    std::uint32_t p = 0;
    const auto digits = text.substr(3);
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
      if (!exactmath::is_prime(p)) throw InputError("field modulus " + std::to_string(p) + " is not prime");
      return exactmath::Field::prime(p);
    }
  }
  throw InputError("field must be Q or Fp:p, got \"" + std::string(text) + "\"");
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < at; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
  }
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError(file.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& file) { return parse_json(read_text(file), file.string()); }

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) out[static_cast<std::size_t>(k)] = digits[v & 0xf];
  return out;
}

pathalg::Presentation presentation_from_json(const Json& j, const std::string& origin) {
  pathalg::Presentation p;
  const Json& vertices = member(j, "vertices", origin, "");
  if (!vertices.is_array()) schema_error(origin, "/vertices", "expected a list");
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    p.vertices.push_back(as_string(vertices[k], origin, "/vertices/" + std::to_string(k)));
  }
  if (const auto arrows = j.find("arrows"); arrows != j.end()) {
    if (!arrows->is_array()) schema_error(origin, "/arrows", "expected a list");
    for (std::size_t k = 0; k < arrows->size(); ++k) {
      const std::string at = "/arrows/" + std::to_string(k);
      const Json& a = (*arrows)[k];
      p.arrows.push_back({as_string(member(a, "name", origin, at), origin, at + "/name"),
                          as_string(member(a, "from", origin, at), origin, at + "/from"),
                          as_string(member(a, "to", origin, at), origin, at + "/to")});
    }
  }
  if (const auto rels = j.find("relations"); rels != j.end()) {
    if (!rels->is_array()) schema_error(origin, "/relations", "expected a list");
    for (std::size_t k = 0; k < rels->size(); ++k) {
      const std::string at = "/relations/" + std::to_string(k);
      if (!(*rels)[k].is_array()) schema_error(origin, at, "expected a list of arrow names");
      std::vector<std::string> word;
      for (std::size_t i = 0; i < (*rels)[k].size(); ++i) {
        word.push_back(as_string((*rels)[k][i], origin, at + "/" + std::to_string(i)));
      }
      p.relations.push_back(std::move(word));
    }
  }
  return p;
}

AlgebraPtr load_algebra(const std::filesystem::path& file, exactmath::Field field) {
  const std::string origin = file.string();
  const Json j = read_json(file);
  try {
    return pathalg::Algebra::load(presentation_from_json(j, origin), {field});
  } catch (const pathalg::AlgebraError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

ProjComplex complex_from_json(const AlgebraPtr& alg, const Json& j, const std::string& origin,
                              const std::string& at) {
  std::map<int, std::vector<std::size_t>> terms;
  const Json& tj = member(j, "terms", origin, at);
  if (!tj.is_object()) schema_error(origin, at + "/terms", "expected an object keyed by degree");
  for (const auto& [key, list] : tj.items()) {
    const std::string term_at = at + "/terms/" + pointer_escape(key);
    const int n = parse_degree(key, origin, term_at);
    if (!list.is_array()) schema_error(origin, term_at, "expected a list of vertex labels");
    std::vector<std::size_t> summands;
    for (std::size_t k = 0; k < list.size(); ++k) {
      summands.push_back(vertex(*alg, list[k], origin, term_at + "/" + std::to_string(k)));
    }
    if (!terms.emplace(n, std::move(summands)).second) schema_error(origin, term_at, "degree given twice");
  }
  std::map<int, HomMatrix> diffs;
  if (const auto dj = j.find("differentials"); dj != j.end() && !dj->is_null()) {
    if (!dj->is_object()) schema_error(origin, at + "/differentials", "expected an object keyed by degree");
    for (const auto& [key, mat] : dj->items()) {
      const std::string d_at = at + "/differentials/" + pointer_escape(key);
      const int n = parse_degree(key, origin, d_at);
      const auto src = terms.find(n);
      const auto tgt = terms.find(n + 1);
      const std::vector<std::size_t> empty;
      HomMatrix d = matrix_from_json(*alg, src == terms.end() ? empty : src->second,
                                     tgt == terms.end() ? empty : tgt->second, mat, origin, d_at);
      if (!diffs.emplace(n, std::move(d)).second) schema_error(origin, d_at, "degree given twice");
    }
  }
  try {
    return ProjComplex(alg, std::move(terms), std::move(diffs));
  } catch (const homotopy::HomotopyError& e) {
    schema_error(origin, at, e.what());
  }
}

ProjComplex load_complex(const AlgebraPtr& alg, const std::filesystem::path& file) {
  return complex_from_json(alg, read_json(file), file.string());
}

silting::SiltingCollection silting_from_json(const AlgebraPtr& alg, const Json& j, const std::string& origin) {
  std::optional<int> d;
  const Json& dj = member(j, "d", origin, "");
  if (dj.is_string() && dj.get<std::string>() == "presilting") {
    d.reset();
  } else if (dj.is_number_integer() && dj.get<long>() >= 1 && dj.get<long>() <= 64) {
    d = static_cast<int>(dj.get<long>());
  } else {
    schema_error(origin, "/d", "expected \"presilting\" or an integer d >= 1");
  }
  const Json& sj = member(j, "summands", origin, "");
  if (!sj.is_object() || sj.empty()) schema_error(origin, "/summands", "expected a nonempty object");
  std::vector<std::pair<std::string, ProjComplex>> summands;
  for (const auto& [name, cj] : sj.items()) {
    summands.emplace_back(name, complex_from_json(alg, cj, origin, "/summands/" + pointer_escape(name)));
  }
  try {
    return silting::SiltingCollection(alg, std::move(summands), d);
  } catch (const silting::PreconditionError& e) {
    schema_error(origin, "/summands", e.what());
  } catch (const homotopy::HomotopyError& e) {
    schema_error(origin, "/summands", e.what());
  }
}

silting::SiltingCollection load_silting(const AlgebraPtr& alg, const std::filesystem::path& file) {
  return silting_from_json(alg, read_json(file), file.string());
}

Json to_json(const pathalg::Algebra& alg, const pathalg::AlgebraElement& e) {
  Json out = Json::array();
  const auto slot = alg.slot(e.source, e.target);
  for (std::size_t k = 0; k < slot.size(); ++k) {
    if (e.coefficients[k].is_zero()) continue;
    Json word = Json::array();
    for (auto a : alg.path(slot[k]).word) word.push_back(alg.arrows()[a].name);
    out.push_back(Json{{"path", std::move(word)}, {"coeff", e.coefficients[k].str()}});
  }
  return out;
}

namespace {

Json matrix_json(const pathalg::Algebra& alg, const HomMatrix& m) {
  Json rows = Json::array();
  for (std::size_t t = 0; t < m.rows(); ++t) {
    Json row = Json::array();
    for (std::size_t s = 0; s < m.cols(); ++s) row.push_back(to_json(alg, m.at(t, s)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json to_json(const ProjComplex& x) {
  const auto& alg = x.algebra();
  Json terms = Json::object();
  for (const auto& [n, t] : x.terms()) {
    Json labels = Json::array();
    for (auto v : t) labels.push_back(alg.vertex_label(v));
    terms[std::to_string(n)] = std::move(labels);
  }
  Json diffs = Json::object();
  for (const auto& [n, d] : x.differentials()) {
    if (!d.is_zero()) diffs[std::to_string(n)] = matrix_json(alg, d);
  }
  return Json{{"terms", std::move(terms)}, {"differentials", std::move(diffs)}};
}

Json to_json(const homotopy::ChainMap& f) {
  const auto& alg = f.source().algebra();
  Json comps = Json::object();
  for (const auto& [n, c] : f.components()) {
    if (!c.is_zero()) comps[std::to_string(n)] = matrix_json(alg, c);
  }
  return comps;
}

Json to_json(const grothendieck::K0SpElement& e, const std::vector<std::string>& order) {
  Json out = Json::object();
  for (const auto& label : order) out[label] = e[label];
  for (const auto& [label, c] : e.coefficients()) {
    if (std::find(order.begin(), order.end(), label) == order.end()) out[label] = c;
  }
  return out;
}

Json to_json(const grothendieck::GroupInvariants& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion) torsion.push_back(t.get_str());
  return Json{{"rank", g.rank}, {"torsion", std::move(torsion)}, {"group", g.str()}};
}

Json to_json(const silting::Filtration& f, const silting::SiltingCollection& m) {
  Json stages = Json::array();
  const ProjComplex* cur = &f.start.complex;
  for (std::size_t i = 0; i < f.stages.size(); ++i) {
    const auto& st = f.stages[i];
    Json factor = Json::array();
    for (auto j : st.factor) factor.push_back(m.name(j));
    stages.push_back(Json{{"i", i},
                          {"X_i", homotopy::describe(*cur)},
                          {"M_i", std::move(factor)},
                          {"X_next", homotopy::describe(st.next.complex)}});
    cur = &st.next.complex;
  }
  return Json{{"object", homotopy::describe(f.start.complex)}, {"length", f.length()}, {"stages", std::move(stages)}};
}

}  // namespace k0s::io
