#include "uadb/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uadb/errors.hpp"

namespace uadb {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

Value value_from_text(const std::string& text) {
  if (text == "null") return Value(Null{});
  if (text == "true") return Value(true);
  if (text == "false") return Value(false);
  if (!text.empty()) {
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool digits = false, dot = false, other = false;
    for (; i < text.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits = true;
      } else if (text[i] == '.' && !dot) {
        dot = true;
      } else {
        other = true;
        break;
      }
    }
    if (digits && !other) {
      if (dot) return Value(std::stod(text));
      try {
        return Value(static_cast<std::int64_t>(std::stoll(text)));
      } catch (const std::out_of_range&) {
        return Value(std::stod(text));
      }
    }
  }
  return Value(text);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  auto end_field = [&]() {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&]() {
    end_field();
    rows.push_back(row);
    row.clear();
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quote in CSV");
  if (any && (!field.empty() || !row.empty())) end_row();
  return rows;
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable csv_table(const std::string& content) {
  auto rows = parse_csv(content);
  if (rows.empty()) throw ParseError("CSV input has no header row");
  CsvTable t;
  t.header = rows.front();
  t.rows.assign(rows.begin() + 1, rows.end());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.rows[i].size() != t.header.size())
      throw ParseError("CSV line " + std::to_string(i + 2) + " has " +
                       std::to_string(t.rows[i].size()) + " fields, expected " +
                       std::to_string(t.header.size()));
  return t;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  return std::nullopt;
}

bool parse_flag(const std::string& text, std::size_t line) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw ParseError("line " + std::to_string(line) +
                   ": flag must be 0/1/true/false, got '" + text + "'");
}

double parse_prob(const std::string& text, std::size_t line) {
  try {
    const double p = std::stod(text);
    if (p < 0 || p > 1)
      throw ParseError("line " + std::to_string(line) +
                       ": probability out of [0,1]: " + text);
    return p;
  } catch (const std::invalid_argument&) {
    throw ParseError("line " + std::to_string(line) + ": bad probability '" +
                     text + "'");
  }
}

}  // namespace

KRelation relation_from_csv(const std::string& content, std::string name,
                            const Semiring& semiring) {
  CsvTable t = csv_table(content);
  Schema schema{std::move(name), t.header};
  schema.validate();
  KRelation rel(schema, semiring);
  for (const auto& row : t.rows) {
    Tuple tuple;
    tuple.reserve(row.size());
    for (const auto& cell : row) tuple.push_back(value_from_text(cell));
    rel.add(std::move(tuple), semiring.one());
  }
  return rel;
}

TIDB ti_from_csv(const std::string& content, std::string name) {
  CsvTable t = csv_table(content);
  const auto p_col = find_column(t.header, "P");
  const auto opt_col = find_column(t.header, "optional");
  TIDB db;
  db.schema.name = std::move(name);
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (i != p_col && i != opt_col) db.schema.attributes.push_back(t.header[i]);
  db.schema.validate();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    TIRow out;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == p_col || i == opt_col) continue;
      out.tuple.push_back(value_from_text(row[i]));
    }
    if (p_col) {
      out.probability = parse_prob(row[*p_col], r + 2);
      out.optional = *out.probability < 1.0 - 1e-9;
    }
    if (opt_col) out.optional = parse_flag(row[*opt_col], r + 2);
    db.rows.push_back(std::move(out));
  }
  db.validate();
  return db;
}

XDB xdb_from_csv(const std::string& content, std::string name) {
  CsvTable t = csv_table(content);
  const auto xid_col = find_column(t.header, "Xid");
  const auto alt_col = find_column(t.header, "Altid");
  if (!xid_col || !alt_col)
    throw ParseError("x-DB CSV needs Xid and Altid columns");
  const auto p_col = find_column(t.header, "P");
  const auto opt_col = find_column(t.header, "optional");

  XDB db;
  db.schema.name = std::move(name);
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (i != xid_col && i != alt_col && i != p_col && i != opt_col)
      db.schema.attributes.push_back(t.header[i]);
  db.schema.validate();

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::tuple<std::int64_t, Tuple, double,
                                               bool>>>
      groups;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string& xid = row[*xid_col];
    std::int64_t altid = 0;
    try {
      altid = std::stoll(row[*alt_col]);
    } catch (...) {
      throw ParseError("line " + std::to_string(r + 2) + ": bad Altid");
    }
    Tuple tuple;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == xid_col || i == alt_col || i == p_col || i == opt_col) continue;
      tuple.push_back(value_from_text(row[i]));
    }
    const double p = p_col ? parse_prob(row[*p_col], r + 2) : 0.0;
    const bool opt = opt_col ? parse_flag(row[*opt_col], r + 2) : false;
    if (!groups.count(xid)) order.push_back(xid);
    groups[xid].emplace_back(altid, std::move(tuple), p, opt);
  }
  for (const auto& xid : order) {
    auto& alts = groups[xid];
    std::sort(alts.begin(), alts.end(), [](const auto& a, const auto& b) {
      return std::get<0>(a) < std::get<0>(b);
    });
    XTuple xt;
    double mass = 0;
    for (auto& [altid, tuple, p, opt] : alts) {
      xt.alternatives.push_back(std::move(tuple));
      mass += p;
      if (opt) xt.optional = true;
    }
    if (p_col) {
      xt.probabilities.emplace();
      for (const auto& alt : alts)
        xt.probabilities->push_back(std::get<2>(alt));
      xt.optional = mass < 1.0 - 1e-9;
    }
    db.xtuples.push_back(std::move(xt));
  }
  db.validate();
  return db;
}

namespace {

std::vector<CTVariable> variables_from_json(const json& vars) {
  std::vector<CTVariable> out;
  for (auto it = vars.begin(); it != vars.end(); ++it) {
    CTVariable v;
    v.name = it.key();
    const json& spec = it.value();
    if (!spec.contains("candidates"))
      throw ParseError("variable '" + v.name + "' needs a candidate domain");
    for (const auto& c : spec.at("candidates")) {
      if (c.is_string()) {
        v.candidates.emplace_back(c.get<std::string>());
      } else if (c.is_number_integer()) {
        v.candidates.emplace_back(c.get<std::int64_t>());
      } else if (c.is_number_float()) {
        v.candidates.emplace_back(c.get<double>());
      } else if (c.is_boolean()) {
        v.candidates.emplace_back(c.get<bool>());
      } else if (c.is_null()) {
        v.candidates.emplace_back(Null{});
      } else {
        throw ParseError("unsupported candidate value for '" + v.name + "'");
      }
    }
    if (spec.contains("probabilities"))
      v.probabilities = spec.at("probabilities").get<std::vector<double>>();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CTable ctable_from_csv(const std::string& content, std::string name,
                       const std::string& variables_json) {
  CsvTable t = csv_table(content);
  if (t.header.empty() || t.header.back() != "LC")
    throw ParseError("C-table CSV needs a trailing LC column");
  const std::size_t width = t.header.size() - 1;
  if (width % 2 != 0)
    throw ParseError("C-table CSV needs matching A and V columns");
  const std::size_t arity = width / 2;
  for (std::size_t i = 0; i < arity; ++i) {
    const std::string expected = "V" + std::to_string(i + 1);
    if (t.header[arity + i] != expected)
      throw ParseError("C-table CSV variable column " + std::to_string(i + 1) +
                       " must be named " + expected);
  }

  CTable db;
  db.schema.name = std::move(name);
  db.schema.attributes.assign(t.header.begin(), t.header.begin() + arity);
  db.schema.validate();
  db.variables = variables_from_json(
      variables_json.empty() ? json::object() : json::parse(variables_json));

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    CTRow out;
    for (std::size_t i = 0; i < arity; ++i) {
      const std::string& var = row[arity + i];
      if (var.empty()) {
        out.values.push_back(CtTerm::constant(value_from_text(row[i])));
      } else {
        out.values.push_back(CtTerm::variable(var));
      }
    }
    out.local = parse_condition(row.back());
    db.rows.push_back(std::move(out));
  }
  db.validate();
  return db;
}

AnnotatedRelation annotated_from_csv(const std::string& content,
                                     std::string name) {
  CsvTable t = csv_table(content);
  const auto u_col = find_column(t.header, "_u");
  const auto c_col = find_column(t.header, "_c");
  if (u_col.has_value() != c_col.has_value())
    throw ParseError("_u and _c columns must appear together");
  AnnotatedRelation rel;
  rel.schema.name = std::move(name);
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (i != u_col && i != c_col) rel.schema.attributes.push_back(t.header[i]);
  rel.schema.validate();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    AnnotatedTuple tuple;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == u_col || i == c_col) continue;
      std::string cell = row[i];
      bool certain = true;
      if (cell.size() >= 2 && cell.compare(cell.size() - 2, 2, "!u") == 0) {
        certain = false;
        cell.resize(cell.size() - 2);
      }
      tuple.push_back({value_from_text(cell), certain});
    }
    std::uint64_t u = 0, c = 1;
    if (u_col) {
      try {
        u = std::stoull(row[*u_col]);
        c = std::stoull(row[*c_col]);
      } catch (...) {
        throw ParseError("line " + std::to_string(r + 2) +
                         ": bad row annotation");
      }
    }
    rel.add(std::move(tuple),
            Element::pair(Element(checked_add(u, c)), Element(c)));
  }
  return rel;
}

// --- JSON ------------------------------------------------------------------

namespace {

json value_to_json(const Value& v) {
  switch (v.index()) {
    case 0:
      return nullptr;
    case 1:
      return std::get<bool>(v);
    case 2:
      return std::get<std::int64_t>(v);
    case 3:
      return std::get<double>(v);
    default:
      return std::get<std::string>(v);
  }
}

Value value_from_json(const json& j) {
  if (j.is_null()) return Value(Null{});
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_number_float()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  throw ParseError("unsupported JSON value");
}

json tuple_to_json(const Tuple& t) {
  json arr = json::array();
  for (const auto& v : t) arr.push_back(value_to_json(v));
  return arr;
}

Tuple tuple_from_json(const json& j) {
  Tuple t;
  for (const auto& v : j) t.push_back(value_from_json(v));
  return t;
}

json semiring_to_json(const Semiring& s) {
  switch (s.kind()) {
    case SemiringKind::boolean:
      return "B";
    case SemiringKind::natural:
      return "N";
    case SemiringKind::access:
      return "A";
    case SemiringKind::vector:
      return json{{"vector", {{"base", semiring_to_json(s.base())},
                              {"width", s.width()}}}};
    case SemiringKind::pair:
      return json{{"pair", semiring_to_json(s.base())}};
  }
  throw ParseError("unknown semiring");
}

Semiring semiring_from_json(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "B") return Semiring::boolean();
    if (name == "N") return Semiring::natural();
    if (name == "A") return Semiring::access();
    throw ParseError("unknown semiring '" + name + "'");
  }
  if (j.contains("vector"))
    return Semiring::vector_of(semiring_from_json(j["vector"]["base"]),
                               j["vector"]["width"].get<std::size_t>());
  if (j.contains("pair"))
    return Semiring::pair_of(semiring_from_json(j["pair"]));
  throw ParseError("bad semiring descriptor");
}

json element_to_json(const Semiring& s, const Element& e) {
  switch (s.kind()) {
    case SemiringKind::boolean:
      return e.as_bool();
    case SemiringKind::natural:
      return e.as_nat();
    case SemiringKind::access:
      return to_display(e.as_access());
    case SemiringKind::vector: {
      json arr = json::array();
      for (const auto& k : e.as_vector())
        arr.push_back(element_to_json(s.base(), k));
      return arr;
    }
    case SemiringKind::pair:
      return json{{"d", element_to_json(s.base(), e.pair_d())},
                  {"c", element_to_json(s.base(), e.pair_c())}};
  }
  throw ParseError("unknown semiring");
}

Element element_from_json(const Semiring& s, const json& j) {
  switch (s.kind()) {
    case SemiringKind::boolean:
      return Element(j.get<bool>());
    case SemiringKind::natural:
      return Element(j.get<std::uint64_t>());
    case SemiringKind::access:
      return Element(access_from_string(j.get<std::string>()));
    case SemiringKind::vector: {
      Element::Vector vec;
      for (const auto& k : j) vec.push_back(element_from_json(s.base(), k));
      return Element::vector(std::move(vec));
    }
    case SemiringKind::pair:
      return Element::pair(element_from_json(s.base(), j.at("d")),
                           element_from_json(s.base(), j.at("c")));
  }
  throw ParseError("unknown semiring");
}

json schema_to_json(const Schema& s) {
  return json{{"name", s.name}, {"attributes", s.attributes}};
}

Schema schema_from_json(const json& j) {
  Schema s;
  s.name = j.value("name", "");
  s.attributes = j.at("attributes").get<std::vector<std::string>>();
  return s;
}

}  // namespace

std::string to_json_text(const KRelation& rel) {
  json rows = json::array();
  for (const auto& [t, k] : rel.rows())
    rows.push_back(json{{"values", tuple_to_json(t)},
                        {"annotation", element_to_json(rel.semiring(), k)}});
  const json out{{"schema", schema_to_json(rel.schema())},
                 {"semiring", semiring_to_json(rel.semiring())},
                 {"rows", rows}};
  return out.dump(2);
}

KRelation krelation_from_json(const std::string& text) {
  const json j = json::parse(text);
  const Semiring s = semiring_from_json(j.at("semiring"));
  KRelation rel(schema_from_json(j.at("schema")), s);
  for (const auto& row : j.at("rows"))
    rel.add(tuple_from_json(row.at("values")),
            element_from_json(s, row.at("annotation")));
  return rel;
}

std::string to_json_text(const WorldDB& db) {
  json relations = json::object();
  for (const auto& [name, rel] : db.relations) {
    json rows = json::array();
    for (const auto& [t, vec] : rel.rows()) {
      json vs = json::array();
      for (const auto& k : vec.as_vector())
        vs.push_back(element_to_json(db.base, k));
      rows.push_back(json{{"values", tuple_to_json(t)}, {"vector", vs}});
    }
    relations[name] =
        json{{"schema", schema_to_json(rel.schema())}, {"rows", rows}};
  }
  json out{{"world_count", db.world_count},
           {"base", semiring_to_json(db.base)},
           {"relations", relations}};
  if (db.world_probabilities)
    out["world_probabilities"] = *db.world_probabilities;
  return out.dump(2);
}

WorldDB worlddb_from_json(const std::string& text) {
  const json j = json::parse(text);
  WorldDB db;
  db.world_count = j.at("world_count").get<std::size_t>();
  db.base = j.contains("base") ? semiring_from_json(j.at("base"))
                               : Semiring::boolean();
  if (j.contains("world_probabilities"))
    db.world_probabilities =
        j.at("world_probabilities").get<std::vector<double>>();
  const Semiring vs = db.vector_semiring();
  for (auto it = j.at("relations").begin(); it != j.at("relations").end();
       ++it) {
    KRelation rel(schema_from_json(it.value().at("schema")), vs);
    for (const auto& row : it.value().at("rows")) {
      Element::Vector vec;
      for (const auto& k : row.at("vector"))
        vec.push_back(element_from_json(db.base, k));
      rel.add(tuple_from_json(row.at("values")),
              Element::vector(std::move(vec)));
    }
    db.relations.emplace(it.key(), std::move(rel));
  }
  db.validate();
  return db;
}

std::string to_json_text(const UADB& db) {
  json relations = json::object();
  for (const auto& [name, rel] : db.relations) {
    json rows = json::array();
    for (const auto& [t, pair] : rel.rows())
      rows.push_back(json{{"values", tuple_to_json(t)},
                          {"d", element_to_json(db.base, pair.pair_d())},
                          {"c", element_to_json(db.base, pair.pair_c())}});
    relations[name] =
        json{{"schema", schema_to_json(rel.schema())}, {"rows", rows}};
  }
  const json out{{"base", semiring_to_json(db.base)},
                 {"relations", relations}};
  return out.dump(2);
}

UADB uadb_from_json(const std::string& text) {
  const json j = json::parse(text);
  UADB db;
  db.base = j.contains("base") ? semiring_from_json(j.at("base"))
                               : Semiring::natural();
  const Semiring ps = db.pair_semiring();
  for (auto it = j.at("relations").begin(); it != j.at("relations").end();
       ++it) {
    KRelation rel(schema_from_json(it.value().at("schema")), ps);
    for (const auto& row : it.value().at("rows")) {
      Element d = element_from_json(db.base, row.at("d"));
      Element c = element_from_json(db.base, row.at("c"));
      rel.add(tuple_from_json(row.at("values")),
              make_ua_pair(db.base, std::move(d), std::move(c)));
    }
    db.relations.emplace(it.key(), std::move(rel));
  }
  db.validate();
  return db;
}

std::string to_json_text(const AnnotatedRelation& rel) {
  json rows = json::array();
  for (const auto& [t, pair] : rel.rows) {
    json values = json::array();
    for (const auto& v : t)
      values.push_back(
          json{{"value", value_to_json(v.value)}, {"certain", v.certain}});
    rows.push_back(json{{"values", values},
                        {"d", pair.pair_d().as_nat()},
                        {"c", pair.pair_c().as_nat()}});
  }
  const json out{{"schema", schema_to_json(rel.schema)}, {"rows", rows}};
  return out.dump(2);
}

AnnotatedRelation annotated_from_json(const std::string& text) {
  const json j = json::parse(text);
  AnnotatedRelation rel;
  rel.schema = schema_from_json(j.at("schema"));
  for (const auto& row : j.at("rows")) {
    AnnotatedTuple t;
    for (const auto& v : row.at("values"))
      t.push_back({value_from_json(v.at("value")), v.at("certain").get<bool>()});
    rel.add(std::move(t),
            Element::pair(Element(row.at("d").get<std::uint64_t>()),
                          Element(row.at("c").get<std::uint64_t>())));
  }
  return rel;
}

TIDB ti_from_json(const std::string& text) {
  const json j = json::parse(text);
  TIDB db;
  db.schema = schema_from_json(j.at("schema"));
  for (const auto& row : j.at("rows")) {
    TIRow out;
    out.tuple = tuple_from_json(row.at("values"));
    if (row.contains("p")) {
      out.probability = row.at("p").get<double>();
      out.optional = *out.probability < 1.0 - 1e-9;
    }
    if (row.contains("optional")) out.optional = row.at("optional").get<bool>();
    db.rows.push_back(std::move(out));
  }
  db.validate();
  return db;
}

XDB xdb_from_json(const std::string& text) {
  const json j = json::parse(text);
  XDB db;
  db.schema = schema_from_json(j.at("schema"));
  for (const auto& xt : j.at("xtuples")) {
    XTuple out;
    for (const auto& alt : xt.at("alternatives"))
      out.alternatives.push_back(tuple_from_json(alt));
    if (xt.contains("probabilities")) {
      out.probabilities = xt.at("probabilities").get<std::vector<double>>();
      double mass = 0;
      for (double p : *out.probabilities) mass += p;
      out.optional = mass < 1.0 - 1e-9;
    }
    if (xt.contains("optional")) out.optional = xt.at("optional").get<bool>();
    db.xtuples.push_back(std::move(out));
  }
  db.validate();
  return db;
}

CTable ctable_from_json(const std::string& text) {
  const json j = json::parse(text);
  CTable db;
  db.schema = schema_from_json(j.at("schema"));
  if (j.contains("variables"))
    db.variables = variables_from_json(j.at("variables"));
  if (j.contains("global"))
    db.global = parse_condition(j.at("global").get<std::string>());
  for (const auto& row : j.at("rows")) {
    CTRow out;
    for (const auto& v : row.at("values")) {
      if (v.is_object() && v.contains("var")) {
        out.values.push_back(CtTerm::variable(v.at("var").get<std::string>()));
      } else {
        out.values.push_back(CtTerm::constant(value_from_json(v)));
      }
    }
    if (row.contains("lc"))
      out.local = parse_condition(row.at("lc").get<std::string>());
    db.rows.push_back(std::move(out));
  }
  db.validate();
  return db;
}

// --- rendering ---------------------------------------------------------------

namespace {

std::string annotation_text(const Semiring& s, const Element& k) {
  if (s.kind() == SemiringKind::pair &&
      s.base().kind() == SemiringKind::natural)
    return render_ua_uc(s.base(), k);
  return s.render(k);
}

std::string aligned(const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size())
        out << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (std::size_t i = 0; i < width.size(); ++i)
    total += width[i] + (i + 1 < width.size() ? 2 : 0);
  out << std::string(total, '-') << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  return quoted + "\"";
}

}  // namespace

std::string render_table(const KRelation& rel) {
  std::vector<std::string> header = rel.schema().attributes;
  header.push_back("annotation");
  std::vector<std::vector<std::string>> rows;
  for (const auto& [t, k] : rel.rows()) {
    std::vector<std::string> row;
    for (const auto& v : t) row.push_back(to_display(v));
    row.push_back(annotation_text(rel.semiring(), k));
    rows.push_back(std::move(row));
  }
  return aligned(header, rows);
}

std::string render_table(const AnnotatedRelation& rel) {
  std::vector<std::string> header = rel.schema.attributes;
  header.push_back("annotation");
  std::vector<std::vector<std::string>> rows;
  for (const auto& [t, pair] : rel.rows) {
    std::vector<std::string> row;
    for (const auto& v : t) row.push_back(to_display(v));
    row.push_back(render_ua_uc(Semiring::natural(), pair));
    rows.push_back(std::move(row));
  }
  return aligned(header, rows);
}

std::string render_csv(const KRelation& rel) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rel.schema().attributes.size(); ++i)
    out << csv_cell(rel.schema().attributes[i]) << ',';
  out << "annotation\n";
  for (const auto& [t, k] : rel.rows()) {
    for (const auto& v : t) out << csv_cell(to_display(v)) << ',';
    out << csv_cell(annotation_text(rel.semiring(), k)) << '\n';
  }
  return out.str();
}

std::string render_csv(const AnnotatedRelation& rel) {
  std::ostringstream out;
  for (const auto& a : rel.schema.attributes) out << csv_cell(a) << ',';
  out << "_u,_c\n";
  for (const auto& [t, pair] : rel.rows) {
    for (const auto& v : t) {
      std::string cell = to_display(v.value);
      if (!v.certain) cell += "!u";
      out << csv_cell(cell) << ',';
    }
    const std::uint64_t d = pair.pair_d().as_nat();
    const std::uint64_t c = pair.pair_c().as_nat();
    out << (d - c) << ',' << c << '\n';
  }
  return out.str();
}

}  // namespace uadb
