#ifndef UADB_IO_HPP
#define UADB_IO_HPP

#include <string>
#include <vector>

#include "uadb/models.hpp"
#include "uadb/relation.hpp"
#include "uadb/uaa.hpp"
#include "uadb/ua_database.hpp"
#include "uadb/worlds.hpp"

namespace uadb {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Text -> constant: null, true/false, integer, decimal, else string.
Value value_from_text(const std::string& text);

// Minimal CSV: comma separated, double quotes protect commas, first line
// holds the attribute names.
std::vector<std::vector<std::string>> parse_csv(const std::string& content);

// Plain relation; every row gets multiplicity 1 (N) or T (B).
KRelation relation_from_csv(const std::string& content, std::string name,
                            const Semiring& semiring = Semiring::natural());

// TI encoding: data columns plus a P probability column and/or an
// "optional" flag column.
TIDB ti_from_csv(const std::string& content, std::string name);

// x-DB encoding: Xid, Altid, data columns, then optional P / "optional".
XDB xdb_from_csv(const std::string& content, std::string name);

// C-table encoding: data columns A1..An, variable columns V1..Vn (blank for
// constants), and a trailing LC condition column. Candidate domains come
// from a JSON sidecar: {"X": {"candidates": [...], "probabilities": [...]}}.
CTable ctable_from_csv(const std::string& content, std::string name,
                       const std::string& variables_json);

// Attribute-annotated relation: cells suffixed "!u" are uncertain; optional
// trailing _u/_c columns carry the row annotation (default [1,1]).
AnnotatedRelation annotated_from_csv(const std::string& content,
                                     std::string name);

// JSON round-trips.
std::string to_json_text(const KRelation& rel);
KRelation krelation_from_json(const std::string& text);

std::string to_json_text(const WorldDB& db);
WorldDB worlddb_from_json(const std::string& text);

std::string to_json_text(const UADB& db);
UADB uadb_from_json(const std::string& text);

std::string to_json_text(const AnnotatedRelation& rel);
AnnotatedRelation annotated_from_json(const std::string& text);

TIDB ti_from_json(const std::string& text);
XDB xdb_from_json(const std::string& text);
CTable ctable_from_json(const std::string& text);

// Rendering used by the CLI: an aligned table with a trailing annotation
// column ((u,c) display form for UA pairs over N).
std::string render_table(const KRelation& rel);
std::string render_table(const AnnotatedRelation& rel);
std::string render_csv(const KRelation& rel);
std::string render_csv(const AnnotatedRelation& rel);

}  // namespace uadb

#endif
