#pragma once

#include <filesystem>
#include <string>

#include "gsd/schema.hpp"

namespace gsd {

enum class PgStrictness { Loose, Strict };

/// Renders the schema in the repository's PG-Schema dialect. One node line
/// per node type, one edge line per (source, target) endpoint pair. Type
/// identifiers are sanitized type names suffixed with "Type"; collisions get
/// a numeric suffix. STRICT requires a postprocessed schema and throws
/// otherwise.
std::string emit_pg_schema(const SchemaGraph& schema, PgStrictness strictness);

/// XML Schema rendering: one element per type, one child element per
/// property, minOccurs="0" for OPTIONAL properties.
std::string emit_xsd(const SchemaGraph& schema);

/// Canonical JSON: object keys and type arrays sorted, so equal schemas
/// serialize byte-identically.
std::string schema_to_json(const SchemaGraph& schema);
SchemaGraph schema_from_json(const std::string& text);

/// Element-to-type assignment as one JSON object {"nodes":{...},"edges":{...}}.
std::string assignment_to_json(const SchemaGraph& schema);

/// Loads node_assignment / edge_assignment back into the schema.
void assignment_from_json(const std::string& text, SchemaGraph& schema);

/// Writes schema.loose.pgs, schema.strict.pgs (postprocessed schemas only),
/// schema.xsd, schema.json and assignment.json into dir (created if missing).
void write_schema_files(const SchemaGraph& schema,
                        const std::filesystem::path& dir);

}  // namespace gsd
