#ifndef TSGEO_SCHEMA_HPP
#define TSGEO_SCHEMA_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace tsgeo::io {

struct SchemaViolation {
    std::string path;    // JSON pointer into the document
    std::string message;
};

/// Validator for the JSON-Schema subset used by the schemas shipped in
/// schemas/: type (string or array of strings), properties, required,
/// items (single schema), enum, oneOf, additionalProperties (boolean),
/// minItems, maxItems. Unknown keywords are ignored.
std::vector<SchemaViolation> validate_schema(const nlohmann::json& schema,
                                             const nlohmann::json& doc);

} // namespace tsgeo::io

#endif
