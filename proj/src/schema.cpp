#include "tsgeo/schema.hpp"

namespace tsgeo::io {

namespace {

bool type_matches(const std::string& type, const nlohmann::json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    return false;
}

void validate_at(const nlohmann::json& schema, const nlohmann::json& doc, const std::string& path,
                 std::vector<SchemaViolation>& out) {
    if (!schema.is_object()) return;

    if (schema.contains("oneOf")) {
        for (const auto& alt : schema["oneOf"]) {
            std::vector<SchemaViolation> trial;
            validate_at(alt, doc, path, trial);
            if (trial.empty()) return;
        }
        out.push_back({path, "no oneOf alternative matched"});
        return;
    }

    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), doc);
        } else if (t.is_array()) {
            for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), doc);
        }
        if (!ok) {
            out.push_back({path, "expected type " + t.dump() + ", got " +
                                     std::string(doc.type_name())});
            return;
        }
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || alt == doc;
        if (!ok) out.push_back({path, "value not in enum " + schema["enum"].dump()});
    }

    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    out.push_back({path, "missing required key \"" + key.get<std::string>() + "\""});
        const auto* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        if (props)
            for (auto it = props->begin(); it != props->end(); ++it)
                if (doc.contains(it.key()))
                    validate_at(it.value(), doc[it.key()], path + "/" + it.key(), out);
        if (schema.contains("additionalProperties") &&
            schema["additionalProperties"].is_boolean() &&
            !schema["additionalProperties"].get<bool>()) {
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (!props || !props->contains(it.key()))
                    out.push_back({path, "unexpected key \"" + it.key() + "\""});
        }
    }

    if (doc.is_array()) {
        if (schema.contains("minItems") && doc.size() < schema["minItems"].get<size_t>())
            out.push_back({path, "array shorter than minItems"});
        if (schema.contains("maxItems") && doc.size() > schema["maxItems"].get<size_t>())
            out.push_back({path, "array longer than maxItems"});
        if (schema.contains("items")) {
            size_t i = 0;
            for (const auto& item : doc) {
                validate_at(schema["items"], item, path + "/" + std::to_string(i), out);
                ++i;
            }
        }
    }
}

} // namespace

std::vector<SchemaViolation> validate_schema(const nlohmann::json& schema,
                                             const nlohmann::json& doc) {
    std::vector<SchemaViolation> out;
    validate_at(schema, doc, "", out);
    return out;
}

} // namespace tsgeo::io
