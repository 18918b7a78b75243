#include "tsgeo/manifold_io.hpp"

#include "tsgeo/fixture.hpp"

#include <fstream>
#include <sstream>

namespace tsgeo::io {

using geom::ExprMatrix;
using geom::Field;
using geom::FrameManifold;
using sym::Coords;
using sym::Expr;

namespace {

Expr parse_entry(const nlohmann::json& cell, const Coords& coords, const std::string& where) {
    if (!cell.is_string())
        throw InputError(where + ": expression entries must be strings");
    try {
        return sym::parse(cell.get<std::string>(), coords);
    } catch (const sym::ParseError& e) {
        throw InputError(where + ": " + e.what());
    } catch (const sym::DivisionByZero& e) {
        throw InputError(where + ": " + e.what());
    }
}

ExprMatrix parse_matrix(const nlohmann::json& rows, const Coords& coords, int d,
                        const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw InputError(what + " must be a " + std::to_string(d) + "x" + std::to_string(d) +
                         " array");
    ExprMatrix m(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const auto& row = rows[size_t(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw InputError(what + " row " + std::to_string(i + 1) + " must have " +
                             std::to_string(d) + " entries");
        for (int j = 0; j < d; ++j)
            m[size_t(i)].push_back(parse_entry(row[size_t(j)], coords,
                                               what + "[" + std::to_string(i + 1) + "][" +
                                                   std::to_string(j + 1) + "]"));
    }
    return m;
}

} // namespace

ManifoldInput load_manifold(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("manifold document must be a JSON object");
    if (!doc.contains("coordinates") || !doc["coordinates"].is_array())
        throw InputError("missing \"coordinates\" array");
    std::vector<std::string> names;
    for (const auto& n : doc["coordinates"]) {
        if (!n.is_string()) throw InputError("coordinate names must be strings");
        names.push_back(n.get<std::string>());
    }
    std::optional<Coords> coords;
    try {
        coords.emplace(names);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const int d = coords->size();
    if (!doc.contains("frame")) throw InputError("missing \"frame\"");
    if (!doc.contains("metric")) throw InputError("missing \"metric\"");
    ExprMatrix frame = parse_matrix(doc["frame"], *coords, d, "frame");
    ExprMatrix metric = parse_matrix(doc["metric"], *coords, d, "metric");

    std::optional<ExprMatrix> phi;
    std::optional<Field> xi;
    if (doc.contains("contact")) {
        const auto& contact = doc["contact"];
        if (!contact.is_object() || !contact.contains("phi") || !contact.contains("xi"))
            throw InputError("\"contact\" must hold \"phi\" and \"xi\"");
        phi = parse_matrix(contact["phi"], *coords, d, "contact.phi");
        const auto& xij = contact["xi"];
        if (!xij.is_array() || static_cast<int>(xij.size()) != d)
            throw InputError("contact.xi must have " + std::to_string(d) + " entries");
        Field x;
        for (int i = 0; i < d; ++i)
            x.push_back(parse_entry(xij[size_t(i)], *coords,
                                    "contact.xi[" + std::to_string(i + 1) + "]"));
        xi = std::move(x);
    }

    try {
        FrameManifold m = FrameManifold::build(*coords, std::move(frame), std::move(metric));
        return {std::move(m), std::move(phi), std::move(xi)};
    } catch (const geom::BuildError& e) {
        throw InputError(e.what());
    }
}

ManifoldInput load_manifold_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
    return load_manifold(doc);
}

nlohmann::ordered_json manifold_to_json(const FrameManifold& m, const ExprMatrix* phi,
                                        const Field* xi) {
    const Coords& coords = m.coords();
    const int d = m.dim();
    nlohmann::ordered_json doc;
    doc["coordinates"] = coords.names();
    auto matrix_json = [&](const ExprMatrix& mat) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < d; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int j = 0; j < d; ++j) row.push_back(mat[size_t(i)][size_t(j)].str(coords));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    doc["frame"] = matrix_json(m.frame());
    doc["metric"] = matrix_json(m.metric());
    if (phi && xi) {
        nlohmann::ordered_json contact;
        contact["phi"] = matrix_json(*phi);
        nlohmann::ordered_json xrow = nlohmann::ordered_json::array();
        for (int i = 0; i < d; ++i) xrow.push_back((*xi)[size_t(i)].str(coords));
        contact["xi"] = std::move(xrow);
        doc["contact"] = std::move(contact);
    }
    return doc;
}

nlohmann::ordered_json example_manifold_json() {
    auto ex = make_example();
    return manifold_to_json(ex.manifold, &ex.phi, &ex.xi);
}

bool is_builtin_example(const ManifoldInput& input) {
    if (!input.has_contact()) return false;
    auto ex = make_example();
    const int d = ex.manifold.dim();
    if (input.manifold.dim() != d) return false;
    if (input.manifold.coords().names() != ex.manifold.coords().names()) return false;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (input.manifold.frame()[size_t(i)][size_t(j)] !=
                ex.manifold.frame()[size_t(i)][size_t(j)])
                return false;
            if (input.manifold.metric()[size_t(i)][size_t(j)] !=
                ex.manifold.metric()[size_t(i)][size_t(j)])
                return false;
            if ((*input.phi)[size_t(i)][size_t(j)] != ex.phi[size_t(i)][size_t(j)]) return false;
        }
    for (int i = 0; i < d; ++i)
        if ((*input.xi)[size_t(i)] != ex.xi[size_t(i)]) return false;
    return true;
}

} // namespace tsgeo::io
