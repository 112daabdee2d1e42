#ifndef NETSPACE_JSON_IO_HPP
#define NETSPACE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "netspace/errors.hpp"
#include "netspace/network.hpp"

namespace netspace {

// Document format:
//   {"arch":[N0,...,NL], "layers":[{"A":[[row0],[row1],...],"b":[...]}, ...]}
// Numbers round-trip exactly (shortest representation that re-reads to the
// same double).

inline nlohmann::json to_json(const Network& net) {
    nlohmann::json doc;
    doc["arch"] = net.arch().dims;
    nlohmann::json layers = nlohmann::json::array();
    for (const Layer& l : net.layers) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < l.A.rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < l.A.cols; ++j) row.push_back(l.A(i, j));
            rows.push_back(std::move(row));
        }
        layers.push_back({{"A", std::move(rows)}, {"b", l.b}});
    }
    doc["layers"] = std::move(layers);
    return doc;
}

inline std::string serialize(const Network& net) { return to_json(net).dump(2) + "\n"; }

inline Network network_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("arch") || !doc.contains("layers"))
        throw ParseError("network document: expected object with 'arch' and 'layers'");
    std::vector<int> dims;
    try {
        dims = doc.at("arch").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("network document: 'arch' must be an array of integers");
    }
    const Architecture arch = [&] {
        try {
            return Architecture(dims);
        } catch (const ShapeError& e) {
            throw ParseError(std::string("network document: ") + e.what());
        }
    }();

    const auto& jlayers = doc.at("layers");
    if (!jlayers.is_array() || static_cast<int>(jlayers.size()) != arch.num_layers())
        throw ParseError("network document: 'layers' must hold " +
                         std::to_string(arch.num_layers()) + " entries to match 'arch'");

    std::vector<Layer> layers;
    layers.reserve(jlayers.size());
    for (std::size_t l = 0; l < jlayers.size(); ++l) {
        const std::string where = "layer " + std::to_string(l + 1);
        const auto& jl = jlayers[l];
        if (!jl.is_object() || !jl.contains("A") || !jl.contains("b"))
            throw ParseError("network document: " + where + " needs fields 'A' and 'b'");
        const int rows = arch.dims[l + 1];
        const int cols = arch.dims[l];
        const auto& jA = jl.at("A");
        if (!jA.is_array() || static_cast<int>(jA.size()) != rows)
            throw ParseError("network document: " + where + " expects " + std::to_string(rows) +
                             " weight rows");
        Matrix A(rows, cols);
        for (int i = 0; i < rows; ++i) {
            const auto& jrow = jA[static_cast<std::size_t>(i)];
            if (!jrow.is_array() || static_cast<int>(jrow.size()) != cols)
                throw ParseError("network document: " + where + " row " + std::to_string(i) +
                                 " expects " + std::to_string(cols) + " entries");
            for (int j = 0; j < cols; ++j) {
                const auto& v = jrow[static_cast<std::size_t>(j)];
                if (!v.is_number())
                    throw ParseError("network document: " + where + " weight (" +
                                     std::to_string(i) + "," + std::to_string(j) + ") is not a number");
                A(i, j) = v.get<double>();
            }
        }
        Vector b;
        try {
            b = jl.at("b").get<Vector>();
        } catch (const nlohmann::json::exception&) {
            throw ParseError("network document: " + where + " bias must be a numeric array");
        }
        if (static_cast<int>(b.size()) != rows)
            throw ParseError("network document: " + where + " bias expects " +
                             std::to_string(rows) + " entries");
        layers.push_back({std::move(A), std::move(b)});
    }
    return Network(std::move(layers));
}

inline Network deserialize(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("network document: ") + e.what());
    }
    return network_from_json(doc);
}

}  // namespace netspace

#endif  // NETSPACE_JSON_IO_HPP
