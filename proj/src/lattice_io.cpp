#include "crystal/lattice_io.hpp"

#include <fstream>
#include <sstream>

namespace crystal {

using nlohmann::json;

double parse_real(const json& value)
{
    if (value.is_number()) return value.get<double>();
    if (!value.is_string()) throw ConfigError("expected a number or a \"p/q\" string, got " + value.dump());
    const auto text = value.get<std::string>();
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return std::stod(text);
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (den == 0.0) throw ConfigError("zero denominator in '" + text + "'");
        return num / den;
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse real number '" + text + "'");
    }
}

RealVector parse_real_vector(const json& value)
{
    if (!value.is_array()) throw ConfigError("expected an array, got " + value.dump());
    RealVector v(static_cast<Eigen::Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_real(value[i]);
    return v;
}

json parse_config_text(const std::string& text)
{
    try {
        return json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
}

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

const json& require(const json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key)) throw ConfigError(std::string("lattice config is missing \"") + key + "\"");
    return doc.at(key);
}

}  // namespace

PeriodicRealization realization_from_json(const json& doc)
{
    try {
        const auto names = require(doc, "vertices").get<std::vector<std::string>>();
        const int dim = require(doc, "dim").get<int>();
        const auto& edges_doc = require(doc, "edges");

        auto vertex_index = [&](const std::string& n) {
            for (std::size_t i = 0; i < names.size(); ++i)
                if (names[i] == n) return static_cast<VertexId>(i);
            throw ConfigError("edge references unknown vertex '" + n + "'");
        };

        std::vector<std::string> edge_names;
        for (const auto& e : edges_doc) edge_names.push_back(require(e, "name").get<std::string>());
        auto edge_index = [&](const std::string& n) {
            for (std::size_t i = 0; i < edge_names.size(); ++i)
                if (edge_names[i] == n) return static_cast<EdgeId>(i);
            throw ConfigError("edge references unknown inverse '" + n + "'");
        };

        std::vector<OrientedEdge> edges;
        std::vector<Cell> voltage;
        for (std::size_t i = 0; i < edges_doc.size(); ++i) {
            const auto& e = edges_doc[i];
            edges.push_back({static_cast<EdgeId>(i), vertex_index(require(e, "origin").get<std::string>()),
                             vertex_index(require(e, "terminus").get<std::string>()),
                             edge_index(require(e, "inverse").get<std::string>()), edge_names[i]});
            const auto v = require(e, "voltage").get<std::vector<std::int64_t>>();
            Cell c(static_cast<Eigen::Index>(v.size()));
            for (std::size_t k = 0; k < v.size(); ++k) c[static_cast<Eigen::Index>(k)] = v[k];
            voltage.push_back(c);
        }

        BaseGraph base(names, std::move(edges));
        CrystalLattice lattice(std::move(base), dim, std::move(voltage));

        std::vector<RealVector> offsets(names.size(), RealVector::Zero(dim));
        if (doc.contains("offsets")) {
            for (const auto& [name, vec] : doc.at("offsets").items())
                offsets[static_cast<std::size_t>(vertex_index(name))] = parse_real_vector(vec);
        }
        RealMatrix basis = RealMatrix::Identity(dim, dim);
        if (doc.contains("basis")) {
            const auto& cols = doc.at("basis");
            if (!cols.is_array() || static_cast<int>(cols.size()) != dim)
                throw ConfigError("\"basis\" must list dim generator images");
            for (int j = 0; j < dim; ++j) {
                RealVector col = parse_real_vector(cols[static_cast<std::size_t>(j)]);
                if (col.size() != dim) throw ConfigError("generator image has wrong length");
                basis.col(j) = col;
            }
        }
        return PeriodicRealization(std::move(lattice), std::move(offsets), std::move(basis));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed lattice config: ") + e.what());
    }
}

PeriodicRealization realization_from_file(const std::string& path)
{
    return realization_from_json(load_config_file(path));
}

json realization_to_json(const PeriodicRealization& real)
{
    const auto& base = real.base();
    json doc;
    doc["vertices"] = base.vertex_names();
    doc["dim"] = real.dim();
    json edges = json::array();
    for (const auto& e : base.edges()) {
        const Cell& v = real.lattice().voltage(e.id);
        edges.push_back({{"name", e.name},
                         {"origin", base.vertex_name(e.origin)},
                         {"terminus", base.vertex_name(e.terminus)},
                         {"inverse", base.edge(e.inverse).name},
                         {"voltage", std::vector<std::int64_t>(v.data(), v.data() + v.size())}});
    }
    doc["edges"] = edges;
    json offsets = json::object();
    for (VertexId x = 0; x < base.num_vertices(); ++x) {
        const RealVector& o = real.offset(x);
        offsets[base.vertex_name(x)] = std::vector<double>(o.data(), o.data() + o.size());
    }
    doc["offsets"] = offsets;
    json basis = json::array();
    for (int j = 0; j < real.dim(); ++j) {
        RealVector col = real.basis().col(j);
        basis.push_back(std::vector<double>(col.data(), col.data() + col.size()));
    }
    doc["basis"] = basis;
    return doc;
}

}  // namespace crystal
