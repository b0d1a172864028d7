#include "elcc/serde.hpp"

#include <fstream>
#include <stdexcept>

namespace elcc {

Json field_to_json(const Field& field) {
    Json j;
    j["desc"] = field.description();
    j["p"] = field.characteristic();
    j["ell"] = field.degree();
    j["modulus"] = field.modulus();
    return j;
}

std::shared_ptr<const Field> field_from_json(const Json& j) {
    auto field = make_field(j.at("p").get<std::uint32_t>(), j.at("ell").get<std::uint32_t>());
    if (j.contains("modulus")) {
        const auto modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
        if (modulus != field->modulus())
            throw std::runtime_error("field_from_json: modulus does not match the canonical choice");
    }
    return field;
}

Json geometry_to_json(const AffineGeometry& geometry, bool include_flats) {
    Json j;
    j["h"] = geometry.order();
    j["m"] = geometry.ambient_dimension();
    j["r"] = geometry.flat_dimension();
    j["points"] = geometry.point_count();
    j["flat_count"] = geometry.flat_count();
    if (include_flats) j["flats"] = geometry.flats();
    return j;
}

Json inner_code_to_json(const InnerCode& inner) {
    Json j;
    j["field"] = field_to_json(inner.code->field());
    j["d"] = inner.code->length();
    j["k0"] = inner.code->dimension();
    j["q0"] = inner.reconstruction->query_count();
    j["s0"] = inner.reconstruction->smoothness();
    j["parity"] = inner.code->parity_rows();
    j["systematic"] = inner.code->systematic_positions();
    if (inner.code->relative_distance()) j["delta0"] = *inner.code->relative_distance();
    if (inner.geometry) {
        j["kind"] = "affine";
        j["geometry"] = geometry_to_json(*inner.geometry);
    } else {
        j["kind"] = "single_parity";
    }
    return j;
}

InnerCode inner_code_from_json(const Json& j) {
    const auto kind = j.at("kind").get<std::string>();
    const auto p = j.at("field").at("p").get<std::uint32_t>();
    InnerCode inner;
    if (kind == "affine") {
        const auto& g = j.at("geometry");
        auto geometry = AffineGeometry::enumerate_flats(g.at("h").get<std::uint32_t>(),
                                                        g.at("m").get<std::uint32_t>(),
                                                        g.at("r").get<std::uint32_t>());
        if (geometry->flat_count() != g.at("flat_count").get<std::size_t>())
            throw std::runtime_error("inner_code_from_json: flat count mismatch on rebuild");
        inner = build_inner_code(geometry, p);
    } else if (kind == "single_parity") {
        inner = build_single_parity_code(p, j.at("d").get<std::size_t>());
    } else {
        throw std::runtime_error("inner_code_from_json: unknown kind " + kind);
    }
    if (inner.code->dimension() != j.at("k0").get<std::size_t>())
        throw std::runtime_error("inner_code_from_json: dimension mismatch on rebuild");
    if (j.contains("delta0")) {
        auto* mutable_code = const_cast<LinearCode*>(inner.code.get());
        mutable_code->set_relative_distance(j.at("delta0").get<double>());
    }
    return inner;
}

Json graph_to_json(const RegularGraph& graph) {
    Json j;
    j["n"] = graph.vertex_count();
    j["d"] = graph.degree();
    Json rotation = Json::array();
    Json adjacency = Json::array();
    for (std::uint32_t v = 0; v < graph.vertex_count(); ++v) {
        Json row = Json::array();
        Json neighbors = Json::array();
        for (std::uint32_t i = 0; i < graph.degree(); ++i) {
            const auto he = graph.rotation(v, i);
            row.push_back(Json::array({he.vertex, he.port}));
            neighbors.push_back(he.vertex);
        }
        rotation.push_back(row);
        adjacency.push_back(neighbors);
    }
    j["rotation"] = rotation;
    j["adjacency"] = adjacency;
    if (graph.cached_lambda()) {
        j["lambda"] = *graph.cached_lambda();
        j["lambda_tolerance"] = 1e-8;
    }
    return j;
}

std::shared_ptr<const RegularGraph> graph_from_json(const Json& j) {
    const auto n = j.at("n").get<std::uint32_t>();
    const auto d = j.at("d").get<std::uint32_t>();
    std::vector<RegularGraph::HalfEdge> rotation(std::size_t(n) * d);
    const auto& rows = j.at("rotation");
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t i = 0; i < d; ++i)
            rotation[v * d + i] = RegularGraph::HalfEdge{rows.at(v).at(i).at(0).get<std::uint32_t>(),
                                                         rows.at(v).at(i).at(1).get<std::uint32_t>()};
    auto graph = std::make_shared<RegularGraph>(n, d, std::move(rotation));
    if (j.contains("lambda")) graph->set_cached_lambda(j.at("lambda").get<double>());
    return graph;
}

std::string json_hash(const Json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : dump) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

void write_codeword_file(const std::string& path, const Field& field, const std::string& graph_hash,
                         const std::vector<std::uint8_t>& word) {
    Json header;
    header["field"] = field.description();
    header["p"] = field.characteristic();
    header["ell"] = field.degree();
    header["N"] = word.size();
    header["graph"] = graph_hash;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_codeword_file: cannot open " + path);
    out << header.dump() << "\n";
    out.write(reinterpret_cast<const char*>(word.data()), static_cast<std::streamsize>(word.size()));
    if (!out) throw std::runtime_error("write_codeword_file: write failed for " + path);
}

CodewordFile read_codeword_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_codeword_file: cannot open " + path);
    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("read_codeword_file: missing header");
    CodewordFile file;
    file.header = Json::parse(header_line);
    const auto n = file.header.at("N").get<std::size_t>();
    file.word.resize(n);
    in.read(reinterpret_cast<char*>(file.word.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw std::runtime_error("read_codeword_file: truncated payload in " + path);
    return file;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
    out << contents;
    if (!out) throw std::runtime_error("write_text_file: write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text_file: cannot open " + path);
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return contents;
}

}  // namespace elcc
