#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "elcc/affine_geometry.hpp"
#include "elcc/expander_graph.hpp"
#include "elcc/finite_field.hpp"
#include "elcc/linear_code.hpp"

namespace elcc {

using Json = nlohmann::json;

Json field_to_json(const Field& field);
std::shared_ptr<const Field> field_from_json(const Json& j);

Json geometry_to_json(const AffineGeometry& geometry, bool include_flats = false);

/// Inner code bundles serialize with their construction recipe (geometry or
/// single-parity) plus the parity rows, so loads can verify the rebuild.
Json inner_code_to_json(const InnerCode& inner);
InnerCode inner_code_from_json(const Json& j);

Json graph_to_json(const RegularGraph& graph);
std::shared_ptr<const RegularGraph> graph_from_json(const Json& j);

/// Content address: FNV-1a 64 over the canonical dump, as 16 hex digits.
std::string json_hash(const Json& j);

/// Codeword file: one compact JSON header line (field, N, graph hash), a
/// newline, then N raw bytes (one symbol per byte).
struct CodewordFile {
    Json header;
    std::vector<std::uint8_t> word;
};
void write_codeword_file(const std::string& path, const Field& field, const std::string& graph_hash,
                         const std::vector<std::uint8_t>& word);
CodewordFile read_codeword_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace elcc
