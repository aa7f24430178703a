#pragma once

// JSON helpers shared by the file formats: path-tracking accessors and a compact pretty printer.

#include "ldrn/error.hpp"
#include "ldrn/matrix.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace ldrn::jsonio {

using json = nlohmann::ordered_json;

/// JSON-path style location, e.g. `$.layers[1].nodes[0]`.
class Path {
public:
    Path() = default;

    Path operator/(const std::string& key) const { return Path(path_ + "." + key); }
    Path operator[](std::size_t index) const { return Path(path_ + "[" + std::to_string(index) + "]"); }
    const std::string& str() const noexcept { return path_; }

private:
    explicit Path(std::string p) : path_(std::move(p)) {}
    std::string path_ = "$";
};

json parse(const std::string& text);

void require_object(const json& j, const Path& path);
void require_array(const json& j, const Path& path);
const json& key(const json& obj, const std::string& name, const Path& path);
std::int64_t get_int(const json& obj, const std::string& name, const Path& path);
std::int64_t as_int(const json& j, const Path& path);

/// Nested row-major integer arrays. A matrix without rows takes `empty_cols` columns.
Matrix get_matrix(const json& j, const Field& field, std::size_t empty_cols, const Path& path);
json matrix_json(const Matrix& m);

/// Indented output that keeps arrays of scalars on one line. Deterministic.
std::string dump(const json& j);

} // namespace ldrn::jsonio
