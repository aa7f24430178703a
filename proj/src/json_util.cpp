#include "json_util.hpp"

namespace ldrn::jsonio {

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw ParseError(std::string("$: malformed JSON: ") + e.what());
    }
}

void require_object(const json& j, const Path& path)
{
    if (!j.is_object())
        throw ParseError(path.str() + ": expected an object");
}

void require_array(const json& j, const Path& path)
{
    if (!j.is_array())
        throw ParseError(path.str() + ": expected an array");
}

const json& key(const json& obj, const std::string& name, const Path& path)
{
    const auto it = obj.find(name);
    if (it == obj.end())
        throw ParseError((path / name).str() + ": missing key \"" + name + "\"");
    return *it;
}

std::int64_t as_int(const json& j, const Path& path)
{
    if (!j.is_number_integer())
        throw ParseError(path.str() + ": expected an integer");
    return j.get<std::int64_t>();
}

std::int64_t get_int(const json& obj, const std::string& name, const Path& path)
{
    return as_int(key(obj, name, path), path / name);
}

Matrix get_matrix(const json& j, const Field& field, std::size_t empty_cols, const Path& path)
{
    require_array(j, path);
    if (j.empty())
        return Matrix(field, 0, empty_cols);
    Matrix m;
    std::vector<std::vector<Elem>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        require_array(j[r], path[r]);
        if (j[r].size() != j[0].size())
            throw ParseError(path[r].str() + ": row length " + std::to_string(j[r].size()) + " differs from row 0 (" +
                             std::to_string(j[0].size()) + ")");
        std::vector<Elem> row;
        for (std::size_t c = 0; c < j[r].size(); ++c) {
            const auto v = as_int(j[r][c], path[r][c]);
            if (v < 0 || v >= field.order())
                throw ParseError(path[r][c].str() + ": " + std::to_string(v) + " is not an element of " + field.name());
            row.push_back(static_cast<Elem>(v));
        }
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(field, rows);
}

json matrix_json(const Matrix& m)
{
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Elem e : m.row(r))
            row.push_back(e);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

bool is_flat(const json& j)
{
    for (const auto& e : j)
        if (e.is_structured())
            return false;
    return true;
}

void write(const json& j, std::string& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                out += ",\n";
            first = false;
            out += inner + json(it.key()).dump() + ": ";
            write(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
    }
    else if (j.is_array()) {
        if (is_flat(j)) {
            out += j.dump();
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i != 0)
                out += ",\n";
            out += inner;
            write(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
    }
    else {
        out += j.dump();
    }
}

} // namespace

std::string dump(const json& j)
{
    std::string out;
    write(j, out, 0);
    out += "\n";
    return out;
}

} // namespace ldrn::jsonio
