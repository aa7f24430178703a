#include "ldrn/labels.hpp"

#include "ldrn/error.hpp"

namespace ldrn {

std::string to_string(const NodeId& id)
{
    return "v_" + std::to_string(id.layer + 1) + "(" + std::to_string(id.node + 1) + ")";
}

std::string to_string(const PortLabel& label)
{
    return std::string(label.side == Side::P ? "P" : "Q") + "_" + std::to_string(label.layer + 1) + "[" +
           std::to_string(label.node + 1) + "]#" + std::to_string(label.pos + 1);
}

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += "; ";
        out += s;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("invalid network: " + join(violations)), violations_(std::move(violations))
{
}

} // namespace ldrn
