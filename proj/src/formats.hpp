#pragma once

// JSON encodings of flows and codes, shared between the flow, multicast and CLI layers.

#include "ldrn/flow.hpp"
#include "json_util.hpp"

namespace ldrn::jsonio {

json flow_to_json(const Flow& flow);
Flow flow_from_json(const json& j, const Path& path);

json node_json(const NodeId& id);
NodeId node_from_json(const json& j, const Path& path);

} // namespace ldrn::jsonio
