#include "ldrn/multicast.hpp"

#include "ldrn/capacity.hpp"
#include "formats.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ldrn {

namespace {

std::vector<std::size_t> iota_indices(std::size_t n)
{
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

// Row indices within a layer's y vector of a set of P labels.
std::vector<std::size_t> rx_rows(const Network& net, const std::vector<PortLabel>& ports)
{
    std::vector<std::size_t> out;
    for (const auto& p : ports)
        out.push_back(static_cast<std::size_t>(net.rx_offset({p.layer, p.node}) + p.pos));
    return out;
}

std::vector<std::size_t> tx_cols(const Network& net, const std::vector<PortLabel>& ports)
{
    std::vector<std::size_t> out;
    for (const auto& q : ports)
        out.push_back(static_cast<std::size_t>(net.tx_offset({q.layer, q.node}) + q.pos));
    return out;
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::string dest_tag(std::size_t l) { return "destination " + std::to_string(l + 1); }

} // namespace

CodeState CodeState::init(const Network& net, std::vector<Flow> flows)
{
    if (flows.size() != net.destinations.size())
        throw Error("expected one flow per destination (" + std::to_string(net.destinations.size()) + "), got " +
                    std::to_string(flows.size()));
    if (flows.empty())
        throw Error("a multicast code needs at least one destination");
    for (std::size_t l = 0; l < flows.size(); ++l) {
        if (flows[l].destination != net.destinations[l])
            throw Error("flow " + std::to_string(l + 1) + " does not end at " + to_string(net.destinations[l]));
        const auto violations = verify_flow(net, flows[l]);
        if (!violations.empty())
            throw Error("flow to " + dest_tag(l) + " is invalid: " + violations.front());
        if (flows[l].rate != flows.front().rate)
            throw Error("flows have mismatched rates");
        if (sorted(flows[l].layers[0][0].p_hat) != sorted(flows.front().layers[0][0].p_hat))
            throw Error("flows use different source subsets");
    }

    CodeState s;
    s.net_ = &net;
    s.flows_ = std::move(flows);
    s.rate_ = s.flows_.front().rate;
    const Field& f = net.field;
    const auto r = static_cast<std::size_t>(s.rate_);
    for (const auto& fl : s.flows_)
        s.last_layer_ = std::max(s.last_layer_, fl.destination.layer);
    for (int i = 0; i < net.layer_count(); ++i) {
        std::vector<Matrix> layer;
        for (const auto& d : net.layers[i])
            layer.emplace_back(f, static_cast<std::size_t>(d.tx), static_cast<std::size_t>(d.rx));
        s.theta_.push_back(std::move(layer));
    }
    s.decoders_.resize(s.flows_.size());

    s.y_ = Matrix(f, static_cast<std::size_t>(net.rx_total(0)), r);
    const auto source = sorted(s.flows_.front().layers[0][0].p_hat);
    for (std::size_t t = 0; t < source.size(); ++t)
        s.y_(static_cast<std::size_t>(source[t]), t) = 1;

    if (s.rate_ == 0) {
        for (auto& d : s.decoders_)
            d = Matrix(f, 0, 0);
        s.finished_ = true;
        return s;
    }
    s.start_layer();
    return s;
}

void CodeState::start_layer()
{
    const Network& net = *net_;
    for (std::size_t l = 0; l < flows_.size(); ++l)
        if (flows_[l].destination.layer >= layer_ && determinant(condition_matrix(l)) == 0)
            throw InvariantError("flow rank condition fails for " + dest_tag(l) + " at layer " + std::to_string(layer_ + 1));
    active_.clear();
    if (layer_ >= last_layer_) {
        finished_ = true;
        return;
    }
    const int i = layer_;
    x_ = Matrix(net.field, static_cast<std::size_t>(net.tx_total(i)), static_cast<std::size_t>(rate_));
    next_port_ = 0;
    for (std::size_t l = 0; l < flows_.size(); ++l) {
        const Flow& fl = flows_[l];
        if (fl.destination.layer < i + 1)
            continue;
        DestinationState ds;
        ds.dest = l;
        ds.next_rows = rx_rows(net, fl.p_set(i + 1));
        const auto qs = fl.q_set(i);
        ds.ledger = tx_cols(net, qs);
        ds.a = Matrix(net.field, 0, static_cast<std::size_t>(rate_));
        for (const auto& q : qs) {
            const int p = *fl.matched_p(q);
            ds.a.append_row(y_.row(static_cast<std::size_t>(net.rx_offset({q.layer, q.node}) + p)));
        }
        ds.f = select(net.transfer[i], ds.next_rows, ds.ledger);
        refresh(ds);
        active_.push_back(std::move(ds));
    }
}

void CodeState::refresh(DestinationState& s) const
{
    s.h = multiply(s.f, s.a);
    auto inv = inverse(s.h);
    if (!inv)
        throw InvariantError("F_l A_l became singular for " + dest_tag(s.dest) + " at layer " +
                             std::to_string(layer_ + 1));
    s.h_inv = std::move(*inv);
}

std::size_t CodeState::port_count() const { return static_cast<std::size_t>(net_->tx_total(layer_)); }

PortLabel CodeState::port_label(std::size_t q) const
{
    int off = 0;
    for (int j = 0; j < net_->node_count(layer_); ++j) {
        const int n = net_->layers[layer_][j].tx;
        if (static_cast<int>(q) < off + n)
            return {Side::Q, layer_, j, static_cast<int>(q) - off};
        off += n;
    }
    throw Error("transmit port " + std::to_string(q) + " outside layer " + std::to_string(layer_ + 1));
}

const DestinationState* CodeState::find_active(std::size_t dest) const
{
    for (const auto& s : active_)
        if (s.dest == dest)
            return &s;
    return nullptr;
}

std::vector<Elem> CodeState::gamma(std::size_t dest, std::size_t q) const
{
    const DestinationState* s = find_active(dest);
    if (s == nullptr)
        throw Error(dest_tag(dest) + " is not active at layer " + std::to_string(layer_ + 1));
    const auto it = std::find(s->ledger.begin(), s->ledger.end(), q);
    const std::vector<Elem> alpha = it != s->ledger.end()
                                        ? s->f.column(static_cast<std::size_t>(it - s->ledger.begin()))
                                        : select(net_->transfer[layer_], s->next_rows, std::vector<std::size_t>{q}).column(0);
    return mat_vec(s->h_inv, alpha);
}

std::vector<std::size_t> CodeState::node_rows(std::size_t q) const
{
    const PortLabel label = port_label(q);
    const int off = net_->rx_offset({label.layer, label.node});
    std::vector<std::size_t> out;
    for (int t = 0; t < net_->layers[label.layer][label.node].rx; ++t)
        out.push_back(static_cast<std::size_t>(off + t));
    return out;
}

std::vector<PortConstraint> CodeState::constraints(std::size_t q) const
{
    const PortLabel label = port_label(q);
    std::vector<PortConstraint> out;
    for (const auto& s : active_) {
        PortConstraint c;
        c.dest = s.dest;
        c.gamma = gamma(s.dest, q);
        if (const auto p = flows_[s.dest].matched_p(label)) {
            c.on_flow = true;
            const auto row = y_.row(static_cast<std::size_t>(net_->rx_offset({label.layer, label.node}) + *p));
            c.matched_row.assign(row.begin(), row.end());
        }
        out.push_back(std::move(c));
    }
    return out;
}

void CodeState::apply_update(std::size_t q, const std::vector<Elem>& theta)
{
    if (finished_ || q != next_port_)
        throw Error("ports must be assigned in canonical order; expected " + std::to_string(next_port_) + ", got " +
                    std::to_string(q));
    const auto rows = node_rows(q);
    if (theta.size() != rows.size())
        throw Error("local coefficient vector has length " + std::to_string(theta.size()) + ", node has " +
                    std::to_string(rows.size()) + " receive ports");
    const Field& f = net_->field;
    const PortLabel label = port_label(q);
    std::vector<Elem> u(static_cast<std::size_t>(rate_), 0);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (!f.contains(theta[t]))
            throw Error("local coefficient outside " + f.name());
        if (theta[t] == 0)
            continue;
        for (std::size_t c = 0; c < u.size(); ++c)
            u[c] = f.add(u[c], f.mul(theta[t], y_(rows[t], c)));
    }
    std::copy(u.begin(), u.end(), x_.row(q).begin());
    Matrix& local = theta_[layer_][static_cast<std::size_t>(label.node)];
    std::copy(theta.begin(), theta.end(), local.row(static_cast<std::size_t>(label.pos)).begin());

    for (auto& s : active_) {
        const auto it = std::find(s.ledger.begin(), s.ledger.end(), q);
        if (it != s.ledger.end()) {
            auto row = s.a.row(static_cast<std::size_t>(it - s.ledger.begin()));
            std::copy(u.begin(), u.end(), row.begin());
        }
        else {
            s.a.append_row(u);
            s.f.append_column(select(net_->transfer[layer_], s.next_rows, std::vector<std::size_t>{q}).column(0));
            s.ledger.push_back(q);
        }
        refresh(s);
    }
    ++next_port_;
}

void CodeState::advance_layer()
{
    if (finished_)
        throw Error("construction already finished");
    if (!layer_done())
        throw Error("layer " + std::to_string(layer_ + 1) + " still has unassigned ports");
    const Network& net = *net_;
    Matrix next = multiply(net.transfer[layer_], x_);
    next.set_labels({}, {});
    const auto all_cols = iota_indices(static_cast<std::size_t>(rate_));
    for (const auto& s : active_) {
        Matrix fa = multiply(s.f, s.a);
        fa.set_labels({}, {});
        if (!(fa == select(next, s.next_rows, all_cols)))
            throw InvariantError("F_l A_l differs from y_{i+1} for " + dest_tag(s.dest) + " at layer " +
                                 std::to_string(layer_ + 2));
    }
    y_ = std::move(next);
    ++layer_;
    for (std::size_t l = 0; l < flows_.size(); ++l) {
        if (flows_[l].destination.layer != layer_)
            continue;
        auto inv = inverse(condition_matrix(l));
        if (!inv)
            throw InvariantError("received coding matrix of " + dest_tag(l) + " is singular");
        decoders_[l] = std::move(*inv);
    }
    start_layer();
}

Matrix CodeState::condition_matrix(std::size_t dest) const
{
    const auto rows = rx_rows(*net_, flows_.at(dest).p_set(layer_));
    Matrix m = select(y_, rows, iota_indices(static_cast<std::size_t>(rate_)));
    m.set_labels({}, {});
    return m;
}

Elem constraint_value(const Field& field, const PortConstraint& c, std::span<const Elem> u)
{
    Elem v = field.dot(u, c.gamma);
    if (c.on_flow)
        v = field.sub(v, field.dot(c.matched_row, c.gamma));
    return field.add(1, v);
}

std::vector<Elem> combine_nonorthogonal(const Field& field, const std::vector<std::vector<Elem>>& a,
                                        const std::vector<std::vector<Elem>>& b)
{
    const std::size_t n = a.size();
    if (b.size() != n)
        throw Error("combine_nonorthogonal: mismatched pair count");
    for (std::size_t t = 0; t < n; ++t)
        if (field.dot(a[t], b[t]) == 0)
            throw Error("combine_nonorthogonal: pair " + std::to_string(t) + " is orthogonal");
    std::vector<Elem> coeff(n, 0);
    if (n == 0)
        return coeff;
    coeff[0] = 1;
    std::vector<Elem> c = a[0];
    for (std::size_t t = 1; t < n; ++t) {
        if (field.dot(c, b[t]) != 0)
            continue;
        std::set<Elem> forbidden;
        for (std::size_t s = 0; s < t; ++s) {
            const Elem ab = field.dot(a[t], b[s]);
            if (ab != 0)
                forbidden.insert(field.neg(field.div(field.dot(c, b[s]), ab)));
        }
        Elem lambda = 0;
        for (Elem cand = 1; cand < field.order(); ++cand)
            if (!forbidden.contains(cand)) {
                lambda = cand;
                break;
            }
        if (lambda == 0)
            throw FieldTooSmall("no admissible combination coefficient in " + field.name());
        for (std::size_t k = 0; k < c.size(); ++k)
            c[k] = field.add(c[k], field.mul(lambda, a[t][k]));
        coeff[t] = lambda;
    }
    return coeff;
}

Assignment assign_deterministic(const CodeState& state, std::size_t q)
{
    const Network& net = state.network();
    const Field& f = net.field;
    const std::size_t g = net.destinations.size();
    if (f.order() <= g)
        throw FieldTooSmall(f.name() + " has " + std::to_string(f.order()) + " elements but there are " +
                            std::to_string(g) + " destinations; lift the network to an extension field with at "
                                                "least g + 1 elements (see --rounds)");
    const auto cons = state.constraints(q);
    const auto rows = state.node_rows(q);
    const PortLabel label = state.port_label(q);
    const auto r = static_cast<std::size_t>(state.rate());

    Assignment out;
    std::vector<std::vector<Elem>> a, b;
    std::vector<std::size_t> anchor;  // receive position of each W member's matched port
    for (const auto& c : cons) {
        if (!c.on_flow || f.dot(c.matched_row, c.gamma) == 0)
            continue;
        out.w_set.push_back(c.dest);
        a.push_back(c.matched_row);
        b.push_back(c.gamma);
        anchor.push_back(static_cast<std::size_t>(*state.flows()[c.dest].matched_p(label)));
    }
    const auto coeff = combine_nonorthogonal(f, a, b);
    std::vector<Elem> theta_w(rows.size(), 0);
    out.w.assign(r, 0);
    for (std::size_t t = 0; t < coeff.size(); ++t) {
        theta_w[anchor[t]] = f.add(theta_w[anchor[t]], coeff[t]);
        for (std::size_t k = 0; k < r; ++k)
            out.w[k] = f.add(out.w[k], f.mul(coeff[t], a[t][k]));
    }

    std::set<Elem> forbidden;
    for (const auto& c : cons) {
        const Elem wg = f.dot(out.w, c.gamma);
        const bool in_w = std::find(out.w_set.begin(), out.w_set.end(), c.dest) != out.w_set.end();
        if (in_w)
            forbidden.insert(f.div(f.sub(f.dot(c.matched_row, c.gamma), 1), wg));
        else if (wg != 0)
            forbidden.insert(f.neg(f.inv(wg)));
    }
    // Scan 1, 2, ..., |F| - 1 and only then 0.
    bool found = false;
    for (Elem step = 1; step <= f.order() && !found; ++step) {
        const Elem cand = step % f.order();
        if (!forbidden.contains(cand)) {
            out.sigma = cand;
            found = true;
        }
    }
    if (!found)
        throw FieldTooSmall("every sigma is forbidden in " + f.name());
    out.theta.resize(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t)
        out.theta[t] = f.mul(out.sigma, theta_w[t]);
    out.u.resize(r);
    for (std::size_t k = 0; k < r; ++k)
        out.u[k] = f.mul(out.sigma, out.w[k]);
    for (const auto& c : cons)
        if (constraint_value(f, c, out.u) == 0)
            throw InvariantError("deterministic assignment violates the constraint of " + dest_tag(c.dest));
    return out;
}

Draw draw_random(const CodeState& state, std::size_t q, std::mt19937_64& rng)
{
    const Field& f = state.network().field;
    const auto rows = state.node_rows(q);
    std::uniform_int_distribution<Elem> coeff(0, f.order() - 1);
    Draw d;
    d.theta.resize(rows.size());
    for (auto& t : d.theta)
        t = coeff(rng);
    d.u.assign(static_cast<std::size_t>(state.rate()), 0);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (std::size_t k = 0; k < d.u.size(); ++k)
            d.u[k] = f.add(d.u[k], f.mul(d.theta[t], state.y()(rows[t], k)));
    for (const auto& c : state.constraints(q))
        if (constraint_value(f, c, d.u) == 0)
            d.zero_factors.push_back(c.dest);
    d.accepted = d.zero_factors.empty();
    return d;
}

Assignment assign_randomized(const CodeState& state, std::size_t q, std::mt19937_64& rng, int max_retries)
{
    std::vector<std::size_t> last_zero;
    for (int attempt = 1; attempt <= max_retries + 1; ++attempt) {
        Draw d = draw_random(state, q, rng);
        if (d.accepted) {
            Assignment out;
            out.theta = std::move(d.theta);
            out.u = std::move(d.u);
            out.attempts = attempt;
            return out;
        }
        last_zero = std::move(d.zero_factors);
    }
    std::string who;
    for (auto l : last_zero)
        who += (who.empty() ? "" : ", ") + std::to_string(l + 1);
    throw RetriesExhausted("randomized assignment of " + to_string(state.port_label(q)) + " failed after " +
                           std::to_string(max_retries + 1) + " draws; zero factors for destinations " + who);
}

MulticastCode build_code(const Network& net, const BuildOptions& options)
{
    auto violations = validate(net);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
    if (net.destinations.empty())
        throw Error("a multicast code needs at least one destination");
    const int rate = options.rate ? *options.rate
                                  : std::min(multicast_capacity(net, options.jobs), net.dims({0, 0}).rx);
    if (rate < 0)
        throw Error("rate must be non-negative");
    if (rate > 0 && options.mode == Mode::Deterministic && net.field.order() <= net.destinations.size())
        throw FieldTooSmall(net.field.name() + " has " + std::to_string(net.field.order()) +
                            " elements but there are " + std::to_string(net.destinations.size()) +
                            " destinations; lift the network to an extension field (see --rounds)");

    std::vector<Flow> flows;
    for (std::size_t l = 0; l < net.destinations.size(); ++l) {
        auto fl = find_flow(net, l, rate);
        if (!fl)
            throw Error("no rate-" + std::to_string(rate) + " flow to " + dest_tag(l) + " " +
                        to_string(net.destinations[l]));
        flows.push_back(std::move(*fl));
    }

    CodeState state = CodeState::init(net, flows);
    std::mt19937_64 rng(options.seed);
    while (!state.finished()) {
        while (!state.layer_done()) {
            const std::size_t q = state.next_port();
            Assignment a = options.mode == Mode::Deterministic ? assign_deterministic(state, q)
                                                               : assign_randomized(state, q, rng, options.max_retries);
            state.apply_update(q, a.theta);
            if (options.transcript != nullptr) {
                TranscriptEntry e;
                e.port = state.port_label(q);
                e.assignment = std::move(a);
                for (const auto& s : state.active())
                    e.det_h.emplace_back(s.dest, determinant(s.h));
                options.transcript->push_back(std::move(e));
            }
        }
        state.advance_layer();
    }

    MulticastCode code;
    code.field = net.field;
    code.rate = rate;
    code.source_ports = sorted(flows.front().layers[0][0].p_hat);
    code.theta = state.all_local();
    for (std::size_t l = 0; l < flows.size(); ++l) {
        DestinationCode dc;
        dc.node = net.destinations[l];
        dc.ports = sorted(flows[l].layers[dc.node.layer][dc.node.node].p_hat);
        dc.decoder = *state.decoders()[l];
        code.destinations.push_back(std::move(dc));
    }
    code.flows = std::move(flows);
    return code;
}

namespace {

using jsonio::json;

json positions_json(const std::vector<int>& v)
{
    json out = json::array();
    for (int p : v)
        out.push_back(p + 1);
    return out;
}

std::vector<int> positions_from(const json& j, const jsonio::Path& path)
{
    jsonio::require_array(j, path);
    std::vector<int> out;
    for (std::size_t t = 0; t < j.size(); ++t)
        out.push_back(static_cast<int>(jsonio::as_int(j[t], path[t])) - 1);
    return out;
}

json elems_json(const std::vector<Elem>& v)
{
    json out = json::array();
    for (Elem e : v)
        out.push_back(e);
    return out;
}

} // namespace

std::string save_code(const MulticastCode& code)
{
    json doc;
    doc["field"] = {{"p", code.field.characteristic()}, {"k", code.field.degree()}};
    doc["rate"] = code.rate;
    doc["source_ports"] = positions_json(code.source_ports);
    json nodes = json::array();
    for (std::size_t i = 0; i < code.theta.size(); ++i)
        for (std::size_t j = 0; j < code.theta[i].size(); ++j) {
            const Matrix& m = code.theta[i][j];
            nodes.push_back({{"layer", i + 1},
                             {"node", j + 1},
                             {"tx", m.rows()},
                             {"rx", m.cols()},
                             {"theta", jsonio::matrix_json(m)}});
        }
    doc["nodes"] = nodes;
    json dests = json::array();
    for (const auto& d : code.destinations)
        dests.push_back({{"layer", d.node.layer + 1},
                         {"node", d.node.node + 1},
                         {"ports", positions_json(d.ports)},
                         {"decoder", jsonio::matrix_json(d.decoder)}});
    doc["destinations"] = dests;
    json flows = json::array();
    for (const auto& fl : code.flows)
        flows.push_back(jsonio::flow_to_json(fl));
    doc["flows"] = flows;
    return jsonio::dump(doc);
}

MulticastCode load_code(const std::string& text)
{
    using jsonio::Path;
    const json doc = jsonio::parse(text);
    const Path root;
    jsonio::require_object(doc, root);
    MulticastCode code;
    {
        const json& f = jsonio::key(doc, "field", root);
        jsonio::require_object(f, root / "field");
        try {
            code.field = Field::create(static_cast<std::uint32_t>(jsonio::get_int(f, "p", root / "field")),
                                       static_cast<std::uint32_t>(jsonio::get_int(f, "k", root / "field")));
        }
        catch (const ParseError&) {
            throw;
        }
        catch (const Error& e) {
            throw ParseError((root / "field").str() + ": " + e.what());
        }
    }
    code.rate = static_cast<int>(jsonio::get_int(doc, "rate", root));
    if (code.rate < 0)
        throw ParseError((root / "rate").str() + ": negative rate");
    code.source_ports = positions_from(jsonio::key(doc, "source_ports", root), root / "source_ports");
    const json& nodes = jsonio::key(doc, "nodes", root);
    jsonio::require_array(nodes, root / "nodes");
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const Path np = (root / "nodes")[n];
        jsonio::require_object(nodes[n], np);
        const auto layer = jsonio::get_int(nodes[n], "layer", np) - 1;
        const auto node = jsonio::get_int(nodes[n], "node", np) - 1;
        const auto tx = jsonio::get_int(nodes[n], "tx", np);
        const auto rx = jsonio::get_int(nodes[n], "rx", np);
        if (layer < 0 || node < 0 || tx < 0 || rx < 0)
            throw ParseError(np.str() + ": negative index or dimension");
        if (layer > static_cast<std::int64_t>(code.theta.size()))
            throw ParseError((np / "layer").str() + ": layers must appear in order");
        if (layer == static_cast<std::int64_t>(code.theta.size()))
            code.theta.emplace_back();
        if (node != static_cast<std::int64_t>(code.theta[layer].size()))
            throw ParseError((np / "node").str() + ": nodes must appear in order");
        Matrix m = jsonio::get_matrix(jsonio::key(nodes[n], "theta", np), code.field, static_cast<std::size_t>(rx),
                                      np / "theta");
        if (static_cast<std::int64_t>(m.rows()) != tx || static_cast<std::int64_t>(m.cols()) != rx)
            throw ParseError((np / "theta").str() + ": expected a " + std::to_string(tx) + "x" + std::to_string(rx) +
                             " matrix");
        code.theta[layer].push_back(std::move(m));
    }
    const json& dests = jsonio::key(doc, "destinations", root);
    jsonio::require_array(dests, root / "destinations");
    for (std::size_t l = 0; l < dests.size(); ++l) {
        const Path dp = (root / "destinations")[l];
        DestinationCode d;
        d.node = jsonio::node_from_json(dests[l], dp);
        d.ports = positions_from(jsonio::key(dests[l], "ports", dp), dp / "ports");
        d.decoder = jsonio::get_matrix(jsonio::key(dests[l], "decoder", dp), code.field,
                                       static_cast<std::size_t>(code.rate), dp / "decoder");
        code.destinations.push_back(std::move(d));
    }
    if (const auto it = doc.find("flows"); it != doc.end()) {
        jsonio::require_array(*it, root / "flows");
        for (std::size_t l = 0; l < it->size(); ++l)
            code.flows.push_back(jsonio::flow_from_json((*it)[l], (root / "flows")[l]));
    }
    return code;
}

std::string transcript_json(const Field& field, const std::vector<TranscriptEntry>& transcript)
{
    json out = json::array();
    for (const auto& e : transcript) {
        json entry;
        entry["layer"] = e.port.layer + 1;
        entry["node"] = e.port.node + 1;
        entry["port"] = e.port.pos + 1;
        const Assignment& a = e.assignment;
        if (a.attempts == 0) {
            json w_set = json::array();
            for (auto l : a.w_set)
                w_set.push_back(l + 1);
            entry["W"] = w_set;
            entry["w"] = elems_json(a.w);
            entry["sigma"] = a.sigma;
        }
        else {
            entry["attempts"] = a.attempts;
        }
        entry["theta"] = elems_json(a.theta);
        entry["u"] = elems_json(a.u);
        json dets = json::array();
        for (const auto& [l, det] : e.det_h)
            dets.push_back({{"destination", l + 1}, {"det_H", det}});
        entry["det_H"] = dets;
        out.push_back(std::move(entry));
    }
    json doc;
    doc["field"] = {{"p", field.characteristic()}, {"k", field.degree()}};
    doc["transcript"] = out;
    return jsonio::dump(doc);
}

} // namespace ldrn
