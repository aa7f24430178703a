#include "ldrn/cli.hpp"

#include "ldrn/capacity.hpp"
#include "ldrn/flow.hpp"
#include "ldrn/multicast.hpp"
#include "ldrn/rounds.hpp"
#include "ldrn/sim.hpp"
#include "formats.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace ldrn::cli {

namespace {

using jsonio::json;

// Input problems (bad files, bad flag values) map to exit 2.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw UsageError("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

int parse_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size())
            return v;
    }
    catch (const std::exception&) {
    }
    throw UsageError("invalid " + what + " \"" + s + "\"");
}

std::vector<int> int_list(const std::string& s, const std::string& what)
{
    std::vector<int> out;
    for (const auto& part : split(s, ','))
        out.push_back(parse_int(part, what));
    return out;
}

Field parse_field(const std::string& s)
{
    const auto parts = int_list(s, "field");
    if (parts.empty() || parts.size() > 2 || parts[0] < 2 || (parts.size() == 2 && parts[1] < 1))
        throw UsageError("field must be p or p,k");
    try {
        return Field::create(static_cast<std::uint32_t>(parts[0]),
                             parts.size() == 2 ? static_cast<std::uint32_t>(parts[1]) : 1u);
    }
    catch (const Error& e) {
        throw UsageError(e.what());
    }
}

json field_json(const Field& f) { return {{"p", f.characteristic()}, {"k", f.degree()}}; }

json node_ref(const NodeId& id) { return {{"layer", id.layer + 1}, {"node", id.node + 1}}; }

json elems(const std::vector<Elem>& v)
{
    json a = json::array();
    for (Elem e : v)
        a.push_back(e);
    return a;
}

Network load_net(const std::string& path) { return load_network(read_file(path)); }

// A code over GF(p^k) for a GF(p) network was built on the lifted network.
Network network_for(const Network& net, const MulticastCode& code)
{
    if (code.field == net.field)
        return net;
    if (net.field.is_prime_field() && code.field.characteristic() == net.field.characteristic())
        return lift_network(net, code.field.degree());
    throw UsageError("code over " + code.field.name() + " does not fit a network over " + net.field.name());
}

void emit(std::ostream& out, const json& j) { out << jsonio::dump(j); }

int cmd_gen(std::ostream& out, std::uint64_t seed, int layers, const std::string& nodes, const std::string& dims,
            double density, const std::string& field, int dests, const std::string& dest_layers,
            const std::string& out_path, int jobs)
{
    GeneratorParams params;
    params.seed = seed;
    const auto counts = int_list(nodes, "node counts");
    if (counts.size() == 1) {
        params.node_counts.assign(static_cast<std::size_t>(std::max(layers, 0)), counts[0]);
        if (!params.node_counts.empty())
            params.node_counts[0] = 1;
    }
    else {
        if (static_cast<int>(counts.size()) != layers)
            throw UsageError("--nodes lists " + std::to_string(counts.size()) + " layers but --layers is " +
                             std::to_string(layers));
        params.node_counts = counts;
    }
    const auto d = split(dims, '-');
    if (d.empty() || d.size() > 2)
        throw UsageError("--dims must be N or MIN-MAX");
    params.dim_min = parse_int(d.front(), "dimension");
    params.dim_max = parse_int(d.back(), "dimension");
    params.density = density;
    const Field f = parse_field(field);
    params.p = f.characteristic();
    params.k = f.degree();
    params.destinations.count = dests;
    if (!dest_layers.empty())
        params.destinations.layers = int_list(dest_layers, "destination layer");

    Network net;
    try {
        net = generate_random(params);
    }
    catch (const Error& e) {
        throw UsageError(e.what());
    }
    const std::string text = save_network(net);
    if (out_path.empty()) {
        out << text;
        return Ok;
    }
    write_file(out_path, text);
    json summary;
    summary["file"] = out_path;
    summary["field"] = field_json(net.field);
    json cuts = json::array();
    for (std::size_t l = 0; l < net.destinations.size(); ++l) {
        json c = node_ref(net.destinations[l]);
        c["min_cut"] = min_cut(net, l, jobs).value;
        cuts.push_back(c);
    }
    summary["destinations"] = cuts;
    summary["multicast_capacity"] = multicast_capacity(net, jobs);
    emit(out, summary);
    return Ok;
}

int cmd_capacity(std::ostream& out, const std::string& net_path, int jobs)
{
    const Network net = load_net(net_path);
    json doc;
    doc["field"] = field_json(net.field);
    json dests = json::array();
    for (std::size_t l = 0; l < net.destinations.size(); ++l) {
        const MinCut mc = min_cut(net, l, jobs);
        json d = node_ref(net.destinations[l]);
        d["min_cut"] = mc.value;
        json side = json::array();
        for (int i = 0; i < net.layer_count(); ++i)
            for (int j = 0; j < net.node_count(i); ++j)
                if (mc.cut.source_side[i][j])
                    side.push_back(node_ref({i, j}));
        d["source_side"] = side;
        dests.push_back(d);
    }
    doc["destinations"] = dests;
    if (!net.destinations.empty())
        doc["multicast_capacity"] = multicast_capacity(net, jobs);
    emit(out, doc);
    return Ok;
}

int cmd_flow(std::ostream& out, std::ostream& err, const std::string& net_path, int dest, std::optional<int> rate,
             const std::string& out_path, int jobs)
{
    const Network net = load_net(net_path);
    if (dest < 1 || dest > static_cast<int>(net.destinations.size()))
        throw UsageError("--dest must be within 1.." + std::to_string(net.destinations.size()));
    const auto l = static_cast<std::size_t>(dest - 1);
    const int r = rate ? *rate : min_cut(net, l, jobs).value;
    if (r < 0)
        throw UsageError("--rate must be non-negative");
    const auto flow = find_flow(net, l, r);
    if (!flow) {
        err << "no rate-" << r << " flow to " << to_string(net.destinations[l]) << "\n";
        return Failed;
    }
    const std::string text = save_flow(*flow);
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return Ok;
}

struct CodeArgs {
    std::string net_path;
    std::string mode = "det";
    std::uint64_t seed = 1;
    std::string rounds = "auto";
    std::optional<int> rate;
    int max_retries = 20;
    std::string out_path;
    std::string transcript_path;
    int jobs = 1;
};

int cmd_code(std::ostream& out, const CodeArgs& a)
{
    const Network base = load_net(a.net_path);
    if (base.destinations.empty())
        throw UsageError("the network has no destinations");
    BuildOptions opt;
    if (a.mode == "det")
        opt.mode = Mode::Deterministic;
    else if (a.mode == "rand")
        opt.mode = Mode::Randomized;
    else
        throw UsageError("--mode must be det or rand");
    opt.seed = a.seed;
    opt.max_retries = a.max_retries;
    opt.jobs = a.jobs;
    std::vector<TranscriptEntry> transcript;
    if (!a.transcript_path.empty())
        opt.transcript = &transcript;

    std::uint32_t k = 1;
    const auto g = base.destinations.size();
    if (a.rounds == "auto") {
        if (opt.mode == Mode::Deterministic && base.field.order() <= g) {
            if (!base.field.is_prime_field())
                throw UsageError(base.field.name() + " is too small for " + std::to_string(g) +
                                 " destinations and is not a prime field; regenerate over a larger field");
            k = required_rounds(base.field.characteristic(), g);
        }
    }
    else {
        const int v = parse_int(a.rounds, "--rounds");
        if (v < 1)
            throw UsageError("--rounds must be auto or a positive integer");
        k = static_cast<std::uint32_t>(v);
    }
    if (k > 1 && !base.field.is_prime_field())
        throw UsageError("rounds above 1 need a network over a prime field");
    // Capacity is a rank property, so the base network already fixes the default rate.
    if (!a.rate)
        opt.rate = std::min(multicast_capacity(base, a.jobs), base.dims({0, 0}).rx);
    else
        opt.rate = a.rate;
    const Network net = k > 1 ? lift_network(base, k) : base;
    const MulticastCode code = build_code(net, opt);

    const std::string text = save_code(code);
    if (!a.transcript_path.empty())
        write_file(a.transcript_path, transcript_json(net.field, transcript));
    if (a.out_path.empty()) {
        out << text;
        return Ok;
    }
    write_file(a.out_path, text);
    json summary;
    summary["file"] = a.out_path;
    summary["mode"] = a.mode;
    summary["field"] = field_json(code.field);
    summary["rounds"] = k;
    summary["rate"] = code.rate;
    summary["destinations"] = code.destinations.size();
    emit(out, summary);
    return Ok;
}

std::vector<Elem> parse_message(const std::string& s, const Field& f, int rate)
{
    std::vector<Elem> w;
    if (!s.empty())
        for (int v : int_list(s, "message symbol")) {
            if (v < 0 || !f.contains(static_cast<Elem>(v)))
                throw UsageError("message symbol " + std::to_string(v) + " outside " + f.name());
            w.push_back(static_cast<Elem>(v));
        }
    if (static_cast<int>(w.size()) != rate)
        throw UsageError("message \"" + s + "\" has " + std::to_string(w.size()) + " symbols, rate is " +
                         std::to_string(rate));
    return w;
}

json sweep_json(const SweepReport& report, const std::vector<NodeId>& dests)
{
    json doc;
    doc["messages"] = report.messages;
    json fails = json::array();
    for (const auto& [l, w] : report.failures) {
        json f = node_ref(dests[l]);
        f["message"] = elems(w);
        fails.push_back(f);
    }
    doc["failures"] = fails;
    doc["result"] = report.failures.empty() ? "all messages decoded at all destinations" : "decoding failures";
    return doc;
}

int cmd_simulate(std::ostream& out, const std::string& net_path, const std::string& code_path,
                 const std::optional<std::string>& message, bool do_sweep, std::optional<int> random, std::uint64_t seed)
{
    const Network base = load_net(net_path);
    const MulticastCode code = load_code(read_file(code_path));
    const Network net = network_for(base, code);
    const int modes = (message ? 1 : 0) + (do_sweep ? 1 : 0) + (random ? 1 : 0);
    if (modes != 1)
        throw UsageError("give exactly one of --message, --sweep, --random");

    if (message) {
        const std::uint32_t k = code.field.degree() / base.field.degree();
        const auto parts = split(*message, ';');
        if (k == 1) {
            if (parts.size() != 1)
                throw UsageError("rounds separated by ';' need a lifted code");
            const Trace t = simulate(net, code, parse_message(*message, net.field, code.rate));
            out << trace_json(net.field, t);
            return t.all_decoded() ? Ok : Failed;
        }
        if (parts.size() != k)
            throw UsageError("the code spans " + std::to_string(k) + " rounds; separate their messages with ';'");
        std::vector<std::vector<Elem>> rounds;
        for (const auto& p : parts)
            rounds.push_back(parse_message(p, base.field, code.rate));
        const RoundPlan plan{base.field.characteristic(), base.destinations.size(), k, code.field};
        const auto decoded = simulate_rounds(base, plan, code, rounds);
        json doc;
        doc["field"] = field_json(base.field);
        doc["lifted_field"] = field_json(code.field);
        bool ok = true;
        json rj = json::array();
        for (std::size_t t = 0; t < k; ++t) {
            json dj = json::array();
            for (std::size_t l = 0; l < decoded[t].size(); ++l) {
                json d = node_ref(base.destinations[l]);
                d["decoded"] = elems(decoded[t][l]);
                d["ok"] = decoded[t][l] == rounds[t];
                ok = ok && decoded[t][l] == rounds[t];
                dj.push_back(d);
            }
            rj.push_back({{"round", t + 1}, {"message", elems(rounds[t])}, {"destinations", dj}});
        }
        doc["rounds"] = rj;
        emit(out, doc);
        return ok ? Ok : Failed;
    }
    if (random && *random < 0)
        throw UsageError("--random must be non-negative");
    std::vector<std::vector<Elem>> batch;
    if (do_sweep)
        batch = sweep_messages(net.field, code.rate, seed);
    else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Elem> sym(0, net.field.order() - 1);
        for (int n = 0; n < *random; ++n) {
            std::vector<Elem> w(static_cast<std::size_t>(code.rate));
            for (auto& e : w)
                e = sym(rng);
            batch.push_back(std::move(w));
        }
    }
    const SweepReport report = sweep(net, code, batch);
    emit(out, sweep_json(report, base.destinations));
    return report.failures.empty() ? Ok : Failed;
}

int cmd_verify(std::ostream& out, const std::string& net_path, const std::string& file)
{
    const Network base = load_net(net_path);
    const std::string text = read_file(file);
    const json probe = jsonio::parse(text);
    json doc;
    std::vector<std::string> violations;
    if (probe.is_object() && probe.contains("nodes") && probe.contains("destinations")) {
        const MulticastCode code = load_code(text);
        doc["kind"] = "code";
        violations = verify_code(network_for(base, code), code);
    }
    else {
        const Flow flow = load_flow(text);
        doc["kind"] = "flow";
        violations = verify_flow(base, flow);
        if (violations.empty()) {
            std::vector<std::vector<Elem>> msgs = sweep_messages(base.field, flow.rate);
            for (const auto& w : msgs)
                if (unicast_transmit(base, flow, w) != w) {
                    violations.push_back("unicast decoding failed");
                    break;
                }
        }
    }
    doc["valid"] = violations.empty();
    json v = json::array();
    for (const auto& s : violations)
        v.push_back(s);
    doc["violations"] = v;
    emit(out, doc);
    return violations.empty() ? Ok : Failed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Multicast code construction for layered linear deterministic relay networks", "ldrn"};
    app.require_subcommand(1);
    int jobs = 1;

    auto* gen = app.add_subcommand("gen", "Generate a seeded random network");
    std::uint64_t gen_seed = 1;
    int gen_layers = 4;
    std::string gen_nodes = "2", gen_dims = "1-3", gen_field = "2", gen_dest_layers, gen_out;
    double gen_density = 1.0;
    int gen_dests = 2;
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--layers", gen_layers, "Layer count, source included");
    gen->add_option("--nodes", gen_nodes, "Nodes per relay layer, or one count per layer (comma separated)");
    gen->add_option("--dims", gen_dims, "Port dimension N or MIN-MAX");
    gen->add_option("--density", gen_density, "Probability that a transfer entry is kept");
    gen->add_option("--field", gen_field, "p or p,k");
    gen->add_option("--dests", gen_dests, "Destination count");
    gen->add_option("--dest-layers", gen_dest_layers, "Allowed destination layers, comma separated");
    gen->add_option("--out", gen_out, "Output file (network JSON goes to stdout when omitted)");
    gen->add_option("--jobs", jobs, "Threads for the capacity summary");

    auto* cap = app.add_subcommand("capacity", "Min-cut per destination and multicast capacity");
    std::string cap_net;
    cap->add_option("NET", cap_net)->required();
    cap->add_option("--jobs", jobs, "Threads for cut enumeration");

    auto* flow = app.add_subcommand("flow", "Find a unicast flow");
    std::string flow_net, flow_out;
    int flow_dest = 1;
    std::optional<int> flow_rate;
    flow->add_option("NET", flow_net)->required();
    flow->add_option("--dest", flow_dest, "Destination index, from 1");
    flow->add_option("--rate", flow_rate, "Flow rate (defaults to the min-cut)");
    flow->add_option("--out", flow_out, "Output file");
    flow->add_option("--jobs", jobs, "Threads for cut enumeration");

    auto* code = app.add_subcommand("code", "Build a multicast code");
    CodeArgs ca;
    code->add_option("NET", ca.net_path)->required();
    code->add_option("--mode", ca.mode, "det or rand");
    code->add_option("--seed", ca.seed, "RNG seed for rand mode");
    code->add_option("--rounds", ca.rounds, "auto or a round count");
    code->add_option("--rate", ca.rate, "Code rate (defaults to the multicast capacity)");
    code->add_option("--max-retries", ca.max_retries, "Redraws per port in rand mode");
    code->add_option("--out", ca.out_path, "Output file (code JSON goes to stdout when omitted)");
    code->add_option("--transcript", ca.transcript_path, "Write the per-port assignment ledger here");
    code->add_option("--jobs", ca.jobs, "Threads for cut enumeration");

    auto* sim = app.add_subcommand("simulate", "Send messages through a coded network");
    std::string sim_net, sim_code;
    std::optional<std::string> sim_message;
    bool sim_sweep = false;
    std::optional<int> sim_random;
    std::uint64_t sim_seed = 1;
    sim->add_option("NET", sim_net)->required();
    sim->add_option("CODE", sim_code)->required();
    sim->add_option("--message", sim_message, "Comma separated symbols; ';' separates rounds");
    sim->add_flag("--sweep", sim_sweep, "All messages when there are at most 256, else 100 random ones");
    sim->add_option("--random", sim_random, "Number of random messages");
    sim->add_option("--seed", sim_seed, "RNG seed for random messages");

    auto* ver = app.add_subcommand("verify", "Check a code or flow against its network");
    std::string ver_net, ver_file;
    ver->add_option("NET", ver_net)->required();
    ver->add_option("FILE", ver_file)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e) {
        (void)e;
        out << app.help();
        return Ok;
    }
    catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }

    try {
        if (*gen)
            return cmd_gen(out, gen_seed, gen_layers, gen_nodes, gen_dims, gen_density, gen_field, gen_dests,
                           gen_dest_layers, gen_out, jobs);
        if (*cap)
            return cmd_capacity(out, cap_net, jobs);
        if (*flow)
            return cmd_flow(out, err, flow_net, flow_dest, flow_rate, flow_out, jobs);
        if (*code)
            return cmd_code(out, ca);
        if (*sim)
            return cmd_simulate(out, sim_net, sim_code, sim_message, sim_sweep, sim_random, sim_seed);
        if (*ver)
            return cmd_verify(out, ver_net, ver_file);
    }
    catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return Failed;
    }
    return Usage;
}

} // namespace ldrn::cli
