#include "ldrn/rounds.hpp"

#include "ldrn/error.hpp"

namespace ldrn {

std::uint32_t required_rounds(std::uint32_t p, std::uint64_t g)
{
    if (!is_prime(p))
        throw Error("field characteristic " + std::to_string(p) + " is not prime");
    if (g < 1)
        throw Error("round count needs at least one destination");
    std::uint32_t k = 1;
    for (std::uint64_t power = p; power < g + 1; power *= p)
        ++k;
    return k;
}

RoundPlan make_round_plan(std::uint32_t p, std::uint64_t g)
{
    RoundPlan plan;
    plan.p = p;
    plan.g = g;
    plan.k = required_rounds(p, g);
    plan.lifted = Field::create(p, plan.k);
    return plan;
}

Network lift_network(const Network& net, std::uint32_t k)
{
    if (!net.field.is_prime_field())
        throw Error("cannot lift a network that is already over " + net.field.name());
    if (k < 1)
        throw Error("round count must be at least 1");
    Network out = net;
    out.field = Field::create(net.field.characteristic(), k);
    for (auto& g : out.transfer) {
        auto rows = g.row_labels();
        auto cols = g.col_labels();
        g = g.embedded(out.field);
        g.set_labels(std::move(rows), std::move(cols));
    }
    return out;
}

std::vector<Elem> pack(const Field& extension, const std::vector<std::vector<Elem>>& rounds)
{
    const std::uint32_t p = extension.characteristic();
    if (rounds.size() != extension.degree())
        throw Error("expected " + std::to_string(extension.degree()) + " rounds for " + extension.name() + ", got " +
                    std::to_string(rounds.size()));
    const std::size_t n = rounds.front().size();
    std::vector<Elem> out(n, 0);
    Elem scale = 1;
    for (const auto& v : rounds) {
        if (v.size() != n)
            throw Error("round vectors differ in length");
        for (std::size_t e = 0; e < n; ++e) {
            if (v[e] >= p)
                throw Error("round entry " + std::to_string(v[e]) + " outside GF(" + std::to_string(p) + ")");
            out[e] += v[e] * scale;
        }
        scale *= p;
    }
    return out;
}

std::vector<std::vector<Elem>> unpack(const Field& extension, std::span<const Elem> packed)
{
    const std::uint32_t p = extension.characteristic();
    std::vector<std::vector<Elem>> out(extension.degree(), std::vector<Elem>(packed.size()));
    for (std::size_t e = 0; e < packed.size(); ++e) {
        if (!extension.contains(packed[e]))
            throw Error("packed entry outside " + extension.name());
        Elem rest = packed[e];
        for (auto& round : out) {
            round[e] = rest % p;
            rest /= p;
        }
    }
    return out;
}

} // namespace ldrn
