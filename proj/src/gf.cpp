#include "ldrn/gf.hpp"

#include "ldrn/error.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace ldrn {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace detail {

// Fields up to this order get full add/mul tables.
constexpr std::uint32_t kTableOrder = 256;

using Poly = std::vector<std::uint32_t>; // coefficients, constant term first

struct FieldData {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    std::uint32_t q = 2;
    Poly modulus;
    bool tables = false;
    std::vector<Elem> add_t, mul_t, neg_t, inv_t;

    Poly digits(Elem a) const
    {
        Poly out(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            out[i] = a % p;
            a /= p;
        }
        return out;
    }

    Elem encode(const Poly& c) const
    {
        Elem a = 0;
        for (std::uint32_t i = k; i-- > 0;)
            a = a * p + (i < c.size() ? c[i] : 0);
        return a;
    }

    Elem raw_add(Elem a, Elem b) const
    {
        if (k == 1)
            return static_cast<Elem>((std::uint64_t{a} + b) % p);
        if (p == 2)
            return a ^ b;
        Elem out = 0, scale = 1;
        while (a != 0 || b != 0) {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return out;
    }

    Elem raw_neg(Elem a) const
    {
        if (k == 1)
            return a == 0 ? 0 : p - a;
        if (p == 2)
            return a;
        Elem out = 0, scale = 1;
        while (a != 0) {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        return out;
    }

    Elem raw_mul(Elem a, Elem b) const
    {
        if (k == 1)
            return static_cast<Elem>((std::uint64_t{a} * b) % p);
        const Poly x = digits(a), y = digits(b);
        Poly prod(2 * k - 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (x[i] == 0)
                continue;
            for (std::uint32_t j = 0; j < k; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
        }
        // modulus is monic: x^k = -(c_0 + ... + c_{k-1} x^{k-1})
        for (std::uint32_t d = 2 * k - 1; d-- > k;) {
            const std::uint32_t lead = prod[d];
            if (lead == 0)
                continue;
            prod[d] = 0;
            for (std::uint32_t i = 0; i < k; ++i) {
                const std::uint64_t sub = std::uint64_t{lead} * modulus[i] % p;
                prod[d - k + i] = static_cast<std::uint32_t>((prod[d - k + i] + p - sub) % p);
            }
        }
        prod.resize(k);
        return encode(prod);
    }

    Elem raw_pow(Elem a, std::uint64_t e) const
    {
        Elem result = 1, base = a;
        while (e != 0) {
            if (e & 1U)
                result = raw_mul(result, base);
            base = raw_mul(base, base);
            e >>= 1U;
        }
        return result;
    }

    void build_tables()
    {
        tables = true;
        add_t.resize(std::size_t{q} * q);
        mul_t.resize(std::size_t{q} * q);
        neg_t.resize(q);
        inv_t.assign(q, 0);
        for (Elem a = 0; a < q; ++a) {
            neg_t[a] = raw_neg(a);
            for (Elem b = 0; b < q; ++b) {
                add_t[std::size_t{a} * q + b] = raw_add(a, b);
                mul_t[std::size_t{a} * q + b] = raw_mul(a, b);
            }
        }
        for (Elem a = 1; a < q; ++a)
            for (Elem b = 1; b < q; ++b)
                if (mul_t[std::size_t{a} * q + b] == 1) {
                    inv_t[a] = b;
                    break;
                }
    }
};

namespace {

// Remainder of a modulo monic b over GF(p). Polynomials are constant-term first, possibly with trailing zeros.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i) {
                const std::uint64_t sub = std::uint64_t{lead} * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool is_zero(const Poly& a)
{
    for (auto c : a)
        if (c != 0)
            return false;
    return true;
}

// Trial division by every monic polynomial of degree 1..k/2.
bool is_irreducible(const Poly& f, std::uint32_t p)
{
    const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            Poly g(d + 1);
            std::uint64_t m = n;
            for (std::uint32_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(m % p);
                m /= p;
            }
            g[d] = 1;
            if (is_zero(poly_mod(f, g, p)))
                return false;
        }
    }
    return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k)
{
    // Walk (c_0, ..., c_{k-1}) in lexicographic order with c_0 most significant.
    Poly c(k, 0);
    while (true) {
        Poly f = c;
        f.push_back(1);
        if (is_irreducible(f, p))
            return f;
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++c[i] < p)
                break;
            c[i] = 0;
            if (i == 0)
                throw Error("no irreducible polynomial found");
        }
    }
}

} // namespace

} // namespace detail

Field::Field() : Field(create(2, 1)) {}

Field::Field(std::shared_ptr<const detail::FieldData> data) : d_(std::move(data)) {}

Field Field::create(std::uint32_t p, std::uint32_t k)
{
    if (!is_prime(p))
        throw Error("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1)
        throw Error("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > (std::uint64_t{1} << 31))
            throw Error("field order " + std::to_string(p) + "^" + std::to_string(k) + " overflows the element type");
    }

    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const detail::FieldData>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{p, k}];
    if (!slot) {
        auto data = std::make_shared<detail::FieldData>();
        data->p = p;
        data->k = k;
        data->q = static_cast<std::uint32_t>(q);
        data->modulus = k == 1 ? detail::Poly{0, 1} : detail::smallest_irreducible(p, k);
        if (q <= detail::kTableOrder)
            data->build_tables();
        slot = std::move(data);
    }
    return Field(slot);
}

std::uint32_t Field::characteristic() const noexcept { return d_->p; }
std::uint32_t Field::degree() const noexcept { return d_->k; }
std::uint32_t Field::order() const noexcept { return d_->q; }
const std::vector<std::uint32_t>& Field::modulus() const noexcept { return d_->modulus; }

Elem Field::add(Elem a, Elem b) const
{
    return d_->tables ? d_->add_t[std::size_t{a} * d_->q + b] : d_->raw_add(a, b);
}

Elem Field::neg(Elem a) const { return d_->tables ? d_->neg_t[a] : d_->raw_neg(a); }

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const
{
    return d_->tables ? d_->mul_t[std::size_t{a} * d_->q + b] : d_->raw_mul(a, b);
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw Error("division by zero");
    if (d_->tables)
        return d_->inv_t[a];
    return d_->raw_pow(a, std::uint64_t{d_->q} - 2);
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const
{
    Elem result = 1, base = a;
    while (e != 0) {
        if (e & 1U)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

Elem Field::dot(std::span<const Elem> a, std::span<const Elem> b) const
{
    Elem acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            acc = add(acc, mul(a[i], b[i]));
    return acc;
}

std::string Field::name() const
{
    if (degree() == 1)
        return "GF(" + std::to_string(characteristic()) + ")";
    return "GF(" + std::to_string(characteristic()) + "^" + std::to_string(degree()) + ")";
}

bool operator==(const Field& a, const Field& b) noexcept
{
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->k == b.d_->k);
}

} // namespace ldrn
