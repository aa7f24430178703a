#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ldrn {

/// Canonical element encoding: an integer in [0, p^k) whose base-p digits are the
/// polynomial coefficients, constant term first.
using Elem = std::uint32_t;

bool is_prime(std::uint64_t n);

namespace detail {
struct FieldData;
}

/**
 * Finite field GF(p^k).
 *
 * The modulus of an extension field is the lexicographically smallest monic irreducible
 * polynomial of degree k, comparing coefficient tuples (c_0, c_1, ..., c_{k-1}) from the
 * constant term up. Instances are cheap handles onto shared immutable tables, so fields
 * compare equal exactly when p and k agree.
 */
class Field {
public:
    /// GF(2).
    Field();

    /// Throws ldrn::Error for a non-prime p, k < 1, or p^k above 2^31.
    static Field create(std::uint32_t p, std::uint32_t k = 1);

    std::uint32_t characteristic() const noexcept;
    std::uint32_t degree() const noexcept;
    std::uint32_t order() const noexcept;
    bool is_prime_field() const noexcept { return degree() == 1; }

    /// Monic modulus coefficients c_0..c_k (so size k + 1). For k = 1 this is the placeholder x, i.e. {0, 1}.
    const std::vector<std::uint32_t>& modulus() const noexcept;

    bool contains(Elem a) const noexcept { return a < order(); }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Throws ldrn::Error("division by zero") for a = 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::uint64_t e) const;

    /// Sum of a[i] * b[i].
    Elem dot(std::span<const Elem> a, std::span<const Elem> b) const;

    std::string name() const;

    friend bool operator==(const Field& a, const Field& b) noexcept;

private:
    explicit Field(std::shared_ptr<const detail::FieldData> data);

    std::shared_ptr<const detail::FieldData> d_;
};

} // namespace ldrn
