#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "escherpos/integer.hpp"

namespace escherpos {

inline constexpr std::size_t kMaxVars = 16;

/// Dense exponent vector; entries at index >= num_vars are always zero.
using Exponents = std::array<std::uint8_t, kMaxVars>;

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms are kept in a std::map so iteration order (and therefore any printed
/// or serialized form) is deterministic. Zero coefficients are never stored.
/// Coefficient arithmetic is overflow-checked; exponents are capped at 255.
class MultiPoly {
public:
    using Terms = std::map<Exponents, Int>;

    explicit MultiPoly(std::size_t num_vars);

    static MultiPoly constant(std::size_t num_vars, Int c);
    /// x_{index}, 0-based.
    static MultiPoly variable(std::size_t num_vars, std::size_t index);
    static MultiPoly monomial(std::size_t num_vars, const Exponents& exps, Int c = 1);

    std::size_t num_vars() const { return num_vars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const Exponents& exps) const;
    void add_term(const Exponents& exps, Int c);

    /// Degree of the (single) homogeneous component, nullopt if zero or mixed.
    std::optional<int> homogeneous_degree() const;
    bool is_symmetric() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(Int c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, Int c) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return a.multiply(b); }
    MultiPoly operator-() const { return *this * Int{-1}; }

    MultiPoly multiply(const MultiPoly& o) const;
    /// Product keeping only monomials with exponent(v) <= cap[v] for every v.
    /// Agrees with the exact product on every monomial inside the cap.
    MultiPoly multiply_truncated(const MultiPoly& o, std::span<const std::uint8_t> cap) const;
    MultiPoly pow(int e) const;

    /// Exact division of every coefficient; throws InternalError on a remainder.
    MultiPoly exact_divide(Int d) const;

    /// Drops every term exceeding the cap.
    MultiPoly truncated(std::span<const std::uint8_t> cap) const;

    /// Polynomial in num_vars() + o.num_vars() variables, o's variables placed after ours.
    MultiPoly tensor(const MultiPoly& o) const;

    /// Human-readable form, e.g. "x1^2*x2 + 3*x3".
    std::string to_string(char var = 'x') const;

    bool operator==(const MultiPoly& o) const = default;

private:
    std::size_t num_vars_;
    Terms terms_;
};

Exponents exponents_of(std::span<const int> values);

} // namespace escherpos
