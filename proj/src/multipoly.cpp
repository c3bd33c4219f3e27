#include "escherpos/multipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace escherpos {

namespace {

void require_same_vars(const MultiPoly& a, const MultiPoly& b)
{
    if (a.num_vars() != b.num_vars())
        throw std::invalid_argument("polynomials live in different variable counts");
}

std::uint8_t add_exponent(std::uint8_t a, std::uint8_t b)
{
    const unsigned s = unsigned(a) + unsigned(b);
    if (s > 255)
        throw std::overflow_error("exponent overflow");
    return static_cast<std::uint8_t>(s);
}

} // namespace

MultiPoly::MultiPoly(std::size_t num_vars)
    : num_vars_(num_vars)
{
    if (num_vars > kMaxVars)
        throw std::invalid_argument("MultiPoly supports at most " + std::to_string(kMaxVars) + " variables");
}

MultiPoly MultiPoly::constant(std::size_t num_vars, Int c)
{
    MultiPoly p(num_vars);
    p.add_term(Exponents{}, c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t num_vars, std::size_t index)
{
    if (index >= num_vars)
        throw std::out_of_range("variable index out of range");
    Exponents e{};
    e[index] = 1;
    return monomial(num_vars, e);
}

MultiPoly MultiPoly::monomial(std::size_t num_vars, const Exponents& exps, Int c)
{
    MultiPoly p(num_vars);
    for (std::size_t i = num_vars; i < kMaxVars; ++i)
        if (exps[i] != 0)
            throw std::invalid_argument("exponent set on a variable beyond num_vars");
    p.add_term(exps, c);
    return p;
}

Int MultiPoly::coefficient(const Exponents& exps) const
{
    auto it = terms_.find(exps);
    return it == terms_.end() ? 0 : it->second;
}

void MultiPoly::add_term(const Exponents& exps, Int c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (inserted)
        return;
    it->second = checked_add(it->second, c);
    if (it->second == 0)
        terms_.erase(it);
}

std::optional<int> MultiPoly::homogeneous_degree() const
{
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < num_vars_; ++i)
            d += e[i];
        if (deg && *deg != d)
            return std::nullopt;
        deg = d;
    }
    return deg;
}

bool MultiPoly::is_symmetric() const
{
    // Adjacent transpositions generate the symmetric group.
    for (std::size_t i = 0; i + 1 < num_vars_; ++i) {
        for (const auto& [e, c] : terms_) {
            Exponents s = e;
            std::swap(s[i], s[i + 1]);
            if (coefficient(s) != c)
                return false;
        }
    }
    return true;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_)
        add_term(e, checked_sub(0, c));
    return *this;
}

MultiPoly& MultiPoly::operator*=(Int c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v = checked_mul(v, c);
    return *this;
}

MultiPoly MultiPoly::multiply(const MultiPoly& o) const
{
    require_same_vars(*this, o);
    MultiPoly out(num_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e{};
            for (std::size_t i = 0; i < num_vars_; ++i)
                e[i] = add_exponent(ea[i], eb[i]);
            out.add_term(e, checked_mul(ca, cb));
        }
    }
    return out;
}

MultiPoly MultiPoly::multiply_truncated(const MultiPoly& o, std::span<const std::uint8_t> cap) const
{
    require_same_vars(*this, o);
    if (cap.size() != num_vars_)
        throw std::invalid_argument("truncation cap must have one entry per variable");
    MultiPoly out(num_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e{};
            bool inside = true;
            for (std::size_t i = 0; i < num_vars_ && inside; ++i) {
                const unsigned s = unsigned(ea[i]) + unsigned(eb[i]);
                inside = s <= cap[i];
                e[i] = static_cast<std::uint8_t>(s);
            }
            if (inside)
                out.add_term(e, checked_mul(ca, cb));
        }
    }
    return out;
}

MultiPoly MultiPoly::pow(int e) const
{
    if (e < 0)
        throw std::invalid_argument("negative power");
    MultiPoly r = constant(num_vars_, 1);
    for (int i = 0; i < e; ++i)
        r = r * *this;
    return r;
}

MultiPoly MultiPoly::exact_divide(Int d) const
{
    if (d == 0)
        throw std::invalid_argument("division by zero");
    MultiPoly out(num_vars_);
    for (const auto& [e, c] : terms_) {
        if (c % d != 0)
            throw InternalError("exact_divide: coefficient " + std::to_string(c) + " not divisible by " + std::to_string(d));
        out.terms_.emplace(e, c / d);
    }
    return out;
}

MultiPoly MultiPoly::truncated(std::span<const std::uint8_t> cap) const
{
    if (cap.size() != num_vars_)
        throw std::invalid_argument("truncation cap must have one entry per variable");
    MultiPoly out(num_vars_);
    for (const auto& [e, c] : terms_) {
        bool inside = true;
        for (std::size_t i = 0; i < num_vars_ && inside; ++i)
            inside = e[i] <= cap[i];
        if (inside)
            out.terms_.emplace(e, c);
    }
    return out;
}

MultiPoly MultiPoly::tensor(const MultiPoly& o) const
{
    MultiPoly out(num_vars_ + o.num_vars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e{};
            for (std::size_t i = 0; i < num_vars_; ++i)
                e[i] = ea[i];
            for (std::size_t i = 0; i < o.num_vars_; ++i)
                e[num_vars_ + i] = eb[i];
            out.add_term(e, checked_mul(ca, cb));
        }
    }
    return out;
}

std::string MultiPoly::to_string(char var) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // Highest monomials first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int mag = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool any_var = false;
        std::ostringstream mono;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            if (e[i] == 0)
                continue;
            mono << (any_var ? "*" : "") << var << (i + 1);
            if (e[i] > 1)
                mono << "^" << int(e[i]);
            any_var = true;
        }
        if (!any_var)
            os << mag;
        else if (mag != 1)
            os << mag << "*" << mono.str();
        else
            os << mono.str();
    }
    return os.str();
}

Exponents exponents_of(std::span<const int> values)
{
    if (values.size() > kMaxVars)
        throw std::invalid_argument("too many exponents");
    Exponents e{};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > 255)
            throw std::invalid_argument("exponent out of range");
        e[i] = static_cast<std::uint8_t>(values[i]);
    }
    return e;
}

} // namespace escherpos
