#include "escherpos/ghom.hpp"

#include <bit>
#include <functional>
#include <map>
#include <stdexcept>

namespace escherpos {

namespace {

std::size_t vertex_vars(const Graph& g)
{
    return static_cast<std::size_t>(g.size());
}

GPoly with_cap(MultiPoly p, const Cap& cap)
{
    if (cap) {
        if (cap->size() != p.num_vars())
            throw std::invalid_argument("cap must have one entry per vertex");
        p = p.truncated(*cap);
    }
    return GPoly{std::move(p), cap};
}

EBasisExpr e_expansion_of(const MultiPoly& f, int weight)
{
    const std::size_t vars = static_cast<std::size_t>(std::max(weight, 1));
    if (weight == 0) {
        EBasisExpr one;
        one.add(Partition{}, f.coefficient(Exponents{}));
        return one;
    }
    return expand_in_e(f, vars);
}

} // namespace

GPoly GPoly::operator*(const GPoly& o) const
{
    const Cap& c = cap ? cap : o.cap;
    if (cap && o.cap && *cap != *o.cap)
        throw std::invalid_argument("GPoly product with mismatched caps");
    if (c)
        return GPoly{poly.multiply_truncated(o.poly, *c), c};
    return GPoly{poly * o.poly, std::nullopt};
}

std::vector<std::uint8_t> squarefree_cap(int n)
{
    return std::vector<std::uint8_t>(n, 1);
}

std::vector<std::uint8_t> alpha_cap(const AlphaMap& alpha)
{
    std::vector<std::uint8_t> cap;
    for (int m : alpha.values()) {
        if (m > 255)
            throw std::invalid_argument("alpha entry too large for a cap");
        cap.push_back(static_cast<std::uint8_t>(m));
    }
    return cap;
}

GPoly e_G(const Graph& g, int i, const Cap& cap)
{
    const std::size_t vars = vertex_vars(g);
    MultiPoly out(vars);
    if (i == 0) {
        out.add_term(Exponents{}, 1);
        return with_cap(std::move(out), cap);
    }
    if (i < 0 || i > g.size())
        return with_cap(std::move(out), cap);

    // Backtracking over vertices in increasing order; `blocked` holds the
    // neighbourhood of the chosen set.
    Exponents e{};
    std::function<void(int, int, std::uint32_t)> rec = [&](int next, int left, std::uint32_t blocked) {
        if (left == 0) {
            out.add_term(e, 1);
            return;
        }
        for (int v = next; v <= g.size() - left; ++v) {
            if (blocked >> v & 1u)
                continue;
            e[v] = 1;
            rec(v + 1, left - 1, blocked | g.neighbours(v));
            e[v] = 0;
        }
    };
    rec(0, i, 0);
    return with_cap(std::move(out), cap);
}

GPoly apply_rho(const Graph& g, const EBasisExpr& expr, const Cap& cap)
{
    const std::size_t vars = vertex_vars(g);
    std::map<int, GPoly> generators;
    auto generator = [&](int i) -> const GPoly& {
        auto it = generators.find(i);
        if (it == generators.end())
            it = generators.emplace(i, e_G(g, i, cap)).first;
        return it->second;
    };

    GPoly total{MultiPoly(vars), cap};
    for (const auto& [lambda, c] : expr.coeffs) {
        GPoly term = with_cap(MultiPoly::constant(vars, c), cap);
        for (int part : lambda.parts()) {
            term = term * generator(part);
            if (term.poly.is_zero())
                break;
        }
        total.poly += term.poly;
    }
    return total;
}

GPoly p_G(const Graph& g, int m, const Cap& cap)
{
    if (m < 1)
        throw std::invalid_argument("p_G: m must be positive");
    return apply_rho(g, expand_in_e(p_poly(m, m), m), cap);
}

GPoly m_G(const Graph& g, const Partition& lambda, const Cap& cap)
{
    const int w = lambda.weight();
    return apply_rho(g, e_expansion_of(m_poly(lambda, std::max(w, 1)), w), cap);
}

GPoly s_G(const Graph& g, const Partition& lambda, const Cap& cap)
{
    const int w = lambda.weight();
    return apply_rho(g, e_expansion_of(s_poly(lambda, std::max(w, 1)), w), cap);
}

Int squarefree_coeff(const GPoly& f, int n)
{
    if (n > static_cast<int>(f.poly.num_vars()))
        return 0;
    Exponents e{};
    for (int v = 0; v < n; ++v)
        e[v] = 1;
    return f.poly.coefficient(e);
}

Int coeff_alpha(const GPoly& f, const AlphaMap& alpha)
{
    if (alpha.size() > static_cast<int>(f.poly.num_vars()))
        return 0;
    return f.poly.coefficient(exponents_of(alpha.values()));
}

Int m_coeff_U(const Uio& u, const Partition& lambda)
{
    if (lambda.weight() != u.size())
        throw std::invalid_argument("m_coeff_U: partition weight must equal the UIO size");
    const Graph g = incomparability_graph(u);
    return squarefree_coeff(m_G(g, lambda, squarefree_cap(u.size())), u.size());
}

MultiPoly cauchy_m_e(const Graph& g, int n, int r, const Cap& vertex_cap)
{
    const std::size_t xr = static_cast<std::size_t>(r);
    MultiPoly total(xr + vertex_vars(g));
    for (const auto& lambda : partitions_of(n)) {
        if (lambda.length() > r)
            continue;
        EBasisExpr single;
        single.add(lambda, 1);
        const GPoly eg = apply_rho(g, single, vertex_cap);
        if (eg.poly.is_zero())
            continue;
        total += m_poly(lambda, xr).tensor(eg.poly);
    }
    return total;
}

MultiPoly cauchy_e_m(const Graph& g, int n, int r)
{
    const std::size_t xr = static_cast<std::size_t>(r);
    MultiPoly total(xr + vertex_vars(g));
    for (const auto& lambda : partitions_of(n)) {
        const MultiPoly ex = e_lambda_poly(lambda, xr);
        if (ex.is_zero())
            continue;
        total += ex.tensor(m_G(g, lambda).poly);
    }
    return total;
}

MultiPoly gnechrom_lhs(const Graph& g, const AlphaMap& alpha)
{
    if (alpha.size() != g.size())
        throw std::invalid_argument("gnechrom: alpha must have one entry per vertex");
    const int n = alpha.total();
    const int r = n;
    const MultiPoly t = cauchy_m_e(g, n, r, alpha_cap(alpha));

    Int scale = 1;
    for (int m : alpha.values())
        scale = checked_mul(scale, factorial(m));

    MultiPoly out(static_cast<std::size_t>(r));
    for (const auto& [e, c] : t.terms()) {
        bool match = true;
        for (int v = 0; v < g.size() && match; ++v)
            match = e[r + v] == alpha[v];
        if (!match)
            continue;
        Exponents x{};
        for (int i = 0; i < r; ++i)
            x[i] = e[i];
        out.add_term(x, checked_mul(c, scale));
    }
    return out;
}

bool verify_gnechrom(const Graph& g, const AlphaMap& alpha)
{
    const int n = alpha.total();
    if (n > 7)
        throw std::invalid_argument("verify_gnechrom: sum of alpha must be at most 7");
    return gnechrom_lhs(g, alpha) == chromatic_sym(clique_expand(g, alpha), n);
}

} // namespace escherpos
