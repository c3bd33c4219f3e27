#include "escherpos/chromo.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace escherpos {

AlphaMap::AlphaMap(std::vector<int> multiplicity)
    : mult_(std::move(multiplicity))
{
    for (int m : mult_)
        if (m < 1)
            throw std::invalid_argument("alpha multiplicities must be positive");
}

int AlphaMap::total() const
{
    return std::accumulate(mult_.begin(), mult_.end(), 0);
}

std::vector<AlphaMap> alpha_maps_up_to(int n, int max_total)
{
    std::vector<AlphaMap> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int budget) {
        if (static_cast<int>(cur.size()) == n) {
            out.emplace_back(cur);
            return;
        }
        const int left = n - static_cast<int>(cur.size()) - 1; // later vertices need >= 1 each
        for (int m = 1; m <= budget - left; ++m) {
            cur.push_back(m);
            rec(budget - m);
            cur.pop_back();
        }
    };
    if (n >= 0 && max_total >= n)
        rec(max_total);
    return out;
}

namespace {

void require_colors(const Graph& g, int colors)
{
    if (colors < g.size())
        throw std::invalid_argument("insufficient colors for faithful expansion");
    if (colors > static_cast<int>(kMaxVars))
        throw std::invalid_argument("too many colors for MultiPoly");
}

} // namespace

MultiPoly chromatic_sym(const Graph& g, int colors)
{
    require_colors(g, colors);
    const int n = g.size();
    MultiPoly out(static_cast<std::size_t>(std::max(colors, 1)));
    if (n == 0) {
        out.add_term(Exponents{}, 1);
        return out;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });

    // forbidden[v][c]: number of coloured neighbours of v using colour c.
    std::vector<std::vector<int>> forbidden(n, std::vector<int>(colors, 0));
    std::vector<int> colour(n, -1);
    Exponents exps{};

    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            out.add_term(exps, 1);
            return;
        }
        const int v = order[depth];
        for (int c = 0; c < colors; ++c) {
            if (forbidden[v][c])
                continue;
            bool dead_end = false;
            for (int w = 0; w < n; ++w) {
                if (!g.adjacent(v, w) || colour[w] >= 0)
                    continue;
                ++forbidden[w][c];
                if (std::none_of(forbidden[w].begin(), forbidden[w].end(), [](int f) { return f == 0; }))
                    dead_end = true;
            }
            colour[v] = c;
            ++exps[c];
            if (!dead_end)
                rec(depth + 1);
            --exps[c];
            colour[v] = -1;
            for (int w = 0; w < n; ++w)
                if (g.adjacent(v, w) && colour[w] < 0)
                    --forbidden[w][c];
        }
    };
    rec(0);
    return out;
}

MultiPoly chromatic_sym_edges(const Graph& g, int colors)
{
    require_colors(g, colors);
    const auto edges = g.edges();
    if (edges.size() > 24)
        throw std::invalid_argument("chromatic_sym_edges: too many edges for subset enumeration");
    const int n = g.size();
    const std::size_t vars = static_cast<std::size_t>(std::max(colors, 1));

    std::map<Partition, Int> signed_counts;
    std::vector<int> parent(n);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    const std::uint64_t subsets = std::uint64_t{1} << edges.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (s >> e & 1u)
                parent[find(edges[e].first)] = find(edges[e].second);
        std::vector<int> sizes(n, 0);
        for (int v = 0; v < n; ++v)
            ++sizes[find(v)];
        std::vector<int> parts;
        for (int sz : sizes)
            if (sz > 0)
                parts.push_back(sz);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        Int& slot = signed_counts[Partition(std::move(parts))];
        slot += (std::popcount(s) % 2) ? -1 : 1;
    }

    MultiPoly out(vars);
    for (const auto& [lambda, count] : signed_counts) {
        if (count == 0)
            continue;
        MultiPoly term = MultiPoly::constant(vars, count);
        for (int part : lambda.parts())
            term = term * p_poly(part, vars);
        out += term;
    }
    return out;
}

EBasisExpr e_coefficients(const Graph& g, const EBasisSolver& solver)
{
    if (solver.degree() != g.size())
        throw std::invalid_argument("e_coefficients: solver degree does not match graph size");
    if (g.size() == 0) {
        EBasisExpr one;
        one.add(Partition{}, 1);
        return one;
    }
    return solver.solve(chromatic_sym(g, g.size()));
}

EBasisExpr e_coefficients(const Graph& g)
{
    return e_coefficients(g, EBasisSolver(g.size()));
}

Graph clique_expand(const Graph& g, const AlphaMap& alpha)
{
    if (alpha.size() != g.size())
        throw std::invalid_argument("clique_expand: alpha must have one entry per vertex");
    std::vector<int> offset(g.size() + 1, 0);
    for (int v = 0; v < g.size(); ++v)
        offset[v + 1] = offset[v] + alpha[v];
    Graph out(offset.back());
    for (int v = 0; v < g.size(); ++v) {
        for (int a = offset[v]; a < offset[v + 1]; ++a)
            for (int b = a + 1; b < offset[v + 1]; ++b)
                out.add_edge(a, b);
        for (int w = v + 1; w < g.size(); ++w)
            if (g.adjacent(v, w))
                for (int a = offset[v]; a < offset[v + 1]; ++a)
                    for (int b = offset[w]; b < offset[w + 1]; ++b)
                        out.add_edge(a, b);
    }
    return out;
}

namespace {

// Acyclic orientations of G[remaining] whose sinks avoid `no_sink`, counted by
// peeling off the sink set layer by layer. Each orientation is reached once.
class SinkPeeler {
public:
    explicit SinkPeeler(const Graph& g)
        : g_(g)
    {
    }

    bool independent(std::uint32_t s) const
    {
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if (g_.neighbours(v) & s)
                return false;
        }
        return true;
    }

    std::uint32_t without_neighbour_in(std::uint32_t set, std::uint32_t s) const
    {
        std::uint32_t out = 0;
        for (std::uint32_t rest = set; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if (!(g_.neighbours(v) & s))
                out |= 1u << v;
        }
        return out;
    }

    Int count(std::uint32_t remaining, std::uint32_t no_sink)
    {
        if (remaining == 0)
            return 1;
        const std::uint64_t key = (std::uint64_t{remaining} << 32) | no_sink;
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Int total = 0;
        const std::uint32_t candidates = remaining & ~no_sink;
        for (std::uint32_t s = candidates; s; s = (s - 1) & candidates) {
            if (!independent(s))
                continue;
            const std::uint32_t rest = remaining & ~s;
            total = checked_add(total, count(rest, without_neighbour_in(rest, s)));
        }
        memo_.emplace(key, total);
        return total;
    }

private:
    const Graph& g_;
    std::unordered_map<std::uint64_t, Int> memo_;
};

} // namespace

std::map<int, Int> sink_histogram(const Graph& g)
{
    if (g.size() > 8)
        throw std::invalid_argument("sink_histogram: at most 8 vertices");
    std::map<int, Int> hist;
    if (g.size() == 0)
        return hist;
    SinkPeeler peeler(g);
    const std::uint32_t all = (1u << g.size()) - 1;
    for (std::uint32_t s = all; s; s = (s - 1) & all) {
        if (!peeler.independent(s))
            continue;
        const std::uint32_t rest = all & ~s;
        const Int c = peeler.count(rest, peeler.without_neighbour_in(rest, s));
        if (c != 0) {
            Int& slot = hist[std::popcount(s)];
            slot = checked_add(slot, c);
        }
    }
    return hist;
}

std::map<int, Int> coefficient_sums_by_length(const EBasisExpr& expr)
{
    std::map<int, Int> out;
    for (const auto& [lambda, c] : expr.coeffs) {
        Int& slot = out[lambda.length()];
        slot = checked_add(slot, c);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

PositivityReport positivity_report(const EBasisExpr& expr)
{
    PositivityReport report;
    for (const auto& [lambda, c] : expr.coeffs) {
        if (c < 0) {
            report.is_e_positive = false;
            report.negative_terms.push_back(lambda);
        }
    }
    return report;
}

} // namespace escherpos
