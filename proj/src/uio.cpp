#include "escherpos/uio.hpp"
#include "escherpos/integer.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace escherpos {

// ---------------------------------------------------------------- Graph

Graph::Graph(int num_vertices)
{
    if (num_vertices < 0 || num_vertices > kMaxVertices)
        throw std::invalid_argument("graph size out of range");
    adj_.assign(num_vertices, 0);
}

void Graph::add_edge(int a, int b)
{
    if (a < 0 || b < 0 || a >= size() || b >= size())
        throw std::out_of_range("edge endpoint out of range");
    if (a == b)
        throw std::invalid_argument("loops are not allowed");
    adj_[a] |= 1u << b;
    adj_[b] |= 1u << a;
}

int Graph::degree(int v) const
{
    return std::popcount(adj_[v]);
}

int Graph::edge_count() const
{
    int total = 0;
    for (auto m : adj_)
        total += std::popcount(m);
    return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (adjacent(a, b))
                out.emplace_back(a, b);
    return out;
}

Graph Graph::complete(int n)
{
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            g.add_edge(a, b);
    return g;
}

Graph Graph::path(int n)
{
    Graph g(n);
    for (int a = 0; a + 1 < n; ++a)
        g.add_edge(a, a + 1);
    return g;
}

std::string Graph::to_text() const
{
    std::ostringstream os;
    os << size() << "\n";
    for (auto [a, b] : edges())
        os << a + 1 << " " << b + 1 << "\n";
    return os.str();
}

Graph Graph::parse(std::string_view text)
{
    std::istringstream is{std::string(text)};
    int n = 0;
    if (!(is >> n))
        throw std::invalid_argument("graph text: missing vertex count");
    Graph g(n);
    int a = 0, b = 0;
    while (is >> a) {
        if (!(is >> b))
            throw std::invalid_argument("graph text: dangling edge endpoint");
        if (a < 1 || b < 1 || a > n || b > n)
            throw std::invalid_argument("graph text: endpoint out of range");
        g.add_edge(a - 1, b - 1);
    }
    if (!is.eof())
        throw std::invalid_argument("graph text: unparseable token");
    return g;
}

// ---------------------------------------------------------------- Poset

Poset::Poset(std::vector<std::vector<bool>> less)
    : less_(std::move(less))
{
    const int n = size();
    for (const auto& row : less_)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("poset relation matrix must be square");
    for (int a = 0; a < n; ++a) {
        if (less_[a][a])
            throw std::invalid_argument("poset relation must be irreflexive");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (less_[a][b] && less_[b][c] && !less_[a][c])
                    throw std::invalid_argument("poset relation must be transitive");
    }
}

Poset Poset::chain(int n)
{
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            less[a][b] = true;
    return Poset(std::move(less));
}

Poset Poset::disjoint_union(const Poset& a, const Poset& b)
{
    const int n = a.size() + b.size();
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            less[i][j] = a.less(i, j);
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            less[a.size() + i][a.size() + j] = b.less(i, j);
    return Poset(std::move(less));
}

// ---------------------------------------------------------------- Uio

std::string_view to_string(Relation r)
{
    switch (r) {
    case Relation::Prec:
        return "prec";
    case Relation::Succ:
        return "succ";
    case Relation::Intersect:
        return "intersect";
    }
    return "?";
}

Uio Uio::from_hessenberg(std::vector<int> h)
{
    const int n = static_cast<int>(h.size());
    if (n == 0)
        throw std::invalid_argument("invalid Hessenberg vector: empty");
    for (int i = 1; i <= n; ++i) {
        const int v = h[i - 1];
        if (v < i || v > n || (i > 1 && v < h[i - 2]))
            throw std::invalid_argument("invalid Hessenberg vector");
    }
    return Uio(std::move(h));
}

Uio Uio::from_left_endpoints(std::span<const Rational> xs)
{
    const int n = static_cast<int>(xs.size());
    if (n == 0)
        throw std::invalid_argument("from_left_endpoints: no intervals");
    std::vector<Rational> sorted(xs.begin(), xs.end());
    std::stable_sort(sorted.begin(), sorted.end());
    std::vector<int> h(n);
    for (int i = 0; i < n; ++i) {
        int last = i;
        while (last + 1 < n && sorted[last + 1] < sorted[i] + 1)
            ++last;
        h[i] = last + 1;
    }
    return from_hessenberg(std::move(h));
}

Uio Uio::parse(std::string_view text)
{
    std::vector<int> h;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            throw std::invalid_argument("UIO text: empty entry in '" + std::string(text) + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw std::invalid_argument("UIO text: bad entry '" + token + "'");
        h.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == '[' || c == ']')
            continue;
        if (c == ',')
            flush();
        else
            token.push_back(c);
    }
    flush();
    return from_hessenberg(std::move(h));
}

Relation Uio::relation(int i, int j) const
{
    if (i == j)
        throw std::invalid_argument("self-relation undefined; use arrow");
    if (i < 1 || j < 1 || i > size() || j > size())
        throw std::out_of_range("UIO element out of range");
    if (i < j)
        return j <= h(i) ? Relation::Intersect : Relation::Prec;
    return i <= h(j) ? Relation::Intersect : Relation::Succ;
}

Uio Uio::induced(std::span<const int> subset) const
{
    if (subset.empty())
        throw std::invalid_argument("induced: empty subset");
    std::vector<int> s(subset.begin(), subset.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("induced: repeated element");
    if (s.front() < 1 || s.back() > size())
        throw std::out_of_range("induced: element out of range");
    std::vector<int> h2(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
        const int reach = h(s[a]);
        h2[a] = static_cast<int>(std::upper_bound(s.begin(), s.end(), reach) - s.begin());
    }
    return from_hessenberg(std::move(h2));
}

std::vector<Rational> Uio::interval_realization() const
{
    // Difference constraints x_v - x_u <= w, solved by Bellman-Ford from a
    // virtual source: i ≺ j needs x_j >= x_i + 1, incomparable i < j needs
    // x_j <= x_i + 1 - d, and consecutive elements are d apart.
    const int n = size();
    const Rational d(1, n + 1);
    struct Edge {
        int from, to;
        Rational w;
    };
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (precedes(i, j))
                edges.push_back({j - 1, i - 1, Rational(-1)});
            else
                edges.push_back({i - 1, j - 1, 1 - d});
        }
    for (int j = 2; j <= n; ++j)
        edges.push_back({j - 1, j - 2, -d});
    std::vector<Rational> x(n, Rational(0));
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (const auto& e : edges)
            if (x[e.from] + e.w < x[e.to]) {
                x[e.to] = x[e.from] + e.w;
                changed = true;
            }
        if (!changed)
            break;
        if (round == n)
            throw InternalError("interval_realization: infeasible constraints for h=" + to_string());
    }
    const Rational shift = x[0];
    for (auto& v : x)
        v -= shift;
    return x;
}

std::string Uio::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < h_.size(); ++i)
        os << (i ? "," : "") << h_[i];
    return os.str();
}

std::vector<Uio> generate_all(int N)
{
    if (N < 1 || N > 12)
        throw std::invalid_argument("generate_all: N must be in [1, 12]");
    std::vector<Uio> out;
    std::vector<int> h;
    std::function<void()> rec = [&] {
        const int i = static_cast<int>(h.size()) + 1;
        if (i > N) {
            out.push_back(Uio::from_hessenberg(h));
            return;
        }
        const int lo = std::max(i, h.empty() ? 1 : h.back());
        for (int v = lo; v <= N; ++v) {
            h.push_back(v);
            rec();
            h.pop_back();
        }
    };
    rec();
    return out;
}

Graph incomparability_graph(const Uio& u)
{
    Graph g(u.size());
    for (int i = 1; i <= u.size(); ++i)
        for (int j = i + 1; j <= u.h(i); ++j)
            g.add_edge(i - 1, j - 1);
    return g;
}

Poset poset_of(const Uio& u)
{
    const int n = u.size();
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            less[i - 1][j - 1] = u.precedes(i, j);
    return Poset(std::move(less));
}

namespace {

std::vector<std::uint32_t> chains_of_length(const Poset& p, int len)
{
    std::vector<std::uint32_t> out;
    std::vector<int> current;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t mask) {
        if (static_cast<int>(current.size()) == len) {
            out.push_back(mask);
            return;
        }
        for (int x = 0; x < p.size(); ++x) {
            if (!current.empty() && !p.less(current.back(), x))
                continue;
            current.push_back(x);
            rec(mask | (1u << x));
            current.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

bool is_ab_free(const Poset& p, int a, int b)
{
    if (a < 1 || b < 1)
        throw std::invalid_argument("is_ab_free: chain lengths must be positive");
    if (p.size() > 31)
        throw std::invalid_argument("is_ab_free: poset too large");
    const int n = p.size();
    std::vector<std::uint32_t> incomparable(n, 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y && !p.comparable(x, y))
                incomparable[x] |= 1u << y;

    const auto chains_a = chains_of_length(p, a);
    const auto chains_b = a == b ? chains_a : chains_of_length(p, b);
    for (auto ca : chains_a) {
        std::uint32_t allowed = ~0u;
        for (int x = 0; x < n; ++x)
            if (ca & (1u << x))
                allowed &= incomparable[x];
        for (auto cb : chains_b)
            if ((cb & allowed) == cb)
                return false;
    }
    return true;
}

} // namespace escherpos
