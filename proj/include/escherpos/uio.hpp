#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace escherpos {

using Rational = boost::rational<long long>;

/// Simple undirected graph on vertices 0..n-1 stored as adjacency bitmasks.
class Graph {
public:
    static constexpr int kMaxVertices = 32;

    explicit Graph(int num_vertices = 0);

    int size() const { return static_cast<int>(adj_.size()); }
    void add_edge(int a, int b);
    bool adjacent(int a, int b) const { return (adj_[a] >> b) & 1u; }
    std::uint32_t neighbours(int v) const { return adj_[v]; }
    int degree(int v) const;
    int edge_count() const;
    /// Edges as (a, b) with a < b, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

    static Graph complete(int n);
    static Graph path(int n);

    /// Text form: vertex count on the first line, then one 1-based "i j" pair per line.
    std::string to_text() const;
    static Graph parse(std::string_view text);

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::uint32_t> adj_;
};

/// Strict partial order on elements 0..n-1.
class Poset {
public:
    /// less[i][j] means i < j. Throws std::invalid_argument unless the relation
    /// is irreflexive and transitive.
    explicit Poset(std::vector<std::vector<bool>> less);

    int size() const { return static_cast<int>(less_.size()); }
    bool less(int a, int b) const { return less_[a][b]; }
    bool comparable(int a, int b) const { return less_[a][b] || less_[b][a]; }

    static Poset chain(int n);
    static Poset disjoint_union(const Poset& a, const Poset& b);

private:
    std::vector<std::vector<bool>> less_;
};

enum class Relation { Prec, Succ, Intersect };

std::string_view to_string(Relation r);

/// Unit interval order in canonical Hessenberg form. Elements are 1..N ordered
/// by left endpoint; for i < j, i and j intersect iff j <= h(i), otherwise i ≺ j.
class Uio {
public:
    /// Throws std::invalid_argument("invalid Hessenberg vector") on bad input.
    static Uio from_hessenberg(std::vector<int> h);
    static Uio from_left_endpoints(std::span<const Rational> xs);
    /// Parses the comma-separated text form, e.g. "2,3,3".
    static Uio parse(std::string_view text);

    int size() const { return static_cast<int>(h_.size()); }
    /// 1-based element index.
    int h(int i) const { return h_[i - 1]; }
    const std::vector<int>& hessenberg() const { return h_; }

    /// Trichotomy for i != j; throws std::invalid_argument for i == j.
    Relation relation(int i, int j) const;
    /// i → j: i intersects j or lies left of it. Always true for i == j.
    bool arrow(int i, int j) const { return i <= h_[j - 1]; }
    bool precedes(int i, int j) const { return i < j && j > h_[i - 1]; }
    bool intersects(int i, int j) const { return i != j && arrow(i, j) && arrow(j, i); }

    /// Sub-UIO on the given elements (1-based), relabelled 1..|S| in order.
    Uio induced(std::span<const int> subset) const;
    /// Left endpoints realising this order; from_left_endpoints inverts it.
    std::vector<Rational> interval_realization() const;

    std::string to_string() const;

    auto operator<=>(const Uio&) const = default;

private:
    explicit Uio(std::vector<int> h)
        : h_(std::move(h))
    {
    }
    std::vector<int> h_;
};

/// Every Hessenberg vector of length N, lexicographic. Requires 1 <= N <= 12.
std::vector<Uio> generate_all(int N);

/// Graph on vertices 0..N-1 (element i ↦ vertex i-1).
Graph incomparability_graph(const Uio& u);
Poset poset_of(const Uio& u);

/// True iff P contains no chains of lengths a and b whose elements are pairwise
/// incomparable across the two chains. Brute force; intended for small posets.
bool is_ab_free(const Poset& p, int a, int b);

} // namespace escherpos
