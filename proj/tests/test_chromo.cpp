#include <doctest.h>

#include "escherpos/chromo.hpp"
#include "oracles.hpp"

using namespace escherpos;

namespace {

Graph G(const Uio& u)
{
    return incomparability_graph(u);
}

EBasisExpr expr(std::initializer_list<std::pair<std::vector<int>, Int>> terms)
{
    EBasisExpr e;
    for (const auto& [parts, c] : terms)
        e.add(Partition(parts), c);
    return e;
}

} // namespace

TEST_CASE("chromatic_sym examples")
{
    MultiPoly k3(3);
    k3.add_term(exponents_of(std::vector<int>{1, 1, 1}), 6);
    CHECK(chromatic_sym(Graph::complete(3), 3) == k3);
    CHECK(k3 == e_poly(3, 3) * 6);

    const auto x = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
    CHECK(chromatic_sym(Graph(2), 2) == x * x);

    CHECK(expand_in_e(chromatic_sym(Graph::path(3), 3), 3) == expr({{{2, 1}, 1}, {{3}, 3}}));
    CHECK_THROWS_WITH_AS(chromatic_sym(Graph::complete(3), 2), doctest::Contains("insufficient colors"),
                         std::invalid_argument);
    CHECK_THROWS_AS(chromatic_sym_edges(Graph::complete(3), 2), std::invalid_argument);
}

TEST_CASE("chromatic_sym_edges examples")
{
    const auto p1 = p_poly(1, 3), p2 = p_poly(2, 3), p3 = p_poly(3, 3);
    CHECK(chromatic_sym_edges(Graph::complete(2), 2) == p_poly(1, 2) * p_poly(1, 2) - p_poly(2, 2));
    CHECK(chromatic_sym_edges(Graph::complete(2), 2) == e_poly(2, 2) * 2);
    CHECK(chromatic_sym_edges(Graph::path(3), 3) == p1 * p1 * p1 - p1 * p2 * 2 + p3);
    CHECK(chromatic_sym_edges(Graph(3), 3) == p1 * p1 * p1);
}

TEST_CASE("both chromatic algorithms agree with exhaustive colouring")
{
    // every graph on up to 4 vertices, and UIO graphs up to 5 vertices
    for (int n = 1; n <= 4; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            Graph g(n);
            int bit = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b, ++bit)
                    if (mask >> bit & 1u)
                        g.add_edge(a, b);
            const auto ref = oracle::chromatic(g, n);
            CHECK(chromatic_sym(g, n) == ref);
            CHECK(chromatic_sym_edges(g, n) == ref);
        }
    }
    for (const auto& u : generate_all(5)) {
        const auto ref = oracle::chromatic(G(u), 5);
        CHECK(chromatic_sym(G(u), 5) == ref);
        CHECK(chromatic_sym_edges(G(u), 5) == ref);
    }
}

TEST_CASE("dual algorithms agree on graphs with at most 6 vertices and 9 edges")
{
    // deterministic sample: every edge subset of K_6 whose mask is ≡ 0 mod 7 and has ≤ 9 edges
    const int n = 6;
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            all.emplace_back(a, b);
    int tested = 0;
    for (unsigned mask = 0; mask < (1u << all.size()); mask += 7) {
        if (std::popcount(mask) > 9)
            continue;
        Graph g(n);
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1u)
                g.add_edge(all[i].first, all[i].second);
        CHECK(chromatic_sym(g, n) == chromatic_sym_edges(g, n));
        ++tested;
    }
    CHECK(tested > 1000);
}

TEST_CASE("e_coefficients examples")
{
    CHECK(e_coefficients(Graph::complete(4)) == expr({{{4}, 24}}));
    CHECK(e_coefficients(Graph(3)) == expr({{{1, 1, 1}, 1}}));
    CHECK(e_coefficients(G(Uio::from_hessenberg({2, 3, 3}))) == expr({{{2, 1}, 1}, {{3}, 3}}));
    for (int n = 1; n <= 6; ++n)
        CHECK(e_coefficients(Graph::complete(n)) == expr({{{n}, factorial(n)}}));
}

TEST_CASE("e_coefficients reconstruct X_G")
{
    for (int N = 1; N <= 5; ++N)
        for (const auto& u : generate_all(N)) {
            const auto e = e_coefficients(G(u));
            CHECK(e.reconstruct(N) == oracle::chromatic(G(u), N));
        }
}

TEST_CASE("clique_expand")
{
    const auto path = Graph::path(3);
    CHECK(clique_expand(path, AlphaMap::ones(3)) == path);
    CHECK(clique_expand(Graph(1), AlphaMap({3})) == Graph::complete(3));
    CHECK(clique_expand(Graph::complete(2), AlphaMap({2, 1})) == Graph::complete(3));
    CHECK_THROWS_AS(AlphaMap({1, 0}), std::invalid_argument);

    const auto g = clique_expand(path, AlphaMap({1, 2, 1}));
    CHECK(g.size() == 4);
    // the two copies of vertex 2 are adjacent and both meet 1 and 3; 1 and 3 stay apart
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(0, 2));
    CHECK(g.adjacent(3, 1));
    CHECK_FALSE(g.adjacent(0, 3));

    for (const auto& u : generate_all(4))
        CHECK(chromatic_sym(clique_expand(G(u), AlphaMap::ones(4)), 4) == chromatic_sym(G(u), 4));
}

TEST_CASE("alpha_maps_up_to")
{
    const auto maps = alpha_maps_up_to(2, 4);
    // totals 2, 3, 4: (1,1) (1,2) (2,1) (1,3) (2,2) (3,1)
    CHECK(maps.size() == 6);
    for (const auto& a : maps) {
        CHECK(a.size() == 2);
        CHECK(a.total() >= 2);
        CHECK(a.total() <= 4);
    }
}

TEST_CASE("sink_histogram")
{
    CHECK(sink_histogram(Graph::complete(3)) == std::map<int, Int>{{1, 6}});
    CHECK(sink_histogram(Graph(2)) == std::map<int, Int>{{2, 1}});
    CHECK(sink_histogram(Graph::path(3)) == std::map<int, Int>{{1, 3}, {2, 1}});
    CHECK(coefficient_sums_by_length(e_coefficients(Graph::path(3))) == std::map<int, Int>{{1, 3}, {2, 1}});
    CHECK_THROWS_AS(sink_histogram(Graph(9)), std::invalid_argument);

    for (int N = 1; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            CHECK(sink_histogram(G(u)) == oracle::sinks(G(u)));
}

TEST_CASE("sink theorem on UIO graphs")
{
    for (int N = 1; N <= 6; ++N) {
        const EBasisSolver solver(N);
        for (const auto& u : generate_all(N))
            CHECK(sink_histogram(G(u)) == coefficient_sums_by_length(e_coefficients(G(u), solver)));
    }
}

TEST_CASE("positivity_report")
{
    CHECK(positivity_report(expr({{{3}, 6}})).is_e_positive);
    const auto r = positivity_report(expr({{{2, 1}, -1}, {{3}, 3}}));
    CHECK_FALSE(r.is_e_positive);
    CHECK(r.negative_terms == std::vector<Partition>{Partition({2, 1})});

    for (int N = 1; N <= 6; ++N) {
        const EBasisSolver solver(N);
        for (const auto& u : generate_all(N))
            CHECK(positivity_report(e_coefficients(G(u), solver)).is_e_positive);
    }
}

TEST_CASE("UIO chromatic functions are Schur-positive")
{
    for (int N = 1; N <= 5; ++N) {
        const SchurSolver solver(N);
        for (const auto& u : generate_all(N)) {
            const auto s = solver.solve(chromatic_sym(G(u), N));
            for (const auto& [lambda, c] : s.coeffs)
                CHECK(c >= 0);
        }
    }
}
