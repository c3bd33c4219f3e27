#include <doctest.h>

#include <random>

#include "escherpos/ghom.hpp"
#include "oracles.hpp"

using namespace escherpos;

namespace {

MultiPoly vars_sum(int n)
{
    MultiPoly s(n);
    for (int i = 0; i < n; ++i)
        s += MultiPoly::variable(n, i);
    return s;
}

EBasisExpr single(std::vector<int> parts, Int c = 1)
{
    EBasisExpr e;
    e.add(Partition(std::move(parts)), c);
    return e;
}

} // namespace

TEST_CASE("e_G examples")
{
    const auto k2 = Graph::complete(2);
    CHECK(e_G(k2, 2).poly.is_zero());
    CHECK(e_G(k2, 1).poly == vars_sum(2));
    CHECK(e_G(k2, 0).poly == MultiPoly::constant(2, 1));
    CHECK(e_G(k2, -1).poly.is_zero());
    const auto v1v3 = MultiPoly::variable(3, 0) * MultiPoly::variable(3, 2);
    CHECK(e_G(Graph::path(3), 2).poly == v1v3);
    CHECK(e_G(Graph::path(3), 3).poly.is_zero());
}

TEST_CASE("apply_rho examples")
{
    for (int n = 2; n <= 5; ++n)
        CHECK(apply_rho(Graph::complete(n), single({n})).poly.is_zero());

    EBasisExpr p2;
    p2.add(Partition({1, 1}), 1);
    p2.add(Partition({2}), -2);
    const auto got = apply_rho(Graph::complete(2), p2).poly;
    CHECK(got == vars_sum(2) * vars_sum(2));
    CHECK(got.coefficient(exponents_of(std::vector<int>{1, 1})) == 2);

    for (int N = 1; N <= 4; ++N)
        for (const auto& u : generate_all(N))
            CHECK(apply_rho(incomparability_graph(u), single({1})).poly == vars_sum(N));
}

TEST_CASE("p_G, m_G, s_G")
{
    CHECK(squarefree_coeff(p_G(Graph::complete(2), 2), 2) == 2);
    for (int N = 1; N <= 4; ++N)
        for (const auto& u : generate_all(N)) {
            const auto g = incomparability_graph(u);
            CHECK(m_G(g, Partition({N})).poly == p_G(g, N).poly);
        }
    const auto path = Graph::path(3);
    CHECK(s_G(path, Partition({1, 1, 1})).poly == e_G(path, 3).poly);
    CHECK(s_G(path, Partition({1, 1, 1})).poly.is_zero());
    CHECK_THROWS_AS(p_G(path, 0), std::invalid_argument);
}

TEST_CASE("squarefree_coeff and coeff_alpha")
{
    const auto s = vars_sum(2);
    CHECK(squarefree_coeff(GPoly{s * s, std::nullopt}, 2) == 2);
    const auto x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
    CHECK(squarefree_coeff(GPoly{x1 * x1 + x2 * x2, std::nullopt}, 2) == 0);
    CHECK(squarefree_coeff(p_G(incomparability_graph(Uio::from_hessenberg({2, 3, 3})), 3), 3) == 3);

    const GPoly cube{s.pow(3), std::nullopt};
    CHECK(coeff_alpha(cube, AlphaMap({2, 1})) == 3);
    CHECK(coeff_alpha(cube, AlphaMap::ones(2)) == 0);
    const GPoly sq{s * s, std::nullopt};
    CHECK(coeff_alpha(sq, AlphaMap::ones(2)) == squarefree_coeff(sq, 2));

    // m_{21} on K_2 at α = (2,1) against c_{21}(X_{K_3}) = 0
    const auto k2 = Graph::complete(2);
    const AlphaMap a({2, 1});
    CHECK(coeff_alpha(m_G(k2, Partition({2, 1}), alpha_cap(a)), a) == 0);
    CHECK(e_coefficients(clique_expand(k2, a))[Partition({2, 1})] == 0);
}

TEST_CASE("truncated products agree with exact products inside the cap")
{
    for (const auto& u : generate_all(4)) {
        const auto g = incomparability_graph(u);
        for (const auto& lambda : partitions_of(4)) {
            const auto exact = m_G(g, lambda).poly;
            for (const auto& alpha : alpha_maps_up_to(4, 6)) {
                const auto cap = alpha_cap(alpha);
                const auto trunc = m_G(g, lambda, cap);
                CHECK(trunc.poly == exact.truncated(cap));
                for (const auto& [e, c] : trunc.poly.terms())
                    for (int v = 0; v < 4; ++v)
                        CHECK(e[v] <= cap[v]);
            }
        }
    }
}

TEST_CASE("m_coeff_U examples")
{
    CHECK(m_coeff_U(Uio::from_hessenberg({1, 2, 3}), Partition({3})) == 0);
    CHECK(m_coeff_U(Uio::from_hessenberg({3, 3, 3}), Partition({3})) == 6);
    CHECK(m_coeff_U(Uio::from_hessenberg({2, 3, 3}), Partition({2, 1})) == 1);
    CHECK_THROWS_AS(m_coeff_U(Uio::from_hessenberg({2, 3, 3}), Partition({2})), std::invalid_argument);
}

TEST_CASE("m_coeff_U equals the e-coefficient of X")
{
    for (int N = 1; N <= 6; ++N) {
        const EBasisSolver solver(N);
        for (const auto& u : generate_all(N)) {
            const auto c = e_coefficients(incomparability_graph(u), solver);
            for (const auto& lambda : partitions_of(N))
                CHECK(m_coeff_U(u, lambda) == c[lambda]);
        }
    }
}

TEST_CASE("rho is a ring homomorphism")
{
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::bernoulli_distribution keep(0.5);
    auto random_expr = [&](int d) {
        EBasisExpr e;
        for (const auto& lambda : partitions_of(d))
            if (keep(rng))
                e.add(lambda, coef(rng));
        return e;
    };
    const auto graphs = generate_all(4);
    for (int trial = 0; trial < 40; ++trial) {
        const int d1 = 1 + trial % 3, d2 = 1 + (trial / 3) % 2;
        const auto a = random_expr(d1), b = random_expr(d2);
        const auto product = a.reconstruct(d1 + d2) * b.reconstruct(d1 + d2);
        const auto ab = expand_in_e(product, d1 + d2);
        const auto g = incomparability_graph(graphs[trial % graphs.size()]);
        CHECK(apply_rho(g, ab).poly == apply_rho(g, a).poly * apply_rho(g, b).poly);
    }
}

TEST_CASE("both Cauchy forms agree")
{
    for (int N = 1; N <= 4; ++N)
        for (const auto& u : generate_all(N)) {
            const auto g = incomparability_graph(u);
            for (int n = 1; n <= 6; ++n) {
                const int r = std::min(n, 16 - N);
                CHECK(cauchy_m_e(g, n, r) == cauchy_e_m(g, n, r));
            }
        }
}

TEST_CASE("verify_gnechrom examples")
{
    CHECK(verify_gnechrom(Graph(1), AlphaMap({2})));
    CHECK(gnechrom_lhs(Graph(1), AlphaMap({2})) == e_poly(2, 2) * 2);
    CHECK(verify_gnechrom(Graph::path(3), AlphaMap::ones(3)));
    CHECK(gnechrom_lhs(Graph::path(3), AlphaMap::ones(3)) == chromatic_sym(Graph::path(3), 3));
    const auto g = incomparability_graph(Uio::from_hessenberg({2, 2}));
    CHECK(verify_gnechrom(g, AlphaMap({2, 1})));
    CHECK(gnechrom_lhs(g, AlphaMap({2, 1})) == chromatic_sym(Graph::complete(3), 3));
    CHECK_THROWS_AS(verify_gnechrom(Graph(1), AlphaMap({8})), std::invalid_argument);
}

TEST_CASE("clique-expansion coefficients carry the factorial weight")
{
    // c_λ(X_{G^α}) = Π α(v)! · [v^α] m_λ^G. Without the weight the identity
    // already fails for a single vertex with α = 2: [v^2] m_2^G = 1 but X_{K_2} = 2 e_2.
    CHECK(coeff_alpha(m_G(Graph(1), Partition({2}), alpha_cap(AlphaMap({2}))), AlphaMap({2})) == 1);
    CHECK(e_coefficients(Graph::complete(2))[Partition({2})] == 2);

    for (int N = 1; N <= 3; ++N)
        for (const auto& u : generate_all(N)) {
            const auto g = incomparability_graph(u);
            for (const auto& alpha : alpha_maps_up_to(N, 6)) {
                Int scale = 1;
                for (int m : alpha.values())
                    scale *= factorial(m);
                const auto c = e_coefficients(clique_expand(g, alpha));
                for (const auto& lambda : partitions_of(alpha.total()))
                    CHECK(scale * coeff_alpha(m_G(g, lambda, alpha_cap(alpha)), alpha) == c[lambda]);
            }
        }
}

TEST_CASE("m_G coefficients are non-negative at every alpha")
{
    for (int N = 1; N <= 5; ++N)
        for (const auto& u : generate_all(N)) {
            const auto g = incomparability_graph(u);
            for (const auto& alpha : alpha_maps_up_to(N, 6))
                for (const auto& lambda : partitions_of(alpha.total()))
                    CHECK(coeff_alpha(m_G(g, lambda, alpha_cap(alpha)), alpha) >= 0);
        }
}
