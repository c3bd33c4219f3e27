#include <doctest.h>

#include "escherpos/lemmas.hpp"
#include "oracles.hpp"

using namespace escherpos;

TEST_CASE("insertion_splice shapes")
{
    const Sequence u{1, 2, 3}, v{4, 5};
    // gap <= n: u_j .. u_{j+gap}, then v_{j+gap+1} .. v_{j+gap+k}
    CHECK(insertion_splice(u, v, 0, 2) == Sequence{1, 2, 3, 5, 4});
    CHECK(insertion_splice(u, v, 1, 1) == Sequence{2, 3, 5, 4});
    // gap > n: v_{j+n} .. v_{j+gap}, u_{j+gap-n+1} .. u_{j+gap}, v_{j+gap+1} ..
    CHECK(insertion_splice(u, v, 0, 4) == Sequence{5, 4, 3, 1, 2, 5, 4});
}

TEST_CASE("lemma suites hold exhaustively for N <= 6")
{
    for (int N = 2; N <= 6; ++N)
        for (const auto& u : generate_all(N)) {
            const auto es = enumerate_eschers(u, N);
            const auto tri = check_trichotomy(u, es);
            CHECK_MESSAGE(tri.ok(), tri.counterexample.value_or(""));
            const auto c2 = check_case2_shifted_windows(u, es);
            CHECK_MESSAGE(c2.ok(), c2.counterexample.value_or(""));
            const auto mix = check_no_mixed_purity(u, es);
            CHECK_MESSAGE(mix.ok(), mix.counterexample.value_or(""));
            const auto fe = check_subescher_exists(u, es);
            CHECK_MESSAGE(fe.ok(), fe.counterexample.value_or(""));
            const auto sp = check_insertion_splices(u);
            CHECK_MESSAGE(sp.ok(), sp.counterexample.value_or(""));
            CHECK(tri.instances == static_cast<Int>(es.size()) * N * (N - 1));
            CHECK(fe.instances == static_cast<Int>(es.size()) * (N - 1));
        }
}

TEST_CASE("lemma suites have work to do")
{
    Int case2 = 0, splices = 0, prefixes = 0;
    for (const auto& u : generate_all(5)) {
        const auto es = enumerate_eschers(u, 5);
        case2 += check_case2_shifted_windows(u, es).instances;
        splices += check_insertion_splices(u).instances;
        prefixes += check_no_mixed_purity(u, es).instances;
    }
    CHECK(case2 > 0);
    CHECK(splices > 0);
    CHECK(prefixes > 0);
}

TEST_CASE("closed logical sequences with r >= s never hold")
{
    for (int N = 1; N <= 5; ++N)
        for (const auto& u : generate_all(N)) {
            const auto out = check_closed_sequences(u, 5);
            CHECK_MESSAGE(out.ok(), out.counterexample.value_or(""));
            CHECK(out.instances > 0);
        }
}

TEST_CASE("closed sequences are checked against a direct enumeration")
{
    // Enumerate every closed pattern w_1 ◁ ... ◁ w_t ◁ w_1 (t <= 4) on N <= 4 and
    // count the true ones; the library walk visits exactly those.
    for (int N = 1; N <= 4; ++N)
        for (const auto& u : generate_all(N)) {
            const auto& h = u.hessenberg();
            auto holds = [&](int a, int b, bool prec) {
                return prec ? (a < b && b > h[a - 1]) : oracle::arrow(h, a, b);
            };
            Int true_statements = 0, bad = 0;
            for (int t = 1; t <= 4; ++t) {
                std::vector<int> w(t, 1);
                while (true) {
                    for (unsigned sym = 0; sym < (1u << t); ++sym) {
                        bool ok = true;
                        int r = 0;
                        for (int i = 0; i < t && ok; ++i) {
                            const bool prec = sym >> i & 1u;
                            r += prec;
                            ok = holds(w[i], w[(i + 1) % t], prec);
                        }
                        if (ok) {
                            ++true_statements;
                            bad += r >= t - r;
                        }
                    }
                    int pos = 0;
                    while (pos < t && w[pos] == N)
                        w[pos++] = 1;
                    if (pos == t)
                        break;
                    ++w[pos];
                }
            }
            const auto out = check_closed_sequences(u, 4);
            CHECK(out.instances == true_statements);
            CHECK(out.violations == bad);
            CHECK(bad == 0);
        }
}

TEST_CASE("open sequences with r >= s can hold")
{
    // The open reading (no return to w_1) is not an impossibility: 1 ≺ 2 in a 2-chain.
    const auto u = Uio::from_hessenberg({1, 2});
    CHECK(u.precedes(1, 2));
}
