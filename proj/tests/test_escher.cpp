#include <doctest.h>

#include <numeric>
#include <set>

#include "escherpos/escher.hpp"
#include "escherpos/ghom.hpp"
#include "oracles.hpp"

using namespace escherpos;

namespace {

Uio H(std::vector<int> h)
{
    return Uio::from_hessenberg(std::move(h));
}

// Rotation-invariant form of a cyclic sequence: rotate the minimum to the front.
Sequence canonical_cycle(Sequence s)
{
    std::rotate(s.begin(), std::min_element(s.begin(), s.end()), s.end());
    return s;
}

std::set<int> support(const Sequence& s)
{
    return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("sequence text form")
{
    CHECK(parse_sequence("1,3,2") == Sequence{1, 3, 2});
    CHECK(to_string(Sequence{1, 3, 2}) == "1,3,2");
    CHECK_THROWS_AS(parse_sequence("1,,2"), std::invalid_argument);
}

TEST_CASE("is_escher")
{
    const auto u = H({2, 3, 3});
    for (int x = 1; x <= 3; ++x)
        CHECK(is_escher(u, Sequence{x}));
    CHECK(is_escher(u, Sequence{1, 3, 2}));
    CHECK_FALSE(is_escher(u, Sequence{1, 2, 3}));
    CHECK_THROWS_AS(is_escher(u, Sequence{1, 1}), std::invalid_argument);
}

TEST_CASE("enumerate_eschers")
{
    CHECK(enumerate_eschers(H({1, 2, 3}), 3).empty());
    CHECK(enumerate_eschers(H({3, 3, 3}), 3).size() == 6);
    const std::vector<Sequence> expected{{1, 3, 2}, {2, 1, 3}, {3, 2, 1}};
    CHECK(enumerate_eschers(H({2, 3, 3}), 3) == expected);

    for (int N = 1; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            for (int m = 1; m <= N; ++m) {
                const auto es = enumerate_eschers(u, m);
                CHECK(static_cast<Int>(es.size()) == oracle::count_eschers(u.hessenberg(), m));
                CHECK(count_eschers(u, m) == static_cast<Int>(es.size()));
                CHECK(std::is_sorted(es.begin(), es.end()));
            }
}

TEST_CASE("is_correct")
{
    const auto u = H({2, 3, 3});
    for (int x = 1; x <= 3; ++x)
        CHECK(is_correct(u, Sequence{x}));
    CHECK(is_correct(u, Sequence{1, 2}));
    CHECK(is_correct(u, Sequence{2, 1}));
    CHECK_FALSE(is_correct(u, Sequence{1, 3}));
    CHECK_FALSE(is_correct(u, Sequence{1, 3, 2}));
    CHECK_FALSE(is_correct_literal(u, Sequence{1, 3, 2}));

    // both formulations agree on every arrow chain
    for (int N = 1; N <= 6; ++N)
        for (const auto& v : generate_all(N)) {
            Sequence w(N);
            std::iota(w.begin(), w.end(), 1);
            do {
                bool chain = true;
                for (int i = 0; i + 1 < N && chain; ++i)
                    chain = v.arrow(w[i], w[i + 1]);
                if (chain)
                    CHECK(is_correct(v, w) == is_correct_literal(v, w));
            } while (std::next_permutation(w.begin(), w.end()));
        }
}

TEST_CASE("count_full_corrects")
{
    CHECK(count_full_corrects(H({1, 2, 3})) == 0);
    CHECK(count_full_corrects(H({3, 3, 3})) == 6);
    CHECK(count_full_corrects(H({2, 3, 3})) == 3);
    CHECK(count_eschers(H({2, 3, 3}), 3) == 3);
    for (int N = 1; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            CHECK(count_full_corrects(u) == oracle::count_corrects(u.hessenberg()));
}

TEST_CASE("corrects, Eschers and m_N agree")
{
    for (int N = 1; N <= 6; ++N)
        for (const auto& u : generate_all(N)) {
            const Int e = count_eschers(u, N);
            CHECK(count_full_corrects(u) == e);
            CHECK(m_coeff_U(u, Partition({N})) == e);
            CHECK(e % N == 0);
        }
}

TEST_CASE("subescher_case")
{
    const auto u = H({2, 3, 3});
    const Sequence w{1, 3, 2};
    CHECK(subescher_case(u, w, 0, 1) == SubEscherCase::Case1);
    CHECK(subescher_case(u, w, 1, 1) == SubEscherCase::Case3);
    CHECK_THROWS_AS(subescher_case(u, w, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(subescher_case(u, Sequence{1, 2, 3}, 0, 1), std::invalid_argument);

    // k = 1: Case1 iff w_m → w_{m+2}
    for (int N = 3; N <= 6; ++N)
        for (const auto& v : generate_all(N))
            for (const auto& e : enumerate_eschers(v, N))
                for (int m = 0; m < N; ++m)
                    CHECK((subescher_case(v, e, m, 1) == SubEscherCase::Case1) == v.arrow(e[m], e[(m + 2) % N]));
}

TEST_CASE("first_valid_subescher")
{
    const auto fe = first_valid_subescher(H({2, 3, 3}), Sequence{1, 3, 2}, 1);
    REQUIRE(fe.has_value());
    CHECK(fe->index == 0);
    CHECK_FALSE(fe->exceptional);
    for (const auto& w : enumerate_eschers(H({3, 3, 3}), 3))
        CHECK(first_valid_subescher(H({3, 3, 3}), w, 1)->index == 0);
    CHECK_THROWS_AS(first_valid_subescher(H({2, 3, 3}), Sequence{1, 2, 3}, 1), std::invalid_argument);

    // definition: both windows are Eschers at the returned index, and no earlier index is Case1
    for (int N = 2; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            for (const auto& w : enumerate_eschers(u, N))
                for (int k = 1; k < N; ++k) {
                    const auto r = first_valid_subescher(u, w, k);
                    REQUIRE(r.has_value());
                    const int L = r->index;
                    Sequence a, b;
                    for (int j = 1; j <= k; ++j)
                        a.push_back(w[(L + j) % N]);
                    for (int j = k + 1; j <= N; ++j)
                        b.push_back(w[(L + j) % N]);
                    CHECK(oracle::cyclic_escher(u.hessenberg(), a));
                    CHECK(oracle::cyclic_escher(u.hessenberg(), b));
                    for (int m = 0; m < L; ++m)
                        CHECK(subescher_case(u, w, m, k) != SubEscherCase::Case1);
                    const bool wraps = L + k >= N;
                    CHECK(r->exceptional == wraps);
                }
}

TEST_CASE("purity")
{
    // 1→2→3 in the 3-chain with k = 1: the only window m = 0 has 2 → 2 and 1 → 3.
    const auto chain = H({1, 2, 3});
    CHECK(oracle::arrow(chain.hessenberg(), 1, 3));
    CHECK(purity(chain, Sequence{1, 2, 3}, 1) == Purity::NotPure);

    const auto u = H({2, 3, 3});
    CHECK(purity(u, Sequence{1, 2, 3}, 1) == Purity::NotPure);
    // 2 → 1 → 3 with k = 1: window m = 0 has 1 → 1 and 2 → 3, so Case1.
    CHECK(purity(u, Sequence{2, 1, 3}, 1) == Purity::NotPure);
    // 3 → 2 → 1 with k = 1: 3 ≻ 1, so Case3 only.
    CHECK(purity(u, Sequence{3, 2, 1}, 1) == Purity::PurePlus);
    // 3 → 1 fails
    CHECK_THROWS_AS(purity(u, Sequence{1, 3, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(purity(u, Sequence{2, 1}, 1), std::invalid_argument);

    // definition oracle on every arrow chain of distinct elements, N <= 5
    for (int N = 3; N <= 5; ++N)
        for (const auto& v : generate_all(N)) {
            const auto& h = v.hessenberg();
            Sequence w(N);
            std::iota(w.begin(), w.end(), 1);
            do {
                bool is_chain = true;
                for (int i = 0; i + 1 < N && is_chain; ++i)
                    is_chain = oracle::arrow(h, w[i], w[i + 1]);
                if (!is_chain)
                    continue;
                for (int k = 1; k + 2 <= N; ++k) {
                    bool c1 = false, c2 = false, c3 = false;
                    for (int m = 0; m + k + 1 < N; ++m) {
                        const bool a = oracle::arrow(h, w[m + k], w[m + 1]);
                        const bool b = oracle::arrow(h, w[m], w[m + k + 1]);
                        c1 |= a && b;
                        c2 |= !a && b;
                        c3 |= a && !b;
                    }
                    const Purity expected = c1 ? Purity::NotPure : (c2 ? Purity::PureMinus : Purity::PurePlus);
                    CHECK(purity(v, w, k) == expected);
                }
            } while (std::next_permutation(w.begin(), w.end()));
        }
}

TEST_CASE("valid_insertions")
{
    const auto u = H({2, 3, 3});
    CHECK(valid_insertions(u, Sequence{2, 1}, Sequence{3}) == std::vector<int>{1});
    CHECK(valid_insertions(u, Sequence{2, 3}, Sequence{1}) == std::vector<int>{0});
    CHECK(valid_insertions(H({3, 3, 3}), Sequence{1, 2}, Sequence{3}) == std::vector<int>{0, 1});
    CHECK(valid_insertions(H({3, 3, 3}), Sequence{2, 1}, Sequence{3}) == std::vector<int>{0, 1});
    CHECK_THROWS_AS(valid_insertions(u, Sequence{2, 1}, Sequence{1}), std::invalid_argument);
}

TEST_CASE("first_valid_insertion")
{
    CHECK(first_valid_insertion(H({2, 3, 3}), Sequence{2, 1}, Sequence{3}) == 1);
    for (const auto& p : full_disjoint_pairs(H({3, 3, 3}), 2, 1))
        CHECK(first_valid_insertion(H({3, 3, 3}), p.u, p.v) == 0);
    // 1 ≺ 2, 3 with 2 ∼ 3: v = 1 cannot follow either element of u
    CHECK_FALSE(first_valid_insertion(H({1, 3, 3}), Sequence{2, 3}, Sequence{1}).has_value());
}

TEST_CASE("disjoint_pair_count")
{
    CHECK(disjoint_pair_count(H({2, 3, 3}), 2, 1) == 4);
    CHECK(disjoint_pair_count(H({3, 3, 3}), 2, 1) == 6);
    CHECK(disjoint_pair_count(H({1, 2, 3}), 2, 1) == 0);
    CHECK_THROWS_AS(disjoint_pair_count(H({2, 3, 3}), 1, 1), std::invalid_argument);
    for (int N = 2; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            for (int k = 1; 2 * k <= N; ++k) {
                const Int c = disjoint_pair_count(u, N - k, k);
                CHECK(c == oracle::count_disjoint_pairs(u.hessenberg(), N - k));
                CHECK(static_cast<Int>(full_disjoint_pairs(u, N - k, k).size()) == c);
            }
}

TEST_CASE("counting identity for length-two coefficients")
{
    for (int N = 2; N <= 6; ++N)
        for (const auto& u : generate_all(N)) {
            const Int full = count_eschers(u, N);
            for (int k = 1; 2 * k <= N; ++k) {
                const int n = N - k;
                const Int pairs = disjoint_pair_count(u, n, k);
                const Int m = m_coeff_U(u, Partition({n, k}));
                CHECK(m == (n > k ? pairs - full : pairs / 2 - full / 2));
                CHECK(m >= 0);
            }
        }
}

TEST_CASE("phi examples")
{
    const auto u = H({2, 3, 3});
    const auto t = phi_trace(u, Sequence{1, 3, 2}, 2, 1);
    CHECK(t.first_subescher == 0);
    CHECK_FALSE(t.exceptional);
    CHECK(support(t.pair.v) == std::set<int>{3});
    CHECK(support(t.pair.u) == std::set<int>{1, 2});
    CHECK(canonical_cycle(t.pair.u) == Sequence{1, 2});

    const auto full = H({3, 3, 3});
    const auto f = phi_trace(full, Sequence{1, 2, 3}, 2, 1);
    CHECK(f.first_subescher == 0);
    CHECK(support(f.pair.v) == std::set<int>{2});
    CHECK(support(f.pair.u) == std::set<int>{1, 3});

    CHECK_THROWS_AS(phi(u, Sequence{1, 2, 3}, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(phi(full, Sequence{1, 2, 3}, 1, 2), std::invalid_argument);
}

TEST_CASE("psi examples")
{
    const auto u = H({2, 3, 3});
    const auto w = psi(u, Sequence{2, 1}, Sequence{3});
    REQUIRE(w.has_value());
    CHECK(canonical_cycle(*w) == Sequence{1, 3, 2});
    CHECK(is_escher(u, *w));

    const auto full = H({3, 3, 3});
    const auto t = psi_trace(full, Sequence{1, 2}, Sequence{3});
    CHECK(t.first_insertion == 0);
    REQUIRE(t.w.has_value());
    CHECK(canonical_cycle(*t.w) == Sequence{1, 3, 2});

    CHECK_FALSE(psi(H({1, 3, 3}), Sequence{2, 3}, Sequence{1}).has_value());
    CHECK_THROWS_AS(psi(u, Sequence{2, 1}, Sequence{1}), std::invalid_argument);
    CHECK_THROWS_AS(psi(u, Sequence{2}, Sequence{1}), std::invalid_argument);
}

TEST_CASE("anchor convention names")
{
    const auto all = AnchorConvention::all();
    CHECK(all.size() == 24);
    std::set<std::string> names;
    for (const auto& c : all) {
        CHECK(AnchorConvention::parse(c.name()) == c);
        names.insert(c.name());
    }
    CHECK(names.size() == all.size());
    CHECK(AnchorConvention::parse("default") == kDefaultConvention);
    CHECK_THROWS_AS(AnchorConvention::parse("nope"), std::invalid_argument);
}

TEST_CASE("round trip with the default convention")
{
    for (int N = 3; N <= 7; ++N)
        for (const auto& u : generate_all(N)) {
            const auto es = enumerate_eschers(u, N);
            for (int k = 1; 2 * k < N; ++k) {
                const auto s = check_round_trip(u, N - k, k, kDefaultConvention, es);
                CHECK_MESSAGE(s.failures == 0, s.counterexample.value_or(""));
                CHECK(s.injective);
                CHECK(s.eschers == static_cast<Int>(es.size()));
            }
        }
}

TEST_CASE("phi lands in disjoint pairs and psi returns Eschers")
{
    for (int N = 3; N <= 6; ++N)
        for (const auto& u : generate_all(N))
            for (const auto& w : enumerate_eschers(u, N))
                for (int k = 1; 2 * k < N; ++k) {
                    const auto p = phi(u, w, N - k, k);
                    CHECK(oracle::cyclic_escher(u.hessenberg(), p.u));
                    CHECK(oracle::cyclic_escher(u.hessenberg(), p.v));
                    std::set<int> all = support(p.u);
                    all.insert(p.v.begin(), p.v.end());
                    CHECK(static_cast<int>(all.size()) == N);
                }
}

TEST_CASE("calibration")
{
    const auto r3 = calibrate_convention(3);
    CHECK(r3.log.back().passed);
    // every convention reported before the selected one failed with a witness
    for (std::size_t i = 0; i + 1 < r3.log.size(); ++i) {
        CHECK_FALSE(r3.log[i].passed);
        CHECK(r3.log[i].counterexample.has_value());
    }
    CHECK(r3.witness.find("mismatch") != std::string::npos);

    const auto r = calibrate_convention(8);
    CHECK(r.convention == kDefaultConvention);
    CHECK(r.log.back().convention == kDefaultConvention);
    CHECK_THROWS_AS(calibrate_convention(9), std::invalid_argument);

    // the rejected after-window reading fails on the documented witness
    const auto u = H({2, 3, 3});
    const Sequence w{1, 3, 2};
    const auto p = phi(u, w, 2, 1, kAfterWindowConvention);
    CHECK(psi(u, p.u, p.v, kAfterWindowConvention) != std::optional<Sequence>(w));
}
