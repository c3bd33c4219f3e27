#include "escherpos/escher.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace escherpos {

namespace {

int mod(int a, int m)
{
    const int r = a % m;
    return r < 0 ? r + m : r;
}

void require_distinct(std::span<const int> seq)
{
    std::vector<int> s(seq.begin(), seq.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("sequence has repeated elements");
}

void require_elements(const Uio& u, std::span<const int> seq)
{
    for (int x : seq)
        if (x < 1 || x > u.size())
            throw std::out_of_range("sequence element " + std::to_string(x) + " outside the UIO");
}

bool is_escher_unchecked(const Uio& u, std::span<const int> seq)
{
    const std::size_t m = seq.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!u.arrow(seq[i], seq[(i + 1) % m]))
            return false;
    return true;
}

SubEscherCase classify(bool closes_window, bool closes_rest)
{
    if (closes_window && closes_rest)
        return SubEscherCase::Case1;
    if (closes_rest)
        return SubEscherCase::Case2;
    if (closes_window)
        return SubEscherCase::Case3;
    throw InternalError("sub-Escher trichotomy violated: both closing arrows fail");
}

SubEscherCase cyclic_case(const Uio& u, std::span<const int> w, int m, int k)
{
    const int N = static_cast<int>(w.size());
    const bool a = u.arrow(w[mod(m + k, N)], w[mod(m + 1, N)]);
    const bool b = u.arrow(w[mod(m, N)], w[mod(m + k + 1, N)]);
    return classify(a, b);
}

std::optional<FirstSubEscher> first_subescher_unchecked(const Uio& u, std::span<const int> w, int k)
{
    const int N = static_cast<int>(w.size());
    for (int l = 0; l < N; ++l) {
        if (cyclic_case(u, w, l, k) == SubEscherCase::Case1)
            return FirstSubEscher{l, l + k >= N};
    }
    return std::nullopt;
}

bool insertion_at(const Uio& order, std::span<const int> u, std::span<const int> v, int l)
{
    const int n = static_cast<int>(u.size());
    const int k = static_cast<int>(v.size());
    return order.arrow(u[l % n], v[(l + 1) % k]) && order.arrow(v[l % k], u[(l + 1) % n]);
}

void require_disjoint(std::span<const int> a, std::span<const int> b)
{
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            throw std::invalid_argument("Escher supports overlap");
}

// Cyclic window of w over integer positions [lo, lo+len), started at position q.
Sequence cut_window(std::span<const int> w, int lo, int len, int q)
{
    const int N = static_cast<int>(w.size());
    Sequence out(len);
    for (int j = 0; j < len; ++j)
        out[j] = w[mod(lo + mod(q - lo + j, len), N)];
    return out;
}

int zero_mod_in(int lo, int len, int m)
{
    for (int q = lo; q < lo + len; ++q)
        if (mod(q, m) == 0)
            return q;
    throw InternalError("no anchor position in window");
}

} // namespace

std::string to_string(std::span<const int> seq)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.size(); ++i)
        os << (i ? "," : "") << seq[i];
    return os.str();
}

Sequence parse_sequence(std::string_view text)
{
    Sequence out;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            throw std::invalid_argument("sequence text: empty entry in '" + std::string(text) + "'");
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw std::invalid_argument("sequence text: bad entry '" + token + "'");
        out.push_back(v);
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
    return out;
}

bool is_escher(const Uio& u, std::span<const int> seq)
{
    require_elements(u, seq);
    require_distinct(seq);
    return is_escher_unchecked(u, seq);
}

std::vector<Sequence> enumerate_eschers_on(const Uio& u, std::span<const int> support, int m)
{
    std::vector<int> elems(support.begin(), support.end());
    std::sort(elems.begin(), elems.end());
    require_elements(u, elems);
    require_distinct(elems);
    std::vector<Sequence> out;
    if (m < 1 || m > static_cast<int>(elems.size()))
        return out;

    Sequence cur;
    std::vector<bool> used(u.size() + 1, false);
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == m) {
            if (u.arrow(cur.back(), cur.front()))
                out.push_back(cur);
            return;
        }
        for (int x : elems) {
            if (used[x] || (!cur.empty() && !u.arrow(cur.back(), x)))
                continue;
            used[x] = true;
            cur.push_back(x);
            rec();
            cur.pop_back();
            used[x] = false;
        }
    };
    rec();
    return out;
}

std::vector<Sequence> enumerate_eschers(const Uio& u, int m)
{
    std::vector<int> all(u.size());
    std::iota(all.begin(), all.end(), 1);
    return enumerate_eschers_on(u, all, m);
}

Int count_eschers(const Uio& u, int m)
{
    return static_cast<Int>(enumerate_eschers(u, m).size());
}

bool is_correct(const Uio& u, std::span<const int> seq)
{
    require_elements(u, seq);
    require_distinct(seq);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!u.arrow(seq[i], seq[i + 1]))
            return false;
    // Adding one vertex to a connected set keeps it connected iff the vertex
    // touches the set.
    for (std::size_t j = 1; j < seq.size(); ++j) {
        bool touches = false;
        for (std::size_t i = 0; i < j && !touches; ++i)
            touches = u.intersects(seq[i], seq[j]);
        if (!touches)
            return false;
    }
    return true;
}

bool is_correct_literal(const Uio& u, std::span<const int> seq)
{
    require_elements(u, seq);
    require_distinct(seq);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (!u.arrow(seq[i], seq[i + 1]))
            return false;
    for (std::size_t j = 1; j < seq.size(); ++j) {
        bool witness = false;
        for (std::size_t i = 0; i < j && !witness; ++i)
            witness = !u.precedes(seq[i], seq[j]);
        if (!witness)
            return false;
    }
    return true;
}

Int count_full_corrects(const Uio& u)
{
    const int n = u.size();
    Int total = 0;
    Sequence cur;
    std::vector<bool> used(n + 1, false);
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == n) {
            ++total;
            return;
        }
        for (int x = 1; x <= n; ++x) {
            if (used[x])
                continue;
            if (!cur.empty()) {
                if (!u.arrow(cur.back(), x))
                    continue;
                bool touches = false;
                for (int y : cur)
                    touches = touches || u.intersects(y, x);
                if (!touches)
                    continue;
            }
            used[x] = true;
            cur.push_back(x);
            rec();
            cur.pop_back();
            used[x] = false;
        }
    };
    rec();
    return total;
}

std::string_view to_string(SubEscherCase c)
{
    switch (c) {
    case SubEscherCase::Case1:
        return "case1";
    case SubEscherCase::Case2:
        return "case2";
    case SubEscherCase::Case3:
        return "case3";
    }
    return "?";
}

SubEscherCase subescher_case(const Uio& u, std::span<const int> w, int m, int k)
{
    const int N = static_cast<int>(w.size());
    if (k < 1 || k >= N)
        throw std::invalid_argument("subescher_case: need 1 <= k < N");
    if (!is_escher(u, w))
        throw std::invalid_argument("subescher_case: w is not an Escher");
    return cyclic_case(u, w, m, k);
}

std::optional<FirstSubEscher> first_valid_subescher(const Uio& u, std::span<const int> w, int k)
{
    const int N = static_cast<int>(w.size());
    if (k < 1 || k >= N)
        throw std::invalid_argument("first_valid_subescher: need 1 <= k < N");
    if (!is_escher(u, w))
        throw std::invalid_argument("first_valid_subescher: w is not an Escher");
    return first_subescher_unchecked(u, w, k);
}

std::string_view to_string(Purity p)
{
    switch (p) {
    case Purity::NotPure:
        return "not-pure";
    case Purity::PurePlus:
        return "pure+";
    case Purity::PureMinus:
        return "pure-";
    }
    return "?";
}

Purity purity(const Uio& u, std::span<const int> chain, int k)
{
    const int len = static_cast<int>(chain.size());
    if (k < 1)
        throw std::invalid_argument("purity: k must be positive");
    if (len < k + 2)
        throw std::invalid_argument("purity: need at least k + 2 elements");
    for (int i = 0; i + 1 < len; ++i)
        if (!u.arrow(chain[i], chain[i + 1]))
            throw std::invalid_argument("purity: input is not an arrow chain");

    bool saw2 = false, saw3 = false;
    for (int m = 0; m + k + 1 < len; ++m) {
        const SubEscherCase c = classify(u.arrow(chain[m + k], chain[m + 1]), u.arrow(chain[m], chain[m + k + 1]));
        if (c == SubEscherCase::Case1)
            return Purity::NotPure;
        (c == SubEscherCase::Case2 ? saw2 : saw3) = true;
    }
    if (saw2 && saw3)
        throw InternalError("pure sequence mixes case2 and case3 windows: " + to_string(chain) + " k=" + std::to_string(k));
    return saw2 ? Purity::PureMinus : Purity::PurePlus;
}

std::vector<int> valid_insertions(const Uio& order, std::span<const int> u, std::span<const int> v)
{
    if (u.empty() || v.empty())
        throw std::invalid_argument("valid_insertions: empty Escher");
    require_disjoint(u, v);
    const int range = static_cast<int>(u.size() * v.size());
    std::vector<int> out;
    for (int l = 0; l < range; ++l)
        if (insertion_at(order, u, v, l))
            out.push_back(l);
    return out;
}

std::optional<int> first_valid_insertion(const Uio& order, std::span<const int> u, std::span<const int> v)
{
    if (u.empty() || v.empty())
        throw std::invalid_argument("first_valid_insertion: empty Escher");
    require_disjoint(u, v);
    const int range = static_cast<int>(u.size() * v.size());
    for (int l = 0; l < range; ++l)
        if (insertion_at(order, u, v, l))
            return l;
    return std::nullopt;
}

std::vector<EscherPair> full_disjoint_pairs(const Uio& u, int n, int k)
{
    const int N = u.size();
    if (n < 1 || k < 1 || n + k != N)
        throw std::invalid_argument("full_disjoint_pairs: need n, k >= 1 and n + k = |U|");
    std::vector<EscherPair> out;
    std::vector<bool> pick(N, false);
    std::fill(pick.begin(), pick.begin() + n, true);
    do {
        std::vector<int> s, rest;
        for (int i = 0; i < N; ++i)
            (pick[i] ? s : rest).push_back(i + 1);
        const auto us = enumerate_eschers_on(u, s, n);
        if (us.empty())
            continue;
        const auto vs = enumerate_eschers_on(u, rest, k);
        for (const auto& a : us)
            for (const auto& b : vs)
                out.push_back({a, b});
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

Int disjoint_pair_count(const Uio& u, int n, int k)
{
    const int N = u.size();
    if (n < 1 || k < 1 || n + k != N)
        throw std::invalid_argument("disjoint_pair_count: need n, k >= 1 and n + k = |U|");
    Int total = 0;
    std::vector<bool> pick(N, false);
    std::fill(pick.begin(), pick.begin() + n, true);
    do {
        std::vector<int> s, rest;
        for (int i = 0; i < N; ++i)
            (pick[i] ? s : rest).push_back(i + 1);
        const Uio us = u.induced(s);
        const Int a = count_eschers(us, n);
        if (a == 0)
            continue;
        const Uio vs = u.induced(rest);
        total = checked_add(total, checked_mul(a, count_eschers(vs, k)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return total;
}

// ------------------------------------------------------------ conventions

namespace {

const char* name_of(KAnchor a)
{
    return a == KAnchor::ZeroModK ? "k0modk" : "kstart";
}

const char* name_of(NAnchor a)
{
    switch (a) {
    case NAnchor::ZeroModNAfterWindow:
        return "n0modn-after";
    case NAnchor::ZeroModNEndingAtL:
        return "n0modn-endL";
    case NAnchor::WindowStart:
        return "nstart";
    }
    return "?";
}

const char* name_of(OrdinaryStart a)
{
    return a == OrdinaryStart::U0 ? "u0" : "ukmodn";
}

const char* name_of(ExceptionalStart a)
{
    return a == ExceptionalStart::VnModK ? "vnmodk" : "v0";
}

} // namespace

std::string AnchorConvention::name() const
{
    return std::string(name_of(k_anchor)) + "/" + name_of(n_anchor) + "/" + name_of(ordinary) + "/" + name_of(exceptional);
}

std::vector<AnchorConvention> AnchorConvention::all()
{
    std::vector<AnchorConvention> out;
    for (auto ka : {KAnchor::ZeroModK, KAnchor::WindowStart})
        for (auto na : {NAnchor::ZeroModNAfterWindow, NAnchor::ZeroModNEndingAtL, NAnchor::WindowStart})
            for (auto o : {OrdinaryStart::U0, OrdinaryStart::UkModN})
                for (auto e : {ExceptionalStart::VnModK, ExceptionalStart::V0})
                    out.push_back({ka, na, o, e});
    return out;
}

AnchorConvention AnchorConvention::parse(std::string_view name)
{
    if (name == "default")
        return kDefaultConvention;
    for (const auto& c : all())
        if (c.name() == name)
            return c;
    throw std::invalid_argument("unknown anchor convention '" + std::string(name) + "'");
}

PhiTrace phi_trace(const Uio& u, std::span<const int> w, int n, int k, const AnchorConvention& conv)
{
    if (!(n > k && k >= 1))
        throw std::invalid_argument("phi: need n > k >= 1");
    const int N = n + k;
    if (static_cast<int>(w.size()) != N)
        throw std::invalid_argument("phi: Escher length must be n + k");
    if (!is_escher(u, w))
        throw std::invalid_argument("phi: w is not an Escher");
    const auto fe = first_subescher_unchecked(u, w, k);
    if (!fe)
        throw InternalError("Escher without a valid sub-Escher: " + to_string(w));
    const int L = fe->index;

    const int v_lo = L + 1;
    const int v_q = conv.k_anchor == KAnchor::ZeroModK ? zero_mod_in(v_lo, k, k) : v_lo;
    Sequence v = cut_window(w, v_lo, k, v_q);

    int u_lo = L + k + 1;
    int u_q = u_lo;
    switch (conv.n_anchor) {
    case NAnchor::ZeroModNAfterWindow:
        u_q = zero_mod_in(u_lo, n, n);
        break;
    case NAnchor::ZeroModNEndingAtL:
        u_lo = L - n + 1;
        u_q = zero_mod_in(u_lo, n, n);
        break;
    case NAnchor::WindowStart:
        break;
    }
    Sequence uu = cut_window(w, u_lo, n, u_q);
    return PhiTrace{EscherPair{std::move(uu), std::move(v)}, L, fe->exceptional};
}

EscherPair phi(const Uio& u, std::span<const int> w, int n, int k, const AnchorConvention& conv)
{
    return phi_trace(u, w, n, k, conv).pair;
}

PsiTrace psi_trace(const Uio& order, std::span<const int> u, std::span<const int> v, const AnchorConvention& conv)
{
    const int n = static_cast<int>(u.size());
    const int k = static_cast<int>(v.size());
    if (n < 1 || k < 1)
        throw std::invalid_argument("psi: empty Escher");
    require_elements(order, u);
    require_elements(order, v);
    require_disjoint(u, v);
    if (n + k != order.size())
        throw std::invalid_argument("psi: supports must cover the UIO");
    require_distinct(u);
    require_distinct(v);

    PsiTrace trace;
    trace.first_insertion = first_valid_insertion(order, u, v);
    if (!trace.first_insertion)
        return trace;
    const int L = *trace.first_insertion;
    trace.exceptional = L >= n;

    Sequence cycle;
    cycle.reserve(n + k);
    for (int j = 1; j <= n; ++j)
        cycle.push_back(u[(L + j) % n]);
    for (int j = 1; j <= k; ++j)
        cycle.push_back(v[(L + j) % k]);

    int start;
    if (!trace.exceptional)
        start = conv.ordinary == OrdinaryStart::U0 ? u[0] : u[k % n];
    else
        start = conv.exceptional == ExceptionalStart::VnModK ? v[n % k] : v[0];
    auto it = std::find(cycle.begin(), cycle.end(), start);
    std::rotate(cycle.begin(), it, cycle.end());
    trace.w = std::move(cycle);
    return trace;
}

std::optional<Sequence> psi(const Uio& order, std::span<const int> u, std::span<const int> v, const AnchorConvention& conv)
{
    return psi_trace(order, u, v, conv).w;
}

RoundTripStats check_round_trip(const Uio& u, int n, int k, const AnchorConvention& conv,
                                const std::vector<Sequence>& full_eschers)
{
    if (n + k != u.size())
        throw std::invalid_argument("check_round_trip: need n + k = |U|");
    RoundTripStats stats;
    std::set<EscherPair> images;
    for (const auto& w : full_eschers) {
        ++stats.eschers;
        const PhiTrace f = phi_trace(u, w, n, k, conv);
        const PsiTrace g = psi_trace(u, f.pair.u, f.pair.v, conv);
        if (!g.w || *g.w != w) {
            ++stats.failures;
            if (!stats.counterexample) {
                std::ostringstream os;
                os << "h=" << u.to_string() << " n=" << n << " k=" << k << " w=" << to_string(w)
                   << " FE=" << f.first_subescher << " u=" << to_string(f.pair.u) << " v=" << to_string(f.pair.v)
                   << " FI=" << (g.first_insertion ? std::to_string(*g.first_insertion) : "none")
                   << " psi=" << (g.w ? to_string(*g.w) : "none");
                stats.counterexample = os.str();
            }
        }
        if (!images.insert(f.pair).second) {
            stats.injective = false;
            if (!stats.counterexample)
                stats.counterexample = "phi collision at w=" + to_string(w) + " h=" + u.to_string();
        }
    }
    return stats;
}

CalibrationResult calibrate_convention(int max_n)
{
    if (max_n < 3 || max_n > 8)
        throw std::invalid_argument("calibrate_convention: max_n must be in [3, 8]");

    // Eschers do not depend on the convention; enumerate them once.
    struct Case {
        Uio u;
        std::vector<Sequence> eschers;
    };
    std::vector<Case> cases;
    for (int N = 3; N <= max_n; ++N)
        for (const auto& u : generate_all(N))
            if (auto es = enumerate_eschers(u, N); !es.empty())
                cases.push_back({u, std::move(es)});

    CalibrationResult result;
    {
        const Uio witness = Uio::from_hessenberg({2, 3, 3});
        const Sequence w{1, 3, 2};
        const PhiTrace f = phi_trace(witness, w, 2, 1, kAfterWindowConvention);
        const auto back = psi(witness, f.pair.u, f.pair.v, kAfterWindowConvention);
        result.witness = "convention " + kAfterWindowConvention.name() + " on h=2,3,3 w=1,3,2: phi=(" + to_string(f.pair.u)
                         + " | " + to_string(f.pair.v) + ") psi=" + (back ? to_string(*back) : "none")
                         + (back && *back == w ? " (identity)" : " (mismatch)");
    }

    std::optional<AnchorConvention> found;
    for (const auto& conv : AnchorConvention::all()) {
        CalibrationEntry entry;
        entry.convention = conv;
        bool ok = true;
        for (const auto& c : cases) {
            const int N = c.u.size();
            for (int k = 1; 2 * k < N && ok; ++k) {
                const int n = N - k;
                if (std::gcd(n, k) != 1)
                    continue;
                const auto stats = check_round_trip(c.u, n, k, conv, c.eschers);
                entry.checked += stats.eschers;
                if (stats.failures || !stats.injective) {
                    ok = false;
                    entry.counterexample = stats.counterexample;
                }
            }
            if (!ok)
                break;
        }
        entry.passed = ok;
        result.log.push_back(entry);
        if (ok) {
            found = conv;
            break;
        }
    }
    if (!found) {
        std::ostringstream os;
        os << "no anchor convention passes the round trip up to N=" << max_n << "\n";
        for (const auto& e : result.log)
            os << "  " << e.convention.name() << ": " << e.counterexample.value_or("?") << "\n";
        throw InternalError(os.str());
    }
    result.convention = *found;
    return result;
}

} // namespace escherpos
