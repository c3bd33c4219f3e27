#include "escherpos/lemmas.hpp"

#include <functional>

namespace escherpos {

void LemmaOutcome::fail(std::string what)
{
    ++violations;
    if (!counterexample)
        counterexample = std::move(what);
}

namespace {

std::string where(const Uio& u, std::span<const int> w, int m, int k)
{
    return "h=" + u.to_string() + " w=" + to_string(w) + " m=" + std::to_string(m) + " k=" + std::to_string(k);
}

Sequence cyclic_slice(std::span<const int> w, int start, int len)
{
    const int N = static_cast<int>(w.size());
    Sequence out(len);
    for (int j = 0; j < len; ++j)
        out[j] = w[((start + j) % N + N) % N];
    return out;
}

} // namespace

LemmaOutcome check_trichotomy(const Uio& u, const std::vector<Sequence>& eschers)
{
    LemmaOutcome out;
    const int N = u.size();
    for (const auto& w : eschers) {
        for (int k = 1; k < N; ++k) {
            for (int m = 0; m < N; ++m) {
                ++out.instances;
                try {
                    (void)subescher_case(u, w, m, k);
                } catch (const InternalError&) {
                    out.fail(where(u, w, m, k));
                }
            }
        }
    }
    return out;
}

LemmaOutcome check_case2_shifted_windows(const Uio& u, const std::vector<Sequence>& eschers)
{
    LemmaOutcome out;
    const int N = u.size();
    for (const auto& w : eschers) {
        for (int k = 1; k < N; ++k) {
            const int n = N - k;
            for (int m = 0; m < N; ++m) {
                if (subescher_case(u, w, m, k) != SubEscherCase::Case2)
                    continue;
                ++out.instances;
                for (int shift = 0; shift < 3; ++shift) {
                    if (!is_escher(u, cyclic_slice(w, m + k + shift, n))) {
                        out.fail(where(u, w, m, k) + " shift=" + std::to_string(shift));
                        break;
                    }
                }
            }
        }
    }
    return out;
}

LemmaOutcome check_no_mixed_purity(const Uio& u, const std::vector<Sequence>& eschers)
{
    // Eschers come in full rotation classes, so prefixes cover every window.
    LemmaOutcome out;
    const int N = u.size();
    for (const auto& w : eschers) {
        for (int len = 3; len <= N; ++len) {
            const std::span<const int> chain(w.data(), len);
            for (int k = 1; k + 2 <= len; ++k) {
                ++out.instances;
                try {
                    (void)purity(u, chain, k);
                } catch (const InternalError& e) {
                    out.fail(std::string(e.what()) + " h=" + u.to_string());
                }
            }
        }
    }
    return out;
}

LemmaOutcome check_subescher_exists(const Uio& u, const std::vector<Sequence>& eschers)
{
    LemmaOutcome out;
    const int N = u.size();
    for (const auto& w : eschers) {
        for (int k = 1; k < N; ++k) {
            ++out.instances;
            if (!first_valid_subescher(u, w, k))
                out.fail("h=" + u.to_string() + " w=" + to_string(w) + " k=" + std::to_string(k));
        }
    }
    return out;
}

Sequence insertion_splice(std::span<const int> u, std::span<const int> v, int j, int gap)
{
    const int n = static_cast<int>(u.size());
    const int k = static_cast<int>(v.size());
    auto uu = [&](int i) { return u[((i % n) + n) % n]; };
    auto vv = [&](int i) { return v[((i % k) + k) % k]; };
    Sequence s;
    if (gap <= n) {
        // u_j → ... → u_{j+gap} → v_{j+gap+1} → ... → v_{j+gap+k}
        for (int t = 0; t <= gap; ++t)
            s.push_back(uu(j + t));
    } else {
        // v_{j+n} → ... → v_{j+gap} → u_{j+gap-n+1} → ... → u_{j+gap} → v_{j+gap+1} → ...
        for (int t = n; t <= gap; ++t)
            s.push_back(vv(j + t));
        for (int t = gap - n + 1; t <= gap; ++t)
            s.push_back(uu(j + t));
    }
    for (int t = 1; t <= k; ++t)
        s.push_back(vv(j + gap + t));
    return s;
}

LemmaOutcome check_insertion_splices(const Uio& u)
{
    LemmaOutcome out;
    const int N = u.size();
    for (int k = 1; 2 * k <= N; ++k) {
        const int n = N - k;
        for (const auto& [a, b] : full_disjoint_pairs(u, n, k)) {
            const auto ins = valid_insertions(u, a, b);
            const int period = n * k;
            for (std::size_t i = 0; i < ins.size(); ++i) {
                const int j = ins[i];
                const int next = i + 1 < ins.size() ? ins[i + 1] : ins.front() + period;
                const Sequence s = insertion_splice(a, b, j, next - j);
                ++out.instances;
                try {
                    if (purity(u, s, k) != Purity::NotPure)
                        out.fail("pure splice h=" + u.to_string() + " u=" + to_string(a) + " v=" + to_string(b)
                                 + " j=" + std::to_string(j) + " gap=" + std::to_string(next - j) + " seq=" + to_string(s));
                } catch (const std::exception& e) {
                    out.fail(std::string(e.what()) + " h=" + u.to_string() + " u=" + to_string(a) + " v=" + to_string(b));
                }
            }
        }
    }
    return out;
}

LemmaOutcome check_closed_sequences(const Uio& u, int max_symbols)
{
    LemmaOutcome out;
    const int N = u.size();
    std::vector<int> seq;
    std::vector<char> symbols;
    // Walks only statements that hold so far; r counts ≺, s counts →.
    std::function<void(int, int)> rec = [&](int r, int s) {
        const int prev = seq.back();
        const int first = seq.front();
        const int used = r + s;
        // Closing step back to w_1.
        auto close = [&](int r2, int s2, char sym) {
            ++out.instances;
            if (r2 >= s2) {
                std::string text = "h=" + u.to_string() + " ";
                for (std::size_t i = 0; i < seq.size(); ++i)
                    text += std::to_string(seq[i]) + (i < symbols.size() ? std::string(symbols[i] == '<' ? " < " : " -> ") : "");
                text += std::string(sym == '<' ? " < " : " -> ") + std::to_string(first);
                out.fail(text);
            }
        };
        if (u.precedes(prev, first))
            close(r + 1, s, '<');
        if (u.arrow(prev, first))
            close(r, s + 1, '>');
        if (used + 1 >= max_symbols)
            return;
        for (int x = 1; x <= N; ++x) {
            seq.push_back(x);
            if (u.precedes(prev, x)) {
                symbols.push_back('<');
                rec(r + 1, s);
                symbols.pop_back();
            }
            if (u.arrow(prev, x)) {
                symbols.push_back('>');
                rec(r, s + 1);
                symbols.pop_back();
            }
            seq.pop_back();
        }
    };
    for (int x = 1; x <= N; ++x) {
        seq = {x};
        rec(0, 0);
    }
    return out;
}

} // namespace escherpos
