#include "escherpos/symcore.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace escherpos {

Int EBasisExpr::operator[](const Partition& p) const
{
    auto it = coeffs.find(p);
    return it == coeffs.end() ? 0 : it->second;
}

void EBasisExpr::add(const Partition& p, Int c)
{
    if (c == 0)
        return;
    Int& slot = coeffs[p];
    slot = checked_add(slot, c);
    if (slot == 0)
        coeffs.erase(p);
}

MultiPoly EBasisExpr::reconstruct(std::size_t num_vars) const
{
    MultiPoly out(num_vars);
    for (const auto& [lambda, c] : coeffs)
        out += e_lambda_poly(lambda, num_vars) * c;
    return out;
}

Int SchurExpr::operator[](const Partition& p) const
{
    auto it = coeffs.find(p);
    return it == coeffs.end() ? 0 : it->second;
}

MultiPoly e_poly(int m, std::size_t num_vars)
{
    if (num_vars < 1)
        throw std::invalid_argument("e_poly: need at least one variable");
    MultiPoly out(num_vars);
    if (m < 0 || m > static_cast<int>(num_vars))
        return out;
    // Walk every m-subset of the variables via a selection mask.
    std::vector<bool> pick(num_vars, false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
        Exponents e{};
        for (std::size_t i = 0; i < num_vars; ++i)
            e[i] = pick[i] ? 1 : 0;
        out.add_term(e, 1);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

MultiPoly p_poly(int m, std::size_t num_vars)
{
    if (m < 1)
        throw std::invalid_argument("p_poly: m must be positive");
    if (num_vars < 1)
        throw std::invalid_argument("p_poly: need at least one variable");
    if (m > 255)
        throw std::invalid_argument("p_poly: exponent too large");
    MultiPoly out(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) {
        Exponents e{};
        e[i] = static_cast<std::uint8_t>(m);
        out.add_term(e, 1);
    }
    return out;
}

MultiPoly m_poly(const Partition& lambda, std::size_t num_vars)
{
    if (lambda.length() > static_cast<int>(num_vars))
        throw std::invalid_argument("m_poly: too few variables");
    std::vector<int> exps(num_vars, 0);
    std::copy(lambda.parts().begin(), lambda.parts().end(), exps.begin());
    std::sort(exps.begin(), exps.end());
    MultiPoly out(num_vars);
    do {
        out.add_term(exponents_of(exps), 1);
    } while (std::next_permutation(exps.begin(), exps.end()));
    return out;
}

MultiPoly e_lambda_poly(const Partition& lambda, std::size_t num_vars)
{
    MultiPoly out = MultiPoly::constant(num_vars, 1);
    for (int part : lambda.parts()) {
        out = out * e_poly(part, num_vars);
        if (out.is_zero())
            break;
    }
    return out;
}

MultiPoly s_poly(const Partition& lambda, std::size_t num_vars)
{
    if (lambda.weight() > static_cast<int>(num_vars))
        throw std::invalid_argument("s_poly: weight exceeds variable count");
    const Partition conj = lambda.conjugate();
    const int size = conj.length();
    if (size == 0)
        return MultiPoly::constant(num_vars, 1);

    // entry(i, j) = e_{conj_i + j - i}; the distinct indices are few, cache them.
    std::unordered_map<int, MultiPoly> e_cache;
    auto entry = [&](int i, int j) -> const MultiPoly& {
        const int idx = conj[i] + j - i;
        auto it = e_cache.find(idx);
        if (it == e_cache.end())
            it = e_cache.emplace(idx, e_poly(idx, num_vars)).first;
        return it->second;
    };

    // Laplace expansion along rows, memoized on the set of used columns.
    std::unordered_map<std::uint32_t, MultiPoly> memo;
    std::function<MultiPoly(std::uint32_t)> minor = [&](std::uint32_t used) -> MultiPoly {
        const int row = std::popcount(used);
        if (row == size)
            return MultiPoly::constant(num_vars, 1);
        if (auto it = memo.find(used); it != memo.end())
            return it->second;
        MultiPoly acc(num_vars);
        int position = 0;
        for (int col = 0; col < size; ++col) {
            if (used & (1u << col))
                continue;
            const MultiPoly& a = entry(row, col);
            if (!a.is_zero()) {
                MultiPoly term = a * minor(used | (1u << col));
                if (position % 2)
                    acc -= term;
                else
                    acc += term;
            }
            ++position;
        }
        memo.emplace(used, acc);
        return acc;
    };
    return minor(0);
}

Int orbit_coefficient(const MultiPoly& f, const Partition& mu)
{
    if (mu.length() > static_cast<int>(f.num_vars()))
        return 0;
    return f.coefficient(exponents_of(mu.parts()));
}

Int e_orbit_coefficient(const Partition& lambda, const Partition& mu)
{
    if (lambda.weight() != mu.weight())
        return 0;
    // Fill rows of a 0-1 matrix one at a time; the count only depends on the
    // multiset of remaining column capacities, so memoize on the sorted list.
    std::map<std::pair<int, std::vector<int>>, Int> memo;
    std::function<Int(int, std::vector<int>)> rows = [&](int row, std::vector<int> caps) -> Int {
        std::erase(caps, 0);
        std::sort(caps.begin(), caps.end(), std::greater<>());
        if (row == lambda.length())
            return caps.empty() ? 1 : 0;
        const int need = lambda[row];
        if (need > static_cast<int>(caps.size()))
            return 0;
        auto key = std::make_pair(row, caps);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        Int total = 0;
        std::vector<bool> pick(caps.size(), false);
        std::fill(pick.begin(), pick.begin() + need, true);
        do {
            std::vector<int> next = caps;
            for (std::size_t c = 0; c < caps.size(); ++c)
                if (pick[c])
                    --next[c];
            total = checked_add(total, rows(row + 1, std::move(next)));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        memo.emplace(std::move(key), total);
        return total;
    };
    return rows(0, mu.parts());
}

namespace {

std::vector<std::vector<Int>> transition_rows(const std::vector<Partition>& order,
                                              const std::function<MultiPoly(const Partition&)>& basis)
{
    const std::size_t count = order.size();
    std::vector<std::vector<Int>> rows(count, std::vector<Int>(count, 0));
    for (std::size_t i = 0; i < count; ++i) {
        const MultiPoly b = basis(order[i]);
        for (std::size_t j = 0; j < count; ++j)
            rows[i][j] = orbit_coefficient(b, order[j]);
        if (rows[i][i] != 1)
            throw InternalError("basis transition is not unitriangular on the diagonal");
        for (std::size_t j = 0; j < i; ++j)
            if (rows[i][j] != 0)
                throw InternalError("basis transition is not upper triangular");
    }
    return rows;
}

void check_expandable(const MultiPoly& f, int degree)
{
    if (f.is_zero())
        return;
    if (f.num_vars() < static_cast<std::size_t>(degree))
        throw std::invalid_argument("expansion needs at least as many variables as the degree");
    const auto deg = f.homogeneous_degree();
    if (!deg)
        throw std::invalid_argument("expansion input is not homogeneous");
    if (*deg != degree)
        throw std::invalid_argument("expansion input has degree " + std::to_string(*deg)
                                    + ", expected " + std::to_string(degree));
    if (!f.is_symmetric())
        throw std::invalid_argument("expansion input is not symmetric");
}

// Forward substitution for b_j = Σ_{i<=j} c_i rows[i][j].
std::vector<Int> forward_solve(const std::vector<std::vector<Int>>& rows, const std::vector<Int>& b)
{
    std::vector<Int> c(b.size(), 0);
    for (std::size_t j = 0; j < b.size(); ++j) {
        Int v = b[j];
        for (std::size_t i = 0; i < j; ++i)
            if (c[i] != 0 && rows[i][j] != 0)
                v = checked_sub(v, checked_mul(c[i], rows[i][j]));
        c[j] = v;
    }
    return c;
}

} // namespace

EBasisSolver::EBasisSolver(int degree)
    : degree_(degree)
    , order_(partitions_of(degree))
{
    const std::size_t count = order_.size();
    rows_.assign(count, std::vector<Int>(count, 0));
    for (std::size_t i = 0; i < count; ++i) {
        const Partition lambda = order_[i].conjugate();
        for (std::size_t j = i; j < count; ++j)
            rows_[i][j] = e_orbit_coefficient(lambda, order_[j]);
        if (rows_[i][i] != 1)
            throw InternalError("e-basis transition is not unitriangular");
    }
}

EBasisExpr EBasisSolver::solve(const MultiPoly& f) const
{
    check_expandable(f, degree_);
    EBasisExpr out;
    if (f.is_zero())
        return out;
    std::vector<Int> b(order_.size());
    for (std::size_t j = 0; j < order_.size(); ++j)
        b[j] = orbit_coefficient(f, order_[j]);
    const auto c = forward_solve(rows_, b);
    for (std::size_t i = 0; i < order_.size(); ++i)
        out.add(order_[i].conjugate(), c[i]);
    return out;
}

SchurSolver::SchurSolver(int degree)
    : degree_(degree)
    , order_(partitions_of(degree))
{
    const std::size_t vars = std::max(1, degree);
    kostka_ = transition_rows(order_, [&](const Partition& lambda) { return s_poly(lambda, vars); });
}

SchurExpr SchurSolver::solve(const MultiPoly& f) const
{
    check_expandable(f, degree_);
    SchurExpr out;
    if (f.is_zero())
        return out;
    std::vector<Int> b(order_.size());
    for (std::size_t j = 0; j < order_.size(); ++j)
        b[j] = orbit_coefficient(f, order_[j]);
    const auto c = forward_solve(kostka_, b);
    for (std::size_t i = 0; i < order_.size(); ++i)
        if (c[i] != 0)
            out.coeffs.emplace(order_[i], c[i]);
    return out;
}

namespace {

int degree_for_expansion(const MultiPoly& f, std::size_t num_vars)
{
    if (f.num_vars() != num_vars)
        throw std::invalid_argument("polynomial variable count does not match");
    if (f.is_zero())
        return 0;
    const auto deg = f.homogeneous_degree();
    if (!deg)
        throw std::invalid_argument("expansion input is not homogeneous");
    return *deg;
}

} // namespace

EBasisExpr expand_in_e(const MultiPoly& f, std::size_t num_vars)
{
    const int degree = degree_for_expansion(f, num_vars);
    if (f.is_zero())
        return {};
    return EBasisSolver(degree).solve(f);
}

SchurExpr expand_in_s(const MultiPoly& f, std::size_t num_vars)
{
    const int degree = degree_for_expansion(f, num_vars);
    if (f.is_zero())
        return {};
    return SchurSolver(degree).solve(f);
}

MultiPoly mnk_powersum_form(int n, int k, std::size_t num_vars)
{
    if (!(n >= k && k >= 1))
        throw std::invalid_argument("mnk_powersum_form: need n >= k >= 1");
    if (num_vars < 2)
        throw std::invalid_argument("mnk_powersum_form: need at least two variables");
    const MultiPoly pn = p_poly(n, num_vars);
    if (n > k)
        return pn * p_poly(k, num_vars) - p_poly(n + k, num_vars);
    return (pn * pn - p_poly(2 * n, num_vars)).exact_divide(2);
}

} // namespace escherpos
