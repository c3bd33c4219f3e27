#include "escherpos/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace escherpos {

Partition::Partition(std::vector<int> parts)
    : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int Partition::weight() const
{
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::conjugate() const
{
    if (parts_.empty())
        return {};
    std::vector<int> conj(parts_.front(), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j)
            ++conj[j];
    return Partition(std::move(conj));
}

bool Partition::dominates(const Partition& other) const
{
    int a = 0, b = 0;
    const std::size_t len = std::max(parts_.size(), other.parts_.size());
    for (std::size_t i = 0; i < len; ++i) {
        a += i < parts_.size() ? parts_[i] : 0;
        b += i < other.parts_.size() ? other.parts_[i] : 0;
        if (a < b)
            return false;
    }
    return a == b;
}

std::string Partition::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        os << (i ? "," : "") << parts_[i];
    return os.str();
}

Partition Partition::parse(std::string_view text)
{
    std::vector<int> parts;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            return;
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size())
            throw std::invalid_argument("bad partition token '" + token + "'");
        parts.push_back(value);
        token.clear();
    };
    for (char c : text) {
        if (c == '(' || c == ')' || c == '[' || c == ']')
            continue;
        if (c == ',' || c == ' ') {
            flush();
            continue;
        }
        if ((c < '0' || c > '9') && c != '-')
            throw std::invalid_argument("bad character in partition '" + std::string(text) + "'");
        token.push_back(c);
    }
    flush();
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

std::vector<Partition> partitions_of(int n)
{
    if (n < 0)
        throw std::invalid_argument("partitions_of: n must be non-negative");
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(n, n);
    return out;
}

} // namespace escherpos
