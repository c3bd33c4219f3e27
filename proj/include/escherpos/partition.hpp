#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace escherpos {

/// Weakly decreasing sequence of positive integers. The empty partition is the
/// unique partition of 0.
class Partition {
public:
    Partition() = default;
    /// Throws std::invalid_argument unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int weight() const;
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](std::size_t i) const { return parts_[i]; }
    bool empty() const { return parts_.empty(); }

    Partition conjugate() const;
    /// True when this partition dominates `other` (equal weights required).
    bool dominates(const Partition& other) const;

    /// "2,1" style; the empty partition prints as "".
    std::string to_string() const;
    /// Accepts "2,1", "(2,1)" or "2 1"; parts may be given in any order.
    static Partition parse(std::string_view text);

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

/// All partitions of n in reverse-lexicographic order: (n) first, 1^n last.
std::vector<Partition> partitions_of(int n);

} // namespace escherpos
