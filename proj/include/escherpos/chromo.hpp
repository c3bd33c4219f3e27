#pragma once

#include <map>
#include <vector>

#include "escherpos/multipoly.hpp"
#include "escherpos/symcore.hpp"
#include "escherpos/uio.hpp"

namespace escherpos {

/// Positive multiplicity per vertex, used for clique expansions G^α.
class AlphaMap {
public:
    explicit AlphaMap(std::vector<int> multiplicity);

    int size() const { return static_cast<int>(mult_.size()); }
    int operator[](int v) const { return mult_[v]; }
    const std::vector<int>& values() const { return mult_; }
    int total() const;

    static AlphaMap ones(int n) { return AlphaMap(std::vector<int>(n, 1)); }

private:
    std::vector<int> mult_;
};

/// Every AlphaMap on n vertices with n <= Σα <= max_total, lexicographic.
std::vector<AlphaMap> alpha_maps_up_to(int n, int max_total);

/// Σ over proper colourings c: V → {1..r} of Π x_{c(v)}, by backtracking.
/// Throws std::invalid_argument("insufficient colors ...") when r < |V|.
MultiPoly chromatic_sym(const Graph& g, int colors);

/// Σ_{S ⊆ E} (-1)^{|S|} p_{λ(S)}; independent of chromatic_sym.
MultiPoly chromatic_sym_edges(const Graph& g, int colors);

/// e-basis expansion of X_G in |V| variables.
EBasisExpr e_coefficients(const Graph& g);
/// Overload reusing a prepared solver of degree |V|.
EBasisExpr e_coefficients(const Graph& g, const EBasisSolver& solver);

Graph clique_expand(const Graph& g, const AlphaMap& alpha);

/// j ↦ number of acyclic orientations with exactly j sinks. |V| <= 8.
std::map<int, Int> sink_histogram(const Graph& g);

/// Σ_{l(λ)=j} c_λ for every j that occurs.
std::map<int, Int> coefficient_sums_by_length(const EBasisExpr& expr);

struct PositivityReport {
    bool is_e_positive = true;
    std::vector<Partition> negative_terms;
};

PositivityReport positivity_report(const EBasisExpr& expr);

} // namespace escherpos
