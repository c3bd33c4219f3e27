#pragma once

#include <map>
#include <vector>

#include "escherpos/multipoly.hpp"
#include "escherpos/partition.hpp"

namespace escherpos {

/// Coefficients of a symmetric polynomial in the elementary basis e_λ.
struct EBasisExpr {
    std::map<Partition, Int> coeffs;

    Int operator[](const Partition& p) const;
    void add(const Partition& p, Int c);
    /// Σ c_λ e_λ expanded in `num_vars` variables.
    MultiPoly reconstruct(std::size_t num_vars) const;
    bool operator==(const EBasisExpr&) const = default;
};

/// Coefficients in the Schur basis s_λ.
struct SchurExpr {
    std::map<Partition, Int> coeffs;

    Int operator[](const Partition& p) const;
    bool operator==(const SchurExpr&) const = default;
};

// Classical bases restricted to num_vars variables.
MultiPoly e_poly(int m, std::size_t num_vars);
MultiPoly p_poly(int m, std::size_t num_vars);
MultiPoly m_poly(const Partition& lambda, std::size_t num_vars);
MultiPoly s_poly(const Partition& lambda, std::size_t num_vars);
MultiPoly e_lambda_poly(const Partition& lambda, std::size_t num_vars);

/// Coefficient of m_μ in a symmetric polynomial: the coefficient of x^μ.
Int orbit_coefficient(const MultiPoly& f, const Partition& mu);

/// [m_μ] e_λ: the number of 0-1 matrices with row sums λ and column sums μ.
Int e_orbit_coefficient(const Partition& lambda, const Partition& mu);

/// Unitriangular e-to-monomial transition for one degree. Build once and reuse
/// when expanding many polynomials of the same degree.
class EBasisSolver {
public:
    explicit EBasisSolver(int degree);
    int degree() const { return degree_; }
    /// Requires f symmetric, homogeneous of this solver's degree, num_vars >= degree.
    EBasisExpr solve(const MultiPoly& f) const;

private:
    int degree_;
    std::vector<Partition> order_; // μ, reverse-lexicographic
    // rows_[λ-index][μ-index] = [m_μ] e_λ with λ = order_[i].conjugate()
    std::vector<std::vector<Int>> rows_;
};

/// Same construction for Schur polynomials (Kostka matrix).
class SchurSolver {
public:
    explicit SchurSolver(int degree);
    int degree() const { return degree_; }
    SchurExpr solve(const MultiPoly& f) const;

private:
    int degree_;
    std::vector<Partition> order_;
    std::vector<std::vector<Int>> kostka_;
};

/// f = Σ c_λ e_λ. Throws std::invalid_argument for non-symmetric or
/// non-homogeneous input, or when f has fewer variables than its degree.
EBasisExpr expand_in_e(const MultiPoly& f, std::size_t num_vars);
SchurExpr expand_in_s(const MultiPoly& f, std::size_t num_vars);

/// m_{(n,k)} written through power sums; equals m_poly({n,k}, num_vars).
MultiPoly mnk_powersum_form(int n, int k, std::size_t num_vars);

} // namespace escherpos
