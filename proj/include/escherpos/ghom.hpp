#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "escherpos/chromo.hpp"
#include "escherpos/multipoly.hpp"
#include "escherpos/symcore.hpp"
#include "escherpos/uio.hpp"

namespace escherpos {

/// Polynomial in the vertex variables v_1..v_N of a graph. When `cap` is set,
/// every stored exponent respects it and products are truncated to it.
struct GPoly {
    MultiPoly poly;
    std::optional<std::vector<std::uint8_t>> cap;

    GPoly operator*(const GPoly& o) const;
};

using Cap = std::optional<std::vector<std::uint8_t>>;

/// All-ones cap: keeps only squarefree monomials.
std::vector<std::uint8_t> squarefree_cap(int n);
std::vector<std::uint8_t> alpha_cap(const AlphaMap& alpha);

/// Σ over independent i-subsets S of Π_{v∈S} v; 1 for i = 0, 0 for i < 0.
GPoly e_G(const Graph& g, int i, const Cap& cap = std::nullopt);

/// ρ_G(Σ c_λ e_λ) = Σ c_λ Π_i e_G(λ_i).
GPoly apply_rho(const Graph& g, const EBasisExpr& expr, const Cap& cap = std::nullopt);

GPoly p_G(const Graph& g, int m, const Cap& cap = std::nullopt);
GPoly m_G(const Graph& g, const Partition& lambda, const Cap& cap = std::nullopt);
GPoly s_G(const Graph& g, const Partition& lambda, const Cap& cap = std::nullopt);

/// Coefficient of v_1 v_2 ... v_n.
Int squarefree_coeff(const GPoly& f, int n);
/// Coefficient of Π v^{α(v)}.
Int coeff_alpha(const GPoly& f, const AlphaMap& alpha);

/// [v_1...v_N] m_λ^{inc(U)}; requires |λ| = N.
Int m_coeff_U(const Uio& u, const Partition& lambda);

/// Degree-n component of T(x, v) = Σ_{λ⊢n} m_λ(x) e^G_λ(v) in r x-variables
/// followed by the vertex variables. Optionally truncated in v.
MultiPoly cauchy_m_e(const Graph& g, int n, int r, const Cap& vertex_cap = std::nullopt);
/// The same component written as Σ_{λ⊢n} e_λ(x) m^G_λ(v).
MultiPoly cauchy_e_m(const Graph& g, int n, int r);

/// [v^α] T(x, v) · Π α(v)! as a polynomial in n = Σα colour variables.
MultiPoly gnechrom_lhs(const Graph& g, const AlphaMap& alpha);
/// Compares gnechrom_lhs with X_{G^α}. Requires Σα <= 7.
bool verify_gnechrom(const Graph& g, const AlphaMap& alpha);

} // namespace escherpos
