#ifndef JETCAL_DERHAM_HPP
#define JETCAL_DERHAM_HPP

#include "jetcal/chain.hpp"
#include "jetcal/strat.hpp"

namespace jetcal {

/// The level-n linearized Poincare complex
///   0 -> O -> P^n -> P^{n-1} (x) Omega^1 -> ... -> P^{n-p} (x) Omega^p -> ...
/// with d^0 = unit and the nabla-bar differentials; all matrices are
/// constant, so homology is scalar linear algebra.
ChainComplex linearized_derham_level(std::uint32_t d, std::uint32_t n, BasisMode mode,
                                     ScalarField f);

/// The graded piece I^{n-p}/I^{n-p+1} (x) Omega^p with differential D^p,
/// carrying the explicit contracting homotopy s_p whenever it is
/// constructible (always in char 0 and in divided mode; plain mode over
/// F_p needs p not dividing n).
ChainComplex graded_derham_level(std::uint32_t d, std::uint32_t n, BasisMode mode,
                                 ScalarField f);

/// DR-bar of a stratified module: 0 -> M -> Omega^1 (x) M -> ... with
/// d(w (x) e) = dw (x) e + (-1)^deg w ^ nabla e, each differential an
/// order-<=1 operator. Bases are (wedge tuple major, module index minor).
DifferentialComplex derham_of_strat(const StratModule& m);

/// The De Rham complex of affine d-space (trivial connection, rank 1).
DifferentialComplex derham_complex(std::uint32_t d, ScalarField f);

/// The universal order-m operator L -> P^m (x) L (Taylor expansion).
DiffOperator taylor_operator(const FreeModule& L, std::uint32_t level, ScalarField f);

/// eta^{i,j}: Omega^j (x) F^{i-j} -> F^i, f dx_{i_1}...dx_{i_j} (x) s |->
/// f d_{x_{i_1}} ... d_{x_{i_j}}(s), as a matrix over Poly.
PMat eta_structural(const DifferentialComplex& F, std::size_t i, std::uint32_t j);

/// Structural map assembled through the full antisymmetrization; equals
/// j! eta in every characteristic where it is defined.
PMat sigma_structural(const DifferentialComplex& F, std::size_t i, std::uint32_t j);

/// Phi^{i,j}: Omega^j (x) P^level (x) F^{i-j} -> F^i
/// (kill xi^alpha for alpha != 0, then eta).
PMat phi_component(const DifferentialComplex& F, std::uint32_t level, std::size_t i,
                   std::uint32_t j);

/// Phi^i = sum_j Phi^{i,j} on the direct sum over j = 0..d.
PMat phi_map(const DifferentialComplex& F, std::uint32_t level, std::size_t i);

/// The differential of Omega^q (x) P^level -> Omega^{q+1} (x) P^{level-1}
/// (the mirror Poincare complex), folded with extra_rank module columns.
DiffOperator mirror_poincare_operator(std::uint32_t d, std::uint32_t level, std::uint32_t q,
                                      ScalarField f, std::size_t extra_rank);

struct PhiChainReport {
    struct Cell {
        std::size_t p;        ///< target complex degree
        std::uint32_t q;      ///< form degree of the bicomplex cell
        std::uint32_t level;  ///< jet order of the cell
        bool pass;
    };
    std::vector<Cell> cells;
    std::vector<std::pair<std::size_t, bool>> composite_identity;  ///< Phi o d^1 = id per degree
    bool pass = true;
};

/// d_F Phi^{p,q} = Phi^{p+1,q+1} d' + (-1)^q Phi^{p+1,q} d'' at every
/// bicomplex cell of positive level, plus the retraction identity.
PhiChainReport verify_phi_chainmap(const DifferentialComplex& F, std::uint32_t top_level);

struct PsiReport {
    bool exact = false;
    bool homotopy_certified = false;       ///< char-0 route: transported homotopy verified
    std::vector<std::size_t> ranks;        ///< homology ranks of the tensored complex
};

/// Finite-level exactness of M -> M (x) P^n -> M (x) P^{n-1} (x) Omega^1
/// -> ..., certified by a transported contracting homotopy in char 0 and
/// by homology ranks otherwise.
PsiReport verify_psi_exactness(const StratModule& m, std::uint32_t level_bound);

// -- bicomplexes ---------------------------------------------------------

/// Rectangular grid of free modules with commuting horizontal and
/// vertical differentials (d1: (p,q) -> (p+1,q), d2: (p,q) -> (p,q+1)).
struct Bicomplex {
    ScalarField f{};
    std::vector<std::vector<std::size_t>> ranks;  ///< [p][q]
    std::vector<std::vector<SMat>> d1;            ///< [p][q] for p+1 < P
    std::vector<std::vector<SMat>> d2;            ///< [p][q] for q+1 < Q

    std::size_t P() const { return ranks.size(); }
    std::size_t Q() const { return ranks.empty() ? 0 : ranks[0].size(); }
};

/// Antidiagonal direct sums with d_tot = d1 + (-1)^p d2. Verifies the
/// squares and signs; throws on anticommutation failure.
ChainComplex total_complex(const Bicomplex& b);

/// The DR-bar o Q^0 bicomplex of an order-<=1 complex, k-linearized at
/// coefficient degree deg0 + (p+q) * deg_step per cell.
Bicomplex derham_q0_bicomplex(const DifferentialComplex& F, std::uint32_t top_level,
                              std::uint32_t deg0, std::uint32_t deg_step);

/// Degree-truncated scalar matrix of an operator (deg_in on the source,
/// deg_out on the target coefficients).
SMat klinearize_operator(const DiffOperator& op, std::uint32_t deg_in, std::uint32_t deg_out);

} // namespace jetcal

#endif
