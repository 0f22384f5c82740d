#ifndef JETCAL_STRAT_HPP
#define JETCAL_STRAT_HPP

#include "jetcal/diffop.hpp"
#include "jetcal/forms.hpp"

namespace jetcal {

/// Flat connection nabla_j = d/dx_j + A_j on a free module O^rank.
struct Connection {
    std::uint32_t d = 0;
    std::size_t rank = 0;
    ScalarField f{};
    std::vector<PMat> A;  ///< one rank x rank matrix per variable

    bool operator==(const Connection& o) const;
};

struct FlatnessReport {
    bool pass = true;
    std::uint32_t bad_i = 0, bad_j = 0;  ///< offending pair when pass is false
};

/// Exact check of d_i A_j - d_j A_i + [A_i, A_j] = 0 for all i < j.
FlatnessReport flatness_check(const Connection& c);

/// Stratified free module: maps s'_n : L -> P^n (x) L for n = 0..N,
/// stored as (dim P^n * rank) x rank matrices over Poly with the pair
/// basis (jet exponent major, module index minor). s'_0 = id is enforced;
/// the remaining axioms are the business of verify_stratification.
class StratModule {
public:
    StratModule(FreeModule L, std::uint32_t N, JetMode mode, ScalarField f,
                std::vector<PMat> maps);

    const FreeModule& module() const { return L_; }
    std::uint32_t level_bound() const { return N_; }
    JetMode mode() const { return mode_; }
    ScalarField field() const { return f_; }

    const PMat& strat_map(std::uint32_t n) const { return s_.at(n); }
    /// The alpha coefficient of s'_n as a rank x rank matrix.
    PMat coeff_block(std::uint32_t n, const Exp& alpha) const;

private:
    FreeModule L_;
    std::uint32_t N_ = 0;
    JetMode mode_ = JetMode::plain;
    ScalarField f_{};
    std::vector<PMat> s_;
};

/// s'_n(e) = sum_{|alpha| <= n} xi^alpha (x) nabla^{[alpha]}(e); the
/// divided basis carries the undivided powers nabla^alpha. Plain mode
/// needs every alpha! invertible (char 0, or N < p).
StratModule taylor_stratification(const Connection& c, std::uint32_t N, JetMode mode);

struct StratReport {
    bool coidentity = true;
    bool compatibility = true;
    bool coassociativity = true;
    bool pass = true;
    std::string detail;
};

/// Exact checks of the co-identity, truncation compatibility and
/// co-associativity diagrams.
StratReport verify_stratification(const StratModule& m);

/// Read the connection off the degree-1 coefficients of s'_1.
Connection extract_connection(const StratModule& m);

/// Does f : L_M -> L_N intertwine the stratifications at all levels?
bool verify_strat_morphism(const PMat& f, const StratModule& m, const StratModule& n);

/// The induced tower {P^n (x) L} with the comultiplication stratification.
struct InducedTower {
    std::uint32_t d = 0;
    std::size_t rank = 0;
    std::uint32_t N = 0;
    JetMode mode = JetMode::plain;
    ScalarField f{};
    TruncatedTower tower;

    /// Stratification level map F_{m+n} -> P^n (x) F_m.
    SMat strat_level(std::uint32_t n, std::uint32_t m) const;
};

InducedTower induced_stratification(std::uint32_t d, std::size_t rank, std::uint32_t N,
                                    JetMode mode, ScalarField f);

/// Tower-level analogue of verify_stratification.
StratReport verify_induced_stratification(const InducedTower& t);

struct HorizontalSections {
    SMat basis;          ///< columns in the degree-truncated coordinate space
    bool stabilized = false;
    std::uint32_t deg_bound = 0;
};

/// Kernel of the connection map on coefficients of degree <= deg_bound.
HorizontalSections horizontal_sections(const StratModule& m, std::uint32_t deg_bound,
                                       std::uint32_t margin);

/// Stable kernel of the linearized De Rham map across tower levels at
/// fixed coefficient degree; probe is the level whose kernel is reported.
HorizontalSections horizontal_sections(const InducedTower& t, std::uint32_t deg_bound,
                                       std::uint32_t margin, std::uint32_t probe);

} // namespace jetcal

#endif
