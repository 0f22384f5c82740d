#ifndef JETCAL_DIFFOP_HPP
#define JETCAL_DIFFOP_HPP

#include "jetcal/jet.hpp"

namespace jetcal {

/// Free module over the polynomial ring in d variables.
struct FreeModule {
    std::uint32_t d = 0;
    std::size_t rank = 0;

    bool operator==(const FreeModule&) const = default;
};

/// Finite-order differential operator L -> L' stored through its bar
/// representation: the module-linear map P^m (x) L -> L' given by the
/// table alpha |-> matrix of s |-> bar(xi^alpha (x) s). Bars live on the
/// plain xi-basis.
class DiffOperator {
public:
    DiffOperator() = default;
    DiffOperator(FreeModule src, FreeModule dst, std::uint32_t order, ScalarField f);

    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return dst_; }
    std::uint32_t order() const { return order_; }
    ScalarField field() const { return f_; }
    std::uint32_t dim() const { return src_.d; }

    /// Largest |alpha| carrying a nonzero matrix (0 for the zero operator).
    std::uint32_t effective_order() const;

    const std::map<Exp, PMat, GradedLex>& bar_table() const { return bar_; }
    PMat bar(const Exp& alpha) const;
    void set_bar(const Exp& alpha, const PMat& m);

    /// The bar as one matrix P^order (x) L -> L' over the pair basis
    /// (jet index major, then module index).
    PMat bar_matrix() const;

    DiffOperator operator+(const DiffOperator& o) const;
    DiffOperator operator-() const;
    bool is_zero() const;
    bool operator==(const DiffOperator& o) const;

private:
    FreeModule src_, dst_;
    std::uint32_t order_ = 0;
    ScalarField f_{};
    std::map<Exp, PMat, GradedLex> bar_;
};

/// Order-0 operator (a module map).
DiffOperator order0_operator(const PMat& m, std::uint32_t d);

/// D(f e) = sum_alpha hasse(f, alpha) bar(xi^alpha (x) e), extended
/// additively over the coordinates of s.
std::vector<Poly> diffop_apply(const DiffOperator& op, const std::vector<Poly>& s);

/// bar(D2 D1) = bar2 o (id (x) bar1) o (delta^{r1+r2, r1} (x) id).
DiffOperator diffop_compose(const DiffOperator& d2, const DiffOperator& d1);

/// Recover an operator of known order bound from its application on the
/// monomial sections x^alpha e_j (triangular inversion).
DiffOperator diffop_from_application(
    const FreeModule& src, const FreeModule& dst, std::uint32_t order, ScalarField f,
    const std::function<std::vector<Poly>(const std::vector<Poly>&)>& apply);

struct Order1Parts {
    PMat value_part;            ///< bar at alpha = 0
    std::vector<PMat> x_parts;  ///< bar at alpha = e_j, j = 1..d
};

/// Split an operator of effective order <= 1 into (d_F, d_{x_j}).
Order1Parts extract_order1_parts(const DiffOperator& op);
DiffOperator assemble_order1(const FreeModule& src, const FreeModule& dst, ScalarField f,
                             const Order1Parts& parts);

/// Complex of modules with differential operators; the d^2 = 0 facts are
/// reported by the checkers, not enforced on construction (negative
/// controls need malformed instances).
struct DifferentialComplex {
    std::vector<FreeModule> modules;
    std::vector<DiffOperator> ops;
};

struct Order1Report {
    struct Entry {
        std::size_t degree;
        bool d2_zero;            ///< (i)  d_F d_F = 0
        bool mixed_anticommute;  ///< (ii) d_{x_j} d_F + d_F d_{x_j} = 0
        bool x_anticommute;      ///< (iii) d_{x_j} d_{x_k} + d_{x_k} d_{x_j} = 0
        bool x_square_zero;      ///< (iv) d_{x_j} d_{x_j} = 0
        bool composite_bar_zero; ///< bar of the composite on P^2 (x) F^i vanishes
    };
    std::vector<Entry> entries;
    bool pass = true;
};

Order1Report verify_order1_relations(const DifferentialComplex& c);

/// Level map Q^0(D)_n : P^{n+m} (x) L -> P^n (x) L' of the linearization,
/// (id (x) bar) o (delta^{n+m, m} (x) id).
PMat diffop_linearize(const DiffOperator& op, std::uint32_t n);

// -- truncated towers and pro-maps --------------------------------------

struct TruncatedTower {
    std::vector<FreeModule> levels;  ///< F_0..F_N
    std::vector<PMat> transitions;   ///< F_{n+1} -> F_n
};

struct ProMap {
    std::size_t shift = 0;
    std::vector<PMat> levels;  ///< levels[n] : F_{n+shift} -> G_n
};

/// Exact check that every transition square commutes.
void validate_promap(const ProMap& f, const TruncatedTower& src, const TruncatedTower& dst);

/// Equality after composing with transitions down to a common shift.
bool promap_equal(const ProMap& a, const ProMap& b, const TruncatedTower& src);

/// The linearization of an operator as a ProMap of shift = order over
/// the induced towers {P^n (x) L}.
ProMap linearization_promap(const DiffOperator& op, std::uint32_t top_level);

/// The induced tower {P^n (x) L} for L free of the given rank, with
/// truncation (x) id transitions.
TruncatedTower induced_tower(std::uint32_t d, std::size_t rank, std::uint32_t top_level,
                             JetMode mode, ScalarField f);

} // namespace jetcal

#endif
