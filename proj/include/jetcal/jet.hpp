#ifndef JETCAL_JET_HPP
#define JETCAL_JET_HPP

#include <map>
#include <utility>

#include "jetcal/matrix.hpp"

namespace jetcal {

enum class JetMode { plain, divided };

/// The order-m principal-parts algebra P^m on affine d-space, as a free
/// module on the xi-monomials of degree <= m with polynomial coefficients
/// written on the left. In divided mode the basis is the divided-power
/// family xi^[alpha] with the binomial multiplication rule.
struct JetAlgebra {
    std::uint32_t d = 0;
    std::uint32_t m = 0;
    JetMode mode = JetMode::plain;
    ScalarField field{};

    bool operator==(const JetAlgebra&) const = default;
    std::size_t dim() const { return monomial_count(d, m); }
    std::vector<Exp> basis() const { return exponents_up_to(d, m); }
};

std::size_t jet_index(const JetAlgebra& a, const Exp& e);

class JetElement {
public:
    JetElement() = default;
    explicit JetElement(JetAlgebra a) : alg_(a) {}

    const JetAlgebra& algebra() const { return alg_; }
    const std::map<Exp, Poly, GradedLex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly coeff(const Exp& e) const;
    void set_coeff(const Exp& e, const Poly& c);

    JetElement operator+(const JetElement& o) const;
    JetElement operator-(const JetElement& o) const;
    JetElement operator*(const Scalar& c) const;
    bool operator==(const JetElement& o) const;
    bool operator!=(const JetElement& o) const { return !(*this == o); }

    /// Coordinates over the algebra basis (graded-lex order).
    std::vector<Poly> coords() const;
    static JetElement from_coords(const JetAlgebra& a, const std::vector<Poly>& v);

private:
    JetAlgebra alg_;
    std::map<Exp, Poly, GradedLex> terms_;
};

/// The unit element 1 (x) 1.
JetElement jet_one(const JetAlgebra& a);
/// Basis monomial xi^alpha (resp. xi^[alpha]).
JetElement jet_basis_element(const JetAlgebra& a, const Exp& alpha);

/// q_{m,n}: drop all terms of degree > n. Quotient-map semantics.
JetElement jet_truncate(const JetElement& v, std::uint32_t n);

/// Ring multiplication, truncated at order m.
JetElement jet_mul(const JetElement& u, const JetElement& v);

/// d^1, the Taylor expansion of 1 (x) f: Hasse coefficients on the plain
/// basis, iterated-derivative coefficients on the divided basis.
JetElement taylor(const Poly& f, const JetAlgebra& a);

/// d^0, f |-> f * unit. A ring map.
JetElement unit_left(const Poly& f, const JetAlgebra& a);

/// q_m, the coefficient of the unit (all xi_i := 0).
Poly jet_counit(const JetElement& v);

/// Rescale between the plain and divided bases (xi^alpha = alpha! xi^[alpha]).
JetElement basis_convert(const JetElement& v, JetMode target);

// -- tensor elements P^{m-p} (x) P^p ------------------------------------

struct PairGradedLex {
    bool operator()(const std::pair<Exp, Exp>& a, const std::pair<Exp, Exp>& b) const
    {
        GradedLex lt;
        if (lt(a.first, b.first)) return true;
        if (lt(b.first, a.first)) return false;
        return lt(a.second, b.second);
    }
};

class JetTensorElement {
public:
    JetTensorElement() = default;
    JetTensorElement(JetAlgebra left, JetAlgebra right) : left_(left), right_(right) {}

    const JetAlgebra& left() const { return left_; }
    const JetAlgebra& right() const { return right_; }
    const std::map<std::pair<Exp, Exp>, Poly, PairGradedLex>& terms() const { return terms_; }

    Poly coeff(const Exp& a, const Exp& b) const;
    void set_coeff(const Exp& a, const Exp& b, const Poly& c);

    JetTensorElement operator+(const JetTensorElement& o) const;
    JetTensorElement operator-(const JetTensorElement& o) const;
    /// Componentwise algebra product with factorwise truncation.
    JetTensorElement operator*(const JetTensorElement& o) const;
    bool operator==(const JetTensorElement& o) const;
    bool operator!=(const JetTensorElement& o) const { return !(*this == o); }

private:
    JetAlgebra left_, right_;
    std::map<std::pair<Exp, Exp>, Poly, PairGradedLex> terms_;
};

/// delta^{m,p}: P^m -> P^{m-p} (x) P^p. Multiplicative extension of
/// xi_i |-> 1 (x) xi_i + xi_i (x) 1 on the plain basis; the binomial-free
/// rule on the divided basis.
JetTensorElement comult(const JetElement& v, std::uint32_t p);

// -- matrix forms (bases are indexed left-factor-major throughout) -------

/// Scalar matrix of delta^{m,p} on the monomial bases.
SMat comult_matrix(std::uint32_t d, std::uint32_t m, std::uint32_t p, JetMode mode,
                   ScalarField f);
/// Scalar matrix of q_{m,n}.
SMat truncate_matrix(std::uint32_t d, std::uint32_t m, std::uint32_t n, ScalarField f);
/// Matrix of v |-> v * taylor(g) on the jet basis (the middle O-action:
/// functions cross a jet tensor factor through their Taylor expansion).
PMat jet_mult_matrix(const JetAlgebra& a, const Poly& g);

/// id_{P^a} (x) g for a map g with polynomial entries; coefficients of g
/// are normalized across the jet factor via jet_mult_matrix.
PMat id_jet_tensor(const JetAlgebra& a, const PMat& g);

} // namespace jetcal

#endif
