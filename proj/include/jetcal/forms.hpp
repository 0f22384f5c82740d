#ifndef JETCAL_FORMS_HPP
#define JETCAL_FORMS_HPP

#include <map>

#include "jetcal/matrix.hpp"

namespace jetcal {

/// Strictly increasing index tuple i_1 < ... < i_p (1-based), the basis
/// labels of Omega^p on affine d-space.
using WedgeTuple = std::vector<std::uint32_t>;

struct WedgeBasis {
    std::uint32_t d = 0;
    std::uint32_t p = 0;

    std::vector<WedgeTuple> tuples() const;
    std::size_t dim() const;
    std::size_t index(const WedgeTuple& t) const;
};

/// Sort indices counting transpositions. Returns 0 on a repeated index,
/// otherwise +-1; `sorted` receives the increasing tuple.
int sort_wedge(WedgeTuple& sorted);

/// Differential form of fixed degree with polynomial coefficients.
class PolyForm {
public:
    PolyForm() = default;
    PolyForm(std::uint32_t d, std::uint32_t p, ScalarField f) : d_(d), p_(p), f_(f) {}

    std::uint32_t dim() const { return d_; }
    std::uint32_t degree() const { return p_; }
    ScalarField field() const { return f_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<WedgeTuple, Poly>& terms() const { return terms_; }

    Poly coeff(const WedgeTuple& t) const;
    void set_coeff(const WedgeTuple& t, const Poly& c);

    PolyForm operator+(const PolyForm& o) const;
    PolyForm operator-(const PolyForm& o) const;
    PolyForm operator*(const Poly& c) const;
    bool operator==(const PolyForm& o) const;
    bool operator!=(const PolyForm& o) const { return !(*this == o); }

private:
    std::uint32_t d_ = 0, p_ = 0;
    ScalarField f_{};
    std::map<WedgeTuple, Poly> terms_;
};

PolyForm form_zero(std::uint32_t d, std::uint32_t p, ScalarField f);
/// f * dx_{t}; t may be unsorted and is normalized with its sign.
PolyForm form_monomial(std::uint32_t d, const WedgeTuple& t, const Poly& f);

/// Bilinear, associative, graded-commutative product; degrees beyond d
/// give the zero form.
PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// d(f dx_I) = sum_j (d f/d x_j) dx_j ^ dx_I.
PolyForm exterior_derivative(const PolyForm& w);

/// dx_I |-> sum_m (-1)^{m+1} dx_{i_m} (x) dx_{I minus i_m}, the
/// one-slot shuffle (rows indexed (i, J) left-factor-major).
SMat eta_shuffle_matrix(std::uint32_t d, std::uint32_t j, ScalarField f);

/// The map induced by full antisymmetrization, (j-1)! times the eta
/// shuffle.
SMat sigma_shuffle_matrix(std::uint32_t d, std::uint32_t j, ScalarField f);

/// Omega^j -> (Omega^1)^{(x) j}: dx_I |-> sum over permutations with
/// sign. Rows are ordered index tuples in base-d radix order.
SMat full_antisymmetrization_matrix(std::uint32_t d, std::uint32_t j, ScalarField f);

enum class BasisMode { plain, divided };

/// Linearized De Rham differential P^n (x) Omega^p -> P^{n-1} (x) Omega^{p+1}:
/// xi^alpha (x) w |-> sum_j alpha_j xi^{alpha - e_j} (x) dx_j ^ w, the
/// divided basis dropping the alpha_j factor. Bases are indexed
/// (jet exponent major, wedge tuple minor).
SMat jet_form_nabla_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                           ScalarField f);

/// Graded piece of the same map, I^{n-p}/I^{n-p+1} (x) Omega^p ->
/// I^{n-p-1}/I^{n-p} (x) Omega^{p+1} (exponents of exact degree n-p).
SMat graded_nabla_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                         ScalarField f);

/// Contracting homotopy s_p of the graded complex:
/// xi^alpha (x) dx_{i_1}^...^dx_{i_p} |->
///   (1/n) sum_m (-1)^{m+1} xi^alpha xi_{i_m} (x) (hat at i_m); the
/// divided variant bumps the divided exponent and carries no 1/n.
/// Plain mode requires n invertible.
SMat graded_homotopy_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                            ScalarField f);

} // namespace jetcal

#endif
