#ifndef JETCAL_POLY_HPP
#define JETCAL_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jetcal/scalar.hpp"

namespace jetcal {

/// Exponent vector in N^d.
using Exp = std::vector<std::uint32_t>;

std::uint32_t exp_degree(const Exp& e);
Exp exp_add(const Exp& a, const Exp& b);
/// a - b; throws if any component would go negative.
Exp exp_sub(const Exp& a, const Exp& b);
bool exp_leq(const Exp& a, const Exp& b);

/// Graded-lexicographic order (total degree first, then lex).
struct GradedLex {
    bool operator()(const Exp& a, const Exp& b) const;
};

/// Sparse multivariate polynomial over an exact field, in variables
/// x1..xd. No zero coefficients are stored; term order is graded-lex,
/// which makes printing and equality canonical.
class Poly {
public:
    Poly() = default;
    Poly(std::uint32_t d, ScalarField f) : d_(d), f_(f) {}

    static Poly zero(std::uint32_t d, ScalarField f) { return Poly(d, f); }
    static Poly constant(const Scalar& c, std::uint32_t d);
    static Poly constant(long c, std::uint32_t d, ScalarField f);
    /// x_i, 1-based index.
    static Poly variable(std::uint32_t i, std::uint32_t d, ScalarField f);
    static Poly monomial(const Exp& e, const Scalar& c);

    std::uint32_t dim() const { return d_; }
    ScalarField field() const { return f_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t degree() const; // 0 for the zero polynomial

    const std::map<Exp, Scalar, GradedLex>& terms() const { return terms_; }
    Scalar coeff(const Exp& e) const;
    void set_coeff(const Exp& e, const Scalar& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Scalar& c) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// d/dx_j (1-based).
    Poly derivative(std::uint32_t j) const;

    /// Substitute x_i := images[i-1]; images live in any dimension but
    /// must share the field. An optional reducer normalizes after each
    /// accumulation (used by nilpotent truncated algebras).
    Poly substitute(const std::vector<Poly>& images,
                    const std::function<Poly(const Poly&)>& reducer = nullptr) const;

    std::string str() const;

private:
    void check_compatible(const Poly& o) const;

    std::uint32_t d_ = 0;
    ScalarField f_{};
    std::map<Exp, Scalar, GradedLex> terms_;
};

/// Hasse derivative: the coefficient of t^alpha in f(x + t). Equals
/// (1/alpha!) d^alpha f in characteristic 0 and is well defined in
/// every characteristic.
Poly hasse_derivative(const Poly& f, const Exp& alpha);

/// alpha-fold iterated plain derivative d^alpha.
Poly iterated_derivative(const Poly& f, const Exp& alpha);

} // namespace jetcal

#endif
