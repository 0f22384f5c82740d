#ifndef JETCAL_SCALAR_HPP
#define JETCAL_SCALAR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace jetcal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient field: the rationals (p == 0) or the prime field F_p
/// with p a machine-word prime. All arithmetic is exact.
struct ScalarField {
    std::uint32_t p = 0;

    bool operator==(const ScalarField&) const = default;
    bool is_rational() const { return p == 0; }
};

ScalarField make_field(std::uint32_t p);

/// Exact field element. Char 0 values are arbitrary-precision rationals;
/// char p values are residues stored as integers in [0, p).
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(ScalarField f) : p_(f.p) {}
    Scalar(long v, ScalarField f);

    static Scalar from_string(const std::string& s, ScalarField f);

    ScalarField field() const { return ScalarField{p_}; }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// True when division by this element is possible (nonzero).
    bool invertible() const { return !is_zero(); }

    std::string str() const;

    const mpq_class& raw() const { return q_; }

private:
    void reduce();
    void check_same(const Scalar& o) const;

    mpq_class q_ = 0;
    std::uint32_t p_ = 0;
};

/// n! as a field element.
Scalar factorial_scalar(unsigned long n, ScalarField f);
/// Binomial C(n, k) as a field element.
Scalar binomial_scalar(unsigned long n, unsigned long k, ScalarField f);

} // namespace jetcal

#endif
