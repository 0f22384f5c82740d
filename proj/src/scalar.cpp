#include "jetcal/scalar.hpp"

namespace jetcal {

namespace {

bool is_prime_u32(std::uint32_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

} // namespace

ScalarField make_field(std::uint32_t p)
{
    if (p != 0 && !is_prime_u32(p))
        throw Error("characteristic must be 0 or a prime, got " + std::to_string(p));
    return ScalarField{p};
}

Scalar::Scalar(long v, ScalarField f) : q_(v), p_(f.p)
{
    reduce();
}

Scalar Scalar::from_string(const std::string& s, ScalarField f)
{
    Scalar r(f);
    try {
        r.q_ = mpq_class(s);
    } catch (const std::invalid_argument&) {
        throw Error("bad scalar literal '" + s + "'");
    }
    r.q_.canonicalize();
    if (f.p != 0 && r.q_.get_den() != 1) {
        // rational literal over F_p: interpret as num * den^{-1}
        Scalar num(f), den(f);
        num.q_ = mpq_class(r.q_.get_num());
        den.q_ = mpq_class(r.q_.get_den());
        num.reduce();
        den.reduce();
        return num / den;
    }
    r.reduce();
    return r;
}

void Scalar::reduce()
{
    if (p_ == 0) {
        q_.canonicalize();
        return;
    }
    mpz_class n = q_.get_num();
    mpz_class r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), mpz_class(p_).get_mpz_t());
    q_ = mpq_class(r);
}

void Scalar::check_same(const Scalar& o) const
{
    if (p_ != o.p_)
        throw Error("mixed scalar fields (char " + std::to_string(p_) + " vs " +
                    std::to_string(o.p_) + ")");
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check_same(o);
    Scalar r(ScalarField{p_});
    r.q_ = q_ + o.q_;
    r.reduce();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const
{
    check_same(o);
    Scalar r(ScalarField{p_});
    r.q_ = q_ - o.q_;
    r.reduce();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const
{
    check_same(o);
    Scalar r(ScalarField{p_});
    r.q_ = q_ * o.q_;
    r.reduce();
    return r;
}

Scalar Scalar::operator-() const
{
    Scalar r(ScalarField{p_});
    r.q_ = -q_;
    r.reduce();
    return r;
}

Scalar Scalar::inv() const
{
    if (is_zero()) throw Error("division by zero");
    Scalar r(ScalarField{p_});
    if (p_ == 0) {
        r.q_ = 1 / q_;
        return r;
    }
    mpz_class out;
    if (mpz_invert(out.get_mpz_t(), q_.get_num().get_mpz_t(), mpz_class(p_).get_mpz_t()) == 0)
        throw Error("non-invertible residue mod " + std::to_string(p_));
    r.q_ = mpq_class(out);
    return r;
}

bool Scalar::operator==(const Scalar& o) const
{
    check_same(o);
    return q_ == o.q_;
}

std::string Scalar::str() const
{
    return q_.get_str();
}

Scalar factorial_scalar(unsigned long n, ScalarField f)
{
    mpz_class v;
    mpz_fac_ui(v.get_mpz_t(), n);
    Scalar r = Scalar(0, f);
    return r + Scalar::from_string(v.get_str(), f);
}

Scalar binomial_scalar(unsigned long n, unsigned long k, ScalarField f)
{
    if (k > n) return Scalar(0, f);
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), n, k);
    return Scalar::from_string(v.get_str(), f);
}

} // namespace jetcal
