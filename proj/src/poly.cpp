#include "jetcal/poly.hpp"

#include <algorithm>
#include <sstream>

namespace jetcal {

std::uint32_t exp_degree(const Exp& e)
{
    std::uint32_t s = 0;
    for (auto v : e) s += v;
    return s;
}

Exp exp_add(const Exp& a, const Exp& b)
{
    if (a.size() != b.size()) throw Error("exponent dimension mismatch");
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Exp exp_sub(const Exp& a, const Exp& b)
{
    if (a.size() != b.size()) throw Error("exponent dimension mismatch");
    Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] > a[i]) throw Error("negative exponent in subtraction");
        r[i] = a[i] - b[i];
    }
    return r;
}

bool exp_leq(const Exp& a, const Exp& b)
{
    if (a.size() != b.size()) throw Error("exponent dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool GradedLex::operator()(const Exp& a, const Exp& b) const
{
    auto da = exp_degree(a), db = exp_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(const Scalar& c, std::uint32_t d)
{
    Poly r(d, c.field());
    if (!c.is_zero()) r.terms_[Exp(d, 0)] = c;
    return r;
}

Poly Poly::constant(long c, std::uint32_t d, ScalarField f)
{
    return constant(Scalar(c, f), d);
}

Poly Poly::variable(std::uint32_t i, std::uint32_t d, ScalarField f)
{
    if (i < 1 || i > d) throw Error("variable index out of range");
    Exp e(d, 0);
    e[i - 1] = 1;
    return monomial(e, Scalar(1, f));
}

Poly Poly::monomial(const Exp& e, const Scalar& c)
{
    Poly r(static_cast<std::uint32_t>(e.size()), c.field());
    if (!c.is_zero()) r.terms_[e] = c;
    return r;
}

std::uint32_t Poly::degree() const
{
    if (terms_.empty()) return 0;
    return exp_degree(terms_.rbegin()->first);
}

Scalar Poly::coeff(const Exp& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0, f_) : it->second;
}

void Poly::set_coeff(const Exp& e, const Scalar& c)
{
    if (e.size() != d_) throw Error("exponent dimension mismatch");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

void Poly::check_compatible(const Poly& o) const
{
    if (d_ != o.d_) throw Error("polynomial dimension mismatch");
    if (!(f_ == o.f_)) throw Error("polynomial field mismatch");
}

Poly Poly::operator+(const Poly& o) const
{
    check_compatible(o);
    Poly r(*this);
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    check_compatible(o);
    Poly r(*this);
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) - c);
    return r;
}

Poly Poly::operator-() const
{
    Poly r(d_, f_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    check_compatible(o);
    Poly r(d_, f_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exp e = exp_add(ea, eb);
            r.set_coeff(e, r.coeff(e) + ca * cb);
        }
    return r;
}

Poly Poly::operator*(const Scalar& c) const
{
    Poly r(d_, f_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) {
        Scalar w = v * c;
        if (!w.is_zero()) r.terms_[e] = w;
    }
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    check_compatible(o);
    return terms_ == o.terms_;
}

Poly Poly::derivative(std::uint32_t j) const
{
    if (j < 1 || j > d_) throw Error("variable index out of range");
    Poly r(d_, f_);
    for (const auto& [e, c] : terms_) {
        if (e[j - 1] == 0) continue;
        Exp e2 = e;
        e2[j - 1] -= 1;
        Scalar w = c * Scalar(static_cast<long>(e[j - 1]), f_);
        if (!w.is_zero()) r.set_coeff(e2, r.coeff(e2) + w);
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images,
                      const std::function<Poly(const Poly&)>& reducer) const
{
    if (images.size() != d_) throw Error("substitution image count mismatch");
    std::uint32_t dt = d_ == 0 ? 0 : images.empty() ? 0 : images[0].dim();
    for (const auto& g : images)
        if (g.dim() != dt || !(g.field() == f_)) throw Error("substitution image mismatch");
    Poly acc(dt, f_);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(c, dt);
        for (std::uint32_t i = 0; i < d_; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) {
                term = term * images[i];
                if (reducer) term = reducer(term);
            }
        acc += term;
        if (reducer) acc = reducer(acc);
    }
    return acc;
}

std::string Poly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // highest degree first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        if (first) {
            out << (neg ? "-" : "");
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        bool has_vars = exp_degree(e) > 0;
        if (!has_vars || mag != "1") {
            out << mag;
            if (has_vars) out << "*";
        }
        bool firstv = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstv) out << "*";
            firstv = false;
            out << "x" << (i + 1);
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

Poly hasse_derivative(const Poly& f, const Exp& alpha)
{
    if (alpha.size() != f.dim()) throw Error("hasse_derivative: dimension mismatch");
    Poly r(f.dim(), f.field());
    for (const auto& [e, c] : f.terms()) {
        if (!exp_leq(alpha, e)) continue;
        Scalar w = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            w *= binomial_scalar(e[i], alpha[i], f.field());
        if (w.is_zero()) continue;
        Exp e2 = exp_sub(e, alpha);
        r.set_coeff(e2, r.coeff(e2) + w);
    }
    return r;
}

Poly iterated_derivative(const Poly& f, const Exp& alpha)
{
    if (alpha.size() != f.dim()) throw Error("iterated_derivative: dimension mismatch");
    Poly r = f;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        for (std::uint32_t k = 0; k < alpha[j]; ++k)
            r = r.derivative(static_cast<std::uint32_t>(j + 1));
    return r;
}

} // namespace jetcal
