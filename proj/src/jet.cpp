#include "jetcal/jet.hpp"

namespace jetcal {

namespace {

Scalar exp_factorial(const Exp& e, ScalarField f)
{
    Scalar r(1, f);
    for (auto v : e) r *= factorial_scalar(v, f);
    return r;
}

/// Product coefficient of the basis monomials for alpha and beta:
/// 1 in plain mode, prod C(a_i + b_i, a_i) in divided mode.
Scalar mul_coeff(const JetAlgebra& a, const Exp& ea, const Exp& eb)
{
    if (a.mode == JetMode::plain) return Scalar(1, a.field);
    Scalar c(1, a.field);
    for (std::size_t i = 0; i < ea.size(); ++i)
        c *= binomial_scalar(ea[i] + eb[i], ea[i], a.field);
    return c;
}

} // namespace

std::size_t jet_index(const JetAlgebra& a, const Exp& e)
{
    auto basis = a.basis();
    GradedLex lt;
    std::size_t lo = 0, hi = basis.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (lt(basis[mid], e))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo >= basis.size() || basis[lo] != e) throw Error("jet_index: exponent not in basis");
    return lo;
}

Poly JetElement::coeff(const Exp& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Poly::zero(alg_.d, alg_.field) : it->second;
}

void JetElement::set_coeff(const Exp& e, const Poly& c)
{
    if (e.size() != alg_.d) throw Error("jet exponent dimension mismatch");
    if (exp_degree(e) > alg_.m) throw Error("jet exponent above order");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

JetElement JetElement::operator+(const JetElement& o) const
{
    if (!(alg_ == o.alg_)) throw Error("jet algebra mismatch");
    JetElement r(*this);
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

JetElement JetElement::operator-(const JetElement& o) const
{
    if (!(alg_ == o.alg_)) throw Error("jet algebra mismatch");
    JetElement r(*this);
    for (const auto& [e, c] : o.terms_) r.set_coeff(e, r.coeff(e) - c);
    return r;
}

JetElement JetElement::operator*(const Scalar& c) const
{
    JetElement r(alg_);
    for (const auto& [e, v] : terms_) r.set_coeff(e, v * c);
    return r;
}

bool JetElement::operator==(const JetElement& o) const
{
    if (!(alg_ == o.alg_)) throw Error("jet algebra mismatch");
    return terms_ == o.terms_;
}

std::vector<Poly> JetElement::coords() const
{
    auto basis = alg_.basis();
    std::vector<Poly> v(basis.size(), Poly::zero(alg_.d, alg_.field));
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = coeff(basis[i]);
    return v;
}

JetElement JetElement::from_coords(const JetAlgebra& a, const std::vector<Poly>& v)
{
    auto basis = a.basis();
    if (v.size() != basis.size()) throw Error("jet coordinate size mismatch");
    JetElement r(a);
    for (std::size_t i = 0; i < basis.size(); ++i) r.set_coeff(basis[i], v[i]);
    return r;
}

JetElement jet_one(const JetAlgebra& a)
{
    JetElement r(a);
    r.set_coeff(Exp(a.d, 0), Poly::constant(1, a.d, a.field));
    return r;
}

JetElement jet_basis_element(const JetAlgebra& a, const Exp& alpha)
{
    JetElement r(a);
    r.set_coeff(alpha, Poly::constant(1, a.d, a.field));
    return r;
}

JetElement jet_truncate(const JetElement& v, std::uint32_t n)
{
    const JetAlgebra& a = v.algebra();
    if (n > a.m) throw Error("jet_truncate: target order exceeds source order");
    JetAlgebra b{a.d, n, a.mode, a.field};
    JetElement r(b);
    for (const auto& [e, c] : v.terms())
        if (exp_degree(e) <= n) r.set_coeff(e, c);
    return r;
}

JetElement jet_mul(const JetElement& u, const JetElement& v)
{
    const JetAlgebra& a = u.algebra();
    if (!(a == v.algebra())) throw Error("jet algebra mismatch");
    JetElement r(a);
    for (const auto& [ea, ca] : u.terms())
        for (const auto& [eb, cb] : v.terms()) {
            Exp e = exp_add(ea, eb);
            if (exp_degree(e) > a.m) continue;
            Poly w = ca * cb * mul_coeff(a, ea, eb);
            r.set_coeff(e, r.coeff(e) + w);
        }
    return r;
}

JetElement taylor(const Poly& f, const JetAlgebra& a)
{
    if (f.dim() != a.d) throw Error("taylor: dimension mismatch");
    JetElement r(a);
    for (const auto& alpha : a.basis()) {
        Poly c = a.mode == JetMode::plain ? hasse_derivative(f, alpha)
                                          : iterated_derivative(f, alpha);
        if (!c.is_zero()) r.set_coeff(alpha, c);
    }
    return r;
}

JetElement unit_left(const Poly& f, const JetAlgebra& a)
{
    if (f.dim() != a.d) throw Error("unit_left: dimension mismatch");
    JetElement r(a);
    r.set_coeff(Exp(a.d, 0), f);
    return r;
}

Poly jet_counit(const JetElement& v)
{
    return v.coeff(Exp(v.algebra().d, 0));
}

JetElement basis_convert(const JetElement& v, JetMode target)
{
    const JetAlgebra& a = v.algebra();
    if (a.mode == target) return v;
    JetAlgebra b{a.d, a.m, target, a.field};
    JetElement r(b);
    for (const auto& [e, c] : v.terms()) {
        // xi^alpha = alpha! xi^[alpha]; both directions need alpha! invertible
        Scalar fac = exp_factorial(e, a.field);
        if (!fac.invertible())
            throw Error("basis_convert: alpha! not invertible in characteristic p");
        r.set_coeff(e, target == JetMode::divided ? c * fac : c * fac.inv());
    }
    return r;
}

Poly JetTensorElement::coeff(const Exp& a, const Exp& b) const
{
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Poly::zero(left_.d, left_.field) : it->second;
}

void JetTensorElement::set_coeff(const Exp& a, const Exp& b, const Poly& c)
{
    if (exp_degree(a) > left_.m || exp_degree(b) > right_.m)
        throw Error("jet tensor exponent above order");
    if (c.is_zero())
        terms_.erase({a, b});
    else
        terms_[{a, b}] = c;
}

JetTensorElement JetTensorElement::operator+(const JetTensorElement& o) const
{
    if (!(left_ == o.left_) || !(right_ == o.right_)) throw Error("jet tensor mismatch");
    JetTensorElement r(*this);
    for (const auto& [k, c] : o.terms_) r.set_coeff(k.first, k.second, r.coeff(k.first, k.second) + c);
    return r;
}

JetTensorElement JetTensorElement::operator-(const JetTensorElement& o) const
{
    if (!(left_ == o.left_) || !(right_ == o.right_)) throw Error("jet tensor mismatch");
    JetTensorElement r(*this);
    for (const auto& [k, c] : o.terms_) r.set_coeff(k.first, k.second, r.coeff(k.first, k.second) - c);
    return r;
}

JetTensorElement JetTensorElement::operator*(const JetTensorElement& o) const
{
    if (!(left_ == o.left_) || !(right_ == o.right_)) throw Error("jet tensor mismatch");
    JetTensorElement r(left_, right_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            Exp el = exp_add(ka.first, kb.first);
            Exp er = exp_add(ka.second, kb.second);
            if (exp_degree(el) > left_.m || exp_degree(er) > right_.m) continue;
            Poly w = ca * cb * (mul_coeff(left_, ka.first, kb.first) *
                                mul_coeff(right_, ka.second, kb.second));
            r.set_coeff(el, er, r.coeff(el, er) + w);
        }
    return r;
}

bool JetTensorElement::operator==(const JetTensorElement& o) const
{
    if (!(left_ == o.left_) || !(right_ == o.right_)) throw Error("jet tensor mismatch");
    return terms_ == o.terms_;
}

JetTensorElement comult(const JetElement& v, std::uint32_t p)
{
    const JetAlgebra& a = v.algebra();
    if (p > a.m) throw Error("comult: split order out of range");
    JetAlgebra al{a.d, a.m - p, a.mode, a.field};
    JetAlgebra ar{a.d, p, a.mode, a.field};
    JetTensorElement r(al, ar);
    for (const auto& [alpha, c] : v.terms())
        for (const auto& gamma : exponents_up_to(a.d, exp_degree(alpha))) {
            if (!exp_leq(gamma, alpha)) continue;
            Exp beta = exp_sub(alpha, gamma);
            if (exp_degree(beta) > al.m || exp_degree(gamma) > ar.m) continue;
            Scalar w(1, a.field);
            if (a.mode == JetMode::plain)
                for (std::size_t i = 0; i < alpha.size(); ++i)
                    w *= binomial_scalar(alpha[i], gamma[i], a.field);
            if (w.is_zero()) continue;
            r.set_coeff(beta, gamma, r.coeff(beta, gamma) + c * w);
        }
    return r;
}

SMat comult_matrix(std::uint32_t d, std::uint32_t m, std::uint32_t p, JetMode mode, ScalarField f)
{
    if (p > m) throw Error("comult_matrix: split order out of range");
    JetAlgebra a{d, m, mode, f};
    JetAlgebra al{d, m - p, mode, f};
    JetAlgebra ar{d, p, mode, f};
    SMat r = smat_zero(al.dim() * ar.dim(), a.dim(), f);
    auto basis = a.basis();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        JetTensorElement img = comult(jet_basis_element(a, basis[j]), p);
        for (const auto& [k, c] : img.terms()) {
            std::size_t row = jet_index(al, k.first) * ar.dim() + jet_index(ar, k.second);
            r.at(row, j) = c.coeff(Exp(d, 0));
        }
    }
    return r;
}

SMat truncate_matrix(std::uint32_t d, std::uint32_t m, std::uint32_t n, ScalarField f)
{
    if (n > m) throw Error("truncate_matrix: target order exceeds source");
    JetAlgebra src{d, m, JetMode::plain, f};
    JetAlgebra dst{d, n, JetMode::plain, f};
    SMat r = smat_zero(dst.dim(), src.dim(), f);
    auto sb = src.basis();
    for (std::size_t j = 0; j < sb.size(); ++j)
        if (exp_degree(sb[j]) <= n) r.at(jet_index(dst, sb[j]), j) = Scalar(1, f);
    return r;
}

PMat jet_mult_matrix(const JetAlgebra& a, const Poly& g)
{
    JetElement t = taylor(g, a);
    PMat r = pmat_zero(a.dim(), a.dim(), a.d, a.field);
    auto basis = a.basis();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        JetElement img = jet_mul(jet_basis_element(a, basis[j]), t);
        for (const auto& [e, c] : img.terms()) r.at(jet_index(a, e), j) = c;
    }
    return r;
}

PMat id_jet_tensor(const JetAlgebra& a, const PMat& g)
{
    std::size_t n = a.dim();
    PMat r = pmat_zero(n * g.rows(), n * g.cols(), a.d, a.field);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Poly& entry = g.at(i, j);
            if (entry.is_zero()) continue;
            PMat block = jet_mult_matrix(a, entry);
            for (std::size_t bi = 0; bi < n; ++bi)
                for (std::size_t bj = 0; bj < n; ++bj)
                    r.at(bi * g.rows() + i, bj * g.cols() + j) =
                        r.at(bi * g.rows() + i, bj * g.cols() + j) + block.at(bi, bj);
        }
    return r;
}

} // namespace jetcal
