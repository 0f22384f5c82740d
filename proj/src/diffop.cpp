#include "jetcal/diffop.hpp"

namespace jetcal {

DiffOperator::DiffOperator(FreeModule src, FreeModule dst, std::uint32_t order, ScalarField f)
    : src_(src), dst_(dst), order_(order), f_(f)
{
    if (src_.d != dst_.d) throw Error("operator modules live over different base rings");
}

std::uint32_t DiffOperator::effective_order() const
{
    std::uint32_t m = 0;
    for (const auto& [e, mat] : bar_)
        if (!mat.is_zero()) m = std::max(m, exp_degree(e));
    return m;
}

PMat DiffOperator::bar(const Exp& alpha) const
{
    auto it = bar_.find(alpha);
    if (it != bar_.end()) return it->second;
    return pmat_zero(dst_.rank, src_.rank, src_.d, f_);
}

void DiffOperator::set_bar(const Exp& alpha, const PMat& m)
{
    if (alpha.size() != src_.d) throw Error("bar exponent dimension mismatch");
    if (exp_degree(alpha) > order_) throw Error("bar exponent above operator order");
    if (m.rows() != dst_.rank || m.cols() != src_.rank) throw Error("bar matrix shape mismatch");
    if (m.is_zero())
        bar_.erase(alpha);
    else
        bar_[alpha] = m;
}

PMat DiffOperator::bar_matrix() const
{
    JetAlgebra a{src_.d, order_, JetMode::plain, f_};
    PMat m = pmat_zero(dst_.rank, a.dim() * src_.rank, src_.d, f_);
    for (const auto& [e, mat] : bar_) {
        std::size_t base = jet_index(a, e) * src_.rank;
        for (std::size_t i = 0; i < dst_.rank; ++i)
            for (std::size_t j = 0; j < src_.rank; ++j) m.at(i, base + j) = mat.at(i, j);
    }
    return m;
}

DiffOperator DiffOperator::operator+(const DiffOperator& o) const
{
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) throw Error("operator sum: module mismatch");
    DiffOperator r(src_, dst_, std::max(order_, o.order_), f_);
    for (const auto& [e, m] : bar_) r.set_bar(e, m);
    for (const auto& [e, m] : o.bar_) r.set_bar(e, r.bar(e) + m);
    return r;
}

DiffOperator DiffOperator::operator-() const
{
    DiffOperator r(src_, dst_, order_, f_);
    for (const auto& [e, m] : bar_) r.set_bar(e, -m);
    return r;
}

bool DiffOperator::is_zero() const
{
    for (const auto& [e, m] : bar_)
        if (!m.is_zero()) return false;
    return true;
}

bool DiffOperator::operator==(const DiffOperator& o) const
{
    if (!(src_ == o.src_) || !(dst_ == o.dst_)) return false;
    return (*this + (-o)).is_zero();
}

DiffOperator order0_operator(const PMat& m, std::uint32_t d)
{
    FreeModule src{d, m.cols()}, dst{d, m.rows()};
    DiffOperator r(src, dst, 0, m.zero().field());
    r.set_bar(Exp(d, 0), m);
    return r;
}

std::vector<Poly> diffop_apply(const DiffOperator& op, const std::vector<Poly>& s)
{
    const FreeModule& src = op.source();
    if (s.size() != src.rank) throw Error("diffop_apply: module mismatch");
    std::vector<Poly> out(op.target().rank, Poly::zero(src.d, op.field()));
    for (const auto& [alpha, mat] : op.bar_table())
        for (std::size_t j = 0; j < src.rank; ++j) {
            Poly h = hasse_derivative(s[j], alpha);
            if (h.is_zero()) continue;
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += mat.at(i, j) * h;
        }
    return out;
}

DiffOperator diffop_compose(const DiffOperator& d2, const DiffOperator& d1)
{
    if (!(d1.target() == d2.source())) throw Error("diffop_compose: module mismatch");
    std::uint32_t r1 = d1.order(), r2 = d2.order();
    std::uint32_t m = r1 + r2;
    std::uint32_t d = d1.dim();
    ScalarField f = d1.field();
    DiffOperator out(d1.source(), d2.target(), m, f);

    for (const auto& gamma : exponents_up_to(d, m)) {
        PMat acc = pmat_zero(d2.target().rank, d1.source().rank, d, f);
        // delta^{m, r1}(xi^gamma) = sum_{g' <= gamma} prod C(gamma_i, g'_i)
        //   xi^{gamma - g'} (x) xi^{g'}, factorwise truncated
        for (const auto& gp : exponents_up_to(d, std::min(exp_degree(gamma), r1))) {
            if (!exp_leq(gp, gamma)) continue;
            Exp beta = exp_sub(gamma, gp);
            if (exp_degree(beta) > r2) continue;
            Scalar c(1, f);
            for (std::size_t i = 0; i < gamma.size(); ++i)
                c *= binomial_scalar(gamma[i], gp[i], f);
            if (c.is_zero()) continue;
            PMat b1 = d1.bar(gp);
            if (b1.is_zero()) continue;
            // the middle coefficients cross the P^{r2} factor via taylor
            for (std::size_t k = 0; k < d2.source().rank; ++k)
                for (std::size_t j = 0; j < d1.source().rank; ++j) {
                    const Poly& g = b1.at(k, j);
                    if (g.is_zero()) continue;
                    for (const auto& eps : exponents_up_to(d, r2 - exp_degree(beta))) {
                        Poly h = hasse_derivative(g, eps);
                        if (h.is_zero()) continue;
                        PMat b2 = d2.bar(exp_add(beta, eps));
                        if (b2.is_zero()) continue;
                        for (std::size_t i = 0; i < d2.target().rank; ++i)
                            acc.at(i, j) = acc.at(i, j) + b2.at(i, k) * h * c;
                    }
                }
        }
        out.set_bar(gamma, acc);
    }
    return out;
}

DiffOperator diffop_from_application(
    const FreeModule& src, const FreeModule& dst, std::uint32_t order, ScalarField f,
    const std::function<std::vector<Poly>(const std::vector<Poly>&)>& apply)
{
    DiffOperator out(src, dst, order, f);
    // D(x^alpha e_j) = sum_{beta <= alpha} C(alpha, beta) x^{alpha-beta} B_beta e_j;
    // solve for B in ascending graded-lex order
    for (const auto& alpha : exponents_up_to(src.d, order)) {
        PMat b = pmat_zero(dst.rank, src.rank, src.d, f);
        for (std::size_t j = 0; j < src.rank; ++j) {
            std::vector<Poly> section(src.rank, Poly::zero(src.d, f));
            section[j] = Poly::monomial(alpha, Scalar(1, f));
            std::vector<Poly> img = apply(section);
            if (img.size() != dst.rank) throw Error("diffop_from_application: bad image size");
            for (const auto& beta : exponents_up_to(src.d, exp_degree(alpha))) {
                if (beta == alpha || !exp_leq(beta, alpha)) continue;
                Scalar c(1, f);
                for (std::size_t i = 0; i < alpha.size(); ++i)
                    c *= binomial_scalar(alpha[i], beta[i], f);
                if (c.is_zero()) continue;
                Poly mono = Poly::monomial(exp_sub(alpha, beta), c);
                PMat bb = out.bar(beta);
                for (std::size_t i = 0; i < dst.rank; ++i)
                    img[i] -= bb.at(i, j) * mono;
            }
            for (std::size_t i = 0; i < dst.rank; ++i) b.at(i, j) = img[i];
        }
        out.set_bar(alpha, b);
    }
    return out;
}

Order1Parts extract_order1_parts(const DiffOperator& op)
{
    if (op.effective_order() > 1) throw Error("extract_order1_parts: order above 1");
    std::uint32_t d = op.dim();
    Order1Parts parts{op.bar(Exp(d, 0)), {}};
    for (std::uint32_t j = 0; j < d; ++j) {
        Exp e(d, 0);
        e[j] = 1;
        parts.x_parts.push_back(op.bar(e));
    }
    return parts;
}

DiffOperator assemble_order1(const FreeModule& src, const FreeModule& dst, ScalarField f,
                             const Order1Parts& parts)
{
    DiffOperator r(src, dst, 1, f);
    r.set_bar(Exp(src.d, 0), parts.value_part);
    for (std::uint32_t j = 0; j < src.d; ++j) {
        Exp e(src.d, 0);
        e[j] = 1;
        r.set_bar(e, parts.x_parts.at(j));
    }
    return r;
}

Order1Report verify_order1_relations(const DifferentialComplex& c)
{
    Order1Report rep;
    for (std::size_t i = 0; i + 1 < c.ops.size(); ++i) {
        const DiffOperator& lo = c.ops[i];
        const DiffOperator& hi = c.ops[i + 1];
        if (lo.effective_order() > 1 || hi.effective_order() > 1)
            throw Error("verify_order1_relations: operator of order above 1");
        std::uint32_t d = lo.dim();
        auto plo = extract_order1_parts(lo);
        auto phi = extract_order1_parts(hi);

        DiffOperator comp = diffop_compose(hi, lo);
        bool d2 = comp.is_zero();

        bool mixed = true;
        for (std::uint32_t j = 0; j < d; ++j) {
            DiffOperator a = diffop_compose(order0_operator(phi.x_parts[j], d), lo);
            DiffOperator b = diffop_compose(hi, order0_operator(plo.x_parts[j], d));
            if (!(a + b).is_zero()) mixed = false;
        }

        bool anti = true, sq = true;
        for (std::uint32_t j = 0; j < d; ++j)
            for (std::uint32_t k = 0; k < d; ++k) {
                PMat s = phi.x_parts[j] * plo.x_parts[k] + phi.x_parts[k] * plo.x_parts[j];
                if (j == k) {
                    if (!(phi.x_parts[j] * plo.x_parts[j]).is_zero()) sq = false;
                } else if (!s.is_zero()) {
                    anti = false;
                }
            }

        rep.entries.push_back({i, d2, mixed, anti, sq, comp.is_zero()});
        rep.pass = rep.pass && d2 && mixed && anti && sq;
    }
    return rep;
}

PMat diffop_linearize(const DiffOperator& op, std::uint32_t n)
{
    std::uint32_t d = op.dim();
    std::uint32_t m = op.order();
    ScalarField f = op.field();
    JetAlgebra src_jets{d, n + m, JetMode::plain, f};
    JetAlgebra dst_jets{d, n, JetMode::plain, f};
    std::size_t rin = op.source().rank, rout = op.target().rank;
    PMat out = pmat_zero(dst_jets.dim() * rout, src_jets.dim() * rin, d, f);

    for (const auto& gamma : src_jets.basis())
        for (const auto& gp : exponents_up_to(d, std::min(exp_degree(gamma), m))) {
            if (!exp_leq(gp, gamma)) continue;
            Exp beta = exp_sub(gamma, gp);
            if (exp_degree(beta) > n) continue;
            Scalar c(1, f);
            for (std::size_t i = 0; i < gamma.size(); ++i)
                c *= binomial_scalar(gamma[i], gp[i], f);
            if (c.is_zero()) continue;
            PMat b1 = op.bar(gp);
            if (b1.is_zero()) continue;
            for (std::size_t k = 0; k < rout; ++k)
                for (std::size_t j = 0; j < rin; ++j) {
                    const Poly& g = b1.at(k, j);
                    if (g.is_zero()) continue;
                    for (const auto& eps : exponents_up_to(d, n - exp_degree(beta))) {
                        Poly h = hasse_derivative(g, eps);
                        if (h.is_zero()) continue;
                        std::size_t row = jet_index(dst_jets, exp_add(beta, eps)) * rout + k;
                        std::size_t col = jet_index(src_jets, gamma) * rin + j;
                        out.at(row, col) = out.at(row, col) + h * c;
                    }
                }
        }
    return out;
}

void validate_promap(const ProMap& f, const TruncatedTower& src, const TruncatedTower& dst)
{
    for (std::size_t n = 0; n + 1 < f.levels.size(); ++n) {
        // G-transition o f_{n+1} = f_n o F-transition
        PMat lhs = dst.transitions.at(n) * f.levels[n + 1];
        PMat rhs = f.levels[n] * src.transitions.at(n + f.shift);
        if (!(lhs == rhs))
            throw Error("pro-map transition square fails to commute at level " +
                        std::to_string(n));
    }
}

bool promap_equal(const ProMap& a, const ProMap& b, const TruncatedTower& src)
{
    const ProMap& lo = a.shift <= b.shift ? a : b;
    const ProMap& hi = a.shift <= b.shift ? b : a;
    std::size_t extra = hi.shift - lo.shift;
    std::size_t n_levels = std::min(lo.levels.size(), hi.levels.size());
    for (std::size_t n = 0; n < n_levels; ++n) {
        PMat lifted = lo.levels[n];
        for (std::size_t k = 0; k < extra; ++k)
            lifted = lifted * src.transitions.at(n + lo.shift + k);
        if (!(lifted == hi.levels[n])) return false;
    }
    return true;
}

ProMap linearization_promap(const DiffOperator& op, std::uint32_t top_level)
{
    ProMap f;
    f.shift = op.order();
    for (std::uint32_t n = 0; n <= top_level; ++n) f.levels.push_back(diffop_linearize(op, n));
    return f;
}

TruncatedTower induced_tower(std::uint32_t d, std::size_t rank, std::uint32_t top_level,
                             JetMode mode, ScalarField f)
{
    TruncatedTower t;
    for (std::uint32_t n = 0; n <= top_level; ++n) {
        JetAlgebra a{d, n, mode, f};
        t.levels.push_back(FreeModule{d, a.dim() * rank});
        if (n > 0) {
            SMat tr = truncate_matrix(d, n, n - 1, f);
            t.transitions.push_back(
                pmat_from_smat(kronecker(tr, smat_identity(rank, f)), d));
        }
    }
    return t;
}

} // namespace jetcal
