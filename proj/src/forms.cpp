#include "jetcal/forms.hpp"

#include <algorithm>
#include <numeric>

namespace jetcal {

std::vector<WedgeTuple> WedgeBasis::tuples() const
{
    std::vector<WedgeTuple> out;
    if (p > d) return out;
    WedgeTuple cur;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t next) {
        if (cur.size() == p) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t i = next; i <= d; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

std::size_t WedgeBasis::dim() const
{
    if (p > d) return 0;
    std::size_t num = 1, den = 1;
    for (std::uint32_t i = 0; i < p; ++i) {
        num *= d - i;
        den *= i + 1;
    }
    return num / den;
}

std::size_t WedgeBasis::index(const WedgeTuple& t) const
{
    auto all = tuples();
    auto it = std::find(all.begin(), all.end(), t);
    if (it == all.end()) throw Error("wedge tuple not in basis");
    return static_cast<std::size_t>(it - all.begin());
}

int sort_wedge(WedgeTuple& t)
{
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i - 1] == t[i]) return 0;
    return sign;
}

Poly PolyForm::coeff(const WedgeTuple& t) const
{
    auto it = terms_.find(t);
    return it == terms_.end() ? Poly::zero(d_, f_) : it->second;
}

void PolyForm::set_coeff(const WedgeTuple& t, const Poly& c)
{
    if (t.size() != p_) throw Error("wedge tuple degree mismatch");
    if (c.is_zero())
        terms_.erase(t);
    else
        terms_[t] = c;
}

PolyForm PolyForm::operator+(const PolyForm& o) const
{
    if (d_ != o.d_ || p_ != o.p_) throw Error("form mismatch");
    PolyForm r(*this);
    for (const auto& [t, c] : o.terms_) r.set_coeff(t, r.coeff(t) + c);
    return r;
}

PolyForm PolyForm::operator-(const PolyForm& o) const
{
    if (d_ != o.d_ || p_ != o.p_) throw Error("form mismatch");
    PolyForm r(*this);
    for (const auto& [t, c] : o.terms_) r.set_coeff(t, r.coeff(t) - c);
    return r;
}

PolyForm PolyForm::operator*(const Poly& c) const
{
    PolyForm r(d_, p_, f_);
    for (const auto& [t, v] : terms_) r.set_coeff(t, v * c);
    return r;
}

bool PolyForm::operator==(const PolyForm& o) const
{
    if (d_ != o.d_ || p_ != o.p_) throw Error("form mismatch");
    return terms_ == o.terms_;
}

PolyForm form_zero(std::uint32_t d, std::uint32_t p, ScalarField f)
{
    return PolyForm(d, p, f);
}

PolyForm form_monomial(std::uint32_t d, const WedgeTuple& t, const Poly& f)
{
    PolyForm r(d, static_cast<std::uint32_t>(t.size()), f.field());
    WedgeTuple s = t;
    int sign = sort_wedge(s);
    if (sign == 0) return r;
    Poly c = sign == 1 ? f : -f;
    r.set_coeff(s, c);
    return r;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b)
{
    if (a.dim() != b.dim()) throw Error("wedge: dimension mismatch");
    std::uint32_t p = a.degree() + b.degree();
    PolyForm r(a.dim(), p, a.field());
    if (p > a.dim()) return r;
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            WedgeTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            int sign = sort_wedge(t);
            if (sign == 0) continue;
            Poly c = ca * cb;
            r.set_coeff(t, r.coeff(t) + (sign == 1 ? c : -c));
        }
    return r;
}

PolyForm exterior_derivative(const PolyForm& w)
{
    PolyForm r(w.dim(), w.degree() + 1, w.field());
    if (w.degree() + 1 > w.dim()) return r;
    for (const auto& [t, c] : w.terms())
        for (std::uint32_t j = 1; j <= w.dim(); ++j) {
            Poly dc = c.derivative(j);
            if (dc.is_zero()) continue;
            WedgeTuple t2;
            t2.push_back(j);
            t2.insert(t2.end(), t.begin(), t.end());
            int sign = sort_wedge(t2);
            if (sign == 0) continue;
            r.set_coeff(t2, r.coeff(t2) + (sign == 1 ? dc : -dc));
        }
    return r;
}

SMat eta_shuffle_matrix(std::uint32_t d, std::uint32_t j, ScalarField f)
{
    if (j < 1) throw Error("eta shuffle needs degree >= 1");
    WedgeBasis src{d, j}, rest{d, j - 1};
    SMat m = smat_zero(d * rest.dim(), src.dim(), f);
    auto tuples = src.tuples();
    for (std::size_t col = 0; col < tuples.size(); ++col) {
        const auto& t = tuples[col];
        for (std::size_t k = 0; k < t.size(); ++k) {
            WedgeTuple hat;
            for (std::size_t l = 0; l < t.size(); ++l)
                if (l != k) hat.push_back(t[l]);
            std::size_t row = (t[k] - 1) * rest.dim() + rest.index(hat);
            m.at(row, col) = Scalar(k % 2 == 0 ? 1 : -1, f);
        }
    }
    return m;
}

SMat sigma_shuffle_matrix(std::uint32_t d, std::uint32_t j, ScalarField f)
{
    return eta_shuffle_matrix(d, j, f).scaled(factorial_scalar(j - 1, f));
}

namespace {

std::map<Exp, std::size_t, GradedLex> index_of(const std::vector<Exp>& exps)
{
    std::map<Exp, std::size_t, GradedLex> m;
    for (std::size_t i = 0; i < exps.size(); ++i) m[exps[i]] = i;
    return m;
}

SMat nabla_on_bases(const std::vector<Exp>& src_exps, const std::vector<Exp>& dst_exps,
                    std::uint32_t d, std::uint32_t p, BasisMode mode, ScalarField f)
{
    WedgeBasis wsrc{d, p}, wdst{d, p + 1};
    auto dst_idx = index_of(dst_exps);
    SMat m = smat_zero(dst_exps.size() * wdst.dim(), src_exps.size() * wsrc.dim(), f);
    auto tuples = wsrc.tuples();
    for (std::size_t a = 0; a < src_exps.size(); ++a) {
        const Exp& alpha = src_exps[a];
        for (std::size_t w = 0; w < tuples.size(); ++w)
            for (std::uint32_t j = 1; j <= d; ++j) {
                if (alpha[j - 1] == 0) continue;
                Exp dec = alpha;
                dec[j - 1] -= 1;
                auto it = dst_idx.find(dec);
                if (it == dst_idx.end()) continue;
                WedgeTuple t;
                t.push_back(j);
                t.insert(t.end(), tuples[w].begin(), tuples[w].end());
                int sign = sort_wedge(t);
                if (sign == 0) continue;
                Scalar c = mode == BasisMode::plain
                               ? Scalar(static_cast<long>(alpha[j - 1]), f)
                               : Scalar(1, f);
                std::size_t row = it->second * wdst.dim() + wdst.index(t);
                std::size_t col = a * wsrc.dim() + w;
                m.at(row, col) += Scalar(sign, f) * c;
            }
    }
    return m;
}

} // namespace

SMat jet_form_nabla_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                           ScalarField f)
{
    auto src = exponents_up_to(d, n);
    std::vector<Exp> dst;
    if (n > 0) dst = exponents_up_to(d, n - 1);
    return nabla_on_bases(src, dst, d, p, mode, f);
}

SMat graded_nabla_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                         ScalarField f)
{
    if (p > n) throw Error("graded_nabla_matrix: empty source degree");
    auto src = exponents_of_degree(d, n - p);
    std::vector<Exp> dst;
    if (n >= p + 1) dst = exponents_of_degree(d, n - p - 1);
    return nabla_on_bases(src, dst, d, p, mode, f);
}

SMat graded_homotopy_matrix(std::uint32_t d, std::uint32_t n, std::uint32_t p, BasisMode mode,
                            ScalarField f)
{
    if (p < 1 || p > n) throw Error("graded_homotopy_matrix: degree out of range");
    auto src_exps = exponents_of_degree(d, n - p);
    auto dst_exps = exponents_of_degree(d, n - p + 1);
    auto dst_idx = index_of(dst_exps);
    WedgeBasis wsrc{d, p}, wdst{d, p - 1};
    SMat m = smat_zero(dst_exps.size() * wdst.dim(), src_exps.size() * wsrc.dim(), f);
    Scalar norm(1, f);
    if (mode == BasisMode::plain) {
        Scalar nn(static_cast<long>(n), f);
        if (!nn.invertible())
            throw Error("graded homotopy needs n invertible in plain mode");
        norm = nn.inv();
    }
    auto tuples = wsrc.tuples();
    for (std::size_t a = 0; a < src_exps.size(); ++a) {
        const Exp& alpha = src_exps[a];
        for (std::size_t w = 0; w < tuples.size(); ++w) {
            const auto& t = tuples[w];
            for (std::size_t k = 0; k < t.size(); ++k) {
                Exp inc = alpha;
                inc[t[k] - 1] += 1;
                // plain: xi^alpha * xi_{i_m} = xi^{alpha+e}; divided:
                // the exponent bump xi^[alpha+e] without the binomial
                auto it = dst_idx.find(inc);
                if (it == dst_idx.end()) continue;
                WedgeTuple hat;
                for (std::size_t l = 0; l < t.size(); ++l)
                    if (l != k) hat.push_back(t[l]);
                std::size_t row = it->second * wdst.dim() + wdst.index(hat);
                std::size_t col = a * wsrc.dim() + w;
                Scalar c = Scalar(k % 2 == 0 ? 1 : -1, f) * norm;
                m.at(row, col) += c;
            }
        }
    }
    return m;
}

SMat full_antisymmetrization_matrix(std::uint32_t d, std::uint32_t j, ScalarField f)
{
    WedgeBasis src{d, j};
    std::size_t rows = 1;
    for (std::uint32_t k = 0; k < j; ++k) rows *= d;
    SMat m = smat_zero(rows, src.dim(), f);
    auto tuples = src.tuples();
    for (std::size_t col = 0; col < tuples.size(); ++col) {
        WedgeTuple t = tuples[col];
        std::vector<std::size_t> perm(t.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            // parity of the permutation
            int sign = 1;
            for (std::size_t a = 0; a < perm.size(); ++a)
                for (std::size_t b = a + 1; b < perm.size(); ++b)
                    if (perm[a] > perm[b]) sign = -sign;
            std::size_t row = 0;
            for (std::size_t k = 0; k < perm.size(); ++k)
                row = row * d + (t[perm[k]] - 1);
            m.at(row, col) = Scalar(sign, f);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return m;
}

} // namespace jetcal
