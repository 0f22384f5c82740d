#include "jetcal/matrix.hpp"

#include <map>

namespace jetcal {

SMat smat_zero(std::size_t rows, std::size_t cols, ScalarField f)
{
    return SMat(rows, cols, Scalar(0, f));
}

SMat smat_identity(std::size_t n, ScalarField f)
{
    return SMat::identity(n, Scalar(1, f), Scalar(0, f));
}

PMat pmat_zero(std::size_t rows, std::size_t cols, std::uint32_t d, ScalarField f)
{
    return PMat(rows, cols, Poly::zero(d, f));
}

PMat pmat_identity(std::size_t n, std::uint32_t d, ScalarField f)
{
    return PMat::identity(n, Poly::constant(1, d, f), Poly::zero(d, f));
}

PMat pmat_from_smat(const SMat& m, std::uint32_t d)
{
    ScalarField f = m.zero().field();
    PMat r = pmat_zero(m.rows(), m.cols(), d, f);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = Poly::constant(m.at(i, j), d);
    return r;
}

SMat smat_from_pmat(const PMat& m)
{
    ScalarField f = m.zero().field();
    SMat r = smat_zero(m.rows(), m.cols(), f);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Poly& p = m.at(i, j);
            if (p.degree() > 0) throw Error("matrix entry is not constant");
            r.at(i, j) = p.coeff(Exp(m.zero().dim(), 0));
        }
    return r;
}

std::vector<std::size_t> rref(SMat& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        Scalar inv = m.at(row, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar c = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= c * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const SMat& m)
{
    SMat c = m;
    return rref(c).size();
}

SMat kernel_basis(const SMat& m)
{
    ScalarField f = m.zero().field();
    SMat r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t nfree = m.cols() - pivots.size();
    SMat k = smat_zero(m.cols(), nfree, f);
    std::size_t idx = 0;
    for (std::size_t col = 0; col < m.cols(); ++col) {
        if (is_pivot[col]) continue;
        k.at(col, idx) = Scalar(1, f);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            k.at(pivots[pr], idx) = -r.at(pr, col);
        ++idx;
    }
    return k;
}

SMat image_basis(const SMat& m)
{
    ScalarField f = m.zero().field();
    SMat c = m;
    auto pivots = rref(c);
    SMat im = smat_zero(m.rows(), pivots.size(), f);
    for (std::size_t j = 0; j < pivots.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) im.at(i, j) = m.at(i, pivots[j]);
    return im;
}

std::optional<std::vector<Scalar>> solve(const SMat& m, const std::vector<Scalar>& b)
{
    if (b.size() != m.rows()) throw Error("solve: rhs size mismatch");
    ScalarField f = m.zero().field();
    SMat aug = smat_zero(m.rows(), m.cols() + 1, f);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Scalar> x(m.cols(), Scalar(0, f));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(pr, m.cols());
    return x;
}

bool subspace_contains(const SMat& space, const SMat& sub)
{
    if (space.rows() != sub.rows()) throw Error("subspace_contains: ambient mismatch");
    std::size_t r0 = rank(space);
    return rank(concat_cols(space, sub)) == r0;
}

bool subspace_equal(const SMat& a, const SMat& b)
{
    return subspace_contains(a, b) && subspace_contains(b, a);
}

SMat concat_cols(const SMat& a, const SMat& b)
{
    if (a.rows() != b.rows()) throw Error("concat_cols: row mismatch");
    SMat r = smat_zero(a.rows(), a.cols() + b.cols(), a.zero().field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

std::vector<Exp> exponents_up_to(std::uint32_t d, std::uint32_t max_deg)
{
    std::vector<Exp> out;
    for (std::uint32_t n = 0; n <= max_deg; ++n) {
        auto layer = exponents_of_degree(d, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<Exp> exponents_of_degree(std::uint32_t d, std::uint32_t n)
{
    std::vector<Exp> out;
    if (d == 0) {
        if (n == 0) out.push_back(Exp{});
        return out;
    }
    Exp cur(d, 0);
    // enumerate in lexicographic order within the degree layer
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t rem) {
        if (i + 1 == d) {
            cur[i] = rem;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = 0; v <= rem; ++v) {
            cur[i] = v;
            rec(i + 1, rem - v);
        }
        cur[i] = 0;
    };
    rec(0, n);
    return out;
}

std::size_t monomial_count(std::uint32_t d, std::uint32_t max_deg)
{
    // C(max_deg + d, d)
    std::size_t num = 1, den = 1;
    for (std::uint32_t i = 1; i <= d; ++i) {
        num *= max_deg + i;
        den *= i;
    }
    return num / den;
}

SMat klinearize(std::uint32_t d, ScalarField f, std::size_t rank_in, std::size_t rank_out,
                std::uint32_t deg_in, std::uint32_t deg_out,
                const std::function<std::vector<Poly>(const Exp&, std::size_t)>& apply_column)
{
    auto src_exps = exponents_up_to(d, deg_in);
    auto dst_exps = exponents_up_to(d, deg_out);
    std::map<Exp, std::size_t, GradedLex> dst_index;
    for (std::size_t i = 0; i < dst_exps.size(); ++i) dst_index[dst_exps[i]] = i;

    SMat m = smat_zero(dst_exps.size() * rank_out, src_exps.size() * rank_in, f);
    for (std::size_t b = 0; b < src_exps.size(); ++b)
        for (std::size_t j = 0; j < rank_in; ++j) {
            std::vector<Poly> img = apply_column(src_exps[b], j);
            if (img.size() != rank_out) throw Error("klinearize: column size mismatch");
            std::size_t colidx = b * rank_in + j;
            for (std::size_t i = 0; i < rank_out; ++i)
                for (const auto& [e, c] : img[i].terms()) {
                    auto it = dst_index.find(e);
                    if (it == dst_index.end())
                        throw Error("klinearize: image degree exceeds bound");
                    m.at(it->second * rank_out + i, colidx) = c;
                }
        }
    return m;
}

std::vector<Scalar> truncated_coords(const std::vector<Poly>& v, std::uint32_t deg_bound)
{
    if (v.empty()) return {};
    std::uint32_t d = v[0].dim();
    ScalarField f = v[0].field();
    auto exps = exponents_up_to(d, deg_bound);
    std::map<Exp, std::size_t, GradedLex> idx;
    for (std::size_t i = 0; i < exps.size(); ++i) idx[exps[i]] = i;
    std::vector<Scalar> out(exps.size() * v.size(), Scalar(0, f));
    for (std::size_t k = 0; k < v.size(); ++k)
        for (const auto& [e, c] : v[k].terms()) {
            auto it = idx.find(e);
            if (it == idx.end()) throw Error("truncated_coords: degree exceeds bound");
            out[it->second * v.size() + k] = c;
        }
    return out;
}

SMat klinearize_pmat(const PMat& m, std::uint32_t deg_in, std::uint32_t deg_out)
{
    std::uint32_t d = m.zero().dim();
    ScalarField f = m.zero().field();
    return klinearize(d, f, m.cols(), m.rows(), deg_in, deg_out,
                      [&](const Exp& e, std::size_t j) {
                          std::vector<Poly> col(m.rows(), Poly::zero(d, f));
                          Poly mono = Poly::monomial(e, Scalar(1, f));
                          for (std::size_t i = 0; i < m.rows(); ++i)
                              col[i] = m.at(i, j) * mono;
                          return col;
                      });
}

} // namespace jetcal
