#include "jetcal/derham.hpp"

namespace jetcal {

namespace {

std::size_t wedge_dim(std::uint32_t d, std::uint32_t p)
{
    return WedgeBasis{d, p}.dim();
}

} // namespace

ChainComplex linearized_derham_level(std::uint32_t d, std::uint32_t n, BasisMode mode,
                                     ScalarField f)
{
    std::uint32_t pmax = std::min(d, n);
    std::vector<std::size_t> ranks;
    ranks.push_back(1);
    for (std::uint32_t p = 0; p <= pmax; ++p)
        ranks.push_back(monomial_count(d, n - p) * wedge_dim(d, p));

    std::vector<SMat> maps;
    SMat unit = smat_zero(ranks[1], 1, f);
    unit.at(0, 0) = Scalar(1, f);  // the exponent 0 is first in graded-lex
    maps.push_back(unit);
    for (std::uint32_t p = 0; p < pmax; ++p)
        maps.push_back(jet_form_nabla_matrix(d, n - p, p, mode, f));
    return ChainComplex(f, ranks, maps);
}

ChainComplex graded_derham_level(std::uint32_t d, std::uint32_t n, BasisMode mode, ScalarField f)
{
    if (n < 1) throw Error("graded_derham_level: needs n >= 1");
    std::uint32_t pmax = std::min(d, n);
    std::vector<std::size_t> ranks;
    for (std::uint32_t p = 0; p <= pmax; ++p)
        ranks.push_back(exponents_of_degree(d, n - p).size() * wedge_dim(d, p));
    std::vector<SMat> maps;
    for (std::uint32_t p = 0; p < pmax; ++p) maps.push_back(graded_nabla_matrix(d, n, p, mode, f));
    ChainComplex c(f, ranks, maps);
    try {
        std::vector<SMat> s;
        for (std::uint32_t p = 1; p <= pmax; ++p)
            s.push_back(graded_homotopy_matrix(d, n, p, mode, f));
        c.attach_homotopy(s);
    } catch (const Error&) {
        // plain mode with p | n: the complex stands, the homotopy does not
    }
    return c;
}

DifferentialComplex derham_of_strat(const StratModule& m)
{
    Connection c = extract_connection(m);
    std::uint32_t d = c.d;
    ScalarField f = c.f;
    std::size_t r = c.rank;

    DifferentialComplex out;
    for (std::uint32_t p = 0; p <= d; ++p)
        out.modules.push_back(FreeModule{d, wedge_dim(d, p) * r});

    for (std::uint32_t p = 0; p < d; ++p) {
        WedgeBasis wsrc{d, p}, wdst{d, p + 1};
        auto tuples = wsrc.tuples();
        DiffOperator op(out.modules[p], out.modules[p + 1], 1, f);
        PMat value = pmat_zero(out.modules[p + 1].rank, out.modules[p].rank, d, f);
        std::vector<PMat> xparts(d, pmat_zero(out.modules[p + 1].rank, out.modules[p].rank, d, f));
        for (std::size_t w = 0; w < tuples.size(); ++w)
            for (std::uint32_t j = 1; j <= d; ++j) {
                WedgeTuple t;
                t.push_back(j);
                t.insert(t.end(), tuples[w].begin(), tuples[w].end());
                int sign = sort_wedge(t);
                if (sign == 0) continue;
                std::size_t wrow = wdst.index(t);
                Scalar sg(sign, f);
                for (std::size_t a = 0; a < r; ++a) {
                    // d(dx_I (x) e_a) = sum_j dx_j ^ dx_I (x) A_j e_a
                    for (std::size_t b = 0; b < r; ++b)
                        value.at(wrow * r + b, w * r + a) =
                            value.at(wrow * r + b, w * r + a) + c.A[j - 1].at(b, a) * sg;
                    xparts[j - 1].at(wrow * r + a, w * r + a) =
                        xparts[j - 1].at(wrow * r + a, w * r + a) + Poly::constant(sg, d);
                }
            }
        op.set_bar(Exp(d, 0), value);
        for (std::uint32_t j = 0; j < d; ++j) {
            Exp e(d, 0);
            e[j] = 1;
            op.set_bar(e, xparts[j]);
        }
        out.ops.push_back(op);
    }
    return out;
}

DifferentialComplex derham_complex(std::uint32_t d, ScalarField f)
{
    Connection triv{d, 1, f, std::vector<PMat>(d, pmat_zero(1, 1, d, f))};
    return derham_of_strat(taylor_stratification(triv, 1, JetMode::plain));
}

DiffOperator taylor_operator(const FreeModule& L, std::uint32_t level, ScalarField f)
{
    JetAlgebra a{L.d, level, JetMode::plain, f};
    FreeModule dst{L.d, a.dim() * L.rank};
    DiffOperator op(L, dst, level, f);
    for (const auto& beta : a.basis()) {
        PMat b = pmat_zero(dst.rank, L.rank, L.d, f);
        std::size_t base = jet_index(a, beta) * L.rank;
        for (std::size_t k = 0; k < L.rank; ++k)
            b.at(base + k, k) = Poly::constant(1, L.d, f);
        op.set_bar(beta, b);
    }
    return op;
}

PMat eta_structural(const DifferentialComplex& F, std::size_t i, std::uint32_t j)
{
    if (j > i || i > F.ops.size()) throw Error("eta_structural: degree out of range");
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.empty() ? ScalarField{} : F.ops[0].field();
    WedgeBasis wb{d, j};
    auto tuples = wb.tuples();
    std::size_t rsrc = F.modules.at(i - j).rank;
    std::size_t rdst = F.modules.at(i).rank;
    PMat out = pmat_zero(rdst, wb.dim() * rsrc, d, f);
    for (std::size_t w = 0; w < tuples.size(); ++w) {
        PMat comp = pmat_identity(rdst, d, f);
        // d_{x_{i_1}}^{i-1} o ... o d_{x_{i_j}}^{i-j}
        bool first = true;
        PMat acc = pmat_identity(F.modules.at(i - j).rank, d, f);
        for (std::size_t pos = tuples[w].size(); pos > 0; --pos) {
            std::size_t level = i - pos;  // operator F^{level} -> F^{level+1}
            auto parts = extract_order1_parts(F.ops.at(level));
            const PMat& x = parts.x_parts.at(tuples[w][pos - 1] - 1);
            acc = first ? x : x * acc;
            first = false;
        }
        if (first) acc = pmat_identity(rdst, d, f);
        comp = acc;
        for (std::size_t row = 0; row < rdst; ++row)
            for (std::size_t col = 0; col < rsrc; ++col)
                out.at(row, w * rsrc + col) = comp.at(row, col);
    }
    return out;
}

PMat sigma_structural(const DifferentialComplex& F, std::size_t i, std::uint32_t j)
{
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.at(0).field();
    WedgeBasis wb{d, j};
    auto tuples = wb.tuples();
    std::size_t rsrc = F.modules.at(i - j).rank;
    std::size_t rdst = F.modules.at(i).rank;
    PMat out = pmat_zero(rdst, wb.dim() * rsrc, d, f);
    for (std::size_t w = 0; w < tuples.size(); ++w) {
        std::vector<std::size_t> perm(tuples[w].size());
        for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        PMat acc_total = pmat_zero(rdst, rsrc, d, f);
        do {
            int sign = 1;
            for (std::size_t a = 0; a < perm.size(); ++a)
                for (std::size_t b = a + 1; b < perm.size(); ++b)
                    if (perm[a] > perm[b]) sign = -sign;
            PMat acc = pmat_identity(rsrc, d, f);
            bool first = true;
            for (std::size_t pos = perm.size(); pos > 0; --pos) {
                std::size_t level = i - pos;
                auto parts = extract_order1_parts(F.ops.at(level));
                const PMat& x = parts.x_parts.at(tuples[w][perm[pos - 1]] - 1);
                acc = first ? x : x * acc;
                first = false;
            }
            acc_total = acc_total + (sign == 1 ? acc : -acc);
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t row = 0; row < rdst; ++row)
            for (std::size_t col = 0; col < rsrc; ++col)
                out.at(row, w * rsrc + col) = acc_total.at(row, col);
    }
    return out;
}

PMat phi_component(const DifferentialComplex& F, std::uint32_t level, std::size_t i,
                   std::uint32_t j)
{
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.at(0).field();
    JetAlgebra a{d, level, JetMode::plain, f};
    WedgeBasis wb{d, j};
    std::size_t rsrc = F.modules.at(i - j).rank;
    std::size_t rdst = F.modules.at(i).rank;
    PMat eta = eta_structural(F, i, j);
    PMat out = pmat_zero(rdst, wb.dim() * a.dim() * rsrc, d, f);
    // only the unit jet slot survives (id (x) q (x) id)
    for (std::size_t w = 0; w < wb.dim(); ++w)
        for (std::size_t k = 0; k < rsrc; ++k) {
            std::size_t src_col = (w * a.dim() + 0) * rsrc + k;
            for (std::size_t row = 0; row < rdst; ++row)
                out.at(row, src_col) = eta.at(row, w * rsrc + k);
        }
    return out;
}

PMat phi_map(const DifferentialComplex& F, std::uint32_t level, std::size_t i)
{
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.at(0).field();
    std::size_t rdst = F.modules.at(i).rank;
    std::vector<PMat> blocks;
    std::size_t total_cols = 0;
    for (std::uint32_t j = 0; j <= d && j <= i; ++j) {
        blocks.push_back(phi_component(F, level, i, j));
        total_cols += blocks.back().cols();
    }
    PMat out = pmat_zero(rdst, total_cols, d, f);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < rdst; ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, off + c) = b.at(r, c);
        off += b.cols();
    }
    return out;
}

DiffOperator mirror_poincare_operator(std::uint32_t d, std::uint32_t level, std::uint32_t q,
                                      ScalarField f, std::size_t extra_rank)
{
    if (level == 0) throw Error("mirror_poincare_operator: needs level >= 1");
    JetAlgebra src_jets{d, level, JetMode::plain, f};
    JetAlgebra dst_jets{d, level - 1, JetMode::plain, f};
    WedgeBasis wsrc{d, q}, wdst{d, q + 1};
    FreeModule src{d, wsrc.dim() * src_jets.dim() * extra_rank};
    FreeModule dst{d, wdst.dim() * dst_jets.dim() * extra_rank};
    DiffOperator op(src, dst, 1, f);

    auto tuples = wsrc.tuples();
    PMat value = pmat_zero(dst.rank, src.rank, d, f);
    std::vector<PMat> xparts(d, pmat_zero(dst.rank, src.rank, d, f));
    for (std::size_t w = 0; w < tuples.size(); ++w)
        for (const auto& alpha : src_jets.basis())
            for (std::uint32_t j = 1; j <= d; ++j) {
                WedgeTuple t;
                t.push_back(j);
                t.insert(t.end(), tuples[w].begin(), tuples[w].end());
                int sign = sort_wedge(t);
                if (sign == 0) continue;
                std::size_t wrow = wdst.index(t);
                std::size_t col_base = (w * src_jets.dim() + jet_index(src_jets, alpha)) *
                                       extra_rank;
                // value part: - alpha_j dx_j ^ w (x) xi^{alpha - e_j}
                if (alpha[j - 1] > 0) {
                    Exp dec = alpha;
                    dec[j - 1] -= 1;
                    std::size_t row_base =
                        (wrow * dst_jets.dim() + jet_index(dst_jets, dec)) * extra_rank;
                    Scalar c = Scalar(-static_cast<long>(alpha[j - 1]), f) * Scalar(sign, f);
                    for (std::size_t k = 0; k < extra_rank; ++k)
                        value.at(row_base + k, col_base + k) =
                            value.at(row_base + k, col_base + k) + Poly::constant(c, d);
                }
                // x_j part: dx_j ^ w (x) xi^alpha, truncated to level-1
                if (exp_degree(alpha) <= level - 1) {
                    std::size_t row_base =
                        (wrow * dst_jets.dim() + jet_index(dst_jets, alpha)) * extra_rank;
                    for (std::size_t k = 0; k < extra_rank; ++k)
                        xparts[j - 1].at(row_base + k, col_base + k) =
                            xparts[j - 1].at(row_base + k, col_base + k) +
                            Poly::constant(Scalar(sign, f), d);
                }
            }
    op.set_bar(Exp(d, 0), value);
    for (std::uint32_t j = 0; j < d; ++j) {
        Exp e(d, 0);
        e[j] = 1;
        op.set_bar(e, xparts[j]);
    }
    return op;
}

PhiChainReport verify_phi_chainmap(const DifferentialComplex& F, std::uint32_t top_level)
{
    PhiChainReport rep;
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.at(0).field();
    std::size_t degrees = F.modules.size();

    for (std::size_t p = 0; p + 1 < degrees; ++p) {
        for (std::uint32_t q = 0; q <= d && q <= p; ++q) {
            std::size_t r = p - q;  // F-degree of the cell
            if (top_level < q + r + 1) continue;
            std::uint32_t level = top_level - static_cast<std::uint32_t>(q + r);

            // d_F o Phi^{p,q}
            DiffOperator lhs =
                diffop_compose(F.ops.at(p), order0_operator(phi_component(F, level, p, q), d));

            // Phi^{p+1,q+1} o d'
            DiffOperator dprime = mirror_poincare_operator(d, level, q, f, F.modules[r].rank);
            DiffOperator rhs1 = q + 1 <= d && p + 1 >= q + 1
                                    ? diffop_compose(
                                          order0_operator(phi_component(F, level - 1, p + 1, q + 1), d),
                                          dprime)
                                    : DiffOperator(dprime.source(), F.modules[p + 1], 1, f);

            // (-1)^q Phi^{p+1,q} o d''
            JetAlgebra cell_jets{d, level, JetMode::plain, f};
            PMat dsecond = kronecker(
                pmat_identity(wedge_dim(d, q), d, f),
                diffop_linearize(F.ops.at(r), level - 1));
            PMat rhs2m = phi_component(F, level - 1, p + 1, q) * dsecond;
            if (q % 2 == 1) rhs2m = -rhs2m;
            DiffOperator rhs2 = order0_operator(rhs2m, d);

            bool ok = (lhs + (-(rhs1 + rhs2))).is_zero();
            rep.cells.push_back({p, q, level, ok});
            rep.pass = rep.pass && ok;
        }
    }

    // Phi o d^1 = id in every degree
    for (std::size_t i = 0; i < degrees; ++i) {
        DiffOperator t = taylor_operator(F.modules[i], top_level, f);
        DiffOperator comp =
            diffop_compose(order0_operator(phi_component(F, top_level, i, 0), d), t);
        DiffOperator id_op = order0_operator(pmat_identity(F.modules[i].rank, d, f), d);
        bool ok = comp == id_op;
        rep.composite_identity.push_back({i, ok});
        rep.pass = rep.pass && ok;
    }
    return rep;
}

PsiReport verify_psi_exactness(const StratModule& m, std::uint32_t level_bound)
{
    PsiReport rep;
    ScalarField f = m.field();
    BasisMode bm = m.mode() == JetMode::plain ? BasisMode::plain : BasisMode::divided;
    ChainComplex base = linearized_derham_level(m.module().d, level_bound, bm, f);
    ChainComplex tensored = block_tensor(base, m.module().rank);
    rep.ranks = complex_homology_ranks(tensored);
    rep.exact = true;
    for (auto v : rep.ranks) rep.exact = rep.exact && v == 0;

    if (f.is_rational()) {
        auto s = find_contracting_homotopy(base);
        if (s) {
            ChainComplex base_h = base;
            base_h.attach_homotopy(*s);
            ChainComplex tens_h = block_tensor(base_h, m.module().rank);
            rep.homotopy_certified = check_homotopy_identity(tens_h).pass;
        }
    }
    return rep;
}

ChainComplex total_complex(const Bicomplex& b)
{
    std::size_t P = b.P(), Q = b.Q();
    for (std::size_t p = 0; p + 1 < P; ++p)
        for (std::size_t q = 0; q + 1 < Q; ++q) {
            SMat lhs = b.d2.at(p + 1).at(q) * b.d1.at(p).at(q);
            SMat rhs = b.d1.at(p).at(q + 1) * b.d2.at(p).at(q);
            if (!(lhs == rhs))
                throw Error("total_complex: differentials fail to commute at (" +
                            std::to_string(p) + "," + std::to_string(q) + ")");
        }

    std::size_t R = P + Q - 1;
    std::vector<std::size_t> ranks(R, 0);
    std::vector<std::vector<std::size_t>> offset(P, std::vector<std::size_t>(Q, 0));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t p = 0; p < P; ++p) {
            if (r < p || r - p >= Q) continue;
            offset[p][r - p] = ranks[r];
            ranks[r] += b.ranks[p][r - p];
        }

    std::vector<SMat> maps;
    for (std::size_t r = 0; r + 1 < R; ++r) {
        SMat m = smat_zero(ranks[r + 1], ranks[r], b.f);
        for (std::size_t p = 0; p < P; ++p) {
            if (r < p || r - p >= Q) continue;
            std::size_t q = r - p;
            if (p + 1 < P) {
                const SMat& h = b.d1.at(p).at(q);
                for (std::size_t i = 0; i < h.rows(); ++i)
                    for (std::size_t j = 0; j < h.cols(); ++j)
                        m.at(offset[p + 1][q] + i, offset[p][q] + j) = h.at(i, j);
            }
            if (q + 1 < Q) {
                const SMat& v = b.d2.at(p).at(q);
                Scalar sg(p % 2 == 0 ? 1 : -1, b.f);
                for (std::size_t i = 0; i < v.rows(); ++i)
                    for (std::size_t j = 0; j < v.cols(); ++j)
                        m.at(offset[p][q + 1] + i, offset[p][q] + j) = v.at(i, j) * sg;
            }
        }
        maps.push_back(m);
    }
    return ChainComplex(b.f, ranks, maps);
}

SMat klinearize_operator(const DiffOperator& op, std::uint32_t deg_in, std::uint32_t deg_out)
{
    std::uint32_t d = op.dim();
    ScalarField f = op.field();
    return klinearize(d, f, op.source().rank, op.target().rank, deg_in, deg_out,
                      [&](const Exp& beta, std::size_t j) {
                          std::vector<Poly> v(op.source().rank, Poly::zero(d, f));
                          v[j] = Poly::monomial(beta, Scalar(1, f));
                          return diffop_apply(op, v);
                      });
}

Bicomplex derham_q0_bicomplex(const DifferentialComplex& F, std::uint32_t top_level,
                              std::uint32_t deg0, std::uint32_t deg_step)
{
    std::uint32_t d = F.modules.at(0).d;
    ScalarField f = F.ops.at(0).field();
    std::size_t P = d + 1;
    std::size_t Q = F.modules.size();

    Bicomplex b;
    b.f = f;
    b.ranks.assign(P, std::vector<std::size_t>(Q, 0));
    b.d1.assign(P, std::vector<SMat>(Q, smat_zero(0, 0, f)));
    b.d2.assign(P, std::vector<SMat>(Q, smat_zero(0, 0, f)));

    auto level_of = [&](std::size_t p, std::size_t q) -> long {
        return static_cast<long>(top_level) - static_cast<long>(p + q);
    };
    auto deg_of = [&](std::size_t p, std::size_t q) {
        return deg0 + static_cast<std::uint32_t>(p + q) * deg_step;
    };

    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < Q; ++q) {
            long lvl = level_of(p, q);
            if (lvl < 0) continue;
            std::size_t cell = wedge_dim(d, static_cast<std::uint32_t>(p)) *
                               monomial_count(d, static_cast<std::uint32_t>(lvl)) *
                               F.modules[q].rank;
            b.ranks[p][q] = cell * monomial_count(d, deg_of(p, q));
        }

    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < Q; ++q) {
            long lvl = level_of(p, q);
            if (lvl < 1) continue;
            if (p + 1 < P) {
                DiffOperator dprime = mirror_poincare_operator(
                    d, static_cast<std::uint32_t>(lvl), static_cast<std::uint32_t>(p), f,
                    F.modules[q].rank);
                b.d1[p][q] = klinearize_operator(dprime, deg_of(p, q), deg_of(p + 1, q));
            }
            if (q + 1 < Q) {
                PMat dd = kronecker(pmat_identity(wedge_dim(d, static_cast<std::uint32_t>(p)), d, f),
                                    diffop_linearize(F.ops.at(q), static_cast<std::uint32_t>(lvl) - 1));
                b.d2[p][q] = klinearize_pmat(dd, deg_of(p, q), deg_of(p, q + 1));
            }
        }
    return b;
}

} // namespace jetcal
