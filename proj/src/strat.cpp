#include "jetcal/strat.hpp"

#include "jetcal/chain.hpp"

namespace jetcal {

bool Connection::operator==(const Connection& o) const
{
    if (d != o.d || rank != o.rank || !(f == o.f) || A.size() != o.A.size()) return false;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (!(A[i] == o.A[i])) return false;
    return true;
}

FlatnessReport flatness_check(const Connection& c)
{
    for (std::uint32_t i = 1; i <= c.d; ++i)
        for (std::uint32_t j = i + 1; j <= c.d; ++j) {
            const PMat& Ai = c.A.at(i - 1);
            const PMat& Aj = c.A.at(j - 1);
            PMat curv = pmat_zero(c.rank, c.rank, c.d, c.f);
            for (std::size_t r = 0; r < c.rank; ++r)
                for (std::size_t s = 0; s < c.rank; ++s)
                    curv.at(r, s) = Ai.at(r, s).derivative(j) - Aj.at(r, s).derivative(i);
            curv = curv + Ai * Aj - Aj * Ai;
            if (!curv.is_zero()) return {false, i, j};
        }
    return {};
}

StratModule::StratModule(FreeModule L, std::uint32_t N, JetMode mode, ScalarField f,
                         std::vector<PMat> maps)
    : L_(L), N_(N), mode_(mode), f_(f), s_(std::move(maps))
{
    if (s_.size() != N_ + 1) throw Error("stratification map count mismatch");
    for (std::uint32_t n = 0; n <= N_; ++n) {
        std::size_t jd = monomial_count(L_.d, n);
        if (s_[n].rows() != jd * L_.rank || s_[n].cols() != L_.rank)
            throw Error("stratification map shape mismatch at level " + std::to_string(n));
    }
    if (!(s_[0] == pmat_identity(L_.rank, L_.d, f_)))
        throw Error("s'_0 must be the identity");
}

PMat StratModule::coeff_block(std::uint32_t n, const Exp& alpha) const
{
    JetAlgebra a{L_.d, n, mode_, f_};
    std::size_t base = jet_index(a, alpha) * L_.rank;
    PMat b = pmat_zero(L_.rank, L_.rank, L_.d, f_);
    for (std::size_t i = 0; i < L_.rank; ++i)
        for (std::size_t j = 0; j < L_.rank; ++j) b.at(i, j) = s_.at(n).at(base + i, j);
    return b;
}

StratModule taylor_stratification(const Connection& c, std::uint32_t N, JetMode mode)
{
    auto flat = flatness_check(c);
    if (!flat.pass)
        throw Error("taylor_stratification: connection is not flat (pair " +
                    std::to_string(flat.bad_i) + "," + std::to_string(flat.bad_j) + ")");

    // iterated covariant derivatives nabla^alpha as rank x rank matrices
    std::map<Exp, PMat, GradedLex> W;
    W[Exp(c.d, 0)] = pmat_identity(c.rank, c.d, c.f);
    for (const auto& alpha : exponents_up_to(c.d, N)) {
        if (exp_degree(alpha) == 0) continue;
        std::uint32_t j = 0;
        while (alpha[j] == 0) ++j;
        Exp prev = alpha;
        prev[j] -= 1;
        const PMat& Wp = W.at(prev);
        PMat next = c.A.at(j) * Wp;
        for (std::size_t r = 0; r < c.rank; ++r)
            for (std::size_t s = 0; s < c.rank; ++s)
                next.at(r, s) = next.at(r, s) + Wp.at(r, s).derivative(j + 1);
        W[alpha] = next;
    }

    std::vector<PMat> maps;
    for (std::uint32_t n = 0; n <= N; ++n) {
        JetAlgebra a{c.d, n, mode, c.f};
        PMat sn = pmat_zero(a.dim() * c.rank, c.rank, c.d, c.f);
        for (const auto& alpha : a.basis()) {
            Scalar coeff(1, c.f);
            if (mode == JetMode::plain) {
                Scalar fac(1, c.f);
                for (auto v : alpha) fac *= factorial_scalar(v, c.f);
                if (!fac.invertible())
                    throw Error("taylor_stratification: alpha! not invertible; use divided "
                                "mode or lower N");
                coeff = fac.inv();
            }
            const PMat& w = W.at(alpha);
            std::size_t base = jet_index(a, alpha) * c.rank;
            for (std::size_t r = 0; r < c.rank; ++r)
                for (std::size_t s = 0; s < c.rank; ++s)
                    sn.at(base + r, s) = w.at(r, s) * coeff;
        }
        maps.push_back(sn);
    }
    return StratModule(FreeModule{c.d, c.rank}, N, mode, c.f, std::move(maps));
}

StratReport verify_stratification(const StratModule& m)
{
    StratReport rep;
    const FreeModule& L = m.module();
    std::uint32_t N = m.level_bound();
    ScalarField f = m.field();
    PMat id = pmat_identity(L.rank, L.d, f);

    for (std::uint32_t n = 0; n <= N; ++n)
        if (!(m.coeff_block(n, Exp(L.d, 0)) == id)) {
            rep.coidentity = false;
            rep.detail += "co-identity fails at level " + std::to_string(n) + "; ";
        }

    for (std::uint32_t n = 0; n <= N; ++n)
        for (std::uint32_t k = n + 1; k <= N; ++k) {
            SMat tr = truncate_matrix(L.d, k, n, f);
            PMat proj = pmat_from_smat(kronecker(tr, smat_identity(L.rank, f)), L.d);
            if (!(proj * m.strat_map(k) == m.strat_map(n))) {
                rep.compatibility = false;
                rep.detail += "truncation compatibility fails (" + std::to_string(k) + "->" +
                              std::to_string(n) + "); ";
            }
        }

    for (std::uint32_t a = 0; a <= N; ++a)
        for (std::uint32_t b = 0; a + b <= N; ++b) {
            JetAlgebra ja{L.d, a, m.mode(), f};
            PMat lhs = id_jet_tensor(ja, m.strat_map(b)) * m.strat_map(a);
            SMat delta = comult_matrix(L.d, a + b, b, m.mode(), f);
            PMat rhs = pmat_from_smat(kronecker(delta, smat_identity(L.rank, f)), L.d) *
                       m.strat_map(a + b);
            if (!(lhs == rhs)) {
                rep.coassociativity = false;
                rep.detail += "co-associativity fails at (m,n)=(" + std::to_string(a) + "," +
                              std::to_string(b) + "); ";
            }
        }

    rep.pass = rep.coidentity && rep.compatibility && rep.coassociativity;
    return rep;
}

Connection extract_connection(const StratModule& m)
{
    if (m.level_bound() < 1) throw Error("extract_connection: needs N >= 1");
    const FreeModule& L = m.module();
    PMat id = pmat_identity(L.rank, L.d, m.field());
    if (!(m.coeff_block(1, Exp(L.d, 0)) == id))
        throw Error("extract_connection: malformed stratification (unit coefficient)");
    Connection c{L.d, L.rank, m.field(), {}};
    for (std::uint32_t j = 1; j <= L.d; ++j) {
        Exp e(L.d, 0);
        e[j - 1] = 1;
        c.A.push_back(m.coeff_block(1, e));
    }
    return c;
}

bool verify_strat_morphism(const PMat& f, const StratModule& m, const StratModule& n)
{
    if (f.cols() != m.module().rank || f.rows() != n.module().rank)
        throw Error("verify_strat_morphism: shape mismatch");
    if (m.mode() != n.mode()) throw Error("verify_strat_morphism: mode mismatch");
    std::uint32_t bound = std::min(m.level_bound(), n.level_bound());
    for (std::uint32_t lvl = 0; lvl <= bound; ++lvl) {
        JetAlgebra a{m.module().d, lvl, m.mode(), m.field()};
        if (!(id_jet_tensor(a, f) * m.strat_map(lvl) == n.strat_map(lvl) * f)) return false;
    }
    return true;
}

SMat InducedTower::strat_level(std::uint32_t n, std::uint32_t m) const
{
    if (n + m > N) throw Error("strat_level: level out of range");
    return kronecker(comult_matrix(d, m + n, m, mode, f), smat_identity(rank, f));
}

InducedTower induced_stratification(std::uint32_t d, std::size_t rank, std::uint32_t N,
                                    JetMode mode, ScalarField f)
{
    InducedTower t{d, rank, N, mode, f, induced_tower(d, rank, N, mode, f)};
    return t;
}

StratReport verify_induced_stratification(const InducedTower& t)
{
    StratReport rep;
    ScalarField f = t.f;
    std::uint32_t d = t.d;

    // co-identity: counit collapse of the level map equals the transition chain
    for (std::uint32_t n = 0; n <= t.N; ++n)
        for (std::uint32_t m = 0; m + n <= t.N; ++m) {
            SMat s = t.strat_level(n, m);
            std::size_t fm = t.tower.levels[m].rank;
            // rows with jet index 0 (the unit slot)
            SMat collapse = smat_zero(fm, s.cols(), f);
            for (std::size_t i = 0; i < fm; ++i)
                for (std::size_t j = 0; j < s.cols(); ++j) collapse.at(i, j) = s.at(i, j);
            PMat chain = pmat_identity(fm, d, f);
            for (std::uint32_t k = m + 1; k <= m + n; ++k) chain = chain * t.tower.transitions[k - 1];
            if (!(pmat_from_smat(collapse, d) == chain)) {
                rep.coidentity = false;
                rep.detail += "tower co-identity fails at (n,m)=(" + std::to_string(n) + "," +
                              std::to_string(m) + "); ";
            }
        }

    // truncation compatibility: collapsing P^n to P^{n'} against a shift
    for (std::uint32_t n = 0; n <= t.N; ++n)
        for (std::uint32_t np = 0; np <= n; ++np)
            for (std::uint32_t m = 0; m + n <= t.N; ++m) {
                SMat tr = truncate_matrix(d, n, np, f);
                SMat lhs = kronecker(tr, smat_identity(t.tower.levels[m].rank, f)) *
                           t.strat_level(n, m);
                PMat chain = pmat_identity(t.tower.levels[m + np].rank, d, f);
                for (std::uint32_t k = m + np + 1; k <= m + n; ++k)
                    chain = chain * t.tower.transitions[k - 1];
                SMat rhs = t.strat_level(np, m) * smat_from_pmat(chain);
                if (!(lhs == rhs)) {
                    rep.compatibility = false;
                    rep.detail += "tower compatibility fails; ";
                }
            }

    // co-associativity
    for (std::uint32_t a = 0; a <= t.N; ++a)
        for (std::uint32_t b = 0; a + b <= t.N; ++b)
            for (std::uint32_t m = 0; a + b + m <= t.N; ++m) {
                std::size_t pa = monomial_count(d, a);
                SMat r1 = kronecker(smat_identity(pa, f), t.strat_level(b, m)) *
                          t.strat_level(a, m + b);
                SMat r2 = kronecker(comult_matrix(d, a + b, b, t.mode, f),
                                    smat_identity(t.tower.levels[m].rank, f)) *
                          t.strat_level(a + b, m);
                if (!(r1 == r2)) {
                    rep.coassociativity = false;
                    rep.detail += "tower co-associativity fails at (" + std::to_string(a) +
                                  "," + std::to_string(b) + "," + std::to_string(m) + "); ";
                }
            }

    rep.pass = rep.coidentity && rep.compatibility && rep.coassociativity;
    return rep;
}

HorizontalSections horizontal_sections(const StratModule& m, std::uint32_t deg_bound,
                                       std::uint32_t margin)
{
    Connection c = extract_connection(m);
    std::uint32_t extra = 0;
    for (const auto& a : c.A)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                extra = std::max(extra, a.at(i, j).degree());

    auto kernel_at = [&](std::uint32_t D) {
        SMat K = klinearize(
            c.d, c.f, c.rank, c.rank * c.d, D, D + extra,
            [&](const Exp& beta, std::size_t k) {
                std::vector<Poly> v(c.rank, Poly::zero(c.d, c.f));
                v[k] = Poly::monomial(beta, Scalar(1, c.f));
                std::vector<Poly> out(c.rank * c.d, Poly::zero(c.d, c.f));
                for (std::uint32_t j = 0; j < c.d; ++j) {
                    std::vector<Poly> img = c.A[j].apply(v);
                    for (std::size_t i = 0; i < c.rank; ++i)
                        out[j * c.rank + i] = img[i] + v[i].derivative(j + 1);
                }
                return out;
            });
        return kernel_basis(K);
    };

    SMat base = kernel_at(deg_bound);
    SMat wide = kernel_at(deg_bound + margin);
    return HorizontalSections{base, rank(base) == rank(wide), deg_bound};
}

HorizontalSections horizontal_sections(const InducedTower& t, std::uint32_t deg_bound,
                                       std::uint32_t margin, std::uint32_t probe)
{
    BasisMode bm = t.mode == JetMode::plain ? BasisMode::plain : BasisMode::divided;
    MatrixTower mt;
    for (std::uint32_t n = 0; n <= t.N; ++n) {
        SMat nab = kronecker(jet_form_nabla_matrix(t.d, n, 0, bm, t.f),
                             smat_identity(t.rank, t.f));
        mt.maps.push_back(klinearize_pmat(pmat_from_smat(nab, t.d), deg_bound, deg_bound));
        if (n > 0) {
            mt.src_transitions.push_back(
                klinearize_pmat(t.tower.transitions[n - 1], deg_bound, deg_bound));
            SMat dtr = n >= 2 ? kronecker(truncate_matrix(t.d, n - 1, n - 2, t.f),
                                          smat_identity(t.d * t.rank, t.f))
                              : smat_zero(0, t.d * t.rank, t.f);
            mt.dst_transitions.push_back(
                klinearize_pmat(pmat_from_smat(dtr, t.d), deg_bound, deg_bound));
        }
    }
    auto res = stable_kernel(mt, probe, margin);
    return HorizontalSections{res.basis, res.stabilized, deg_bound};
}

} // namespace jetcal
