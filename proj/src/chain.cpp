#include "jetcal/chain.hpp"

namespace jetcal {

ChainComplex::ChainComplex(ScalarField f, std::vector<std::size_t> ranks, std::vector<SMat> maps)
    : f_(f), ranks_(std::move(ranks)), maps_(std::move(maps))
{
    if (ranks_.empty()) throw Error("chain complex needs at least one position");
    if (maps_.size() + 1 != ranks_.size()) throw Error("chain complex map count mismatch");
    for (std::size_t i = 0; i < maps_.size(); ++i)
        if (maps_[i].rows() != ranks_[i + 1] || maps_[i].cols() != ranks_[i])
            throw Error("chain complex map shape mismatch at position " + std::to_string(i));
    for (std::size_t i = 0; i + 1 < maps_.size(); ++i)
        if (!(maps_[i + 1] * maps_[i]).is_zero())
            throw Error("not a complex: M_" + std::to_string(i + 1) + " M_" +
                        std::to_string(i) + " != 0");
}

void ChainComplex::attach_homotopy(std::vector<SMat> s)
{
    if (s.size() != maps_.size())
        throw Error("homotopy shape mismatch: expected " + std::to_string(maps_.size()) +
                    " maps");
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i].rows() != ranks_[i] || s[i].cols() != ranks_[i + 1])
            throw Error("homotopy shape mismatch at s_" + std::to_string(i + 1));
    homotopy_ = std::move(s);
}

std::vector<std::size_t> complex_homology_ranks(const ChainComplex& c)
{
    std::vector<std::size_t> out;
    std::size_t L = c.length();
    for (std::size_t i = 0; i < L; ++i) {
        std::size_t rk_out = (i < c.map_count()) ? rank(c.map(i)) : 0;
        std::size_t rk_in = (i > 0) ? rank(c.map(i - 1)) : 0;
        out.push_back(c.ranks()[i] - rk_out - rk_in);
    }
    return out;
}

HomotopyReport check_homotopy_identity(const ChainComplex& c)
{
    if (!c.has_homotopy()) throw Error("homotopy shape mismatch: no homotopy attached");
    HomotopyReport rep;
    std::size_t L = c.length();
    ScalarField f = c.field();
    for (std::size_t i = 0; i < L; ++i) {
        SMat acc = smat_zero(c.ranks()[i], c.ranks()[i], f);
        if (i < c.map_count()) acc = acc + c.homotopy_map(i + 1) * c.map(i);
        if (i > 0) acc = acc + c.map(i - 1) * c.homotopy_map(i);
        bool ok = (acc == smat_identity(c.ranks()[i], f));
        rep.positions.push_back({i, ok});
        rep.pass = rep.pass && ok;
    }
    return rep;
}

std::optional<std::vector<SMat>> find_contracting_homotopy(const ChainComplex& c)
{
    ScalarField f = c.field();
    std::size_t L = c.length();

    // cycles Z_i, boundaries B_i, chosen complements L_i with C^i = Z_i + L_i
    std::vector<SMat> Z, Lc;
    for (std::size_t i = 0; i < L; ++i) {
        SMat z = (i < c.map_count()) ? kernel_basis(c.map(i)) : smat_identity(c.ranks()[i], f);
        std::size_t b = (i > 0) ? rank(c.map(i - 1)) : 0;
        if (rank(z) != b) return std::nullopt; // not exact here
        // extend the cycle basis to a full basis; new pivot columns give L_i
        SMat ext = concat_cols(z, smat_identity(c.ranks()[i], f));
        SMat work = ext;
        auto pivots = rref(work);
        SMat l = smat_zero(c.ranks()[i], c.ranks()[i] - z.cols(), f);
        std::size_t idx = 0;
        for (auto p : pivots)
            if (p >= z.cols()) {
                for (std::size_t r2 = 0; r2 < c.ranks()[i]; ++r2)
                    l.at(r2, idx) = ext.at(r2, p);
                ++idx;
            }
        Z.push_back(z);
        Lc.push_back(l);
    }

    std::vector<SMat> s;
    for (std::size_t i = 0; i + 1 < L; ++i) {
        // s_{i+1} : C^{i+1} -> C^i.  Decompose v = z + l against
        // [Z_{i+1} | L_{i+1}]; the cycle part is a boundary M_i w with
        // w in the complement L_i, and s(v) := w.
        std::size_t n1 = c.ranks()[i + 1];
        SMat basis = concat_cols(Z[i + 1], Lc[i + 1]);
        SMat MiL = c.map(i) * Lc[i];
        SMat si = smat_zero(c.ranks()[i], n1, f);
        for (std::size_t k = 0; k < n1; ++k) {
            std::vector<Scalar> ek(n1, Scalar(0, f));
            ek[k] = Scalar(1, f);
            auto coords = solve(basis, ek);
            if (!coords) return std::nullopt;
            std::vector<Scalar> zpart(n1, Scalar(0, f));
            for (std::size_t j = 0; j < Z[i + 1].cols(); ++j)
                for (std::size_t r2 = 0; r2 < n1; ++r2)
                    zpart[r2] += Z[i + 1].at(r2, j) * (*coords)[j];
            auto u = solve(MiL, zpart);
            if (!u) return std::nullopt;
            std::vector<Scalar> w = Lc[i].apply(*u);
            for (std::size_t r2 = 0; r2 < c.ranks()[i]; ++r2) si.at(r2, k) = w[r2];
        }
        s.push_back(si);
    }
    return s;
}

ChainComplex block_tensor(const ChainComplex& c, std::size_t r)
{
    ScalarField f = c.field();
    std::vector<std::size_t> ranks;
    for (auto v : c.ranks()) ranks.push_back(v * r);
    std::vector<SMat> maps;
    SMat idr = smat_identity(r, f);
    for (std::size_t i = 0; i < c.map_count(); ++i) maps.push_back(kronecker(idr, c.map(i)));
    ChainComplex out(f, ranks, maps);
    if (c.has_homotopy()) {
        std::vector<SMat> s;
        for (std::size_t i = 1; i <= c.map_count(); ++i)
            s.push_back(kronecker(idr, c.homotopy_map(i)));
        out.attach_homotopy(s);
    }
    return out;
}

StableKernelResult stable_kernel(const MatrixTower& t, std::size_t probe, std::size_t margin)
{
    std::size_t N = t.maps.size();
    if (t.src_transitions.size() + 1 != N || t.dst_transitions.size() + 1 != N)
        throw Error("stable_kernel: transition count mismatch");
    for (std::size_t n = 0; n + 1 < N; ++n) {
        if (!(t.maps[n] * t.src_transitions[n] == t.dst_transitions[n] * t.maps[n + 1]))
            throw Error("stable_kernel: transition squares do not commute at level " +
                        std::to_string(n));
    }
    if (probe + margin + 1 >= N)
        throw Error("stable_kernel: tower too short for probe+margin+1");

    auto pushed_kernel = [&](std::size_t from) {
        SMat k = kernel_basis(t.maps[from]);
        for (std::size_t lvl = from; lvl > probe; --lvl) k = t.src_transitions[lvl - 1] * k;
        return image_basis(k);
    };

    SMat s1 = pushed_kernel(probe + margin);
    SMat s2 = pushed_kernel(probe + margin + 1);
    return StableKernelResult{s1, subspace_equal(s1, s2)};
}

} // namespace jetcal
