#ifndef JETCAL_CHAIN_HPP
#define JETCAL_CHAIN_HPP

#include <optional>
#include <vector>

#include "jetcal/matrix.hpp"

namespace jetcal {

/// Bounded complex C^0 -> C^1 -> ... -> C^L of finitely generated free
/// modules with exact-coefficient matrices. maps[i] is M_i : C^i -> C^{i+1}
/// with shape ranks[i+1] x ranks[i]; M_{i+1} M_i = 0 is checked on
/// construction. Optional contracting-homotopy data s_i : C^i -> C^{i-1}
/// can be attached for i = 1..L.
class ChainComplex {
public:
    ChainComplex(ScalarField f, std::vector<std::size_t> ranks, std::vector<SMat> maps);

    ScalarField field() const { return f_; }
    std::size_t length() const { return ranks_.size(); } // number of positions
    const std::vector<std::size_t>& ranks() const { return ranks_; }
    const SMat& map(std::size_t i) const { return maps_.at(i); }
    std::size_t map_count() const { return maps_.size(); }

    bool has_homotopy() const { return !homotopy_.empty(); }
    /// s_i for i in 1..L; homotopy[i-1] has shape ranks[i-1] x ranks[i].
    void attach_homotopy(std::vector<SMat> s);
    const SMat& homotopy_map(std::size_t i) const { return homotopy_.at(i - 1); }

private:
    ScalarField f_;
    std::vector<std::size_t> ranks_;
    std::vector<SMat> maps_;
    std::vector<SMat> homotopy_;
};

/// dim ker(M_i)/im(M_{i-1}) per position; all zeros iff exact.
std::vector<std::size_t> complex_homology_ranks(const ChainComplex& c);

struct HomotopyPositionReport {
    std::size_t position;
    bool pass;
};

struct HomotopyReport {
    std::vector<HomotopyPositionReport> positions;
    bool pass = true;
};

/// Exact check of s_{i+1} M_i + M_{i-1} s_i = id at every position.
HomotopyReport check_homotopy_identity(const ChainComplex& c);

/// Construct contracting-homotopy maps for an exact complex by exact
/// linear algebra (splitting cycles off chosen complements); returns
/// nothing when the complex is not exact.
std::optional<std::vector<SMat>> find_contracting_homotopy(const ChainComplex& c);

/// r block copies of the complex (the tensor O^r (x) C).
ChainComplex block_tensor(const ChainComplex& c, std::size_t r);

// -- finite-level kernels of towers of maps -----------------------------

/// Levelwise maps K_n : V_n -> W_n together with downward transitions
/// V_{n+1} -> V_n and W_{n+1} -> W_n; the squares must commute.
struct MatrixTower {
    std::vector<SMat> maps;
    std::vector<SMat> src_transitions;
    std::vector<SMat> dst_transitions;
};

struct StableKernelResult {
    SMat basis;       ///< columns span the pushed-down kernel at the probe level
    bool stabilized;  ///< image from margin+1 levels up agrees
};

/// Image in ker K_n of ker K_{n+margin} under the transition maps,
/// with a certificate that one extra level does not shrink it.
StableKernelResult stable_kernel(const MatrixTower& t, std::size_t probe, std::size_t margin);

} // namespace jetcal

#endif
