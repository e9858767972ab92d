#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "bisparse/grid.hpp"
#include "bisparse/operators.hpp"

namespace bisparse::sparse {

using dyadic::DyadicCube;
using grid::CubeAverages;
using grid::GridFunction;

using Mask = std::vector<std::uint8_t>;

/// The cube collection F: all dyadic descendants of `root` down to
/// `max_level` generations below it.
struct DyadicTree {
    DyadicCube root;
    int max_level = 0;

    DyadicTree rooted_at(const DyadicCube& cube) const;
    /// Full tree of the grid's root cube down to single cells.
    static DyadicTree of_grid(const GridFunction& f);
};

struct StoppingConfig {
    double C0 = 2.0;
    double p = 1.0, q = 1.0, r_prime = 1.0;

    void validate() const;
};

/// C0 = 2 max(6^{1/p}, 6^{1/q}, 6^{1/r'}), making each exceptional set
/// smaller than |Q0|/6 and the union at most |Q0|/2.
StoppingConfig choose_C0(double p, double q, double r_prime);

struct StoppingResult {
    std::vector<DyadicCube> stopping;  // maximal offending cubes E_{Q0}
    std::vector<DyadicCube> d0;        // cubes not inside any stopping cube
    bool degenerate = false;           // a root average vanished
};

/// Coarse-to-fine scan for the maximal cubes where one of the normalized
/// averages exceeds C0; every returned d0 cube has all ancestors clean.
StoppingResult stopping_family(const GridFunction& f, const GridFunction& g,
                               const GridFunction& h, const DyadicTree& tree,
                               const StoppingConfig& cfg);

/// Same scan against precomputed average trees (used by the recursion).
StoppingResult stopping_family(const CubeAverages& af, const CubeAverages& ag,
                               const CubeAverages& ah, const DyadicTree& tree,
                               const StoppingConfig& cfg);

struct CZDecomposition {
    GridFunction good;                       // gamma_f
    std::map<int, GridFunction> bad_pieces;  // generation -> beta_{f,k}
    std::vector<DyadicCube> bad_cubes;       // maximal, pairwise disjoint
    std::map<int, Mask> cube_masks;          // cells covered by bad cubes per generation
    std::map<int, Mask> support_masks;       // cells of the source's support there
    double threshold = 0.0;                  // 2 C0 <f>_{Q0,p}
    bool degenerate = false;
};

/// Calderon-Zygmund split at threshold 2 C0 <f>_{Q0,p}: good part bounded,
/// bad pieces supported on maximal offending cubes with exact zero means.
CZDecomposition cz_decompose(const GridFunction& f, const DyadicTree& tree, double p, double c0);

struct Linearization {
    std::vector<DyadicCube> cubes;  // D_0, finest first
    std::vector<Mask> h_sets;       // H_Q
    std::vector<Mask> b_sets;       // B_Q, pairwise disjoint, union = Q0
    GridFunction sup;               // sup_Q |L_Q^j(f,g)|
    std::vector<GridFunction> values;  // L_Q^j(f,g) per cube
};

/// Builds H_Q = {x in Q : L_Q(f,g)(x) >= sup/2} and the disjoint B_Q family;
/// points where the sup vanishes belong to the smallest containing cube.
Linearization linearize(const std::vector<DyadicCube>& d0, const GridFunction& f,
                        const GridFunction& g, const ops::LocalizedFamily& op);

/// h restricted to B_Q of the linearization.
GridFunction h_piece(const Linearization& lin, std::size_t index, const GridFunction& h);

struct SparseCollection {
    int dim = 0;
    int n = 0;                     // cells per axis of the witness masks
    double gamma = 0.5;
    std::vector<DyadicCube> cubes;
    std::vector<Mask> witnesses;   // F_Q as cell masks, pairwise disjoint
};

struct BuildOptions {
    std::ostream* trace = nullptr;            // JSON-lines recursion log
    const ops::LocalizedFamily* diagnostics = nullptr;  // optional per-stage sup recording
};

/// Stopping-time recursion of the sparse construction: each stage
/// contributes its root with witness Q \ E_Q, then recurses into the
/// stopping cubes with all three functions restricted there.
SparseCollection build_sparse_family(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& h, const DyadicTree& tree, double p,
                                     double q, double r_prime, const BuildOptions& opts = {});

/// Lambda_{S,p,q,r'}(f,g,h) = sum_Q |Q| <f>_{Q,p} <g>_{Q,q} <h>_{Q,r'},
/// accumulated in generation-major, corner-lexicographic order.
double sparse_form(const SparseCollection& S, const GridFunction& f, const GridFunction& g,
                   const GridFunction& h, double p, double q, double r_prime);

struct SparsityReport {
    bool pass = false;
    double worst_ratio = 0.0;  // min |F_Q| / (gamma |Q|)
    std::optional<std::pair<std::size_t, std::size_t>> overlapping;  // first violating pair
    std::size_t cube_count = 0;
};

SparsityReport verify_sparsity(const SparseCollection& S);

}  // namespace bisparse::sparse
