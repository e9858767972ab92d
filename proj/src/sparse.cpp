#include "bisparse/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace bisparse::sparse {

namespace {

int tree_log2(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

std::int64_t cells_per_axis(const SparseCollection& s, const DyadicCube& q) {
    const int level = -q.generation;
    return std::int64_t(1) << (tree_log2(s.n) - level);
}

void cube_cell_loop(int dim, int n, const DyadicCube& q,
                    const std::function<void(std::size_t)>& fn) {
    const int max_level = tree_log2(n);
    const int level = -q.generation;
    const std::int64_t w = std::int64_t(1) << (max_level - level);
    std::int64_t s[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) s[a] = (q.corner[a] / 3) * w;
    if (dim == 1) {
        for (std::int64_t i = 0; i < w; ++i) fn(static_cast<std::size_t>(s[0] + i));
    } else if (dim == 2) {
        for (std::int64_t i = 0; i < w; ++i)
            for (std::int64_t j = 0; j < w; ++j)
                fn(static_cast<std::size_t>((s[0] + i) * n + (s[1] + j)));
    } else {
        for (std::int64_t i = 0; i < w; ++i)
            for (std::int64_t j = 0; j < w; ++j)
                for (std::int64_t k = 0; k < w; ++k)
                    fn(static_cast<std::size_t>(((s[0] + i) * n + (s[1] + j)) * n + (s[2] + k)));
    }
}

}  // namespace

DyadicTree DyadicTree::rooted_at(const DyadicCube& cube) const {
    if (!root.contains(cube)) throw std::invalid_argument("rooted_at: cube outside the tree");
    DyadicTree t;
    t.root = cube;
    t.max_level = max_level - (root.generation - cube.generation);
    if (t.max_level < 0) throw std::invalid_argument("rooted_at: cube below tree resolution");
    return t;
}

DyadicTree DyadicTree::of_grid(const GridFunction& f) {
    DyadicTree t;
    t.root = f.root_cube();
    t.max_level = tree_log2(f.n());
    return t;
}

void StoppingConfig::validate() const {
    if (!(C0 > 1)) throw std::invalid_argument("StoppingConfig: C0 must exceed 1");
    if (!(p > 0) || !(q > 0) || !(r_prime > 0))
        throw std::invalid_argument("StoppingConfig: exponents must be positive");
}

StoppingConfig choose_C0(double p, double q, double r_prime) {
    if (!(p > 0) || !(q > 0) || !(r_prime > 0))
        throw std::invalid_argument("choose_C0: exponents must be positive");
    const double c = 2.0 * std::max({std::pow(6.0, 1.0 / p), std::pow(6.0, 1.0 / q),
                                     std::pow(6.0, 1.0 / r_prime)});
    return StoppingConfig{c, p, q, r_prime};
}

StoppingResult stopping_family(const GridFunction& f, const GridFunction& g,
                               const GridFunction& h, const DyadicTree& tree,
                               const StoppingConfig& cfg) {
    cfg.validate();
    const CubeAverages af(f, cfg.p), ag(g, cfg.q), ah(h, cfg.r_prime);
    return stopping_family(af, ag, ah, tree, cfg);
}

StoppingResult stopping_family(const CubeAverages& af, const CubeAverages& ag,
                               const CubeAverages& ah, const DyadicTree& tree,
                               const StoppingConfig& cfg) {
    cfg.validate();
    StoppingResult out;
    const double df = af.average(tree.root);
    const double dg = ag.average(tree.root);
    const double dh = ah.average(tree.root);
    const bool degen = (df == 0.0 || dg == 0.0 || dh == 0.0);
    out.degenerate = degen;

    std::deque<DyadicCube> queue{tree.root};
    const int floor_gen = tree.root.generation - tree.max_level;
    while (!queue.empty()) {
        DyadicCube q = std::move(queue.front());
        queue.pop_front();
        bool offends = false;
        if (!degen) {
            const double ratio = std::max({af.average(q) / df, ag.average(q) / dg,
                                           ah.average(q) / dh});
            offends = ratio > cfg.C0;
        }
        if (offends) {
            out.stopping.push_back(std::move(q));
            continue;
        }
        out.d0.push_back(q);
        if (q.generation > floor_gen)
            for (auto& c : q.children()) queue.push_back(std::move(c));
    }
    return out;
}

CZDecomposition cz_decompose(const GridFunction& f, const DyadicTree& tree, double p, double c0) {
    if (!(p > 0)) throw std::invalid_argument("cz_decompose: exponent must be positive");
    if (!(c0 > 1)) throw std::invalid_argument("cz_decompose: C0 must exceed 1");
    for (double v : f.values())
        if (v < 0) throw std::invalid_argument("cz_decompose: function must be nonnegative");
    const CubeAverages avg(f, p);
    const CubeAverages mean(f, 1.0);
    CZDecomposition out;
    out.good = f;
    const double base = avg.average(tree.root);
    out.threshold = 2.0 * c0 * base;
    if (base == 0.0) {
        out.degenerate = true;
        return out;
    }
    std::deque<DyadicCube> queue;
    // the root never offends its own average; start from its children
    const int floor_gen = tree.root.generation - tree.max_level;
    if (tree.root.generation > floor_gen)
        for (auto& c : tree.root.children()) queue.push_back(std::move(c));
    while (!queue.empty()) {
        DyadicCube q = std::move(queue.front());
        queue.pop_front();
        if (avg.average(q) > out.threshold) {
            out.bad_cubes.push_back(q);
            continue;
        }
        if (q.generation > floor_gen)
            for (auto& c : q.children()) queue.push_back(std::move(c));
    }
    std::sort(out.bad_cubes.begin(), out.bad_cubes.end());
    for (const auto& P : out.bad_cubes) {
        const int gen = P.generation;
        if (!out.bad_pieces.count(gen)) {
            out.bad_pieces.emplace(gen, GridFunction::zeros(f.dim(), f.n(), f.side(),
                                                            std::vector<double>(f.origin())));
            out.cube_masks.emplace(gen, Mask(f.size(), 0));
            out.support_masks.emplace(gen, Mask(f.size(), 0));
        }
        GridFunction& piece = out.bad_pieces.at(gen);
        Mask& cmask = out.cube_masks.at(gen);
        Mask& smask = out.support_masks.at(gen);
        const double m = mean.average(P);
        cube_cell_loop(f.dim(), f.n(), P, [&](std::size_t i) {
            piece[i] = f[i] - m;
            out.good[i] = m;
            cmask[i] = 1;
            if (f[i] > 0) smask[i] = 1;
        });
    }
    for (auto& [gen, piece] : out.bad_pieces) piece.set_nonneg(false);
    out.good.set_nonneg(true);
    return out;
}

Linearization linearize(const std::vector<DyadicCube>& d0, const GridFunction& f,
                        const GridFunction& g, const ops::LocalizedFamily& op) {
    if (d0.empty()) throw std::invalid_argument("linearize: empty cube family");
    Linearization out;
    out.cubes = d0;
    // finest first so B_Q can subtract already-claimed finer sets
    std::sort(out.cubes.begin(), out.cubes.end(),
              [](const DyadicCube& a, const DyadicCube& b) {
                  if (a.generation != b.generation) return a.generation < b.generation;
                  return a.corner < b.corner;
              });
    out.sup = GridFunction::zeros(f.dim(), f.n(), f.side(), std::vector<double>(f.origin()));
    out.values.reserve(out.cubes.size());
    for (const auto& q : out.cubes) {
        GridFunction val = op(f, g, q);
        for (std::size_t i = 0; i < val.size(); ++i)
            out.sup[i] = std::max(out.sup[i], std::abs(val[i]));
        out.values.push_back(std::move(val));
    }
    Mask claimed(f.size(), 0);
    out.h_sets.resize(out.cubes.size());
    out.b_sets.resize(out.cubes.size());
    for (std::size_t c = 0; c < out.cubes.size(); ++c) {
        Mask& hq = out.h_sets[c];
        Mask& bq = out.b_sets[c];
        hq.assign(f.size(), 0);
        bq.assign(f.size(), 0);
        const GridFunction& val = out.values[c];
        cube_cell_loop(f.dim(), f.n(), out.cubes[c], [&](std::size_t i) {
            if (val[i] >= 0.5 * out.sup[i]) {
                hq[i] = 1;
                if (!claimed[i]) bq[i] = 1;
            }
        });
        for (std::size_t i = 0; i < hq.size(); ++i)
            if (hq[i]) claimed[i] = 1;
    }
    return out;
}

GridFunction h_piece(const Linearization& lin, std::size_t index, const GridFunction& h) {
    GridFunction out = h;
    const Mask& bq = lin.b_sets.at(index);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!bq[i]) out[i] = 0.0;
    return out;
}

namespace {

void write_trace(std::ostream* trace, const DyadicCube& stage, std::size_t stop_count,
                 std::size_t witness_cells, bool degenerate) {
    if (!trace) return;
    (*trace) << "{\"stage\":\"" << stage.describe() << "\",\"stopping\":" << stop_count
             << ",\"witness_cells\":" << witness_cells << ",\"degenerate\":" << (degenerate ? "true" : "false")
             << "}\n";
}

}  // namespace

SparseCollection build_sparse_family(const GridFunction& f, const GridFunction& g,
                                     const GridFunction& h, const DyadicTree& tree, double p,
                                     double q, double r_prime, const BuildOptions& opts) {
    if (!f.same_geometry(g) || !f.same_geometry(h))
        throw std::invalid_argument("build_sparse_family: input grids must match");
    const StoppingConfig cfg = choose_C0(p, q, r_prime);
    const CubeAverages af(f, p), ag(g, q), ah(h, r_prime);
    SparseCollection out;
    out.dim = f.dim();
    out.n = f.n();
    out.gamma = 0.5;

    std::deque<DyadicCube> stages{tree.root};
    while (!stages.empty()) {
        DyadicCube stage = std::move(stages.front());
        stages.pop_front();
        const DyadicTree sub = tree.rooted_at(stage);
        // restriction to the stage cube is implicit: averages of f 1_P over
        // subcubes of P equal averages of f, only the anchor changes
        const StoppingResult stop = stopping_family(af, ag, ah, sub, cfg);
        Mask witness(f.size(), 0);
        cube_cell_loop(f.dim(), f.n(), stage, [&](std::size_t i) { witness[i] = 1; });
        for (const auto& e : stop.stopping)
            cube_cell_loop(f.dim(), f.n(), e, [&](std::size_t i) { witness[i] = 0; });
        std::size_t wcells = 0;
        for (auto b : witness) wcells += b;
        write_trace(opts.trace, stage, stop.stopping.size(), wcells, stop.degenerate);
        out.cubes.push_back(stage);
        out.witnesses.push_back(std::move(witness));
        for (const auto& e : stop.stopping) stages.push_back(e);
    }
    return out;
}

double sparse_form(const SparseCollection& S, const GridFunction& f, const GridFunction& g,
                   const GridFunction& h, double p, double q, double r_prime) {
    if (!f.same_geometry(g) || !f.same_geometry(h))
        throw std::invalid_argument("sparse_form: input grids must match");
    const CubeAverages af(f, p), ag(g, q), ah(h, r_prime);
    std::vector<DyadicCube> order = S.cubes;
    std::sort(order.begin(), order.end());
    double acc = 0.0;
    for (const auto& cube : order) {
        double vol = 1.0;
        for (int a = 0; a < S.dim; ++a) vol *= cube.side();
        acc += vol * af.average(cube) * ag.average(cube) * ah.average(cube);
    }
    return acc;
}

SparsityReport verify_sparsity(const SparseCollection& S) {
    SparsityReport rep;
    rep.cube_count = S.cubes.size();
    if (S.cubes.empty()) {
        rep.pass = true;
        rep.worst_ratio = 1.0;
        return rep;
    }
    std::size_t total = 1;
    for (int a = 0; a < S.dim; ++a) total *= static_cast<std::size_t>(S.n);
    std::vector<std::uint8_t> coverage(total, 0);
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    bool overlap = false;
    for (std::size_t c = 0; c < S.cubes.size(); ++c) {
        const Mask& w = S.witnesses[c];
        std::size_t count = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!w[i]) continue;
            ++count;
            if (coverage[i]) overlap = true;
            coverage[i] = 1;
        }
        std::int64_t cube_cells = 1;
        for (int a = 0; a < S.dim; ++a) cube_cells *= cells_per_axis(S, S.cubes[c]);
        const double ratio = static_cast<double>(count) /
                             (S.gamma * static_cast<double>(cube_cells));
        rep.worst_ratio = std::min(rep.worst_ratio, ratio);
    }
    if (overlap) {
        // locate one violating pair for the report
        for (std::size_t a = 0; a < S.cubes.size() && !rep.overlapping; ++a)
            for (std::size_t b = a + 1; b < S.cubes.size() && !rep.overlapping; ++b)
                for (std::size_t i = 0; i < S.witnesses[a].size(); ++i)
                    if (S.witnesses[a][i] && S.witnesses[b][i]) {
                        rep.overlapping = std::make_pair(a, b);
                        break;
                    }
    }
    rep.pass = !overlap && rep.worst_ratio >= 1.0 - 1e-12;
    return rep;
}

}  // namespace bisparse::sparse
