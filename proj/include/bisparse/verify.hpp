#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bisparse/exponents.hpp"
#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"
#include "bisparse/operators.hpp"
#include "bisparse/sparse.hpp"

namespace bisparse::verify {

using grid::GridFunction;
using measures::DiscreteMeasure;

/// Least-squares fit of log(norm) against log(abscissa).
struct DecayFit {
    std::vector<double> abscissae;  // strictly decreasing
    std::vector<double> norms;
    double fitted_eta = 0.0;  // slope: norm ~ abscissa^eta
    double r2 = 0.0;
    bool monotone = true;     // norms decrease with the abscissae
    bool triangle_bound_ok = true;
};

DecayFit fit_decay(std::vector<double> abscissae, std::vector<double> norms);

struct ScalingReport {
    std::vector<double> t_values;
    std::vector<double> norms;       // ||L_t(f_t, g_t)||_r, full grid
    std::vector<double> normalized;  // norms / (||f_t||_p ||g_t||_q)
    double raw_slope = 0.0;
    double normalized_slope = 0.0;
    double predicted = 0.0;  // d (1/r - 1/p - 1/q)
};

/// Rescales the inputs with t (dilation about the domain center), measures
/// ||L_t(f_t,g_t)||_r, and fits the slope after normalizing by input norms.
/// Throws if any rescaled support escapes the grid.
ScalingReport scaling_law_experiment(const DiscreteMeasure& mu, const GridFunction& f,
                                     const GridFunction& g, double p, double q, double r,
                                     const std::vector<double>& t_list);

enum class ContinuityOperator { SingleScale, SingleScaleMaximal };
enum class ContinuitySlot { First, Second, Both };

struct ContinuityParams {
    double p = 2.0, q = 2.0, r = 2.0;
    int n = 1024;
    int nodes = 128;
    int sup_samples = 9;
    double t = 1.0;
    bool smooth_inputs = true;
};

/// Norm decay of the operator applied to translation differences of seeded
/// random inputs; fits the continuity exponent eta.
DecayFit continuity_experiment(ContinuityOperator kind, const DiscreteMeasure& mu,
                               const ContinuityParams& params, const std::vector<double>& y_list,
                               ContinuitySlot which, std::uint64_t seed);

struct SparseRatioTrial {
    int trial = 0;
    std::uint64_t seed = 0;
    double numerator = 0.0;   // <L_lac(f,g), h>
    double form = 0.0;        // Lambda_S
    double ratio = 0.0;
    bool skipped = false;     // vanishing numerator and form
    bool sparsity_ok = false;
};

struct SparseRatioStats {
    std::vector<SparseRatioTrial> trials;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    int violations = 0;
    int skipped = 0;
};

struct SparseRatioParams {
    int trials = 100;
    int grid_n = 1024;
    int dim = 1;
    int j_min = -6;
    int j_max = -1;
    int nodes = 128;
    std::uint64_t seed = 7;
};

/// End-to-end domination ratios <L_lac(f,g), h> / Lambda_{S,p,q,r'} over
/// seeded random indicator inputs; the exponent triple is hypothesis-checked
/// exactly before running.
SparseRatioStats sparse_ratio_experiment(const DiscreteMeasure& mu,
                                         const exponents::ExponentTriple& x,
                                         const SparseRatioParams& params);

struct WeightVector {
    GridFunction w1, w2;      // strictly positive
    double p1 = 2.0, p2 = 2.0;
    double r1 = 1.0, r2 = 1.0, r3 = 2.0;

    void validate() const;
    double holder_p() const;  // 1/p = 1/p1 + 1/p2
};

/// Multilinear Muckenhoupt constant sup_Q of the weighted-average product
/// over the supplied dyadic cubes.
double muckenhoupt_constant(const WeightVector& w, const std::vector<dyadic::DyadicCube>& cubes);

/// Exact exponent sigma with [c w] = c^sigma [w] under scaling both weights.
exponents::Rat muckenhoupt_homogeneity(const exponents::Rat& p1, const exponents::Rat& p2,
                                       const exponents::Rat& r1, const exponents::Rat& r2,
                                       const exponents::Rat& r3);

/// ||f||_{L^{r,1}(Q0,dmu)} / <f>_{Q0,p}, the probability-space embedding.
double lemma3_embedding_ratio(const GridFunction& f, double p, double r);

/// sum_m 2^m <1_{E_m}>_{Q0,r} / ||f||_{L^{r,1}(Q0,dmu)}.
double lemma4_levelset_ratio(const GridFunction& f, double r);

/// sum_{Q in S} |Q| <phi>_{Q,s} / (|Q0| <phi>_{Q0,t}) for s < t.
double lemma5_ratio(const sparse::SparseCollection& S, const GridFunction& phi, double s,
                    double t);

}  // namespace bisparse::verify
