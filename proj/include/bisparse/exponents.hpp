#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bisparse/polytope.hpp"

namespace bisparse::exponents {

/// Exponent triple as reciprocals (1/p, 1/q, 1/r); coordinates >= 0, values
/// above 1 allowed (quasi-Banach targets).
struct ExponentTriple {
    Rat inv_p, inv_q, inv_r;

    RatVec vec() const { return {inv_p, inv_q, inv_r}; }
    static ExponentTriple of(const Rat& ip, const Rat& iq, const Rat& ir);
};

/// Constraint report for the hypothesis bundle of the sparse-domination
/// theorems.
struct AdmissibilityReport {
    bool r_ge_p = false;          // 1/r <= 1/p
    bool r_ge_q = false;          // 1/r <= 1/q
    bool r_gt_1 = false;          // 1/r < 1
    bool holder = false;          // 1/p + 1/q >= 1/r
    bool improving_factor2 = false;  // 1/p + 1/q >= 2/r
    bool strictly_improving = false; // 1/p + 1/q > 1/r

    bool sparse_hypothesis() const { return r_ge_p && r_ge_q && r_gt_1; }
};

AdmissibilityReport admissibility(const ExponentTriple& x);

/// d (1/r - 1/p - 1/q), the scale exponent of the rescaled operator bounds.
Rat scaling_exponent(const ExponentTriple& x, int d);

/// Strict-inequality region of the Jeong-Lee single-scale bisphere bounds
/// (branch r <= d): 1/r <= 1/p + 1/q < min{(2d-1)/d, 1 + d/r}.
struct JeongLeePredicate {
    int d = 2;
    bool contains(const ExponentTriple& x) const;
    std::string describe() const;
};

/// A named exponent region: one or more exact polytopes (a union), plus an
/// optional exact predicate where the source bounds are not polyhedral.
struct ExponentRegion {
    std::string label;
    int dim = 3;  // 2 for the planar single-scale regions
    std::vector<Polytope> parts;
    std::optional<JeongLeePredicate> predicate;
    bool paper_transcribed_flag = false;  // carries a flagged transcription

    bool member(const RatVec& x, bool interior) const;
};

enum class RegionName {
    TriangleLacunary,
    TriangleFull,
    BisphereLacunary,
    BisphereFull,
    SphericalSingleScale,
    SchlagMax,
};

RegionName region_name_from_string(const std::string& name);
std::string to_string(RegionName name);

/// Builds the named boundedness region.  m is required for TriangleFull
/// (integer >= 2 with d >= 2m); BisphereFull is stored verbatim for d = 10.
ExponentRegion region(RegionName name, int d, std::optional<int> m = std::nullopt);

/// Convex hull of rational triples intersected with extra halfspaces
/// (exact; vertex enumeration of the result).
Polytope hull_and_intersect(const std::vector<RatVec>& vertices,
                            const std::vector<HalfSpace>& extra);

/// Halfspaces r >= p and r >= q, i.e. inv_r <= inv_p and inv_r <= inv_q.
std::vector<HalfSpace> target_dominates_sources();

struct DecayThresholds {
    Rat lt_threshold;                  // 4d/(2d-1), integrability of mu-hat
    bool lt_below_4 = false;
    std::optional<Rat> maximal_threshold;  // 4d/(2d-3), undefined for 2d <= 3
    bool maximal_below_4 = false;
};

DecayThresholds decay_thresholds(int d);

/// s(1 - q/4)/(1 + s), the continuity exponent of the multiplier splitting.
Rat multiplier_continuity_exponent(const Rat& s, const Rat& q);

}  // namespace bisparse::exponents
