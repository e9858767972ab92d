#include "bisparse/exponents.hpp"

#include <stdexcept>

namespace bisparse::exponents {

ExponentTriple ExponentTriple::of(const Rat& ip, const Rat& iq, const Rat& ir) {
    if (ip < 0 || iq < 0 || ir < 0)
        throw std::invalid_argument("ExponentTriple: reciprocals must be nonnegative");
    return ExponentTriple{ip, iq, ir};
}

AdmissibilityReport admissibility(const ExponentTriple& x) {
    AdmissibilityReport rep;
    rep.r_ge_p = x.inv_r <= x.inv_p;
    rep.r_ge_q = x.inv_r <= x.inv_q;
    rep.r_gt_1 = x.inv_r < 1;
    const Rat sum = x.inv_p + x.inv_q;
    rep.holder = sum >= x.inv_r;
    rep.improving_factor2 = sum >= 2 * x.inv_r;
    rep.strictly_improving = sum > x.inv_r;
    return rep;
}

Rat scaling_exponent(const ExponentTriple& x, int d) {
    return Rat(d) * (x.inv_r - x.inv_p - x.inv_q);
}

bool JeongLeePredicate::contains(const ExponentTriple& x) const {
    if (x.inv_p < 0 || x.inv_p > 1 || x.inv_q < 0 || x.inv_q > 1) return false;
    if (x.inv_r < Rat(1, d)) return false;  // branch r <= d
    const Rat sum = x.inv_p + x.inv_q;
    if (sum < x.inv_r) return false;
    const Rat cap1 = Rat(2 * d - 1, d);
    const Rat cap2 = 1 + Rat(d) * x.inv_r;
    return sum < cap1 && sum < cap2;
}

std::string JeongLeePredicate::describe() const {
    return "1/r <= 1/p + 1/q < min{(2d-1)/d, 1 + d/r}, 1/r >= 1/d, d = " + std::to_string(d);
}

bool ExponentRegion::member(const RatVec& x, bool interior) const {
    for (const auto& p : parts)
        if (p.contains(x, interior)) return true;
    return false;
}

RegionName region_name_from_string(const std::string& name) {
    if (name == "triangle-lac") return RegionName::TriangleLacunary;
    if (name == "triangle-full") return RegionName::TriangleFull;
    if (name == "bisphere-lac") return RegionName::BisphereLacunary;
    if (name == "bisphere-full") return RegionName::BisphereFull;
    if (name == "spherical-single-scale") return RegionName::SphericalSingleScale;
    if (name == "schlag-max") return RegionName::SchlagMax;
    throw std::invalid_argument("unknown region name: " + name);
}

std::string to_string(RegionName name) {
    switch (name) {
        case RegionName::TriangleLacunary: return "triangle-lac";
        case RegionName::TriangleFull: return "triangle-full";
        case RegionName::BisphereLacunary: return "bisphere-lac";
        case RegionName::BisphereFull: return "bisphere-full";
        case RegionName::SphericalSingleScale: return "spherical-single-scale";
        case RegionName::SchlagMax: return "schlag-max";
    }
    throw std::logic_error("unreachable");
}

std::vector<HalfSpace> target_dominates_sources() {
    // r >= p  <=>  inv_r - inv_p <= 0;  r >= q likewise
    HalfSpace h1{{Rat(-1), Rat(0), Rat(1)}, Rat(0)};
    HalfSpace h2{{Rat(0), Rat(-1), Rat(1)}, Rat(0)};
    return {h1, h2};
}

Polytope hull_and_intersect(const std::vector<RatVec>& vertices,
                            const std::vector<HalfSpace>& extra) {
    if (vertices.empty()) throw std::invalid_argument("hull_and_intersect: no vertices");
    const int dim = static_cast<int>(vertices[0].size());
    Polytope h = Polytope::hull(dim, vertices);
    if (extra.empty()) return h;
    return h.intersect(extra);
}

namespace {

RatVec triple(const Rat& a, const Rat& b, const Rat& c) { return {a, b, c}; }

ExponentRegion triangle_lacunary_region(int d) {
    if (d < 2) throw std::invalid_argument("triangle-lac: requires d >= 2");
    const Rat dd(d);
    ExponentRegion reg;
    reg.label = "triangle-lac(d=" + std::to_string(d) + ")";
    const Rat v1 = dd / (2 * (dd + 1));
    const Rat v2 = Rat(1) / (dd + 1);
    const Rat w = dd / (dd + 1);
    reg.parts.push_back(Polytope::hull(3, {
        triple(0, 0, 0),
        triple(v1, v1, v2),
        triple(0, 1, 1),
        triple(1, 0, 1),
        triple(w, w, 2 * dd / (dd + 1)),
        triple(w, w, 1),
    }));
    return reg;
}

ExponentRegion triangle_full_region(int d, std::optional<int> m_opt) {
    if (!m_opt) throw std::invalid_argument("triangle-full: parameter m is required");
    const int m = *m_opt;
    if (m < 2 || d < 2 * m)
        throw std::invalid_argument("triangle-full: requires integer m >= 2 and d >= 2m");
    const Rat dd(d);
    const Rat l = Rat(m) / (m - 1);
    ExponentRegion reg;
    reg.label = "triangle-full(d=" + std::to_string(d) + ",m=" + std::to_string(m) + ")";
    const Rat n1 = (dd - 1) / dd;                      // (d-1)/d
    const Rat p2 = Rat(1) / dd;                        // 1/d
    const Rat q1 = (dd * dd - dd) / (dd * dd + 1);     // (d^2-d)/(d^2+1)
    const Rat q2 = (dd - 1) / (dd * dd + 1);           // (d-1)/(d^2+1)
    const Rat c = (dd - 1) / (l * dd);                 // (d-1)/(ld)
    const std::vector<RatVec> hull_pts = {
        triple(0, 0, 0),
        triple(n1, 0, n1), triple(0, n1, n1),
        triple(n1, 0, p2), triple(0, n1, p2),
        triple(q1, 0, q2), triple(0, q1, q2),
        triple(c, c, 2 * c),
    };
    reg.parts.push_back(hull_and_intersect(hull_pts, target_dominates_sources()));
    return reg;
}

ExponentRegion bisphere_lacunary_region(int d) {
    if (d < 2) throw std::invalid_argument("bisphere-lac: requires d >= 2");
    ExponentRegion reg;
    reg.label = "bisphere-lac(d=" + std::to_string(d) + ")";
    reg.predicate = JeongLeePredicate{d};
    // closed polyhedral under-approximation of the predicate
    const Rat dd(d);
    std::vector<HalfSpace> jl = {
        {{Rat(-1), Rat(0), Rat(0)}, Rat(0)},  // inv_p >= 0
        {{Rat(0), Rat(-1), Rat(0)}, Rat(0)},
        {{Rat(1), Rat(0), Rat(0)}, Rat(1)},   // inv_p <= 1
        {{Rat(0), Rat(1), Rat(0)}, Rat(1)},
        {{Rat(0), Rat(0), Rat(-1)}, Rat(-1) / dd},      // inv_r >= 1/d
        {{Rat(-1), Rat(-1), Rat(1)}, Rat(0)},           // 1/p + 1/q >= 1/r
        {{Rat(1), Rat(1), Rat(0)}, (2 * dd - 1) / dd},  // sum <= (2d-1)/d
        {{Rat(1), Rat(1), Rat(-d)}, Rat(1)},            // sum <= 1 + d/r
    };
    // the single-scale bounds hull the region is interpolated against
    Polytope ips = Polytope::hull(3, {
        triple(1, 0, 1), triple(0, 1, 1), triple(1, 1, 1), triple(1, 1, 2), triple(0, 0, 0)});
    reg.parts.push_back(ips.intersect(jl));
    return reg;
}

ExponentRegion bisphere_full_region(int d) {
    if (d != 10)
        throw std::invalid_argument(
            "bisphere-full: stored verbatim for d = 10 only");
    ExponentRegion reg;
    reg.label = "bisphere-full(d=10)";
    const Rat t = Rat(1, 10), n = Rat(9, 10), h = Rat(19, 20);
    reg.parts.push_back(Polytope::hull(3, {
        triple(1, n, n), triple(n, 1, n), triple(n, 1, t), triple(1, n, t),
        triple(1, t, t), triple(t, 1, t), triple(t, t, t), triple(h, h, h)}));
    const Rat f = Rat(4, 45), e = Rat(8, 9);
    reg.parts.push_back(Polytope::hull(3, {
        triple(0, 0, 0), triple(0, 1, 0), triple(1, 0, 0),
        triple(e, 1, f), triple(1, e, f), triple(1, f, f), triple(f, 1, f),
        triple(f, f, f)}));
    return reg;
}

ExponentRegion spherical_single_scale_region(int d) {
    if (d < 2) throw std::invalid_argument("spherical-single-scale: requires d >= 2");
    const Rat dd(d);
    ExponentRegion reg;
    reg.label = "spherical-single-scale(d=" + std::to_string(d) + ")";
    reg.dim = 2;
    reg.parts.push_back(Polytope::hull(2, {
        {Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {dd / (dd + 1), Rat(1) / (dd + 1)}}));
    return reg;
}

ExponentRegion schlag_max_region(int d) {
    if (d < 2) throw std::invalid_argument("schlag-max: requires d >= 2");
    const Rat dd(d);
    ExponentRegion reg;
    reg.label = "schlag-max(d=" + std::to_string(d) + ")";
    reg.dim = 2;
    reg.paper_transcribed_flag = true;
    const Rat n = (dd - 1) / dd;
    reg.parts.push_back(Polytope::hull(2, {
        {Rat(0), Rat(0)},
        {n, n},
        {n, Rat(1) / dd},
        {(dd * dd - dd) / (dd * dd + 1), (dd - 1) / (dd * dd + 1)}}));
    return reg;
}

}  // namespace

ExponentRegion region(RegionName name, int d, std::optional<int> m) {
    switch (name) {
        case RegionName::TriangleLacunary: return triangle_lacunary_region(d);
        case RegionName::TriangleFull: return triangle_full_region(d, m);
        case RegionName::BisphereLacunary: return bisphere_lacunary_region(d);
        case RegionName::BisphereFull: return bisphere_full_region(d);
        case RegionName::SphericalSingleScale: return spherical_single_scale_region(d);
        case RegionName::SchlagMax: return schlag_max_region(d);
    }
    throw std::logic_error("unreachable");
}

DecayThresholds decay_thresholds(int d) {
    if (d < 1) throw std::invalid_argument("decay_thresholds: d must be >= 1");
    DecayThresholds out;
    out.lt_threshold = Rat(4 * d, 2 * d - 1);
    out.lt_below_4 = out.lt_threshold < 4;
    if (2 * d - 3 > 0) {
        out.maximal_threshold = Rat(4 * d, 2 * d - 3);
        out.maximal_below_4 = *out.maximal_threshold < 4;
    }
    return out;
}

Rat multiplier_continuity_exponent(const Rat& s, const Rat& q) {
    if (s <= 0) throw std::invalid_argument("multiplier exponent: s must be positive");
    if (q < 1 || q >= 4) throw std::invalid_argument("multiplier exponent: q must be in [1, 4)");
    return s * (1 - q / 4) / (1 + s);
}

}  // namespace bisparse::exponents
