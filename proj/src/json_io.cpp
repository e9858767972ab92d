#include "bisparse/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bisparse::io {

namespace {

json rat_to_json(const exponents::Rat& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const auto n = numerator(r);
    const auto d = denominator(r);
    if (n < std::numeric_limits<std::int64_t>::min() ||
        n > std::numeric_limits<std::int64_t>::max() ||
        d > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("rational does not fit in int64 for serialization");
    return json::array({n.convert_to<std::int64_t>(), d.convert_to<std::int64_t>()});
}

/// Run-length encoding of a cell mask: [value0, run0, run1, ...].
json rle_encode(const sparse::Mask& mask) {
    if (mask.empty()) return json::array({0});
    json out = json::array();
    out.push_back(static_cast<int>(mask[0]));
    std::size_t run = 1;
    for (std::size_t i = 1; i < mask.size(); ++i) {
        if (mask[i] == mask[i - 1]) {
            ++run;
        } else {
            out.push_back(run);
            run = 1;
        }
    }
    out.push_back(run);
    return out;
}

sparse::Mask rle_decode(const json& j, std::size_t expected) {
    sparse::Mask mask;
    mask.reserve(expected);
    if (!j.is_array() || j.empty()) throw std::invalid_argument("bad RLE mask");
    std::uint8_t value = j[0].get<int>() != 0 ? 1 : 0;
    for (std::size_t i = 1; i < j.size(); ++i) {
        const std::size_t run = j[i].get<std::size_t>();
        mask.insert(mask.end(), run, value);
        value = value ? 0 : 1;
    }
    if (mask.size() != expected) throw std::invalid_argument("RLE mask length mismatch");
    return mask;
}

}  // namespace

json to_json(const dyadic::DyadicCube& q) {
    json j;
    j["dim"] = q.dim;
    j["lattice_id"] = q.lattice_id;
    j["generation"] = q.generation;
    j["corner"] = q.corner;
    j["unit"] = q.unit;
    return j;
}

dyadic::DyadicCube cube_from_json(const json& j) {
    dyadic::DyadicCube q;
    q.dim = j.at("dim").get<int>();
    q.lattice_id = j.at("lattice_id").get<int>();
    q.generation = j.at("generation").get<int>();
    q.corner = j.at("corner").get<std::vector<std::int64_t>>();
    q.unit = j.value("unit", 1.0);
    if (static_cast<int>(q.corner.size()) != q.dim)
        throw std::invalid_argument("cube json: corner size mismatch");
    return q;
}

json to_json(const grid::GridFunction& f) {
    json j;
    j["dim"] = f.dim();
    j["origin"] = f.origin();
    j["side"] = f.side();
    j["n"] = f.n();
    j["values"] = f.values();
    return j;
}

grid::GridFunction grid_from_json(const json& j) {
    return grid::GridFunction(j.at("dim").get<int>(), j.at("n").get<int>(),
                              j.at("side").get<double>(),
                              j.at("origin").get<std::vector<double>>(),
                              j.at("values").get<std::vector<double>>());
}

void write_csv(const grid::GridFunction& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "index,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) os << i << "," << std::setprecision(17) << f[i] << "\n";
}

json to_json(const measures::DiscreteMeasure& mu) {
    json j;
    j["dim"] = mu.dim;
    j["family"] = mu.family;
    json nodes = json::array();
    for (std::size_t k = 0; k < mu.node_count(); ++k) {
        json node = json::array();
        for (int a = 0; a < mu.dim; ++a) node.push_back(mu.y[k * mu.dim + a]);
        for (int a = 0; a < mu.dim; ++a) node.push_back(mu.z[k * mu.dim + a]);
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    j["weights"] = mu.w;
    return j;
}

measures::DiscreteMeasure measure_from_json(const json& j) {
    measures::DiscreteMeasure mu;
    mu.dim = j.at("dim").get<int>();
    mu.family = j.value("family", "custom");
    mu.w = j.at("weights").get<std::vector<double>>();
    const auto& nodes = j.at("nodes");
    if (nodes.size() != mu.w.size()) throw std::invalid_argument("measure json: size mismatch");
    for (const auto& node : nodes) {
        if (static_cast<int>(node.size()) != 2 * mu.dim)
            throw std::invalid_argument("measure json: bad node width");
        for (int a = 0; a < mu.dim; ++a) mu.y.push_back(node[a].get<double>());
        for (int a = 0; a < mu.dim; ++a) mu.z.push_back(node[mu.dim + a].get<double>());
    }
    mu.total_mass = 0.0;
    for (double w : mu.w) mu.total_mass += w;
    mu.validate();
    return mu;
}

json to_json(const sparse::SparseCollection& s) {
    json j;
    j["gamma"] = s.gamma;
    j["dim"] = s.dim;
    j["n"] = s.n;
    json cubes = json::array();
    for (const auto& q : s.cubes) cubes.push_back(to_json(q));
    j["cubes"] = std::move(cubes);
    json masks = json::array();
    for (const auto& m : s.witnesses) masks.push_back(rle_encode(m));
    j["witness_masks"] = std::move(masks);
    return j;
}

sparse::SparseCollection sparse_from_json(const json& j) {
    sparse::SparseCollection s;
    s.gamma = j.at("gamma").get<double>();
    s.dim = j.at("dim").get<int>();
    s.n = j.at("n").get<int>();
    std::size_t cells = 1;
    for (int a = 0; a < s.dim; ++a) cells *= static_cast<std::size_t>(s.n);
    for (const auto& c : j.at("cubes")) s.cubes.push_back(cube_from_json(c));
    for (const auto& m : j.at("witness_masks")) s.witnesses.push_back(rle_decode(m, cells));
    if (s.cubes.size() != s.witnesses.size())
        throw std::invalid_argument("sparse json: cube/mask count mismatch");
    return s;
}

json to_json(const exponents::Polytope& p, const std::string& label) {
    json j;
    j["label"] = label;
    j["dim"] = p.dim();
    j["affine_dim"] = p.affine_dim();
    json verts = json::array();
    for (const auto& v : p.vertices()) {
        json vert = json::array();
        for (const auto& c : v) vert.push_back(rat_to_json(c));
        verts.push_back(std::move(vert));
    }
    j["vertices"] = std::move(verts);
    json hs = json::array();
    for (const auto& h : p.halfspaces()) {
        json row = json::array();
        for (const auto& c : h.a) row.push_back(rat_to_json(c));
        row.push_back(rat_to_json(h.b));
        hs.push_back(std::move(row));
    }
    j["halfspaces"] = std::move(hs);
    return j;
}

json to_json(const exponents::ExponentRegion& region) {
    json j;
    j["label"] = region.label;
    j["dim"] = region.dim;
    json parts = json::array();
    for (std::size_t i = 0; i < region.parts.size(); ++i)
        parts.push_back(to_json(region.parts[i], region.label + "#" + std::to_string(i)));
    j["parts"] = std::move(parts);
    if (region.predicate) j["predicate"] = region.predicate->describe();
    if (region.paper_transcribed_flag) j["transcribed"] = true;
    return j;
}

void write_vertex_csv(const exponents::ExponentRegion& region, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "part,inv_p,inv_q,inv_r\n";
    for (std::size_t i = 0; i < region.parts.size(); ++i)
        for (const auto& v : region.parts[i].vertices()) {
            os << i;
            for (const auto& c : v) os << "," << c.convert_to<double>();
            for (std::size_t a = v.size(); a < 3; ++a) os << ",";
            os << "\n";
        }
}

json to_json(const verify::DecayFit& fit) {
    json j;
    j["abscissae"] = fit.abscissae;
    j["norms"] = fit.norms;
    j["fitted_eta"] = fit.fitted_eta;
    j["r2"] = fit.r2;
    j["monotone"] = fit.monotone;
    j["triangle_bound_ok"] = fit.triangle_bound_ok;
    return j;
}

json to_json(const verify::ScalingReport& rep) {
    json j;
    j["t_values"] = rep.t_values;
    j["norms"] = rep.norms;
    j["normalized"] = rep.normalized;
    j["raw_slope"] = rep.raw_slope;
    j["normalized_slope"] = rep.normalized_slope;
    j["predicted"] = rep.predicted;
    return j;
}

json to_json(const verify::SparseRatioStats& stats) {
    json j;
    j["max_ratio"] = stats.max_ratio;
    j["median_ratio"] = stats.median_ratio;
    j["violations"] = stats.violations;
    j["skipped"] = stats.skipped;
    json rows = json::array();
    for (const auto& t : stats.trials) {
        json row;
        row["trial"] = t.trial;
        row["seed"] = t.seed;
        row["numerator"] = t.numerator;
        row["form"] = t.form;
        row["ratio"] = t.ratio;
        row["skipped"] = t.skipped;
        row["sparsity_ok"] = t.sparsity_ok;
        rows.push_back(std::move(row));
    }
    j["trials"] = std::move(rows);
    return j;
}

void write_trials_csv(const verify::SparseRatioStats& stats, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "trial,seed,value\n";
    for (const auto& t : stats.trials)
        os << t.trial << "," << t.seed << "," << std::setprecision(17) << t.ratio << "\n";
}

void write_json(const json& j, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    json j;
    is >> j;
    return j;
}

std::string file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (is.read(buf, sizeof(buf)) || is.gcount() > 0) {
        for (std::streamsize i = 0; i < is.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!is) break;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void RunManifest::append_to(const std::string& manifest_path) const {
    json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    j["input_hashes"] = input_hashes;
    j["outputs"] = outputs;
    j["wall_time_s"] = wall_time_s;
    std::ofstream os(manifest_path, std::ios::app);
    if (!os) throw std::runtime_error("cannot open " + manifest_path);
    os << j.dump() << "\n";
}

std::string tool_version() { return "0.1.0"; }

}  // namespace bisparse::io
