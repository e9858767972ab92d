#pragma once

#include <string>

// single-header nlohmann/json from vendor/
#include <json.hpp>

#include "bisparse/exponents.hpp"
#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"
#include "bisparse/sparse.hpp"
#include "bisparse/verify.hpp"

namespace bisparse::io {

using json = nlohmann::json;

json to_json(const dyadic::DyadicCube& q);
dyadic::DyadicCube cube_from_json(const json& j);

json to_json(const grid::GridFunction& f);
grid::GridFunction grid_from_json(const json& j);
void write_csv(const grid::GridFunction& f, const std::string& path);

json to_json(const measures::DiscreteMeasure& mu);
measures::DiscreteMeasure measure_from_json(const json& j);

json to_json(const sparse::SparseCollection& s);
sparse::SparseCollection sparse_from_json(const json& j);

json to_json(const exponents::Polytope& p, const std::string& label);
json to_json(const exponents::ExponentRegion& region);
void write_vertex_csv(const exponents::ExponentRegion& region, const std::string& path);

json to_json(const verify::DecayFit& fit);
json to_json(const verify::ScalingReport& rep);
json to_json(const verify::SparseRatioStats& stats);
void write_trials_csv(const verify::SparseRatioStats& stats, const std::string& path);

void write_json(const json& j, const std::string& path);
json read_json(const std::string& path);

/// FNV-1a content hash of a file, as 16 hex digits.
std::string file_hash(const std::string& path);

/// Append-only JSON-lines run manifest.
struct RunManifest {
    std::string command;
    json parameters;
    std::uint64_t seed = 0;
    std::string tool_version;
    json input_hashes;   // path -> hash
    json outputs;        // list of paths
    double wall_time_s = 0.0;

    void append_to(const std::string& manifest_path) const;
};

std::string tool_version();

}  // namespace bisparse::io
