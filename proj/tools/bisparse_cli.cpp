// Batch front end: region queries, operator evaluation, sparse construction,
// verification suites.  Exit codes: 0 success / member, 1 negative answer or
// failed suite, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "bisparse/json_io.hpp"
#include "bisparse/multiplier.hpp"
#include "bisparse/parallel.hpp"

namespace fs = std::filesystem;
using namespace bisparse;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

measures::DiscreteMeasure make_measure(const std::string& name, int d, int nodes) {
    if (name == "triangle") return measures::triangle_measure(d, nodes);
    if (name == "bisphere") return measures::bilinear_sphere_measure(d, nodes);
    if (name == "product-sphere") return measures::product_sphere_measure(d, nodes);
    throw CLI::ValidationError("--measure", "unknown measure family: " + name);
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

struct RegionArgs {
    std::string name;
    int d = 2;
    int m = 0;
    std::vector<std::string> contains;
    bool interior = false;
    std::string out_json;
    std::string out_csv;
};

int run_region(const RegionArgs& args) {
    std::optional<int> m;
    if (args.m > 0) m = args.m;
    const auto reg = exponents::region(exponents::region_name_from_string(args.name), args.d, m);
    if (!args.out_json.empty()) io::write_json(io::to_json(reg), args.out_json);
    if (!args.out_csv.empty()) io::write_vertex_csv(reg, args.out_csv);
    if (args.out_json.empty() && args.out_csv.empty() && args.contains.empty())
        std::cout << io::to_json(reg).dump(2) << "\n";
    if (!args.contains.empty()) {
        if (static_cast<int>(args.contains.size()) != reg.dim)
            throw CLI::ValidationError("--contains",
                                       "expected " + std::to_string(reg.dim) + " rationals");
        exponents::RatVec x;
        for (const auto& s : args.contains) x.push_back(exponents::parse_rational(s));
        const bool inside = reg.member(x, args.interior);
        std::cout << (inside ? "member" : "non-member");
        if (args.interior) std::cout << " (interior)";
        std::cout << "\n";
        return inside ? kExitOk : kExitNegative;
    }
    return kExitOk;
}

struct OperatorArgs {
    std::string measure = "bisphere";
    int d = 1;
    double t = 1.0;
    int nodes = 128;
    int ns = 17;
    int jmin = 0, jmax = 0;
    std::string kind = "single";
    std::string f_path, g_path;
    std::string out = "operator_out.json";
    std::string run_dir;
    std::uint64_t seed = 7;
};

int run_operator(const OperatorArgs& args) {
    Timer timer;
    const auto mu = make_measure(args.measure, args.d, args.nodes);
    grid::GridFunction f = io::grid_from_json(io::read_json(args.f_path));
    grid::GridFunction g = io::grid_from_json(io::read_json(args.g_path));
    ops::OperatorConfig cfg{mu, args.t, args.ns, args.jmin, args.jmax};
    grid::GridFunction out = [&] {
        if (args.kind == "single") return ops::scale_average(f, g, cfg);
        if (args.kind == "single-max") return ops::single_scale_maximal(f, g, cfg);
        if (args.kind == "lacunary") return ops::lacunary_maximal(f, g, cfg);
        if (args.kind == "full") return ops::full_maximal(f, g, cfg);
        throw CLI::ValidationError("--kind", "unknown operator kind: " + args.kind);
    }();
    io::write_json(io::to_json(out), args.out);
    if (!args.run_dir.empty()) {
        ensure_dir(args.run_dir);
        io::RunManifest man;
        man.command = "operator";
        man.parameters = {{"measure", args.measure}, {"d", args.d},     {"t", args.t},
                          {"nodes", args.nodes},     {"ns", args.ns},   {"kind", args.kind},
                          {"jmin", args.jmin},       {"jmax", args.jmax}};
        man.seed = args.seed;
        man.tool_version = io::tool_version();
        man.input_hashes = {{args.f_path, io::file_hash(args.f_path)},
                            {args.g_path, io::file_hash(args.g_path)}};
        man.outputs = {args.out};
        man.wall_time_s = timer.seconds();
        man.append_to(join_path(args.run_dir, "manifest.jsonl"));
    }
    return kExitOk;
}

struct SparseArgs {
    std::string f_path, g_path, h_path;
    bool random = false;
    std::uint64_t seed = 7;
    int grid_n = 1024;
    int d = 1;
    std::string p = "1/2", q = "1/2", r = "2/3";  // reciprocals? no: p,q,r as rationals
    std::string measure = "bisphere";
    int nodes = 128;
    int jmin = -6, jmax = -1;
    std::string out_dir = "sparse_run";
};

int run_sparse(const SparseArgs& args) {
    Timer timer;
    using exponents::Rat;
    const Rat p = exponents::parse_rational(args.p);
    const Rat q = exponents::parse_rational(args.q);
    const Rat r = exponents::parse_rational(args.r);
    if (p <= 0 || q <= 0 || r <= 0) throw CLI::ValidationError("--p/--q/--r", "must be positive");
    const auto x = exponents::ExponentTriple::of(1 / p, 1 / q, 1 / r);
    const auto adm = exponents::admissibility(x);
    if (!adm.sparse_hypothesis()) {
        std::cerr << "refused: the triple must satisfy r >= p, r >= q, and r > 1 "
                     "(sparse-domination hypothesis)\n";
        return kExitUsage;
    }
    ensure_dir(args.out_dir);
    const auto mu = measures::normalize_support(make_measure(args.measure, args.d, args.nodes));

    grid::GridFunction f = grid::GridFunction::zeros(args.d, args.grid_n, 1.0);
    grid::GridFunction g = f, h = f;
    json input_hashes = json::object();
    if (args.random) {
        grid::TestFunctionParams ind;
        ind.count = 5;
        ind.max_level = 5;
        f = grid::random_test_function(args.seed, grid::TestFunctionKind::IndicatorUnionOfCubes,
                                       ind, args.d, args.grid_n);
        g = grid::random_test_function(args.seed + 1,
                                       grid::TestFunctionKind::IndicatorUnionOfCubes, ind, args.d,
                                       args.grid_n);
        grid::TestFunctionParams bumps;
        h = grid::random_test_function(args.seed + 2, grid::TestFunctionKind::SmoothBumpMixture,
                                       bumps, args.d, args.grid_n);
        const double hmax = h.sup_norm();
        if (hmax > 0)
            for (auto& v : h.values()) v /= hmax;
    } else {
        if (args.f_path.empty() || args.g_path.empty() || args.h_path.empty())
            throw CLI::ValidationError("--f", "provide --f/--g/--h or --random");
        f = io::grid_from_json(io::read_json(args.f_path));
        g = io::grid_from_json(io::read_json(args.g_path));
        h = io::grid_from_json(io::read_json(args.h_path));
        input_hashes = {{args.f_path, io::file_hash(args.f_path)},
                        {args.g_path, io::file_hash(args.g_path)},
                        {args.h_path, io::file_hash(args.h_path)}};
    }

    const double pd = p.convert_to<double>();
    const double qd = q.convert_to<double>();
    const double rd = r.convert_to<double>();
    const double rprime = rd / (rd - 1.0);

    const auto tree = sparse::DyadicTree::of_grid(f);
    std::ofstream trace(join_path(args.out_dir, "trace.jsonl"));
    sparse::BuildOptions opts;
    opts.trace = &trace;
    const auto S = sparse::build_sparse_family(f, g, h, tree, pd, qd, rprime, opts);
    const auto report = sparse::verify_sparsity(S);

    ops::OperatorConfig cfg{mu.measure, 1.0, 1, args.jmin, args.jmax};
    const auto lac = ops::lacunary_maximal(f, g, cfg);
    const double numerator = grid::inner_product(lac, h);
    const double form = sparse::sparse_form(S, f, g, h, pd, qd, rprime);

    io::write_json(io::to_json(S), join_path(args.out_dir, "sparse_collection.json"));
    json ratio_report;
    ratio_report["numerator"] = numerator;
    ratio_report["form"] = form;
    ratio_report["ratio"] = form > 0 ? numerator / form : 0.0;
    ratio_report["skipped"] = form == 0.0;
    ratio_report["sparsity_pass"] = report.pass;
    ratio_report["worst_witness_ratio"] = report.worst_ratio;
    ratio_report["cube_count"] = report.cube_count;
    io::write_json(ratio_report, join_path(args.out_dir, "ratio_report.json"));

    io::RunManifest man;
    man.command = "sparse";
    man.parameters = {{"p", args.p},       {"q", args.q},           {"r", args.r},
                      {"grid", args.grid_n}, {"d", args.d},         {"measure", args.measure},
                      {"jmin", args.jmin}, {"jmax", args.jmax},     {"random", args.random}};
    man.seed = args.seed;
    man.tool_version = io::tool_version();
    man.input_hashes = input_hashes;
    man.outputs = {join_path(args.out_dir, "sparse_collection.json"),
                   join_path(args.out_dir, "ratio_report.json"),
                   join_path(args.out_dir, "trace.jsonl")};
    man.wall_time_s = timer.seconds();
    man.append_to(join_path(args.out_dir, "manifest.jsonl"));
    std::cout << ratio_report.dump(2) << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string out_dir = "verify_run";
    int threads = 0;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    json details;
};

SuiteResult suite_scaling(std::uint64_t /*seed*/) {
    SuiteResult res{"scaling", true, json::array()};
    struct Case {
        const char* measure;
        int d;
        double p, q, r;
    };
    const std::vector<Case> cases = {
        {"bisphere", 1, 2.0, 2.0, 2.0},
        {"bisphere", 1, 2.0, 2.0, 1.5},
        {"triangle", 2, 2.0, 2.0, 2.0},
    };
    for (const auto& c : cases) {
        const auto mu = measures::normalize_support(make_measure(c.measure, c.d, c.d == 1 ? 128 : 120));
        const int n = c.d == 1 ? 2048 : 256;
        const double side = 16.0;
        const double w = 0.35;
        grid::GridFunction f = grid::GridFunction::from_fn(c.d, n, side, [&](const double* x) {
            double d2 = 0;
            for (int a = 0; a < c.d; ++a) d2 += (x[a] - side / 2) * (x[a] - side / 2);
            return std::exp(-d2 / (2 * w * w));
        });
        grid::GridFunction g = f;
        const std::vector<double> ts = {0.5, 0.7071, 1.0, 1.4142, 2.0};
        const auto rep = verify::scaling_law_experiment(mu.measure, f, g, c.p, c.q, c.r, ts);
        const bool ok = std::abs(rep.normalized_slope - rep.predicted) < 0.1;
        res.pass = res.pass && ok;
        json row = io::to_json(rep);
        row["measure"] = c.measure;
        row["pass"] = ok;
        res.details.push_back(row);
        std::cout << "  scaling " << c.measure << " d=" << c.d << " slope=" << rep.normalized_slope
                  << " predicted=" << rep.predicted << (ok ? " [ok]" : " [FAIL]") << "\n";
    }
    return res;
}

SuiteResult suite_continuity(std::uint64_t seed) {
    SuiteResult res{"continuity", true, json::array()};
    const auto mu = measures::bilinear_sphere_measure(1, 128);
    const std::vector<double> ys = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
    verify::ContinuityParams params;
    params.n = 1024;
    for (auto kind : {verify::ContinuityOperator::SingleScale,
                      verify::ContinuityOperator::SingleScaleMaximal}) {
        for (auto slot : {verify::ContinuitySlot::First, verify::ContinuitySlot::Second}) {
            for (std::uint64_t s = 0; s < 3; ++s) {
                const auto fit = verify::continuity_experiment(kind, mu, params, ys, slot,
                                                               seed + 17 * s);
                const bool ok = fit.fitted_eta > 0 && fit.r2 >= 0.9;
                res.pass = res.pass && ok;
                json row = io::to_json(fit);
                row["kind"] = kind == verify::ContinuityOperator::SingleScale ? "single" : "max";
                row["slot"] = slot == verify::ContinuitySlot::First ? "first" : "second";
                row["seed"] = seed + 17 * s;
                row["pass"] = ok;
                res.details.push_back(row);
                std::cout << "  continuity " << row["kind"] << "/" << row["slot"]
                          << " eta=" << fit.fitted_eta << " r2=" << fit.r2
                          << (ok ? " [ok]" : " [FAIL]") << "\n";
            }
        }
    }
    return res;
}

SuiteResult suite_sparse(std::uint64_t seed) {
    SuiteResult res{"sparse", true, json::array()};
    const auto mu = measures::normalize_support(measures::bilinear_sphere_measure(1, 128));
    verify::SparseRatioParams params;
    params.trials = 25;
    params.grid_n = 1024;
    params.seed = seed;
    const auto x = exponents::ExponentTriple::of(exponents::Rat(1, 2), exponents::Rat(1, 2),
                                                 exponents::Rat(1, 3));
    const auto stats = verify::sparse_ratio_experiment(mu.measure, x, params);
    const bool ok = stats.violations == 0 && stats.max_ratio > 0 &&
                    std::isfinite(stats.max_ratio);
    res.pass = ok;
    res.details = io::to_json(stats);
    std::cout << "  sparse ratio max=" << stats.max_ratio << " median=" << stats.median_ratio
              << " violations=" << stats.violations << (ok ? " [ok]" : " [FAIL]") << "\n";
    return res;
}

SuiteResult suite_regions(std::uint64_t) {
    SuiteResult res{"regions", true, json::array()};
    const auto reg = exponents::region(exponents::RegionName::TriangleFull, 10, 5);
    bool ok = reg.parts.size() == 1 && reg.parts[0].vertices().size() == 6;
    using exponents::Rat;
    const exponents::RatVec diag{Rat(288, 535), Rat(288, 535), Rat(288, 535)};
    bool found = false;
    for (const auto& v : reg.parts[0].vertices()) found = found || v == diag;
    ok = ok && found;
    res.pass = ok;
    res.details.push_back(io::to_json(reg));
    std::cout << "  region triangle-full d=10 m=5 vertices="
              << (reg.parts.empty() ? 0 : reg.parts[0].vertices().size())
              << (ok ? " [ok]" : " [FAIL]") << "\n";
    return res;
}

SuiteResult suite_multiplier(std::uint64_t seed) {
    SuiteResult res{"multiplier", true, json::array()};
    const int n = 512;
    grid::TestFunctionParams tp;
    grid::GridFunction f = grid::random_test_function(
        seed, grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
    grid::GridFunction g = grid::random_test_function(
        seed + 1, grid::TestFunctionKind::SmoothBumpMixture, tp, 1, n);
    const double s = 2.0;
    const auto m = multiplier::MultiplierGrid::from_fn(n, 1.0, [s](double xi, double eta) {
        return std::complex<double>(std::pow(1.0 + xi * xi + eta * eta, -s / 2.0), 0.0);
    });
    multiplier::MultiplierProbe probe;
    probe.decay_s = s;
    probe.lq_exponent = 2.0;
    std::vector<double> ys, norms;
    for (int k = 3; k <= 7; ++k) {
        const double y = std::ldexp(1.0, -k);
        const auto split = multiplier::continuity_split(m, y, probe, f, g);
        ys.push_back(y);
        norms.push_back(split.low.lp_norm(1.0) + split.high.lp_norm(1.0));
    }
    const auto fit = verify::fit_decay(ys, norms);
    const double target = exponents::multiplier_continuity_exponent(exponents::Rat(2),
                                                                    exponents::Rat(2))
                              .convert_to<double>();
    const bool ok = fit.fitted_eta >= 0.8 * target;
    res.pass = ok;
    res.details = io::to_json(fit);
    std::cout << "  multiplier split decay eta=" << fit.fitted_eta
              << " needs >= " << 0.8 * target << (ok ? " [ok]" : " [FAIL]") << "\n";
    return res;
}

int run_verify(const VerifyArgs& args) {
    if (args.threads > 0) bisparse::set_max_threads(args.threads);
    Timer timer;
    ensure_dir(args.out_dir);
    std::vector<SuiteResult> results;
    auto want = [&](const char* name) { return args.suite == "all" || args.suite == name; };
    if (want("regions")) results.push_back(suite_regions(args.seed));
    if (want("scaling")) results.push_back(suite_scaling(args.seed));
    if (want("continuity")) results.push_back(suite_continuity(args.seed));
    if (want("sparse")) results.push_back(suite_sparse(args.seed));
    if (want("multiplier")) results.push_back(suite_multiplier(args.seed));
    if (results.empty()) throw CLI::ValidationError("suite", "unknown suite: " + args.suite);

    bool all_pass = true;
    json summary = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        json row;
        row["suite"] = r.name;
        row["pass"] = r.pass;
        row["details"] = r.details;
        summary.push_back(row);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
    }
    io::write_json(summary, join_path(args.out_dir, "verify_report.json"));
    io::RunManifest man;
    man.command = "verify";
    man.parameters = {{"suite", args.suite}};
    man.seed = args.seed;
    man.tool_version = io::tool_version();
    man.outputs = {join_path(args.out_dir, "verify_report.json")};
    man.wall_time_s = timer.seconds();
    man.append_to(join_path(args.out_dir, "manifest.jsonl"));
    return all_pass ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilinear averaging operators, sparse domination, and exponent polytopes"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads");

    RegionArgs region_args;
    auto* region_cmd = app.add_subcommand("region", "exponent region queries");
    region_cmd->add_option("name", region_args.name, "region name")->required();
    region_cmd->add_option("--d", region_args.d, "dimension")->required();
    region_cmd->add_option("--m", region_args.m, "integer parameter (triangle-full)");
    region_cmd->add_option("--contains", region_args.contains,
                           "rational coordinates a/b of a point to test");
    region_cmd->add_flag("--interior", region_args.interior, "test interior membership");
    region_cmd->add_option("--out", region_args.out_json, "write region JSON here");
    region_cmd->add_option("--csv", region_args.out_csv, "write vertex CSV here");

    OperatorArgs op_args;
    auto* op_cmd = app.add_subcommand("operator", "evaluate a bilinear averaging operator");
    op_cmd->add_option("--measure", op_args.measure, "triangle|bisphere|product-sphere");
    op_cmd->add_option("--d", op_args.d, "dimension")->required();
    op_cmd->add_option("--t", op_args.t, "scale");
    op_cmd->add_option("--nodes", op_args.nodes, "quadrature nodes");
    op_cmd->add_option("--ns", op_args.ns, "sup samples in [t,2t]");
    op_cmd->add_option("--jmin", op_args.jmin, "smallest dyadic scale exponent");
    op_cmd->add_option("--jmax", op_args.jmax, "largest dyadic scale exponent");
    op_cmd->add_option("--kind", op_args.kind, "single|single-max|lacunary|full");
    op_cmd->add_option("--f", op_args.f_path, "input f (GridFunction JSON)")->required();
    op_cmd->add_option("--g", op_args.g_path, "input g (GridFunction JSON)")->required();
    op_cmd->add_option("--out", op_args.out, "output path");
    op_cmd->add_option("--run-dir", op_args.run_dir, "manifest directory");

    SparseArgs sparse_args;
    auto* sparse_cmd = app.add_subcommand("sparse", "build a sparse family and ratio report");
    sparse_cmd->add_option("--f", sparse_args.f_path, "input f JSON");
    sparse_cmd->add_option("--g", sparse_args.g_path, "input g JSON");
    sparse_cmd->add_option("--h", sparse_args.h_path, "input h JSON");
    sparse_cmd->add_flag("--random", sparse_args.random, "seeded random inputs");
    sparse_cmd->add_option("--seed", sparse_args.seed, "rng seed");
    sparse_cmd->add_option("--grid", sparse_args.grid_n, "cells per axis");
    sparse_cmd->add_option("--d", sparse_args.d, "dimension");
    sparse_cmd->add_option("--p", sparse_args.p, "exponent p as a/b")->required();
    sparse_cmd->add_option("--q", sparse_args.q, "exponent q as a/b")->required();
    sparse_cmd->add_option("--r", sparse_args.r, "exponent r as a/b")->required();
    sparse_cmd->add_option("--measure", sparse_args.measure, "measure family");
    sparse_cmd->add_option("--nodes", sparse_args.nodes, "quadrature nodes");
    sparse_cmd->add_option("--jmin", sparse_args.jmin, "smallest scale exponent");
    sparse_cmd->add_option("--jmax", sparse_args.jmax, "largest scale exponent");
    sparse_cmd->add_option("--out", sparse_args.out_dir, "output directory");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    verify_cmd->add_option("suite", verify_args.suite,
                           "regions|scaling|continuity|sparse|multiplier|all");
    verify_cmd->add_option("--seed", verify_args.seed, "rng seed");
    verify_cmd->add_option("--out", verify_args.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (threads > 0) bisparse::set_max_threads(threads);
    try {
        if (region_cmd->parsed()) return run_region(region_args);
        if (op_cmd->parsed()) return run_operator(op_args);
        if (sparse_cmd->parsed()) return run_sparse(sparse_args);
        if (verify_cmd->parsed()) {
            verify_args.threads = threads;
            return run_verify(verify_args);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}
