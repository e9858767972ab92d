#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bisparse/exponents.hpp"
#include "bisparse/grid.hpp"
#include "bisparse/measures.hpp"
#include "bisparse/multiplier.hpp"
#include "bisparse/operators.hpp"
#include "bisparse/parallel.hpp"
#include "bisparse/sparse.hpp"
#include "bisparse/verify.hpp"

namespace py = pybind11;
using namespace bisparse;

namespace {

grid::GridFunction grid_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                                   double side, std::vector<double> origin) {
    const int dim = static_cast<int>(a.ndim());
    if (dim < 1 || dim > 3) throw std::invalid_argument("array must be 1-, 2-, or 3-dimensional");
    const int n = static_cast<int>(a.shape(0));
    for (int d = 1; d < dim; ++d)
        if (a.shape(d) != n) throw std::invalid_argument("array must be square");
    std::vector<double> values(a.data(), a.data() + a.size());
    return grid::GridFunction(dim, n, side, std::move(origin), std::move(values));
}

py::array grid_to_array(const grid::GridFunction& f) {
    std::vector<py::ssize_t> shape(f.dim(), f.n());
    py::array_t<double> out(shape);
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

exponents::ExponentTriple triple_from_strings(const std::string& ip, const std::string& iq,
                                              const std::string& ir) {
    return exponents::ExponentTriple::of(exponents::parse_rational(ip),
                                         exponents::parse_rational(iq),
                                         exponents::parse_rational(ir));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bilinear averaging operators, sparse domination, and exponent polytopes";

    py::class_<grid::GridFunction>(m, "GridFunction")
        .def(py::init([](py::array_t<double, py::array::c_style | py::array::forcecast> a,
                         double side, std::vector<double> origin) {
                 return grid_from_array(a, side, std::move(origin));
             }),
             py::arg("values"), py::arg("side") = 1.0,
             py::arg("origin") = std::vector<double>{})
        .def_property_readonly("dim", &grid::GridFunction::dim)
        .def_property_readonly("n", &grid::GridFunction::n)
        .def_property_readonly("side", &grid::GridFunction::side)
        .def("to_numpy", &grid_to_array)
        .def("integral", &grid::GridFunction::integral)
        .def("lp_norm", &grid::GridFunction::lp_norm)
        .def("sup_norm", &grid::GridFunction::sup_norm);

    m.def(
        "constant",
        [](int dim, int n, double side, double value) {
            return grid::GridFunction::constant(dim, n, side, value);
        },
        py::arg("dim"), py::arg("n"), py::arg("side") = 1.0, py::arg("value") = 1.0);

    m.def(
        "random_test_function",
        [](std::uint64_t seed, const std::string& kind, int dim, int n, double side) {
            grid::TestFunctionParams params;
            grid::TestFunctionKind k;
            if (kind == "indicator")
                k = grid::TestFunctionKind::IndicatorUnionOfCubes;
            else if (kind == "bumps")
                k = grid::TestFunctionKind::SmoothBumpMixture;
            else if (kind == "spike")
                k = grid::TestFunctionKind::Spike;
            else
                throw std::invalid_argument("kind must be indicator|bumps|spike");
            return grid::random_test_function(seed, k, params, dim, n, side);
        },
        py::arg("seed"), py::arg("kind"), py::arg("dim"), py::arg("n"), py::arg("side") = 1.0);

    py::class_<measures::DiscreteMeasure>(m, "DiscreteMeasure")
        .def_readonly("dim", &measures::DiscreteMeasure::dim)
        .def_readonly("family", &measures::DiscreteMeasure::family)
        .def_property_readonly("node_count", &measures::DiscreteMeasure::node_count)
        .def_property_readonly("total_mass",
                               [](const measures::DiscreteMeasure& mu) { return mu.total_mass; })
        .def("support_diam", &measures::DiscreteMeasure::support_diam)
        .def("fourier_transform",
             [](const measures::DiscreteMeasure& mu, std::vector<double> xi,
                std::vector<double> eta) { return measures::fourier_transform(mu, xi, eta); });

    m.def("triangle_measure", &measures::triangle_measure, py::arg("dim"), py::arg("n_nodes"));
    m.def("bilinear_sphere_measure", &measures::bilinear_sphere_measure, py::arg("dim"),
          py::arg("n_nodes"));
    m.def("product_sphere_measure", &measures::product_sphere_measure, py::arg("dim"),
          py::arg("n_nodes"));
    m.def(
        "normalize_support",
        [](const measures::DiscreteMeasure& mu) {
            auto out = measures::normalize_support(mu);
            return py::make_tuple(out.measure, out.factor);
        },
        py::arg("measure"));

    m.def(
        "scale_average",
        [](const grid::GridFunction& f, const grid::GridFunction& g,
           const measures::DiscreteMeasure& mu, double t) {
            ops::OperatorConfig cfg{mu, t, 1, 0, 0};
            return ops::scale_average(f, g, cfg);
        },
        py::arg("f"), py::arg("g"), py::arg("measure"), py::arg("t") = 1.0);

    m.def(
        "single_scale_maximal",
        [](const grid::GridFunction& f, const grid::GridFunction& g,
           const measures::DiscreteMeasure& mu, double t, int samples) {
            ops::OperatorConfig cfg{mu, t, samples, 0, 0};
            return ops::single_scale_maximal(f, g, cfg);
        },
        py::arg("f"), py::arg("g"), py::arg("measure"), py::arg("t") = 1.0,
        py::arg("samples") = 17);

    m.def(
        "lacunary_maximal",
        [](const grid::GridFunction& f, const grid::GridFunction& g,
           const measures::DiscreteMeasure& mu, int j_min, int j_max) {
            ops::OperatorConfig cfg{mu, 1.0, 1, j_min, j_max};
            return ops::lacunary_maximal(f, g, cfg);
        },
        py::arg("f"), py::arg("g"), py::arg("measure"), py::arg("j_min"), py::arg("j_max"));

    m.def(
        "adjoint_1",
        [](const grid::GridFunction& g, const grid::GridFunction& h,
           const measures::DiscreteMeasure& mu, double t) {
            ops::OperatorConfig cfg{mu, t, 1, 0, 0};
            return ops::adjoint_1(g, h, cfg);
        },
        py::arg("g"), py::arg("h"), py::arg("measure"), py::arg("t") = 1.0);

    m.def("inner_product", &grid::inner_product, py::arg("f"), py::arg("g"));

    py::class_<sparse::SparseCollection>(m, "SparseCollection")
        .def_readonly("gamma", &sparse::SparseCollection::gamma)
        .def_property_readonly("cube_count",
                               [](const sparse::SparseCollection& s) { return s.cubes.size(); });

    m.def(
        "build_sparse_family",
        [](const grid::GridFunction& f, const grid::GridFunction& g, const grid::GridFunction& h,
           double p, double q, double r_prime) {
            const auto tree = sparse::DyadicTree::of_grid(f);
            return sparse::build_sparse_family(f, g, h, tree, p, q, r_prime);
        },
        py::arg("f"), py::arg("g"), py::arg("h"), py::arg("p"), py::arg("q"), py::arg("r_prime"));

    m.def("sparse_form", &sparse::sparse_form, py::arg("collection"), py::arg("f"), py::arg("g"),
          py::arg("h"), py::arg("p"), py::arg("q"), py::arg("r_prime"));

    m.def(
        "verify_sparsity",
        [](const sparse::SparseCollection& s) {
            const auto rep = sparse::verify_sparsity(s);
            py::dict out;
            out["pass"] = rep.pass;
            out["worst_ratio"] = rep.worst_ratio;
            out["cube_count"] = rep.cube_count;
            return out;
        },
        py::arg("collection"));

    m.def(
        "region_vertices",
        [](const std::string& name, int d, std::optional<int> mm) {
            const auto reg = exponents::region(exponents::region_name_from_string(name), d, mm);
            std::vector<std::vector<std::string>> parts_out;
            py::list parts;
            for (const auto& part : reg.parts) {
                py::list verts;
                for (const auto& v : part.vertices()) {
                    py::list vert;
                    for (const auto& c : v) vert.append(exponents::format_rational(c));
                    verts.append(vert);
                }
                parts.append(verts);
            }
            return parts;
        },
        py::arg("name"), py::arg("d"), py::arg("m") = std::nullopt);

    m.def(
        "region_member",
        [](const std::string& name, int d, std::optional<int> mm,
           const std::vector<std::string>& coords, bool interior) {
            const auto reg = exponents::region(exponents::region_name_from_string(name), d, mm);
            exponents::RatVec x;
            for (const auto& c : coords) x.push_back(exponents::parse_rational(c));
            return reg.member(x, interior);
        },
        py::arg("name"), py::arg("d"), py::arg("m"), py::arg("coords"),
        py::arg("interior") = false);

    m.def(
        "scaling_exponent",
        [](const std::string& ip, const std::string& iq, const std::string& ir, int d) {
            return exponents::format_rational(
                exponents::scaling_exponent(triple_from_strings(ip, iq, ir), d));
        },
        py::arg("inv_p"), py::arg("inv_q"), py::arg("inv_r"), py::arg("d"));

    m.def("set_max_threads", &bisparse::set_max_threads);
    m.attr("__version__") = "0.1.0";
}
