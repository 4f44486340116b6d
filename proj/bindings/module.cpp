#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treemaplab/algorithms.hpp"
#include "treemaplab/metrics.hpp"
#include "treemaplab/serialization.hpp"
#include "treemaplab/svg.hpp"

namespace py = pybind11;

namespace {

using namespace treemaplab;

std::optional<Rect> box_of(const std::optional<std::pair<double, double>>& container) {
    if (!container.has_value()) {
        return std::nullopt;
    }
    return Rect{0.0, 0.0, container->first, container->second};
}

AlgorithmOptions options_of(double c, double rho, int alpha, double beta) {
    AlgorithmOptions o;
    o.c = c;
    o.seed_ratio = rho;
    o.alpha = alpha;
    o.beta = beta;
    return o;
}

Layout py_layout(const std::string& algorithm, const std::vector<double>& areas,
                 const std::optional<std::pair<double, double>>& container, double c,
                 double rho, int alpha, double beta) {
    return run_algorithm(parse_algorithm(algorithm), box_of(container),
                         make_area_list(areas), options_of(c, rho, alpha, beta));
}

Layout py_layout_tree(const std::string& algorithm, const std::string& text,
                      const std::string& format,
                      const std::optional<std::pair<double, double>>& container,
                      double c, double rho, int alpha, double beta) {
    TreeFormat fmt = format == "csv" ? TreeFormat::csv : TreeFormat::json;
    WeightedTree tree = parse_tree(text, fmt);
    return layout_tree(parse_algorithm(algorithm), box_of(container), tree,
                       options_of(c, rho, alpha, beta));
}

}  // namespace

PYBIND11_MODULE(treemaplab, m) {
    m.doc() = "rectangular treemap layout algorithms";

    py::class_<Rect>(m, "Rect")
        .def(py::init<double, double, double, double>(), py::arg("x") = 0.0,
             py::arg("y") = 0.0, py::arg("w") = 0.0, py::arg("h") = 0.0)
        .def_readwrite("x", &Rect::x)
        .def_readwrite("y", &Rect::y)
        .def_readwrite("w", &Rect::w)
        .def_readwrite("h", &Rect::h)
        .def("area", &Rect::area)
        .def("__repr__", [](const Rect& r) {
            return "Rect(x=" + std::to_string(r.x) + ", y=" + std::to_string(r.y) +
                   ", w=" + std::to_string(r.w) + ", h=" + std::to_string(r.h) + ")";
        });

    py::class_<Cell>(m, "Cell")
        .def_readonly("id", &Cell::id)
        .def_readonly("name", &Cell::name)
        .def_readonly("rect", &Cell::rect);

    py::class_<Layout>(m, "Layout")
        .def_readonly("container", &Layout::container)
        .def_readonly("cells", &Layout::cells)
        .def_readonly("bundles", &Layout::bundles);

    py::class_<LayoutMetrics>(m, "LayoutMetrics")
        .def_readonly("perimeter", &LayoutMetrics::perimeter)
        .def_readonly("max_ar", &LayoutMetrics::max_ar)
        .def_readonly("avg_ar", &LayoutMetrics::avg_ar)
        .def_readonly("awar", &LayoutMetrics::awar);

    m.def("algorithms", [] {
        return std::vector<std::string>{"squarified", "dc",      "mdc",
                                        "dp",         "opt",     "sspiral",
                                        "sqbundle",   "stbundle"};
    });
    m.def("layout", &py_layout, py::arg("algorithm"), py::arg("areas"),
          py::arg("container") = std::nullopt, py::arg("c") = 2.0,
          py::arg("rho") = 2.0, py::arg("alpha") = 0, py::arg("beta") = 0.0,
          "Lay out a flat list of areas.");
    m.def("layout_tree", &py_layout_tree, py::arg("algorithm"), py::arg("text"),
          py::arg("format") = "json", py::arg("container") = std::nullopt,
          py::arg("c") = 2.0, py::arg("rho") = 2.0, py::arg("alpha") = 0,
          py::arg("beta") = 0.0, "Lay out a weighted tree given as JSON or CSV text.");
    m.def("metrics", &compute_metrics, py::arg("layout"));
    m.def("to_json", &layout_to_json, py::arg("layout"), py::arg("indent") = 2);
    m.def("from_json",
          [](const std::string& text) { return layout_from_json(text); },
          py::arg("text"));
    m.def(
        "to_svg",
        [](const Layout& layout, bool labels, double width) {
            SvgOptions o;
            o.labels = labels;
            o.width_px = width;
            return render_svg(layout, o);
        },
        py::arg("layout"), py::arg("labels") = false, py::arg("width") = 800.0);
}
