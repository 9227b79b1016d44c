#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elastinet/bounds.hpp"
#include "elastinet/config.hpp"
#include "elastinet/energy.hpp"
#include "elastinet/error.hpp"
#include "elastinet/minimizer.hpp"
#include "elastinet/network.hpp"
#include "elastinet/render.hpp"
#include "elastinet/stationarity.hpp"
#include "elastinet/version.hpp"

namespace py = pybind11;
using namespace elastinet;

// Networks cross the boundary as JSON documents; the Python package turns
// them into dicts.

namespace {

py::dict energy_dict(const EnergyReport& r) {
    py::list curves;
    for (const auto& c : r.per_curve) {
        py::dict d;
        d["length"] = c.length;
        d["elastic"] = c.elastic;
        d["penalized"] = c.penalized;
        d["degenerate"] = c.degenerate;
        curves.append(d);
    }
    py::dict d;
    d["length"] = r.length;
    d["elastic"] = r.elastic;
    d["penalized"] = r.penalized;
    d["alpha"] = r.alpha;
    d["curves"] = curves;
    return d;
}

py::dict check_dict(const BoundCheck& b) {
    py::dict d;
    d["lhs"] = b.lhs;
    d["rhs"] = b.rhs;
    d["holds"] = b.holds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_elastinet, m) {
    m.doc() = "Elastic energy of planar curve networks";
    m.attr("__version__") = version;

    static py::exception<Error> error_type(m, "ElastinetError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.kind())) + ": " + e.what());
            exc.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    m.def("make_circle", [](double r, std::size_t n) { return serialize(make_circle(r, n)); },
          py::arg("radius") = 1.0, py::arg("n") = 200);
    m.def("make_ellipse", [](double a, double b, std::size_t n) { return serialize(make_ellipse(a, b, n)); },
          py::arg("a"), py::arg("b"), py::arg("n") = 200);
    m.def("make_teardrop", [](std::size_t n) { return serialize(make_teardrop(n)); }, py::arg("n") = 300);
    m.def("make_standard_double_bubble",
          [](double r, std::size_t n) { return serialize(make_standard_double_bubble(r, n)); }, py::arg("r"),
          py::arg("n") = 400);
    m.def("make_generalized_bubble",
          [](double a1, double a2, double chord, std::size_t n) {
              return serialize(make_generalized_bubble(a1, a2, chord, n));
          },
          py::arg("alpha1"), py::arg("alpha2"), py::arg("chord") = 1.0, py::arg("n") = 200);
    m.def("make_figure_eight_degenerate",
          [](std::size_t n_half) { return serialize(make_figure_eight_degenerate(n_half)); }, py::arg("n_half") = 60);

    m.def("optimal_bubble_radius", &optimal_bubble_radius);
    m.def("double_bubble_energy_constant", &double_bubble_energy_constant);
    m.def("generalized_bubble_energy", &generalized_bubble_energy, py::arg("alpha1"), py::arg("alpha2"));

    m.def("validate", [](const std::string& net) {
        const ValidationReport v = validate(deserialize(net));
        py::dict d;
        d["valid"] = v.valid;
        d["junction_gap"] = v.junction_gap;
        d["angle_defect"] = v.angle_defect;
        d["message"] = v.message;
        return d;
    });
    m.def("energy", [](const std::string& net, double alpha) { return energy_dict(penalized_energy(deserialize(net), alpha)); },
          py::arg("network"), py::arg("alpha") = 1.0);
    m.def("scaling_identity_check",
          [](const std::string& net, double alpha) { return scaling_identity_check(deserialize(net), alpha); });
    m.def("optimal_rescale", [](const std::string& net) {
        const Rescaling r = optimal_rescale(deserialize(net));
        return py::make_tuple(r.factor, serialize(r.rescaled));
    });
    m.def("discrete_gradient", [](const std::string& net) { return discrete_gradient(deserialize(net)); });

    m.def("theta_lower_bound", [](const std::string& net) {
        const ThetaLowerBound b = theta_lower_bound_check(deserialize(net));
        py::dict d;
        d["energy"] = b.energy;
        d["bound"] = b.bound;
        d["pair_energy"] = std::vector<double>(b.pair_energy.begin(), b.pair_energy.end());
        d["holds"] = b.holds;
        return d;
    });
    m.def("gauss_bonnet", [](const std::string& net) { return check_dict(gauss_bonnet_check(as_loop(deserialize(net)))); });

    m.def("junction_residuals", [](const std::string& net) {
        const ResidualReport r = junction_residuals(deserialize(net));
        py::list vec;
        for (const Vec2& v : r.junction_vector) vec.append(py::make_tuple(v.x, v.y));
        py::dict d;
        d["interior_max_abs"] = r.interior_max_abs;
        d["junction_scalar"] = r.junction_scalar;
        d["junction_vector"] = vec;
        return d;
    });

    m.def(
        "minimize",
        [](const std::string& net, const std::string& config, bool symmetric) {
            const OptimizationConfig cfg = config_from_json(config);
            const Network start = deserialize(net);
            OptimizationResult r;
            {
                py::gil_scoped_release release;
                r = symmetric ? minimize_symmetric_double_drop(start, cfg) : minimize(start, cfg);
            }
            py::dict d;
            d["network"] = serialize(r.final);
            d["energy_trace"] = r.energy_trace;
            d["grad_norm_trace"] = r.grad_norm_trace;
            d["termination"] = to_string(r.termination);
            d["iterations"] = r.iterations;
            d["junction_gap"] = r.junction_gap;
            d["angle_defect"] = r.angle_defect;
            return d;
        },
        py::arg("network"), py::arg("config") = "{}", py::arg("symmetric") = false);

    m.def("recovery_sequence", [](const std::string& net, std::size_t n) {
        const RecoveryResult r = recovery_sequence(deserialize(net), n);
        py::dict d;
        d["network"] = serialize(r.theta);
        d["inserted_length"] = r.inserted_length;
        d["exact"] = r.exact;
        return d;
    });

    m.def("render_svg", [](const std::string& net, const std::string& title) { return render_svg(deserialize(net), title); },
          py::arg("network"), py::arg("title") = "");
}
