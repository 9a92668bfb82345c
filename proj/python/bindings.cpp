#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "s2xs2/catalog.hpp"
#include "s2xs2/parallel.hpp"
#include "s2xs2/report.hpp"
#include "s2xs2/sinh_gordon.hpp"
#include "s2xs2/spectral.hpp"
#include "s2xs2/verify.hpp"
#include "s2xs2/version.hpp"

#include <json.hpp>

namespace py = pybind11;
using namespace s2xs2;

namespace {

SGField field_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> v,
                         double dt, double ds, bool periodic) {
    SGField f;
    if (v.ndim() == 1) {
        f.nt = static_cast<int>(v.shape(0));
        f.ns = 1;
    } else if (v.ndim() == 2) {
        // rows = s, columns = t
        f.ns = static_cast<int>(v.shape(0));
        f.nt = static_cast<int>(v.shape(1));
    } else {
        throw DomainError("sinh-Gordon fields are 1- or 2-dimensional");
    }
    f.dt = dt;
    f.ds = ds;
    f.periodic = periodic;
    f.v.assign(v.data(), v.data() + v.size());
    return f;
}

std::string spectrum_json(const std::string& id, int nt, int ns) {
    const SurfaceSpec s = surface_by_id(id);
    const SpectralResult res = index_report(s, nt, ns);
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["surface"] = s.name;
    j["grid"] = {{"nt", nt}, {"ns", ns}};
    j["eigenvalues"] = res.eigenvalues;
    j["parities"] = std::string(res.parity.begin(), res.parity.end());
    j["lambda1"] = res.lambda1;
    j["ind0"] = res.ind0;
    j["ind1"] = res.ind1;
    j["betti1"] = res.betti1;
    j["index"] = res.index;
    j["margins"] = res.margin;
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_s2xs2, m) {
    m.doc() = "numerical verification of Lagrangian surface geometry in S^2 x S^2";
    m.attr("__version__") = kVersion;

    // Elliptic bedrock.
    m.def("complete_K", [](double p) { return complete_K(EllipticModulus(p)); },
          py::arg("p"), "complete elliptic integral of the first kind (modulus convention)");
    m.def("complete_E", [](double p) { return complete_E(EllipticModulus(p)); },
          py::arg("p"), "complete elliptic integral of the second kind (modulus convention)");
    m.def("jacobi", [](double x, double p) {
        const JacobiTriple j = jacobi(x, EllipticModulus(p));
        return py::make_tuple(j.sn, j.cn, j.dn);
    }, py::arg("x"), py::arg("p"), "Jacobi amplitude functions (sn, cn, dn)");
    m.def("jacobi_derivatives", [](double x, double p) {
        const auto d = jacobi_derivatives(x, EllipticModulus(p));
        return py::make_tuple(d[0], d[1], d[2]);
    }, py::arg("x"), py::arg("p"));

    // Catalog and pointwise analyzers.
    m.def("catalog", [] {
        py::list out;
        for (const auto& e : catalog()) {
            py::dict d;
            d["id"] = e.id;
            d["kind"] = e.kind;
            d["summary"] = e.summary;
            out.append(d);
        }
        return out;
    });
    m.def("surface_point", [](const std::string& id, double t, double s) {
        const SurfaceSpec spec = surface_by_id(id);
        const ProductPoint p = spec.charts.at(0).eval(t, s);
        return py::make_tuple(py::make_tuple(p.x(0), p.x(1), p.x(2)),
                              py::make_tuple(p.y(0), p.y(1), p.y(2)));
    }, py::arg("surface"), py::arg("t"), py::arg("s"));
    m.def("lagrangian_residual", [](const std::string& id, double t, double s) {
        const SurfaceSpec spec = surface_by_id(id);
        return lagrangian_residual(jet(spec.charts.at(0), t, s));
    }, py::arg("surface"), py::arg("t"), py::arg("s"));
    m.def("associated_jacobian", [](const std::string& id, double t, double s) {
        const SurfaceSpec spec = surface_by_id(id);
        return associated_jacobian(jet(spec.charts.at(0), t, s));
    }, py::arg("surface"), py::arg("t"), py::arg("s"));
    m.def("area", [](const std::string& id, int n) { return area(surface_by_id(id), n); },
          py::arg("surface"), py::arg("n") = 64);
    m.def("degree", [](const std::string& id, int n) { return degree(surface_by_id(id), n); },
          py::arg("surface"), py::arg("n") = 64);

    m.def("analyze_json",
          [](const std::string& id, int nt, int ns, double ts) {
              return analyze_by_id(id, nt, ns, ts).to_json();
          },
          py::arg("surface"), py::arg("nt") = 64, py::arg("ns") = 64, py::arg("tol_scale") = 1.0,
          "full analyzer report as a JSON string");

    m.def("export_field", [](const std::string& id, const std::string& field, int nt, int ns) {
        const SurfaceSpec spec = surface_by_id(id);
        const std::vector<double> values = export_field_values(spec, field, nt, ns);
        const int cols = static_cast<int>(values.size()) / (nt * ns);
        py::array_t<double> out({ns, nt * cols});
        std::copy(values.begin(), values.end(), out.mutable_data());
        return out;
    }, py::arg("surface"), py::arg("field"), py::arg("nt") = 64, py::arg("ns") = 64,
       "field sampled on the chart grid, one row per s value");

    // sinh-Gordon.
    m.def("sg_residual", [](py::array_t<double, py::array::c_style | py::array::forcecast> v,
                            double dt, double ds, bool periodic) {
        return sg_residual(field_from_array(v, dt, ds, periodic));
    }, py::arg("v"), py::arg("dt"), py::arg("ds") = 0.0, py::arg("periodic") = false);
    m.def("integrate_reduced", [](double v0, double dv0, double T, double h) {
        const ReducedSolution sol = integrate_reduced(v0, dv0, T, h);
        py::array_t<double> v(sol.v.size()), w(sol.w.size());
        std::copy(sol.v.begin(), sol.v.end(), v.mutable_data());
        std::copy(sol.w.begin(), sol.w.end(), w.mutable_data());
        return py::make_tuple(v, w, sol.h);
    }, py::arg("v0"), py::arg("dv0"), py::arg("T"), py::arg("h") = 1e-3);
    m.def("reconstruct", [](py::array_t<double, py::array::c_style | py::array::forcecast> v,
                            double dt, double ds, bool periodic) {
        const Reconstruction rec = reconstruct(field_from_array(v, dt, ds, periodic));
        py::array_t<double> u(rec.u.size()), C(rec.C.size());
        std::copy(rec.u.begin(), rec.u.end(), u.mutable_data());
        std::copy(rec.C.begin(), rec.C.end(), C.mutable_data());
        return py::make_tuple(u, C, rec.compat_residual);
    }, py::arg("v"), py::arg("dt"), py::arg("ds") = 0.0, py::arg("periodic") = false);
    m.def("lawson_solution", [](int n) {
        const SGField f = lawson_solution_line(n);
        py::array_t<double> v(f.v.size());
        std::copy(f.v.begin(), f.v.end(), v.mutable_data());
        return py::make_tuple(v, f.dt);
    }, py::arg("n") = 512);

    // Spectral.
    m.def("spectrum_json", &spectrum_json, py::arg("surface"), py::arg("nt") = 64,
          py::arg("ns") = 64, "index report as a JSON string");

    // Verification suites.
    m.def("verify_json", [](const std::vector<std::string>& suites, double tol_scale, int nt,
                            int ns, const std::string& surface) {
        VerifyOptions opt;
        opt.suites = suites;
        opt.tol_scale = tol_scale;
        opt.nt = nt;
        opt.ns = ns;
        opt.surface = surface;
        const auto results = run_verify(opt);
        return verify_report_json(results, tol_scale);
    }, py::arg("suites") = std::vector<std::string>{}, py::arg("tol_scale") = 1.0,
       py::arg("nt") = 64, py::arg("ns") = 64, py::arg("surface") = std::string());

    m.def("set_workers", [](int n) { worker_count() = n; }, py::arg("n"));

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
}
