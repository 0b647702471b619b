#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "cobcalc/chern.hpp"
#include "cobcalc/errors.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/rr.hpp"
#include "cobcalc/selftest.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/zeta.hpp"

namespace py = pybind11;
using namespace cobcalc;

namespace {

FormalGroupLaw law_from_text(const std::string& text, int precision) {
  auto F = parse_series(text, CoeffRing::integers(), make_space({"x", "y"}), precision);
  return fgl_from_series(F, precision);
}

py::object fraction(const mpq_class& q) {
  auto Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

std::vector<std::string> texts(const std::vector<Series>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(to_text(s));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact formal group law and characteristic class computations";
  py::register_exception<Error>(m, "CobcalcError");

  py::class_<Series>(m, "Series")
      .def_property_readonly("precision", &Series::precision)
      .def_property_readonly("variables", [](const Series& s) { return s.space()->names; })
      .def("to_json", [](const Series& s) { return to_json(s).dump(); })
      .def_static("from_json", [](const std::string& j) { return series_from_json(nlohmann::json::parse(j)); })
      .def("is_zero", &Series::is_zero)
      .def("__add__", [](const Series& a, const Series& b) { return a + b; })
      .def("__sub__", [](const Series& a, const Series& b) { return a - b; })
      .def("__mul__", [](const Series& a, const Series& b) { return a * b; })
      .def("__eq__", [](const Series& a, const Series& b) { return compare(a, b).equal; })
      .def("__str__", [](const Series& s) { return to_text(s); })
      .def("__repr__", [](const Series& s) { return "Series(" + to_text(s) + ")"; });

  py::class_<FormalGroupLaw>(m, "FormalGroupLaw")
      .def_static("additive", [](int p) { return FormalGroupLaw::additive(CoeffRing::integers(), p); })
      .def_static("multiplicative", [](int p) { return FormalGroupLaw::multiplicative(CoeffRing::integers(), p); })
      .def_static("from_text", &law_from_text, py::arg("text"), py::arg("precision"),
                  "Validates a law given as a series in x, y over Z")
      .def_property_readonly("name", &FormalGroupLaw::name)
      .def_property_readonly("precision", &FormalGroupLaw::precision)
      .def_property_readonly("series", &FormalGroupLaw::series)
      .def("coefficient", [](const FormalGroupLaw& f, int i, int j) { return f.ring()->format(f.coefficient(i, j)); })
      .def("inverse", &FormalGroupLaw::inverse, py::arg("precision") = 0)
      .def("n_series", &FormalGroupLaw::n_series, py::arg("n"), py::arg("precision") = 0);

  py::class_<LazardModel>(m, "LazardModel")
      .def(py::init<int>())
      .def_property_readonly("degree", &LazardModel::degree)
      .def_property_readonly("law", &LazardModel::law)
      .def_property_readonly("reduced_law", &LazardModel::reduced_law)
      .def_property_readonly("log", &LazardModel::log);
  m.def("universal_fgl", &universal_fgl, py::arg("degree"));

  m.def(
      "decompose",
      [](const FormalGroupLaw& law, const std::vector<int>& n, int precision) {
        auto d = decompose(law, n, precision);
        py::dict out;
        for (std::uint32_t mask = 1; mask < d.components.size(); ++mask) out[py::str(subset_label(mask))] = d.component(mask);
        return out;
      },
      py::arg("law"), py::arg("multiplicities"), py::arg("precision"));

  m.def(
      "pb_coefficients",
      [](const FormalGroupLaw& law, const std::vector<int>& caps, int count) {
        return texts(pb_fundamental_coefficients(ChernContext(law, caps), count));
      },
      py::arg("law"), py::arg("caps"), py::arg("count"));
  m.def(
      "chern_classes",
      [](const FormalGroupLaw& law, const std::vector<int>& caps) {
        ChernContext ctx(law, caps);
        return texts(chern_classes(ctx, ctx.roots()));
      },
      py::arg("law"), py::arg("caps"));
  m.def("cf_pushforwards", [](const std::vector<int>& caps) {
    auto th = SpecializedTheory::multiplicative();
    return texts(pushforward_hyperplane_powers(th, hyperplane_relation(th.context(caps))));
  });
  m.def("todd_series", &todd_series, py::arg("precision"));
  m.def("hrr_projective_space", [](int n, int d) { return fraction(hrr_projective_space(n, d)); }, py::arg("n"),
        py::arg("d"));

  m.def(
      "selftest",
      [](const std::string& profile, std::uint64_t seed, int threads) {
        py::gil_scoped_release release;
        return run_selftest(parse_profile(profile), seed, {}, threads).to_json().dump();
      },
      py::arg("profile") = "quick", py::arg("seed") = kDefaultSeed, py::arg("threads") = 1,
      "Runs the invariant suites; returns the JSON report");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one cobcalc command line; returns (exit code, stdout, stderr)");
}
