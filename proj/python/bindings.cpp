#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "achern/errors.hpp"
#include "achern/globalizer.hpp"
#include "achern/run.hpp"

namespace py = pybind11;
using namespace achern;

namespace {

BaseRingPtr ring_of(long N0, long N) { return BaseRingDesc::make(N0, N); }

std::string scalar_out(const CycloScalar& a) { return a.is_rational() ? to_string(a.rational_value()) : a.to_string(); }

CycloScalar scalar_in(const std::vector<std::string>& coeffs, long N0, long N) {
  std::vector<Rational> c;
  for (const auto& s : coeffs) c.push_back(parse_rational(s));
  return CycloScalar(ring_of(N0, N), std::move(c));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic Chern connection computations";

  py::register_exception<Error>(m, "AchernError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "run_config",
      [](const std::string& config_json) {
        py::gil_scoped_release release;
        auto out = run_text(config_json);
        return std::make_pair(static_cast<int>(out.code), out.report.dump());
      },
      py::arg("config_json"), "Run a JSON config; returns (exit_code, report_json).");

  m.def(
      "render",
      [](const std::string& report_json, const std::string& format) {
        return render(Json::parse(report_json), parse_format(format));
      },
      py::arg("report_json"), py::arg("format") = "json");

  m.def(
      "frobenius",
      [](const std::vector<std::string>& a, std::uint64_t p, long N0, long N) {
        auto x = scalar_in(a, N0, N);
        x.ring()->require_admissible(p);
        return scalar_out(frobenius_scalar(x, p));
      },
      py::arg("a"), py::arg("p"), py::arg("N0") = 2, py::arg("N") = 1,
      "phi_p on Z[1/N0, zeta_N]; a is a list of power-basis coefficients as rational strings.");

  m.def(
      "fermat_quotient",
      [](const std::vector<std::string>& a, std::uint64_t p, long N0, long N) {
        auto x = scalar_in(a, N0, N);
        x.ring()->require_admissible(p);
        return scalar_out(p_derivation_scalar(x, p));
      },
      py::arg("a"), py::arg("p"), py::arg("N0") = 2, py::arg("N") = 1);

  m.def(
      "rational_reconstruct",
      [](const std::string& residue, const std::string& modulus) -> std::optional<std::string> {
        auto r = achern::rational_reconstruct(BigInt(residue), BigInt(modulus));
        if (!r) return std::nullopt;
        return to_string(*r);
      },
      py::arg("residue"), py::arg("modulus"));

  m.def("legendre", [](const std::string& q, std::uint64_t p) { return legendre(BigInt(q), p); }, py::arg("q"),
        py::arg("p"));
}
