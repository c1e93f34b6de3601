#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cwkit/error.hpp"
#include "cwkit/groebner.hpp"
#include "cwkit/io.hpp"
#include "cwkit/witt.hpp"

namespace py = pybind11;
using namespace cwkit;

namespace {

DiagonalForm form(const std::string& field, const std::vector<std::string>& entries) {
  return DiagonalForm::parse(parse_field(field), entries);
}

}  // namespace

PYBIND11_MODULE(_cwkit, m) {
  m.doc() = "Chow-Witt cycles from local orientations (native core)";

  static py::exception<Error> base(m, "CwkitError");
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
  static py::exception<Rejected> rejected(m, "Rejected", base.ptr());
  static py::exception<Unsupported> unsupported(m, "Unsupported", base.ptr());
  static py::exception<Falsified> falsified(m, "Falsified", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      py::set_error(invalid, e.what());
    } catch (const Rejected& e) {
      py::set_error(rejected, e.what());
    } catch (const Unsupported& e) {
      py::set_error(unsupported, e.what());
    } catch (const Falsified& e) {
      py::set_error(falsified, e.what());
    }
  });

  m.def(
      "run",
      [](const std::string& command, const std::string& document) {
        Report r;
        {
          py::gil_scoped_release release;
          r = run(command, document);
        }
        return py::make_tuple(to_string(r.status), exit_code(r.status), r.json.dump());
      },
      py::arg("command"), py::arg("document"),
      "Run a command on a JSON problem document; returns (status, exit_code, report_json).");

  m.def("commands", &commands);

  m.def(
      "groebner_basis",
      [](const std::string& field, const std::vector<std::string>& variables, const std::vector<std::string>& gens,
         const std::string& order) {
        const RingPtr R =
            PolyRing::make(parse_field(field), variables, order == "lex" ? MonomialOrder::lex : MonomialOrder::grevlex);
        return Ideal::parse(R, gens).groebner_strings();
      },
      py::arg("field"), py::arg("variables"), py::arg("generators"), py::arg("order") = "grevlex");

  m.def(
      "decide_isometry",
      [](const std::string& field, const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return decide_isometry(form(field, a), form(field, b));
      },
      py::arg("field"), py::arg("a"), py::arg("b"));

  m.def(
      "witt_class",
      [](const std::string& field, const std::vector<std::string>& entries) {
        return witt_reduce(form(field, entries)).entry_strings();
      },
      py::arg("field"), py::arg("entries"));

  m.def(
      "hilbert_symbol",
      [](long a, long b, long p) { return hilbert_symbol(Rational(a), Rational(b), Integer(p)); }, py::arg("a"),
      py::arg("b"), py::arg("p"), "Hilbert symbol (a, b)_p over QQ; p = 0 is the real place.");

  m.def("set_trial_division_bound", &set_trial_division_bound, py::arg("bound"));
}
