#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "f2curves/corpus.hpp"
#include "f2curves/count.hpp"
#include "f2curves/genusbounds.hpp"
#include "f2curves/irred.hpp"
#include "f2curves/orbit.hpp"
#include "f2curves/polyrep.hpp"
#include "f2curves/record.hpp"
#include "f2curves/search.hpp"

namespace py = pybind11;
using namespace f2c;

namespace {

// dicts built through json.loads keep the catalog format in one place
py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

PolyMask as_poly(const std::string& text) { return parse_any(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Plane curves over GF(2^m): orbit sieve, point counts, singularities, genus bounds";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_RuntimeError);
  py::register_exception<RejectedCurve>(m, "RejectedCurve", PyExc_ValueError);

  m.def("normalize", [](const std::string& text) { return to_text(as_poly(text)); }, py::arg("poly"),
        "Canonical text of a polynomial given as text or as a d<deg>:0x<hex> mask.");
  m.def("to_mask", [](const std::string& text) { return to_hex(as_poly(text)); }, py::arg("poly"));

  m.def(
      "count_points",
      [](const std::string& text, std::uint32_t q) {
        const auto c = count_points(as_poly(text), field(field_degree_of(q)));
        py::list singular;
        for (const auto& p : c.singular_points) singular.append(py::make_tuple(p.x, p.y, p.z));
        py::dict d;
        d["q"] = c.q;
        d["total"] = c.total;
        d["smooth"] = c.smooth;
        d["singular"] = singular;
        return d;
      },
      py::arg("poly"), py::arg("q"));

  m.def(
      "verify",
      [](const std::string& text, std::vector<std::uint32_t> fields) {
        return to_python(to_json(verify(as_poly(text), fields)));
      },
      py::arg("poly"), py::arg("fields"), "Full analysis of one curve, as a catalog record.");

  m.def(
      "absolute_irreducibility",
      [](const std::string& text) { return to_string(certify_absolute(as_poly(text)).absolute); },
      py::arg("poly"));
  m.def(
      "is_irreducible", [](const std::string& text, int k) { return is_irreducible(as_poly(text), k); },
      py::arg("poly"), py::arg("k") = 1);

  m.def(
      "orbit",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& f : orbit_of(as_poly(text))) out.push_back(to_hex(f));
        return out;
      },
      py::arg("poly"));
  m.def(
      "sieve_stats",
      [](int degree, unsigned jobs) {
        SieveStats s;
        {
          py::gil_scoped_release release;
          s = sieve(degree, jobs, [](const PolyMask&, std::uint32_t) {});
        }
        py::dict d;
        d["orbits"] = s.orbits;
        d["emitted"] = s.emitted;
        d["skipped_orbits"] = s.skipped_orbits;
        d["masks_covered"] = s.masks_covered;
        return d;
      },
      py::arg("degree"), py::arg("jobs") = 1);

  m.def("serre_bound", &serre_bound, py::arg("q"), py::arg("g"));
  m.def("ihara_bound", &ihara_bound, py::arg("q"), py::arg("g"));
  m.def(
      "effective_bound",
      [](std::int64_t q, std::int64_t g) {
        const auto b = effective_bound(q, g, BoundTable::shipped());
        return py::make_tuple(b.value, to_string(b.source));
      },
      py::arg("q"), py::arg("g"));

  m.def(
      "search",
      [](int degree, std::vector<std::uint32_t> fields, std::int64_t threshold, int min_genus, unsigned jobs,
         std::string checkpoint) {
        SearchConfig cfg;
        cfg.degree = degree;
        cfg.fields = std::move(fields);
        cfg.threshold = threshold;
        cfg.min_genus = min_genus;
        cfg.jobs = jobs;
        cfg.checkpoint_path = checkpoint;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = run_search(cfg);
        }
        py::list out;
        for (const auto& e : r.catalog) out.append(to_python(Json::parse(e.line)));
        return out;
      },
      py::arg("degree"), py::arg("fields"), py::arg("threshold") = 15, py::arg("min_genus") = 1,
      py::arg("jobs") = 1, py::arg("checkpoint") = "");

  m.def(
      "corpus_failures",
      []() {
        std::vector<std::string> out;
        for (const auto& c : run_corpus(load_corpus()).checks)
          if (!c.pass) out.push_back(c.id + ": " + c.assertion);
        return out;
      },
      "Runs the shipped regression corpus; returns the failed checks.");
}
