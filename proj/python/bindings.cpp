#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fringelab/cli.hpp"
#include "fringelab/ct_analytic.hpp"
#include "fringelab/gw_analytic.hpp"
#include "fringelab/oracle.hpp"
#include "fringelab/samplers.hpp"

namespace py = pybind11;
using namespace fringelab;

namespace {

Seed make_seed(std::uint64_t seed, std::uint64_t stream) { return Seed{seed, stream}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Protected nodes and fringe subtrees in random trees";

  py::register_exception<InfeasibleSize>(m, "InfeasibleSize", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NoConvergence>(m, "NoConvergence", PyExc_ArithmeticError);
  py::register_exception<SizeTooLarge>(m, "SizeTooLarge", PyExc_ValueError);

  py::class_<WeightFamily>(m, "WeightFamily")
      .def_static("parse", &WeightFamily::parse, py::arg("spec"))
      .def_static("finite", &WeightFamily::finite, py::arg("weights"))
      .def("spec", &WeightFamily::spec)
      .def("weight", &WeightFamily::weight)
      .def("phi", &WeightFamily::phi)
      .def("phi_prime", &WeightFamily::phi_prime)
      .def("__repr__", [](const WeightFamily& f) { return "WeightFamily('" + f.spec() + "')"; });

  py::class_<CanonicalLaw>(m, "CanonicalLaw")
      .def(py::init<WeightFamily>())
      .def_property_readonly("tau", &CanonicalLaw::tau)
      .def_property_readonly("phi_at_tau", &CanonicalLaw::phi_at_tau)
      .def_property_readonly("pi0", &CanonicalLaw::pi0)
      .def_property_readonly("span", &CanonicalLaw::span)
      .def_property_readonly("mean", &CanonicalLaw::mean)
      .def("pmf", &CanonicalLaw::pmf)
      .def("phi_tilde", &CanonicalLaw::phi_tilde);

  m.def("solve_tau", [](const WeightFamily& f, double tol, bool numeric) {
    return solve_tau(f, tol, numeric ? TauPath::Numeric : TauPath::Auto);
  }, py::arg("family"), py::arg("tol") = 1e-12, py::arg("numeric") = false);
  m.def("canonical_law", [](const std::string& spec) { return CanonicalLaw(WeightFamily::parse(spec)); },
        py::arg("family"));
  m.def("offspring_pmf", &offspring_pmf, py::arg("law"), py::arg("k"));
  m.def("phi_tilde", &phi_tilde, py::arg("law"), py::arg("t"));

  m.def("protected_limit", &protected_limit, py::arg("law"));
  m.def("ell_protected_limit", &ell_protected_limit, py::arg("law"), py::arg("ell"));
  m.def("protection_profile", [](const CanonicalLaw& law, std::size_t max_level) {
    auto p = protection_profile(law, max_level);
    return py::dict(py::arg("family") = p.family, py::arg("values") = p.values, py::arg("levels") = p.levels);
  }, py::arg("law"), py::arg("max_level"));

  py::class_<Tree>(m, "Tree")
      .def(py::init<std::vector<Tree::Degree>>(), py::arg("degrees"))
      .def_static("decode", &decode_tree)
      .def("__len__", &Tree::size)
      .def_property_readonly("degrees", [](const Tree& t) {
        return std::vector<Tree::Degree>(t.degrees().begin(), t.degrees().end());
      })
      .def("encoding", [](const Tree& t) { return canonical_encoding(t); })
      .def("levels", [](const Tree& t) { return protection_levels(t); })
      .def("fringe_subtree", &fringe_subtree)
      .def("__eq__", [](const Tree& a, const Tree& b) { return a == b; })
      .def("__repr__", [](const Tree& t) { return "Tree('" + canonical_encoding(t) + "')"; });

  m.def("gw_tree_probability", &gw_tree_probability, py::arg("law"), py::arg("tree"));

  py::class_<ProtectionStats>(m, "ProtectionStats")
      .def_readonly("n", &ProtectionStats::n)
      .def_readonly("counts", &ProtectionStats::counts)
      .def("proportions", &ProtectionStats::proportions);
  m.def("protection_stats", [](const Tree& t, std::size_t max_level) { return protection_stats(t, max_level); },
        py::arg("tree"), py::arg("max_level") = kDefaultMaxLevel);
  m.def("fringe_distribution", [](const Tree& t, std::size_t cap) {
    auto d = fringe_distribution(t, cap);
    return py::make_tuple(d.counts, d.overflow);
  }, py::arg("tree"), py::arg("size_cap"));

  m.def("bst_unprotected_curve", [](std::size_t ell, double t_max, double step) {
    return bst_unprotected_curve(ell, GridSpec{t_max, step}).values();
  }, py::arg("ell"), py::arg("t_max") = 40.0, py::arg("step") = 1.0 / 256.0);
  m.def("rrt_protected_curve", [](std::size_t ell, double t_max, double step) {
    return rrt_protected_curve(ell, GridSpec{t_max, step}).values();
  }, py::arg("ell"), py::arg("t_max") = 40.0, py::arg("step") = 1.0 / 256.0);
  m.def("bst_ell_limit", &bst_ell_limit, py::arg("ell"), py::arg("tol") = 1e-10);
  m.def("rrt_ell_limit", &rrt_ell_limit, py::arg("ell"), py::arg("tol") = 1e-10);

  m.def("sample_conditioned_gw", [](const CanonicalLaw& law, std::uint64_t n, std::uint64_t seed, std::uint64_t stream) {
    return sample_conditioned_gw(law, n, make_seed(seed, stream));
  }, py::arg("law"), py::arg("n"), py::arg("seed") = kDefaultSeed, py::arg("stream") = 0);
  m.def("sample_bst", [](std::uint64_t n, std::uint64_t seed, std::uint64_t stream) {
    return binary_to_tree(sample_bst(n, make_seed(seed, stream)));
  }, py::arg("n"), py::arg("seed") = kDefaultSeed, py::arg("stream") = 0,
     "Random BST as a Tree (children left then right).");
  m.def("sample_rrt", [](std::uint64_t n, std::uint64_t seed, std::uint64_t stream) {
    return sample_rrt(n, make_seed(seed, stream));
  }, py::arg("n"), py::arg("seed") = kDefaultSeed, py::arg("stream") = 0);
  m.def("sample_gw", [](const CanonicalLaw& law, std::uint64_t node_cap, std::uint64_t seed, std::uint64_t stream) {
    return sample_gw(law, make_seed(seed, stream), node_cap);
  }, py::arg("law"), py::arg("node_cap"), py::arg("seed") = kDefaultSeed, py::arg("stream") = 0);

  py::class_<oracle::OracleValue>(m, "OracleValue")
      .def_readonly("value", &oracle::OracleValue::value)
      .def_readonly("exact", &oracle::OracleValue::exact)
      .def_readonly("fraction", &oracle::OracleValue::fraction)
      .def("__float__", [](const oracle::OracleValue& v) { return v.value; });
  m.def("exact_expected_proportion", [](const std::string& family, std::size_t n, std::size_t ell) {
    return oracle::exact_expected_proportion(WeightFamily::parse(family), n, ell);
  }, py::arg("family"), py::arg("n"), py::arg("ell"));
  m.def("exact_bst_expectation", &oracle::exact_bst_expectation, py::arg("n"), py::arg("ell"));
  m.def("exact_rrt_expectation", &oracle::exact_rrt_expectation, py::arg("n"), py::arg("ell"));
  m.def("exact_fringe_law", [](const std::string& family, std::size_t n) {
    return oracle::exact_fringe_law(WeightFamily::parse(family), n).probability;
  }, py::arg("family"), py::arg("n"));

  m.def("run_cli", [](std::vector<std::string> args) {
    std::vector<const char*> argv{"fringelab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
