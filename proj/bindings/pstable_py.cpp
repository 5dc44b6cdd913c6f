#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pstable/estimates.hpp"
#include "pstable/fields.hpp"
#include "pstable/inequalities.hpp"
#include "pstable/levelgeom.hpp"
#include "pstable/psolve.hpp"
#include "pstable/report.hpp"
#include "pstable/surfaces.hpp"
#include "pstable/symmetrize.hpp"

namespace py = pybind11;
using namespace pstable;

PYBIND11_MODULE(_pstable, m) {
  m.doc() = "radial p-Laplace branch solver and rearrangement inequality checks";

  py::class_<RadialField>(m, "RadialField")
      .def(py::init<>())
      .def_readwrite("n", &RadialField::n)
      .def_readwrite("Rmax", &RadialField::Rmax)
      .def_readwrite("values", &RadialField::values)
      .def("nodes", &RadialField::nodes)
      .def("h", &RadialField::h)
      .def("max_abs", &RadialField::max_abs)
      .def("domain_measure", &RadialField::domain_measure);

  py::class_<CartesianField>(m, "CartesianField")
      .def(py::init<>())
      .def_readonly("d", &CartesianField::d)
      .def_readonly("shape", &CartesianField::shape)
      .def_readonly("h", &CartesianField::h)
      .def_readonly("mask_radius", &CartesianField::mask_radius)
      .def_readwrite("values", &CartesianField::values)
      .def_readonly("weight", &CartesianField::weight)
      .def("nodes", &CartesianField::nodes)
      .def("max_abs", &CartesianField::max_abs)
      .def("domain_measure", &CartesianField::domain_measure);

  m.def("make_ball_field", &make_ball_field, py::arg("d"), py::arg("nodes_per_axis"),
        py::arg("radius"), py::arg("sampler"));
  m.def("make_box_field", &make_box_field, py::arg("d"), py::arg("shape"), py::arg("extent"),
        py::arg("sampler"));
  m.def("lp_norm", [](const RadialField& f, double r) { return lp_norm(f, r); });
  m.def("lp_norm", [](const CartesianField& f, double r) { return lp_norm(f, r); });
  m.def("save_pfield",
        py::overload_cast<const std::string&, const RadialField&>(&save_pfield), py::arg("path"),
        py::arg("field"));
  m.def("save_pfield",
        py::overload_cast<const std::string&, const CartesianField&>(&save_pfield),
        py::arg("path"), py::arg("field"));

  py::class_<Report>(m, "Report")
      .def_readonly("name", &Report::name)
      .def_readonly("lhs", &Report::lhs)
      .def_readonly("rhs", &Report::rhs)
      .def_readonly("constant", &Report::constant)
      .def_readonly("margin", &Report::margin)
      .def_readonly("resolution", &Report::resolution)
      .def_readonly("pass_", &Report::pass)
      .def_readonly("note", &Report::note)
      .def("to_json", [](const Report& r) { return to_json(r); });

  py::class_<RegularityExponents>(m, "RegularityExponents")
      .def_readonly("n", &RegularityExponents::n)
      .def_readonly("p", &RegularityExponents::p)
      .def_readonly("q2star", &RegularityExponents::q2star)
      .def_readonly("r1", &RegularityExponents::r1)
      .def_readonly("rbar0", &RegularityExponents::rbar0)
      .def_readonly("rbar1", &RegularityExponents::rbar1)
      .def_readonly("rtilde0", &RegularityExponents::rtilde0)
      .def_readonly("radial_bounded_threshold", &RegularityExponents::radial_bounded_threshold)
      .def_readonly("radially_bounded", &RegularityExponents::radially_bounded);
  m.def("exponent_table", &exponent_table, py::arg("n"), py::arg("p"));

  py::class_<ExponentTable>(m, "ExponentTable")
      .def_readonly("p_q_star", &ExponentTable::p_q_star)
      .def_readonly("p_prime", &ExponentTable::p_prime)
      .def_property_readonly("regime", [](const ExponentTable& t) {
        switch (t.regime) {
          case Regime::morrey: return "morrey";
          case Regime::critical: return "critical";
          default: return "sobolev";
        }
      });
  m.def("embedding_exponents", &embedding_exponents, py::arg("n"), py::arg("p"), py::arg("q"));

  py::class_<RearrangementResult>(m, "RearrangementResult")
      .def_readonly("vstar", &RearrangementResult::vstar)
      .def_readonly("source_norms", &RearrangementResult::source_norms)
      .def_readonly("star_norms", &RearrangementResult::star_norms);
  m.def("schwarz", py::overload_cast<const CartesianField&, int, int>(&schwarz), py::arg("f"),
        py::arg("n"), py::arg("levels") = 256);
  m.def("schwarz", py::overload_cast<const RadialField&, int, int>(&schwarz), py::arg("f"),
        py::arg("n"), py::arg("levels") = 256);
  m.def("symmetrized_comparison",
        py::overload_cast<const RadialField&, double, double, double, double, int>(
            &symmetrized_comparison),
        py::arg("f"), py::arg("p"), py::arg("q"), py::arg("A") = -1.0, py::arg("tol") = 1e-2,
        py::arg("levels") = 256);
  m.def("symmetrized_comparison",
        py::overload_cast<const CartesianField&, double, double, double, double, int>(
            &symmetrized_comparison),
        py::arg("f"), py::arg("p"), py::arg("q"), py::arg("A") = -1.0, py::arg("tol") = 1e-2,
        py::arg("levels") = 256);
  m.def("isoperimetric_check",
        py::overload_cast<const RadialField&, double>(&isoperimetric_check), py::arg("f"),
        py::arg("tol") = 1e-2);
  m.def("isoperimetric_check",
        py::overload_cast<const CartesianField&, double>(&isoperimetric_check), py::arg("f"),
        py::arg("tol") = 1e-2);

  py::class_<Functional>(m, "Functional")
      .def_readonly("value", &Functional::value)
      .def_readonly("tangential_part", &Functional::tangential_part)
      .def_readonly("curvature_part", &Functional::curvature_part)
      .def_readonly("all_invalid", &Functional::all_invalid);
  m.def("geometric_functional",
        py::overload_cast<const RadialField&, double, double>(&geometric_functional), py::arg("f"),
        py::arg("p"), py::arg("q"));
  m.def("geometric_functional",
        py::overload_cast<const CartesianField&, double, double, double>(&geometric_functional),
        py::arg("f"), py::arg("p"), py::arg("q"), py::arg("eps_grad") = -1.0);

  py::class_<ZonalSurface>(m, "ZonalSurface");
  m.def("make_sphere", &make_sphere, py::arg("n"), py::arg("R"));
  py::class_<SurfaceCheck>(m, "SurfaceCheck")
      .def_readonly("lhs", &SurfaceCheck::lhs)
      .def_readonly("rhs", &SurfaceCheck::rhs)
      .def_readonly("minimal_A", &SurfaceCheck::minimal_A)
      .def_readonly("qstar", &SurfaceCheck::qstar);
  m.def("michael_simon_zonal", &michael_simon_zonal, py::arg("M"), py::arg("phi"), py::arg("dphi"),
        py::arg("q"), py::arg("quad_cells") = 4096);

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def("f", &Nonlinearity::f)
      .def("fp", &Nonlinearity::fp)
      .def("G", &Nonlinearity::G);
  m.def("make_exp", &make_exp);
  m.def("make_power", &make_power, py::arg("m"));
  m.def("make_const", &make_const, py::arg("c"));

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def(py::init<>())
      .def_readwrite("n", &ProblemSpec::n)
      .def_readwrite("p", &ProblemSpec::p)
      .def_readwrite("f", &ProblemSpec::f)
      .def_readwrite("eps_rel", &ProblemSpec::eps_rel)
      .def_readwrite("M", &ProblemSpec::M)
      .def_readwrite("lambda_max", &ProblemSpec::lambda_max);

  py::class_<StepPolicy>(m, "StepPolicy")
      .def(py::init<>())
      .def_readwrite("lambda0", &StepPolicy::lambda0)
      .def_readwrite("first_step_frac", &StepPolicy::first_step_frac)
      .def_readwrite("grow", &StepPolicy::grow)
      .def_readwrite("shrink", &StepPolicy::shrink)
      .def_readwrite("stop_rel", &StepPolicy::stop_rel)
      .def_readwrite("max_points", &StepPolicy::max_points);

  py::class_<BranchPoint>(m, "BranchPoint")
      .def_readonly("n", &BranchPoint::n)
      .def_readonly("p", &BranchPoint::p)
      .def_readonly("lam", &BranchPoint::lambda)
      .def_readonly("u", &BranchPoint::u)
      .def_readonly("newton_iters", &BranchPoint::newton_iters)
      .def_readonly("residual_rel", &BranchPoint::residual_rel)
      .def_readonly("mu1", &BranchPoint::mu1)
      .def_readonly("sup_u", &BranchPoint::sup_u)
      .def_readonly("crit_norm", &BranchPoint::crit_norm)
      .def_readonly("w1p_seminorm", &BranchPoint::w1p_seminorm)
      .def_readonly("l1_f", &BranchPoint::l1_f)
      .def_readonly("pohozaev_residual", &BranchPoint::pohozaev_residual);

  py::class_<Branch>(m, "Branch")
      .def_readonly("points", &Branch::points)
      .def_readonly("lambda_last", &Branch::lambda_last)
      .def_readonly("lambda_fail", &Branch::lambda_fail);

  py::register_exception<NoConvergence>(m, "NoConvergence");
  m.def("solve_at", &solve_at, py::arg("spec"), py::arg("lam"), py::arg("init"));
  m.def("continue_branch", &continue_branch, py::arg("spec"), py::arg("policy") = StepPolicy{});

  py::class_<PohozaevCheck>(m, "PohozaevCheck")
      .def_readonly("residual", &PohozaevCheck::residual)
      .def_readonly("volume_lhs", &PohozaevCheck::volume_lhs)
      .def_readonly("boundary_rhs", &PohozaevCheck::boundary_rhs)
      .def_readonly("lemma_pass", &PohozaevCheck::lemma_pass);
  m.def("pohozaev_check", &pohozaev_check, py::arg("pt"));
}
