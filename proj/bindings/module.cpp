#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "essint/errors.hpp"
#include "essint/extremal.hpp"
#include "essint/geom.hpp"
#include "essint/mspace.hpp"
#include "essint/optimality.hpp"
#include "essint/params.hpp"
#include "essint/setcalc.hpp"
#include "essint/vcalc.hpp"

namespace py = pybind11;
using namespace essint;

PYBIND11_MODULE(_core, m) {
    m.doc() = "polyhedral variational analysis over atomic measure spaces";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "EssintError");

    // ---- geometry ---------------------------------------------------------
    py::class_<Polyhedron>(m, "Polyhedron")
        .def(py::init<Mat, Vec>(), py::arg("A"), py::arg("b"))
        .def_property_readonly("A", &Polyhedron::A)
        .def_property_readonly("b", &Polyhedron::b)
        .def("dim", &Polyhedron::dim)
        .def("rows", &Polyhedron::rows)
        .def("is_empty", &Polyhedron::is_empty)
        .def("contains", &Polyhedron::contains, py::arg("x"), py::arg("tol") = 1e-8)
        .def("active_rows", &Polyhedron::active_rows, py::arg("x"),
             py::arg("active_tol") = 1e-6)
        .def("shifted", &Polyhedron::shifted, py::arg("a"));

    py::class_<SetValue>(m, "SetValue")
        .def(py::init<std::vector<Polyhedron>>(), py::arg("pieces"))
        .def_property_readonly("pieces", &SetValue::pieces)
        .def("dim", &SetValue::dim)
        .def("contains", &SetValue::contains, py::arg("x"), py::arg("tol") = 1e-8)
        .def("is_convex", &SetValue::is_convex)
        .def("shifted", &SetValue::shifted, py::arg("a"));

    py::class_<FinCone>(m, "FinCone")
        .def(py::init<Mat>(), py::arg("generators"))
        .def_static("trivial", &FinCone::trivial, py::arg("dim"))
        .def_property_readonly("generators", &FinCone::generators)
        .def("dim", &FinCone::dim)
        .def("count", &FinCone::count)
        .def("is_trivial", &FinCone::is_trivial, py::arg("tol") = 1e-12)
        .def("contains", &FinCone::contains, py::arg("v"), py::arg("tol") = 1e-8)
        .def("member_multipliers", &FinCone::member_multipliers, py::arg("v"),
             py::arg("tol") = 1e-8);

    py::class_<HCone>(m, "HCone")
        .def(py::init<Mat>(), py::arg("A"))
        .def_static("full", &HCone::full, py::arg("dim"))
        .def_property_readonly("A", &HCone::A)
        .def("dim", &HCone::dim)
        .def("contains", &HCone::contains, py::arg("v"), py::arg("tol") = 1e-8);

    py::class_<ConeUnion>(m, "ConeUnion")
        .def(py::init<std::vector<FinCone>>(), py::arg("parts"))
        .def_property_readonly("parts", &ConeUnion::parts)
        .def("dim", &ConeUnion::dim)
        .def("contains", &ConeUnion::contains, py::arg("v"), py::arg("tol") = 1e-8)
        .def("is_convex", &ConeUnion::is_convex)
        .def("pooled_generators", &ConeUnion::pooled_generators);

    py::class_<ProjectionResult>(m, "ProjectionResult")
        .def_readonly("point", &ProjectionResult::point)
        .def_readonly("multipliers", &ProjectionResult::multipliers)
        .def_readonly("kkt_residual", &ProjectionResult::kkt_residual);

    m.def("project_detailed", &project_detailed, py::arg("P"), py::arg("z"));
    m.def("project", py::overload_cast<const Polyhedron&, const Vec&>(&project), py::arg("P"),
          py::arg("z"));
    m.def("project_set", py::overload_cast<const SetValue&, const Vec&>(&project),
          py::arg("S"), py::arg("z"));
    m.def("distance", py::overload_cast<const Polyhedron&, const Vec&>(&distance),
          py::arg("P"), py::arg("z"));
    m.def("distance_set", py::overload_cast<const SetValue&, const Vec&>(&distance),
          py::arg("S"), py::arg("z"));

    m.def("rays", &rays, py::arg("H"));
    m.def("halfspaces", &halfspaces, py::arg("C"));
    m.def("polar", &polar, py::arg("C"));
    m.def("polar_inv", &polar_inv, py::arg("H"));

    m.def("tangent_cone", &tangent_cone, py::arg("S"), py::arg("x"),
          py::arg("active_tol") = 1e-6, py::arg("tol") = 1e-8);
    m.def("regular_normal_cone", &regular_normal_cone, py::arg("S"), py::arg("x"),
          py::arg("active_tol") = 1e-6, py::arg("tol") = 1e-8);
    m.def("regular_normal_member", &regular_normal_member, py::arg("S"), py::arg("x"),
          py::arg("v"), py::arg("active_tol") = 1e-6, py::arg("tol") = 1e-8);
    m.def("regular_normal_distance", &regular_normal_distance, py::arg("S"), py::arg("x"),
          py::arg("v"), py::arg("active_tol") = 1e-6, py::arg("tol") = 1e-8);
    m.def("limiting_normal_cone", &limiting_normal_cone, py::arg("S"), py::arg("x"),
          py::arg("delta") = 1e-6, py::arg("active_tol") = 1e-6, py::arg("tol") = 1e-8,
          py::arg("budget") = 1000000L);
    m.def("limiting_normal_member", &limiting_normal_member, py::arg("S"), py::arg("x"),
          py::arg("v"), py::arg("delta") = 1e-6, py::arg("active_tol") = 1e-6,
          py::arg("tol") = 1e-8, py::arg("budget") = 1000000L);
    m.def("in_relative_interior", &in_relative_interior, py::arg("v"), py::arg("C"),
          py::arg("tol") = 1e-9);
    m.def("is_conic", &is_conic, py::arg("S"), py::arg("tol") = 1e-12);

    // ---- measure spaces ---------------------------------------------------
    py::enum_<QuadratureRule>(m, "QuadratureRule")
        .value("Uniform", QuadratureRule::Uniform)
        .value("Trapezoid", QuadratureRule::Trapezoid);

    py::class_<AtomicMeasureSpace>(m, "AtomicMeasureSpace")
        .def(py::init<std::vector<std::string>, std::vector<double>, std::vector<double>>(),
             py::arg("ids"), py::arg("weights"), py::arg("nodes") = std::vector<double>{})
        .def("size", &AtomicMeasureSpace::size)
        .def("id", &AtomicMeasureSpace::id, py::arg("i"))
        .def("weight", &AtomicMeasureSpace::weight, py::arg("i"))
        .def("ids", &AtomicMeasureSpace::ids)
        .def("weights", &AtomicMeasureSpace::weights)
        .def("total_weight", &AtomicMeasureSpace::total_weight)
        .def("has_nodes", &AtomicMeasureSpace::has_nodes)
        .def("node", &AtomicMeasureSpace::node, py::arg("i"))
        .def("nodes", &AtomicMeasureSpace::nodes)
        .def("index_of", &AtomicMeasureSpace::index_of, py::arg("id"));

    m.def("dyadic_space", &dyadic_space, py::arg("M"));
    m.def("discretize_interval", &discretize_interval, py::arg("a"), py::arg("b"),
          py::arg("N"), py::arg("rule"));

    py::class_<SampledMultifunction>(m, "SampledMultifunction")
        .def(py::init<AtomicMeasureSpace, std::vector<SetValue>>(), py::arg("space"),
             py::arg("values"))
        .def_property_readonly("space", &SampledMultifunction::space)
        .def("value", &SampledMultifunction::value, py::arg("i"))
        .def("values", &SampledMultifunction::values)
        .def("dim", &SampledMultifunction::dim)
        .def("shifted", &SampledMultifunction::shifted, py::arg("shifts"));

    py::class_<PerturbationSchedule>(m, "PerturbationSchedule")
        .def(py::init<const AtomicMeasureSpace&, std::vector<std::vector<Vec>>, double>(),
             py::arg("space"), py::arg("terms"), py::arg("p") = 2.0)
        .def_static("scaled", &PerturbationSchedule::scaled, py::arg("space"), py::arg("base"),
                    py::arg("scales"), py::arg("p") = 2.0)
        .def("count", &PerturbationSchedule::count)
        .def("term", &PerturbationSchedule::term, py::arg("k"))
        .def("norm", &PerturbationSchedule::norm, py::arg("k"))
        .def("norms", &PerturbationSchedule::norms);

    m.def("weighted_p_norm", &weighted_p_norm, py::arg("space"), py::arg("a"), py::arg("p"));

    py::class_<IntersectionResult>(m, "IntersectionResult")
        .def_readonly("value", &IntersectionResult::value)
        .def("empty", &IntersectionResult::empty);

    m.def("essential_intersection", &essential_intersection, py::arg("MF"),
          py::arg("budget") = 1000000L);

    // ---- set calculus -----------------------------------------------------
    py::class_<ConeField>(m, "ConeField")
        .def(py::init<AtomicMeasureSpace, std::vector<ConeUnion>>(), py::arg("space"),
             py::arg("cones"))
        .def_property_readonly("space", &ConeField::space)
        .def("cone", &ConeField::cone, py::arg("i"))
        .def("dim", &ConeField::dim)
        .def("size", &ConeField::size);

    py::class_<GeneratorTag>(m, "GeneratorTag")
        .def_readonly("atom", &GeneratorTag::atom)
        .def_readonly("part", &GeneratorTag::part)
        .def_readonly("col", &GeneratorTag::col);

    py::class_<AumannPart>(m, "AumannPart")
        .def_readonly("generators", &AumannPart::generators)
        .def_readonly("tags", &AumannPart::tags);

    py::class_<AumannIntegral>(m, "AumannIntegral")
        .def_readonly("cone", &AumannIntegral::cone)
        .def_readonly("parts", &AumannIntegral::parts)
        .def_readonly("closure_needed", &AumannIntegral::closure_needed);

    m.def("aumann_integral", &aumann_integral, py::arg("F"), py::arg("budget") = 1000000L);

    py::class_<ConeMemberResult>(m, "ConeMemberResult")
        .def_readonly("member", &ConeMemberResult::member)
        .def_readonly("part", &ConeMemberResult::part)
        .def_readonly("lambda_", &ConeMemberResult::lambda)
        .def_readonly("residual", &ConeMemberResult::residual);

    m.def("cone_member",
          py::overload_cast<const Vec&, const ConeUnion&, double>(&cone_member), py::arg("v"),
          py::arg("C"), py::arg("tol") = 1e-8);
    m.def("cone_member_integral",
          py::overload_cast<const Vec&, const AumannIntegral&, double>(&cone_member),
          py::arg("v"), py::arg("I"), py::arg("tol") = 1e-8);
    m.def("attribute_selection", &attribute_selection, py::arg("part"), py::arg("lambda_"),
          py::arg("space"), py::arg("dim"));

    // ---- extremal principles ------------------------------------------------
    py::class_<EPWitness>(m, "EPWitness")
        .def_readonly("k", &EPWitness::k)
        .def_readonly("xk", &EPWitness::xk)
        .def_readonly("xstar", &EPWitness::xstar)
        .def_readonly("q_norm", &EPWitness::q_norm)
        .def_readonly("balance", &EPWitness::balance)
        .def_readonly("eps_k", &EPWitness::eps_k)
        .def_readonly("phi_value", &EPWitness::phi_value)
        .def_readonly("xhat", &EPWitness::xhat)
        .def_readonly("u_norm", &EPWitness::u_norm)
        .def_readonly("ball_multiplier", &EPWitness::ball_multiplier)
        .def_readonly("ball_active", &EPWitness::ball_active);

    py::class_<WitnessAudit>(m, "WitnessAudit")
        .def_readonly("ok", &WitnessAudit::ok)
        .def_readonly("normal_residual", &WitnessAudit::normal_residual)
        .def_readonly("balance_residual", &WitnessAudit::balance_residual)
        .def_readonly("q_norm_error", &WitnessAudit::q_norm_error)
        .def_readonly("estimate_slack", &WitnessAudit::estimate_slack);

    m.def("check_local_extremality", &check_local_extremality, py::arg("MF"), py::arg("xbar"),
          py::arg("r"), py::arg("sched"), py::arg("budget") = 1000000L);
    m.def("check_nonoverlap", &check_nonoverlap, py::arg("MF"), py::arg("xbar"), py::arg("r"),
          py::arg("budget") = 1000000L);
    m.def("sequential_ep", &sequential_ep, py::arg("MF"), py::arg("xbar"), py::arg("r"),
          py::arg("sched"), py::arg("p") = 2.0, py::arg("budget") = 1000000L);
    m.def("ep_step", &ep_step, py::arg("MF"), py::arg("xbar"), py::arg("r"), py::arg("a_k"),
          py::arg("k"), py::arg("p") = 2.0, py::arg("budget") = 1000000L);
    m.def("audit_witness", &audit_witness, py::arg("MF"), py::arg("xbar"), py::arg("a_k"),
          py::arg("w"));

    py::class_<ConicEPResult>(m, "ConicEPResult")
        .def_readonly("witness", &ConicEPResult::witness)
        .def_readonly("halvings", &ConicEPResult::halvings)
        .def_readonly("last_delta", &ConicEPResult::last_delta)
        .def_readonly("limiting_membership", &ConicEPResult::limiting_membership);

    m.def("conic_ep", &conic_ep, py::arg("MF"), py::arg("a"), py::arg("p") = 2.0,
          py::arg("max_halvings") = 40, py::arg("stab_tol") = 1e-6,
          py::arg("budget") = 1000000L);

    // ---- intersection calculus ----------------------------------------------
    m.def("check_tangential_stability", &check_tangential_stability, py::arg("S"),
          py::arg("xbar"), py::arg("r"), py::arg("seed") = 42);

    py::class_<ChipReport>(m, "ChipReport")
        .def_readonly("lhs", &ChipReport::lhs)
        .def_readonly("rhs", &ChipReport::rhs)
        .def_readonly("holds", &ChipReport::holds)
        .def_readonly("witnesses", &ChipReport::witnesses)
        .def_readonly("stability_detected", &ChipReport::stability_detected)
        .def_readonly("stability_radius", &ChipReport::stability_radius)
        .def_readonly("seed", &ChipReport::seed);

    m.def("check_chip", &check_chip, py::arg("MF"), py::arg("xbar"), py::arg("seed") = 42,
          py::arg("budget") = 1000000L);

    py::enum_<NormalsMode>(m, "NormalsMode")
        .value("ConesAtOrigin", NormalsMode::ConesAtOrigin)
        .value("Chip", NormalsMode::Chip)
        .value("RegularFamily", NormalsMode::RegularFamily);

    py::class_<NormalsReport>(m, "NormalsReport")
        .def_readonly("mode", &NormalsReport::mode)
        .def_readonly("integral", &NormalsReport::integral)
        .def_readonly("direct", &NormalsReport::direct)
        .def_readonly("inclusion_checked", &NormalsReport::inclusion_checked)
        .def_readonly("equality_checked", &NormalsReport::equality_checked);

    m.def("normals_of_intersection", &normals_of_intersection, py::arg("MF"), py::arg("xbar"),
          py::arg("mode"), py::arg("budget") = 1000000L);

    py::class_<InteriorProbeReport>(m, "InteriorProbeReport")
        .def_readonly("vacuous", &InteriorProbeReport::vacuous)
        .def_readonly("all_pass", &InteriorProbeReport::all_pass)
        .def_readonly("probes", &InteriorProbeReport::probes)
        .def_readonly("max_residual", &InteriorProbeReport::max_residual)
        .def_readonly("failures", &InteriorProbeReport::failures)
        .def_readonly("example_selection", &InteriorProbeReport::example_selection);

    m.def("interior_normal_estimate", &interior_normal_estimate, py::arg("MF"),
          py::arg("xbar"), py::arg("seed") = 42, py::arg("budget") = 1000000L);

    // ---- optimality -----------------------------------------------------------
    py::class_<Objective> obj(m, "Objective");
    py::enum_<Objective::Kind>(obj, "Kind")
        .value("Affine", Objective::Kind::Affine)
        .value("MaxAffine", Objective::Kind::MaxAffine)
        .value("Quadratic", Objective::Kind::Quadratic);
    obj.def_static("affine", &Objective::affine, py::arg("c"), py::arg("d"))
        .def_static("max_affine", &Objective::max_affine, py::arg("cs"), py::arg("ds"))
        .def_static("quadratic", &Objective::quadratic, py::arg("Q"), py::arg("c"),
                    py::arg("d"))
        .def("kind", &Objective::kind)
        .def("dim", &Objective::dim)
        .def("value", &Objective::value, py::arg("x"))
        .def("differentiable", &Objective::differentiable)
        .def("gradient", &Objective::gradient, py::arg("x"))
        .def("subdifferential_vertices", &Objective::subdifferential_vertices, py::arg("x"),
             py::arg("active_tol") = 1e-8);

    py::enum_<NqcKind>(m, "NqcKind")
        .value("Regular", NqcKind::Regular)
        .value("Limiting", NqcKind::Limiting);

    py::class_<NqcReport>(m, "NqcReport")
        .def_readonly("holds", &NqcReport::holds)
        .def_readonly("shortcut_interior", &NqcReport::shortcut_interior)
        .def_readonly("violator", &NqcReport::violator);

    m.def("check_normal_qualification", &check_normal_qualification, py::arg("MF"),
          py::arg("xbar"), py::arg("kind"), py::arg("epsilon") = 1e-3,
          py::arg("use_shortcut") = true, py::arg("seed") = 42,
          py::arg("budget") = 1000000L);

    py::class_<AtomMultiplier>(m, "AtomMultiplier")
        .def_readonly("atom", &AtomMultiplier::atom)
        .def_readonly("lambda_", &AtomMultiplier::lambda)
        .def_readonly("generator", &AtomMultiplier::generator);

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("certified", &Certificate::certified)
        .def_readonly("stationarity_residual", &Certificate::stationarity_residual)
        .def_readonly("gstar", &Certificate::gstar)
        .def_readonly("multipliers", &Certificate::multipliers)
        .def_readonly("qualification", &Certificate::qualification)
        .def_readonly("qualification_passed", &Certificate::qualification_passed)
        .def_readonly("warnings", &Certificate::warnings)
        .def_readonly("closure_note", &Certificate::closure_note)
        .def_readonly("density", &Certificate::density);

    m.def("stochastic_certificate", &stochastic_certificate, py::arg("h"), py::arg("MF"),
          py::arg("xbar"), py::arg("budget") = 1000000L);
    m.def("inequality_certificate", &inequality_certificate, py::arg("f_atoms"), py::arg("h"),
          py::arg("space"), py::arg("xbar"));
    m.def("sip_certificate", &sip_certificate, py::arg("a"), py::arg("b"), py::arg("h"),
          py::arg("xbar"), py::arg("t0"), py::arg("t1"), py::arg("N"), py::arg("rule"));

    py::class_<StrictMinResult>(m, "StrictMinResult")
        .def_readonly("branch", &StrictMinResult::branch)
        .def_readonly("witness", &StrictMinResult::witness)
        .def_readonly("subgradient", &StrictMinResult::subgradient)
        .def_readonly("y", &StrictMinResult::y)
        .def_readonly("normals", &StrictMinResult::normals)
        .def_readonly("stationarity_residual", &StrictMinResult::stationarity_residual)
        .def_readonly("violator", &StrictMinResult::violator)
        .def_readonly("violator_balance", &StrictMinResult::violator_balance)
        .def_readonly("violator_max_norm", &StrictMinResult::violator_max_norm);

    m.def("strict_min_alternative", &strict_min_alternative, py::arg("h"), py::arg("MF"),
          py::arg("xbar"), py::arg("r"), py::arg("k_max") = 8, py::arg("seed") = 42,
          py::arg("budget") = 1000000L);
}
