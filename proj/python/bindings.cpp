#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kcone/complex_structure.hpp"
#include "kcone/errors.hpp"
#include "kcone/forms.hpp"
#include "kcone/immersions.hpp"
#include "kcone/lightcone.hpp"
#include "kcone/quad_space.hpp"
#include "kcone/report.hpp"
#include "kcone/scenarios.hpp"
#include "kcone/surfaces.hpp"
#include "kcone/tolerance.hpp"

namespace py = pybind11;

namespace {

const kcone::TolerancePolicy kDefaultTol{};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "flat bilinear forms, light-cone conformal geometry, and the product"
      " testbeds that exercise them";

  py::register_exception<kcone::StructureError>(m, "StructureError");
  py::register_exception<kcone::DegenerateSubspaceError>(
      m, "DegenerateSubspaceError");

  py::class_<kcone::TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init<>())
      .def_readwrite("rank_tol", &kcone::TolerancePolicy::rank_tol)
      .def_readwrite("defect_tol", &kcone::TolerancePolicy::defect_tol)
      .def_readwrite("fd_step", &kcone::TolerancePolicy::fd_step)
      .def("validate", &kcone::TolerancePolicy::validate);

  py::class_<kcone::QuadSpace>(m, "QuadSpace")
      .def(py::init<Eigen::MatrixXd, double>(), py::arg("gram"),
           py::arg("rank_tol") = 1e-8)
      .def_static("euclidean", &kcone::QuadSpace::euclidean, py::arg("dim"))
      .def_static("lorentzian", &kcone::QuadSpace::lorentzian, py::arg("dim"))
      .def_property_readonly("dim", &kcone::QuadSpace::dim)
      .def_property_readonly("gram", &kcone::QuadSpace::gram)
      .def_property_readonly("signature", &kcone::QuadSpace::signature)
      .def("inner", &kcone::QuadSpace::inner, py::arg("x"), py::arg("y"))
      .def("norm2", &kcone::QuadSpace::norm2, py::arg("x"));

  py::class_<kcone::Subspace>(m, "Subspace")
      .def(py::init<kcone::QuadSpace, Eigen::MatrixXd, double>(),
           py::arg("ambient"), py::arg("basis"), py::arg("rank_tol") = 1e-8)
      .def_property_readonly("dim", &kcone::Subspace::dim)
      .def_property_readonly("ambient_dim", &kcone::Subspace::ambient_dim)
      .def_property_readonly("basis", &kcone::Subspace::basis)
      .def("restricted_gram", &kcone::Subspace::restricted_gram)
      .def("contains", &kcone::Subspace::contains, py::arg("x"),
           py::arg("tol"));

  m.def("span_of", &kcone::span_of, py::arg("ambient"), py::arg("generators"),
        py::arg("rank_tol"));
  m.def("radical", &kcone::radical, py::arg("sub"), py::arg("rank_tol"));
  m.def("is_degenerate", &kcone::is_degenerate, py::arg("sub"),
        py::arg("rank_tol"));
  m.def("orthogonal_complement", &kcone::orthogonal_complement, py::arg("sub"),
        py::arg("rank_tol"));
  m.def("projector", &kcone::projector, py::arg("sub"), py::arg("rank_tol"));
  m.def(
      "random_isometry",
      [](const kcone::QuadSpace& space, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return kcone::random_isometry(space, rng);
      },
      py::arg("space"), py::arg("seed") = 0,
      "Seeded isometry of a diagonal-gram space.");

  py::class_<kcone::ComplexStructure>(m, "ComplexStructure")
      .def(py::init<Eigen::MatrixXd, double>(), py::arg("matrix"),
           py::arg("tol") = 1e-10)
      .def_static("standard", &kcone::ComplexStructure::standard,
                  py::arg("half_dim"))
      .def_property_readonly("dim", &kcone::ComplexStructure::dim)
      .def_property_readonly("matrix", &kcone::ComplexStructure::matrix)
      .def("apply", &kcone::ComplexStructure::apply, py::arg("x"))
      .def("square_defect", &kcone::ComplexStructure::square_defect)
      .def("isometry_defect", &kcone::ComplexStructure::isometry_defect,
           py::arg("gram"));

  py::class_<kcone::PairedSpace>(m, "PairedSpace")
      .def_static("from_base", &kcone::PairedSpace::from_base, py::arg("base"))
      .def_readonly("base", &kcone::PairedSpace::base)
      .def_readonly("total", &kcone::PairedSpace::total)
      .def("pair", &kcone::PairedSpace::pair, py::arg("first"),
           py::arg("second"))
      .def("first", &kcone::PairedSpace::first, py::arg("w"))
      .def("second", &kcone::PairedSpace::second, py::arg("w"))
      .def("pairing", &kcone::PairedSpace::pairing, py::arg("a"),
           py::arg("b"));

  py::class_<kcone::VectorValuedForm>(m, "VectorValuedForm")
      .def(py::init<std::vector<Eigen::MatrixXd>>(), py::arg("comps"))
      .def_static("zero", &kcone::VectorValuedForm::zero,
                  py::arg("domain_dim"), py::arg("target_dim"))
      .def_static("rank_one", &kcone::VectorValuedForm::rank_one,
                  py::arg("coeff"), py::arg("target_vec"))
      .def_property_readonly("domain_dim",
                             &kcone::VectorValuedForm::domain_dim)
      .def_property_readonly("target_dim",
                             &kcone::VectorValuedForm::target_dim)
      .def_property_readonly("comps", &kcone::VectorValuedForm::comps)
      .def("value", &kcone::VectorValuedForm::value, py::arg("x"),
           py::arg("y"))
      .def("operator_at", &kcone::VectorValuedForm::operator_at, py::arg("x"))
      .def("scaled", &kcone::VectorValuedForm::scaled, py::arg("c"))
      .def("target_mapped", &kcone::VectorValuedForm::target_mapped,
           py::arg("map"))
      .def("symmetry_defect", &kcone::VectorValuedForm::symmetry_defect)
      .def("max_abs", &kcone::VectorValuedForm::max_abs)
      .def("__add__", [](const kcone::VectorValuedForm& a,
                         const kcone::VectorValuedForm& b) { return a + b; });

  py::class_<kcone::PairedForm>(m, "PairedForm")
      .def(py::init<kcone::VectorValuedForm, kcone::VectorValuedForm>(),
           py::arg("first"), py::arg("second"))
      .def_property_readonly("domain_dim", &kcone::PairedForm::domain_dim)
      .def_property_readonly("base_dim", &kcone::PairedForm::base_dim)
      .def_property_readonly("first", &kcone::PairedForm::first)
      .def_property_readonly("second", &kcone::PairedForm::second)
      .def("value", &kcone::PairedForm::value, py::arg("x"), py::arg("y"))
      .def("operator_at", &kcone::PairedForm::operator_at, py::arg("x"))
      .def("value_matrix", &kcone::PairedForm::value_matrix)
      .def("max_abs", &kcone::PairedForm::max_abs)
      .def("target_mapped", &kcone::PairedForm::target_mapped, py::arg("map"));

  m.def("build_beta", &kcone::build_beta, py::arg("alpha"), py::arg("J"));
  m.def("build_gamma", &kcone::build_gamma, py::arg("alpha"), py::arg("J"));
  m.def("beta_symmetry_defect", &kcone::beta_symmetry_defect, py::arg("beta"),
        py::arg("J"));
  m.def("flatness_defect", &kcone::flatness_defect, py::arg("form"),
        py::arg("base"));
  m.def("product_condition_defect", &kcone::product_condition_defect,
        py::arg("beta"), py::arg("gamma"), py::arg("base"));
  m.def("image_span", &kcone::image_span, py::arg("form"), py::arg("base"),
        py::arg("tol") = kDefaultTol);
  m.def("first_component_span", &kcone::first_component_span, py::arg("form"),
        py::arg("base"), py::arg("tol") = kDefaultTol);
  m.def("second_component_span", &kcone::second_component_span,
        py::arg("form"), py::arg("base"), py::arg("tol") = kDefaultTol);
  m.def("kernel", &kcone::kernel, py::arg("form"), py::arg("domain"),
        py::arg("tol") = kDefaultTol);
  m.def("shape_identity_defect", &kcone::shape_identity_defect,
        py::arg("alpha"), py::arg("w"), py::arg("domain"), py::arg("base"));

  py::class_<kcone::RegularElement>(m, "RegularElement")
      .def_readonly("x", &kcone::RegularElement::x)
      .def_readonly("rank", &kcone::RegularElement::rank);

  m.def(
      "find_regular_element",
      [](const kcone::PairedForm& form, std::uint64_t seed, int samples,
         const kcone::TolerancePolicy& tol) {
        std::mt19937_64 rng(seed);
        return kcone::find_regular_element(form, rng, samples, tol);
      },
      py::arg("form"), py::arg("seed") = 0, py::arg("samples") = 64,
      py::arg("tol") = kDefaultTol);
  m.def("moore_inclusion_defect", &kcone::moore_inclusion_defect,
        py::arg("form"), py::arg("x"), py::arg("base"),
        py::arg("tol") = kDefaultTol);

  py::class_<kcone::FormAnalysis>(m, "FormAnalysis")
      .def_readonly("image", &kcone::FormAnalysis::image)
      .def_readonly("s", &kcone::FormAnalysis::s)
      .def_readonly("kernel", &kcone::FormAnalysis::kernel)
      .def_readonly("regular", &kcone::FormAnalysis::regular)
      .def_readonly("degenerate", &kcone::FormAnalysis::degenerate)
      .def_readonly("flatness_defect", &kcone::FormAnalysis::flatness_defect);

  m.def(
      "analyze_form",
      [](const kcone::PairedForm& form, const kcone::QuadSpace& base,
         const kcone::QuadSpace& domain, std::uint64_t seed,
         const kcone::TolerancePolicy& tol) {
        std::mt19937_64 rng(seed);
        return kcone::analyze_form(form, base, domain, rng, tol);
      },
      py::arg("form"), py::arg("base"), py::arg("domain"), py::arg("seed") = 0,
      py::arg("tol") = kDefaultTol);

  py::class_<kcone::KernelBoundCheck>(m, "KernelBoundCheck")
      .def_readonly("dim_kernel", &kcone::KernelBoundCheck::dim_kernel)
      .def_readonly("lower_bound", &kcone::KernelBoundCheck::lower_bound)
      .def_readonly("holds", &kcone::KernelBoundCheck::holds);

  m.def("check_surjective_kernel_bound", &kcone::check_surjective_kernel_bound,
        py::arg("form"), py::arg("p_eff"), py::arg("domain"),
        py::arg("tol") = kDefaultTol);

  py::class_<kcone::DegenerateSplit>(m, "DegenerateSplit")
      .def_readonly("v", &kcone::DegenerateSplit::v)
      .def_readonly("L", &kcone::DegenerateSplit::L)
      .def_readonly("beta1", &kcone::DegenerateSplit::beta1)
      .def_readonly("kernel1", &kcone::DegenerateSplit::kernel1)
      .def_readonly("U1", &kcone::DegenerateSplit::U1)
      .def_readonly("U2", &kcone::DegenerateSplit::U2)
      .def_readonly("s", &kcone::DegenerateSplit::s)
      .def_readonly("radical_orthogonality_defect",
                    &kcone::DegenerateSplit::radical_orthogonality_defect)
      .def_readonly("beta_shape_defect",
                    &kcone::DegenerateSplit::beta_shape_defect)
      .def_readonly("reconstruction_residual",
                    &kcone::DegenerateSplit::reconstruction_residual)
      .def_readonly("beta1_flatness_defect",
                    &kcone::DegenerateSplit::beta1_flatness_defect);

  m.def("degenerate_decomposition", &kcone::degenerate_decomposition,
        py::arg("beta"), py::arg("alpha"), py::arg("w"), py::arg("J"),
        py::arg("domain"), py::arg("base"), py::arg("tol") = kDefaultTol);

  py::class_<kcone::UmbilicalReport>(m, "UmbilicalReport")
      .def_readonly("P", &kcone::UmbilicalReport::P)
      .def_readonly("m", &kcone::UmbilicalReport::m)
      .def_readonly("v_component_defect",
                    &kcone::UmbilicalReport::v_component_defect)
      .def_readonly("tangential_split_defect",
                    &kcone::UmbilicalReport::tangential_split_defect)
      .def_readonly("kernel_pairing_defect",
                    &kcone::UmbilicalReport::kernel_pairing_defect)
      .def_readonly("pluriharmonic_defect",
                    &kcone::UmbilicalReport::pluriharmonic_defect)
      .def_readonly("inequality_residual",
                    &kcone::UmbilicalReport::inequality_residual)
      .def_readonly("max_inequality_value",
                    &kcone::UmbilicalReport::max_inequality_value)
      .def_readonly("min_inequality_value",
                    &kcone::UmbilicalReport::min_inequality_value);

  m.def(
      "umbilical_subspace",
      [](const kcone::DegenerateSplit& split,
         const kcone::VectorValuedForm& alpha, const kcone::PairedForm& beta,
         const kcone::PairedForm& gamma, const kcone::ComplexStructure& J,
         const kcone::QuadSpace& domain, const kcone::QuadSpace& base,
         std::uint64_t seed, int samples, const kcone::TolerancePolicy& tol) {
        std::mt19937_64 rng(seed);
        return kcone::umbilical_subspace(split, alpha, beta, gamma, J, domain,
                                         base, rng, samples, tol);
      },
      py::arg("split"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      py::arg("J"), py::arg("domain"), py::arg("base"), py::arg("seed") = 0,
      py::arg("samples") = 32, py::arg("tol") = kDefaultTol);

  py::class_<kcone::DiagBasisReport>(m, "DiagBasisReport")
      .def_readonly("offdiagonal_defect",
                    &kcone::DiagBasisReport::offdiagonal_defect)
      .def_readonly("diagonal_norms", &kcone::DiagBasisReport::diagonal_norms)
      .def_readonly("orthonormality_defect",
                    &kcone::DiagBasisReport::orthonormality_defect)
      .def_readonly("span_defect", &kcone::DiagBasisReport::span_defect)
      .def_readonly("s", &kcone::DiagBasisReport::s);

  m.def("verify_diag_basis", &kcone::verify_diag_basis, py::arg("beta"),
        py::arg("X"), py::arg("J"), py::arg("domain"), py::arg("base"),
        py::arg("tol") = kDefaultTol);

  py::class_<kcone::LightConeFrame>(m, "LightConeFrame")
      .def_readonly("ambient", &kcone::LightConeFrame::ambient)
      .def_readonly("v", &kcone::LightConeFrame::v)
      .def_readonly("w", &kcone::LightConeFrame::w)
      .def_readonly("c", &kcone::LightConeFrame::c)
      .def_property_readonly("map_dim", &kcone::LightConeFrame::map_dim);

  m.def("frame_defect", &kcone::frame_defect, py::arg("frame"));
  m.def("make_frame", py::overload_cast<int>(&kcone::make_frame),
        py::arg("m"));
  m.def(
      "make_frame",
      [](int map_dim, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return kcone::make_frame(map_dim, rng);
      },
      py::arg("m"), py::arg("seed"));
  m.def("flip_frame", &kcone::flip_frame, py::arg("frame"));
  m.def("psi", &kcone::psi, py::arg("frame"), py::arg("x"));
  m.def("psi_jacobian", &kcone::psi_jacobian, py::arg("frame"), py::arg("x"));
  m.def("psi_second_fundamental_form", &kcone::psi_second_fundamental_form,
        py::arg("frame"), py::arg("x"), py::arg("x_dir"), py::arg("y_dir"),
        py::arg("tol") = kDefaultTol);
  m.def("pi_projection", &kcone::pi_projection, py::arg("frame"), py::arg("y"),
        py::arg("tol") = kDefaultTol);
  m.def("psi_inverse", &kcone::psi_inverse, py::arg("frame"), py::arg("y"),
        py::arg("tol") = kDefaultTol);

  py::class_<kcone::ConformalPair>(m, "ConformalPair")
      .def_readonly("f", &kcone::ConformalPair::f)
      .def_readonly("lambda_", &kcone::ConformalPair::lambda)
      .def_readonly("lift", &kcone::ConformalPair::lift);

  m.def("conformal_pair_defect", &kcone::conformal_pair_defect,
        py::arg("pair"), py::arg("frame"));
  m.def("conformal_to_isometric", &kcone::conformal_to_isometric,
        py::arg("f"), py::arg("lambda_"), py::arg("frame"),
        py::arg("tol") = kDefaultTol);
  m.def("isometric_to_conformal", &kcone::isometric_to_conformal,
        py::arg("lift"), py::arg("frame"), py::arg("tol") = kDefaultTol);

  py::enum_<kcone::SurfaceKind>(m, "SurfaceKind")
      .value("sphere", kcone::SurfaceKind::sphere)
      .value("hyperbolic", kcone::SurfaceKind::hyperbolic);

  py::class_<kcone::ChartRectangle>(m, "ChartRectangle")
      .def_readonly("u_min", &kcone::ChartRectangle::u_min)
      .def_readonly("u_max", &kcone::ChartRectangle::u_max)
      .def_readonly("v_min", &kcone::ChartRectangle::v_min)
      .def_readonly("v_max", &kcone::ChartRectangle::v_max)
      .def("contains", &kcone::ChartRectangle::contains, py::arg("u"),
           py::arg("v"));

  py::class_<kcone::ChartJet>(m, "ChartJet")
      .def_readonly("value", &kcone::ChartJet::value)
      .def_readonly("du", &kcone::ChartJet::du)
      .def_readonly("dv", &kcone::ChartJet::dv)
      .def_readonly("duu", &kcone::ChartJet::duu)
      .def_readonly("duv", &kcone::ChartJet::duv)
      .def_readonly("dvv", &kcone::ChartJet::dvv);

  py::class_<kcone::SurfaceChart>(m, "SurfaceChart")
      .def_readonly("kind", &kcone::SurfaceChart::kind)
      .def_readonly("curvature", &kcone::SurfaceChart::curvature)
      .def_readonly("radius", &kcone::SurfaceChart::radius)
      .def_readonly("target", &kcone::SurfaceChart::target)
      .def_readonly("domain", &kcone::SurfaceChart::domain);

  m.def("sphere_chart", &kcone::sphere_chart, py::arg("c"));
  m.def("hyperbolic_chart", &kcone::hyperbolic_chart, py::arg("c"));
  m.def("chart_jet", &kcone::chart_jet, py::arg("chart"), py::arg("u"),
        py::arg("v"));
  m.def("gauss_curvature", &kcone::gauss_curvature, py::arg("chart"),
        py::arg("u"), py::arg("v"), py::arg("tol") = kDefaultTol);

  py::class_<kcone::ProductImmersion>(m, "ProductImmersion")
      .def_readonly("factors", &kcone::ProductImmersion::factors)
      .def_readonly("ambient", &kcone::ProductImmersion::ambient)
      .def_property_readonly("factor_count",
                             &kcone::ProductImmersion::factor_count)
      .def_property_readonly("param_dim", &kcone::ProductImmersion::param_dim);

  m.def("make_product", &kcone::make_product, py::arg("factors"));
  m.def("radius_identity", &kcone::radius_identity, py::arg("imm"));
  m.def("immersion_value", &kcone::immersion_value, py::arg("imm"),
        py::arg("params"));

  py::class_<kcone::ImmersionJet>(m, "ImmersionJet")
      .def_readonly("value", &kcone::ImmersionJet::value)
      .def_readonly("first", &kcone::ImmersionJet::first)
      .def_readonly("second", &kcone::ImmersionJet::second);

  m.def("immersion_jet", &kcone::immersion_jet, py::arg("imm"),
        py::arg("params"));

  py::class_<kcone::PointData>(m, "PointData")
      .def_readonly("params", &kcone::PointData::params)
      .def_readonly("position", &kcone::PointData::position)
      .def_readonly("tangent_basis", &kcone::PointData::tangent_basis)
      .def_readonly("metric", &kcone::PointData::metric)
      .def_readonly("normal_frame", &kcone::PointData::normal_frame)
      .def_readonly("ambient", &kcone::PointData::ambient)
      .def_readonly("normal_space", &kcone::PointData::normal_space)
      .def_readonly("alpha", &kcone::PointData::alpha)
      .def_readonly("j_action", &kcone::PointData::j_action);

  m.def("second_fundamental_form", &kcone::second_fundamental_form,
        py::arg("imm"), py::arg("params"), py::arg("tol") = kDefaultTol);
  m.def("normal_coordinates", &kcone::normal_coordinates, py::arg("data"),
        py::arg("y"));
  m.def("sectional_curvature_J", &kcone::sectional_curvature_J,
        py::arg("data"), py::arg("s"));
  m.def("shape_operator", &kcone::shape_operator, py::arg("data"),
        py::arg("xi"));
  m.def("shape_operator_rank", &kcone::shape_operator_rank, py::arg("data"),
        py::arg("xi"), py::arg("rank_tol"));
  m.def("normal_curvature_defect", &kcone::normal_curvature_defect,
        py::arg("grid"));

  py::class_<kcone::CheckRecord>(m, "CheckRecord")
      .def_readonly("name", &kcone::CheckRecord::name)
      .def_readonly("anchor", &kcone::CheckRecord::anchor)
      .def_readonly("defect", &kcone::CheckRecord::defect)
      .def_readonly("threshold", &kcone::CheckRecord::threshold)
      .def_readonly("pass_", &kcone::CheckRecord::pass);

  py::class_<kcone::VerificationReport>(m, "VerificationReport")
      .def_readonly("scenario", &kcone::VerificationReport::scenario)
      .def_readonly("seed", &kcone::VerificationReport::seed)
      .def_readonly("tolerances", &kcone::VerificationReport::tolerances)
      .def_readonly("checks", &kcone::VerificationReport::checks)
      .def_property_readonly(
          "config",
          [](const kcone::VerificationReport& report) {
            py::dict out;
            for (const auto& entry : report.config) {
              const std::string& key = entry.first;
              std::visit([&out, &key](
                             const auto& v) { out[py::str(key)] = py::cast(v); },
                         entry.second);
            }
            return out;
          })
      .def("all_pass", &kcone::VerificationReport::all_pass)
      .def("to_json", &kcone::VerificationReport::to_json);

  py::class_<kcone::ExampleConfig>(m, "ExampleConfig")
      .def(py::init<>())
      .def_readwrite("n", &kcone::ExampleConfig::n)
      .def_readwrite("c", &kcone::ExampleConfig::c)
      .def_readwrite("c_list", &kcone::ExampleConfig::c_list)
      .def_property_readonly("codimension", &kcone::ExampleConfig::codimension)
      .def("validate", &kcone::ExampleConfig::validate);

  m.def("default_example_config", &kcone::default_example_config,
        py::arg("n") = 4);

  py::class_<kcone::ExampleBundle>(m, "ExampleBundle")
      .def_readonly("immersion", &kcone::ExampleBundle::immersion)
      .def_readonly("frame", &kcone::ExampleBundle::frame)
      .def_readonly("grid", &kcone::ExampleBundle::grid)
      .def_readonly("pair", &kcone::ExampleBundle::pair);

  m.def("example_grid", &kcone::example_grid, py::arg("imm"));
  m.def("build_example", &kcone::build_example, py::arg("config"),
        py::arg("tol") = kDefaultTol);
  m.def("build_flat_testbed", &kcone::build_flat_testbed, py::arg("n"),
        py::arg("p"));
  m.def("run_theorem1_pipeline", &kcone::run_theorem1_pipeline,
        py::arg("data"), py::arg("p_effective"), py::arg("seed") = 0,
        py::arg("tol") = kDefaultTol);
  m.def("theorem3_checks_on", &kcone::theorem3_checks_on, py::arg("imm"),
        py::arg("grid"), py::arg("seed") = 0, py::arg("tol") = kDefaultTol);
  m.def("run_theorem3_checks", &kcone::run_theorem3_checks, py::arg("config"),
        py::arg("seed") = 0, py::arg("tol") = kDefaultTol);

  m.def(
      "random_shape_identity_alpha",
      [](int n, int p, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return kcone::random_shape_identity_alpha(n, p, rng);
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0);

  py::class_<kcone::RankOneBoundForm>(m, "RankOneBoundForm")
      .def_readonly("alpha", &kcone::RankOneBoundForm::alpha)
      .def_readonly("w0", &kcone::RankOneBoundForm::w0)
      .def_readonly("w_dual", &kcone::RankOneBoundForm::w_dual);

  m.def(
      "random_rank_one_bound_form",
      [](int n, int p, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        return kcone::random_rank_one_bound_form(n, p, rng);
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 0);
}
