#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcone/errors.hpp"
#include "kcone/forms.hpp"
#include "kcone/immersions.hpp"
#include "kcone/report.hpp"
#include "kcone/scenarios.hpp"
#include "kcone/tolerance.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 a check fails, 2 usage or validation error.
constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  int n = 0;
  int p = 0;
  double c = -1.0;
  std::vector<double> c_list;
  std::uint64_t seed = 0;
  kcone::TolerancePolicy tol;
  std::string out_path;
  std::string config_path;
  std::string testbed;
};

void add_common_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--seed", opts.seed, "seed for the sampled directions");
  cmd->add_option("--tol-rank", opts.tol.rank_tol,
                  "relative cutoff for numerical ranks");
  cmd->add_option("--tol-defect", opts.tol.defect_tol,
                  "threshold for algebraic identity defects");
  cmd->add_option("--fd-step", opts.tol.fd_step,
                  "step of the central differences");
  cmd->add_option("--out", opts.out_path,
                  "write the JSON report to this path instead of stdout");
  cmd->add_option("--config", opts.config_path,
                  "JSON file with option values; explicit flags win");
}

// Fills every option the command line left untouched from the JSON file.
void merge_config_file(CLI::App* cmd, Options& opts) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in)
    throw std::invalid_argument("cannot read config file " + opts.config_path);
  nlohmann::json file = nlohmann::json::parse(in);

  auto untouched = [cmd](const char* flag) {
    const CLI::Option* option = cmd->get_option_no_throw(flag);
    return option != nullptr && option->count() == 0;
  };
  if (file.contains("n") && untouched("--n")) opts.n = file["n"].get<int>();
  if (file.contains("p") && untouched("--p")) opts.p = file["p"].get<int>();
  if (file.contains("c") && untouched("--c")) opts.c = file["c"].get<double>();
  if (file.contains("c_list") && untouched("--c-list"))
    opts.c_list = file["c_list"].get<std::vector<double>>();
  if (file.contains("seed") && untouched("--seed"))
    opts.seed = file["seed"].get<std::uint64_t>();
  if (file.contains("tol_rank") && untouched("--tol-rank"))
    opts.tol.rank_tol = file["tol_rank"].get<double>();
  if (file.contains("tol_defect") && untouched("--tol-defect"))
    opts.tol.defect_tol = file["tol_defect"].get<double>();
  if (file.contains("fd_step") && untouched("--fd-step"))
    opts.tol.fd_step = file["fd_step"].get<double>();
}

int emit(const kcone::VerificationReport& report, const Options& opts) {
  std::string text = report.to_json();
  if (opts.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out)
      throw std::invalid_argument("cannot write report to " + opts.out_path);
    out << text;
  }
  return report.all_pass() ? 0 : kExitChecksFailed;
}

int run_verify_example(CLI::App* cmd, Options& opts) {
  merge_config_file(cmd, opts);
  if (opts.c_list.empty())
    throw std::invalid_argument(
        "missing --c-list: the n - 1 spherical curvatures are required");
  kcone::ExampleConfig config;
  config.n = opts.n > 0 ? opts.n : static_cast<int>(opts.c_list.size()) + 1;
  config.c = opts.c;
  config.c_list = opts.c_list;
  return emit(kcone::run_theorem3_checks(config, opts.seed, opts.tol), opts);
}

int run_theorem1(CLI::App* cmd, Options& opts) {
  merge_config_file(cmd, opts);
  std::vector<kcone::PointData> family =
      kcone::build_flat_testbed(opts.n, opts.p);
  return emit(kcone::run_theorem1_pipeline(family.front(), opts.p, opts.seed,
                                           opts.tol),
              opts);
}

int run_flatform_report(CLI::App* cmd, Options& opts) {
  merge_config_file(cmd, opts);
  kcone::VerificationReport report;
  report.scenario = "flatform-report";
  report.seed = opts.seed;
  report.tolerances = opts.tol;
  report.set_config("testbed", opts.testbed);

  kcone::PointData data = [&]() {
    if (opts.testbed == "flat") {
      int n = opts.n > 0 ? opts.n : 5;
      int p = opts.p > 0 ? opts.p : 2;
      report.set_config("n", static_cast<std::int64_t>(n));
      report.set_config("p", static_cast<std::int64_t>(p));
      return kcone::build_flat_testbed(n, p).front();
    }
    kcone::ExampleConfig config =
        kcone::default_example_config(opts.n > 0 ? opts.n : 4);
    if (!opts.c_list.empty()) {
      config.c = opts.c;
      config.c_list = opts.c_list;
      if (opts.n == 0) config.n = static_cast<int>(opts.c_list.size()) + 1;
    }
    report.set_config("n", static_cast<std::int64_t>(config.n));
    report.set_config("p", static_cast<std::int64_t>(config.codimension()));
    kcone::ExampleBundle bundle = kcone::build_example(config, opts.tol);
    return kcone::second_fundamental_form(
        bundle.immersion, bundle.grid[bundle.grid.size() / 2], opts.tol);
  }();

  kcone::QuadSpace domain(data.metric, opts.tol.rank_tol);
  kcone::PairedForm beta = kcone::build_beta(data.alpha, data.j_action);
  std::mt19937_64 rng(opts.seed);
  kcone::FormAnalysis analysis =
      kcone::analyze_form(beta, data.normal_space, domain, rng, opts.tol);
  report.set_config("s", static_cast<std::int64_t>(analysis.s));
  report.set_config("image_dim",
                    static_cast<std::int64_t>(analysis.image.dim()));
  report.set_config("kernel_dim",
                    static_cast<std::int64_t>(analysis.kernel.dim()));
  report.set_config("regular_rank",
                    static_cast<std::int64_t>(analysis.regular.rank));
  report.set_config("degenerate",
                    std::string(analysis.degenerate ? "true" : "false"));
  report.add("image-even-dimension", "dim S(beta) = 2s",
             std::abs(analysis.image.dim() - 2.0 * analysis.s), 0.0);
  report.add("pair-flatness",
             "<<beta(X,Y), beta(Z,T)>> = <<beta(X,T), beta(Z,Y)>>",
             analysis.flatness_defect, opts.tol.defect_tol);
  Eigen::VectorXd w_abs = kcone::normal_coordinates(data, data.position);
  report.add("shape-identity", "<alpha(X,Y), F> = -(X,Y)",
             kcone::shape_identity_defect(data.alpha, w_abs, domain,
                                          data.normal_space),
             opts.tol.defect_tol);

  if (analysis.degenerate) {
    kcone::DegenerateSplit split = kcone::degenerate_decomposition(
        beta, data.alpha, w_abs, data.j_action, domain, data.normal_space,
        opts.tol);
    report.set_config("split_s", static_cast<std::int64_t>(split.s));
    report.set_config("dim_U1", static_cast<std::int64_t>(split.U1.dim()));
    report.set_config("dim_U2", static_cast<std::int64_t>(split.U2.dim()));
    report.set_config("split_kernel_dim",
                      static_cast<std::int64_t>(split.kernel1.dim()));
    report.add("split-residual",
               "beta(X,Y) = beta1(X,Y) + 2((X,Y) v, (X,JY) v)",
               split.reconstruction_residual, opts.tol.defect_tol);
    report.add("split-shape-pairing", "<<beta(X,Y), (w,0)>> = -2 (X,Y)",
               split.beta_shape_defect, opts.tol.defect_tol);
    report.add("split-radical-orthogonality",
               "<<beta(X,Y), (v,0)>> = 0 = <<beta(X,Y), (0,v)>>",
               split.radical_orthogonality_defect, opts.tol.defect_tol);
    report.add("reduced-flatness", "beta1 is flat", split.beta1_flatness_defect,
               opts.tol.defect_tol);
  }
  return emit(report, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical checks for flat bilinear forms and null product"
      " immersions read through the light cone"};
  app.require_subcommand(1);

  Options verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify-example", "run the full check list on the null product");
  verify->add_option("--n", verify_opts.n, "number of factors");
  verify->add_option("--c", verify_opts.c, "hyperbolic curvature (negative)")
      ->capture_default_str();
  verify
      ->add_option("--c-list", verify_opts.c_list, "n - 1 spherical curvatures")
      ->delimiter(',');
  add_common_flags(verify, verify_opts);

  Options theorem1_opts;
  theorem1_opts.n = 5;
  theorem1_opts.p = 2;
  CLI::App* theorem1 = app.add_subcommand(
      "theorem1", "run the degenerate-image pipeline on the flat testbed");
  theorem1->add_option("--n", theorem1_opts.n, "half the slice dimension")
      ->capture_default_str();
  theorem1->add_option("--p", theorem1_opts.p, "codimension of the slice")
      ->capture_default_str();
  add_common_flags(theorem1, theorem1_opts);

  Options flatform_opts;
  CLI::App* flatform = app.add_subcommand(
      "flatform-report", "dump the structural form summary for a testbed");
  flatform
      ->add_option("testbed", flatform_opts.testbed,
                   "which testbed: flat or example")
      ->required()
      ->check(CLI::IsMember({"flat", "example"}));
  flatform->add_option("--n", flatform_opts.n,
                       "number of factors or half dimension");
  flatform->add_option("--p", flatform_opts.p, "codimension (flat testbed)");
  flatform->add_option("--c", flatform_opts.c,
                       "hyperbolic curvature (example)");
  flatform->add_option("--c-list", flatform_opts.c_list,
                       "spherical curvatures")
      ->delimiter(',');
  add_common_flags(flatform, flatform_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify_example(verify, verify_opts);
    if (theorem1->parsed()) return run_theorem1(theorem1, theorem1_opts);
    return run_flatform_report(flatform, flatform_opts);
  } catch (const kcone::StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
