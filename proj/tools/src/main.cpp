#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eqens/error.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kDomain = 2,
  kCap = 3,
  kNumerical = 4,
};

int exit_code(eqens::ErrorKind kind) {
  using eqens::ErrorKind;
  switch (kind) {
    case ErrorKind::CapExceeded:
      return kCap;
    case ErrorKind::NoConvergence:
    case ErrorKind::DegenerateCorrelation:
      return kNumerical;
    default:
      return kDomain;
  }
}

// Flags every subcommand accepts.
struct Common {
  std::string out;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Common& common, double& tol) {
  sub->add_option("--out", common.out, "Output file (default: stdout)");
  sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  sub->add_option("--tol", tol, "Numerical tolerance")->capture_default_str();
}

void emit(const Common& common, const std::function<void(std::ostream&)>& body) {
  if (common.out.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(common.out);
  if (!file) throw eqens::Error(eqens::ErrorKind::OutOfDomain, "cannot open " + common.out);
  body(file);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eqens::cli;

  CLI::App app{"Equivalence of ensembles: inversion, sampling, local limit scans, limit shapes"};
  app.set_config("--config", "", "TOML/INI file with flag values; command-line flags win");
  app.require_subcommand(1);

  Common common;
  std::function<int()> action;

  InvertArgs inv;
  auto* invert_cmd = app.add_subcommand("invert", "Solve (F, G)(a, b) = (rho, m)");
  invert_cmd->add_option("--rho", inv.rho, "Density")->required();
  invert_cmd->add_option("--m", inv.m, "First moment")->required();
  add_common(invert_cmd, common, inv.tol);
  invert_cmd->callback([&] { action = [&] { emit(common, [&](auto& o) { run_invert(inv, o); }); return 0; }; });

  ProfileArgs prof;
  auto* profile_cmd = app.add_subcommand("profile", "Tabulate beta and the limit height psi");
  profile_cmd->add_option("--a", prof.a, "Profile parameter a");
  profile_cmd->add_option("--b", prof.b, "Profile parameter b");
  profile_cmd->add_option("--rho", prof.rho, "Density (inverted to a, b)");
  profile_cmd->add_option("--m", prof.m, "First moment (inverted to a, b)");
  profile_cmd->add_option("--grid", prof.grid, "Grid points on [-1, 1]")->capture_default_str();
  add_common(profile_cmd, common, prof.tol);
  profile_cmd->callback([&] { action = [&] { emit(common, [&](auto& o) { run_profile(prof, o); }); return 0; }; });

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "Sample the canonical ensemble (NDJSON)");
  sample_cmd->add_option("--ell", smp.ell, "Window half-width")->required();
  sample_cmd->add_option("--K", smp.K, "Particle count");
  sample_cmd->add_option("--M", smp.M, "First moment sum k eta_k");
  sample_cmd->add_option("--rho", smp.rho, "Density (rounded to K)");
  sample_cmd->add_option("--m", smp.m, "Moment density (rounded to M)");
  sample_cmd->add_option("--method", smp.method, "exact | mcmc | auto")
      ->check(CLI::IsMember({"exact", "mcmc", "auto"}))
      ->capture_default_str();
  sample_cmd->add_option("--count", smp.count, "Number of samples")->capture_default_str();
  sample_cmd->add_option("--sweeps", smp.sweeps, "MCMC sweeps (negative: automatic)");
  sample_cmd->add_option("--chains", smp.chains, "MCMC chains")->capture_default_str();
  sample_cmd->add_flag("!--no-summary", smp.summary, "Omit the summary record");
  add_common(sample_cmd, common, smp.tol);
  sample_cmd->callback([&] {
    action = [&] {
      smp.seed = common.seed;
      emit(common, [&](auto& o) { run_sample(smp, o); });
      return 0;
    };
  });

  LltArgs llt;
  auto* llt_cmd = app.add_subcommand("llt", "Sup-error scan of the local limit theorem (CSV)");
  llt_cmd->add_option("--n", llt.n, "Sizes")->delimiter(',')->capture_default_str();
  llt_cmd->add_option("--alpha", llt.alpha, "const:p or profile:a,b")->capture_default_str();
  llt_cmd->add_option("--defects", llt.defects, "Excluded sites; 'mid' means floor(n/2)")
      ->delimiter(',');
  llt_cmd->add_option("--lambda-mode", llt.lambda_mode, "finite | limit")
      ->check(CLI::IsMember({"finite", "limit"}))
      ->capture_default_str();
  llt_cmd->add_option("--pmf-binary", llt.pmf_binary, "Write the PMF of one size as binary");
  llt_cmd->add_option("--pmf-csv", llt.pmf_csv, "Write the PMF of one size as CSV");
  llt_cmd->add_option("--export-n", llt.export_n, "Size to export (default: last)");
  add_common(llt_cmd, common, llt.tol);
  llt_cmd->callback([&] { action = [&] { emit(common, [&](auto& o) { run_llt(llt, o); }); return 0; }; });

  ConvergeArgs conv;
  auto* converge_cmd =
      app.add_subcommand("converge", "Mean sup distance of scaled heights to the limit (CSV)");
  converge_cmd->add_option("--rho", conv.rho, "Density")->capture_default_str();
  converge_cmd->add_option("--m", conv.m, "First moment")->capture_default_str();
  converge_cmd->add_option("--ell", conv.ell, "Window sizes")->delimiter(',')->capture_default_str();
  converge_cmd->add_option("--samples", conv.samples, "Samples per size")->capture_default_str();
  converge_cmd->add_option("--method", conv.method, "exact | mcmc | auto")
      ->check(CLI::IsMember({"exact", "mcmc", "auto"}))
      ->capture_default_str();
  converge_cmd->add_option("--sweeps", conv.sweeps, "MCMC sweeps (negative: automatic)");
  converge_cmd->add_option("--grid", conv.grid, "Grid points of the limit curve")->capture_default_str();
  converge_cmd->add_flag("--self-test", conv.self_test, "Check sup_distance on known curves");
  add_common(converge_cmd, common, conv.tol);
  converge_cmd->callback([&] {
    action = [&] {
      conv.seed = common.seed;
      bool ok = true;
      emit(common, [&](auto& o) { ok = run_converge(conv, o); });
      return ok ? 0 : static_cast<int>(kNumerical);
    };
  });

  VershikArgs ver;
  auto* vershik_cmd = app.add_subcommand("vershik", "Identify psi with the rescaled Bose curve (JSON)");
  vershik_cmd->add_option("--rho", ver.rho, "Density")->required();
  vershik_cmd->add_option("--m", ver.m, "First moment")->required();
  vershik_cmd->add_option("--grid", ver.grid, "Grid points")->capture_default_str();
  add_common(vershik_cmd, common, ver.tol);
  vershik_cmd->callback([&] { action = [&] { emit(common, [&](auto& o) { run_vershik(ver, o); }); return 0; }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return action();
  } catch (const eqens::Error& e) {
    std::cerr << "error (" << eqens::to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const NumericalFailure& e) {
    std::cerr << "error (numerical): " << e.what() << '\n';
    return kNumerical;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
