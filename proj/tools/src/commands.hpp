#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqens::cli {

/// A computed result failed its own consistency check (exit code 4).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvertArgs {
  double rho = 0.5;
  double m = 0.0;
  double tol = 1e-12;
};

struct ProfileArgs {
  std::optional<double> a, b;
  std::optional<double> rho, m;
  int grid = 1024;
  double tol = 1e-12;
};

struct SampleArgs {
  int ell = 1;
  std::optional<int> K;
  std::optional<long long> M;
  std::optional<double> rho, m;
  std::string method = "auto";  // exact | mcmc | auto
  std::uint64_t seed = 1;
  std::size_t count = 100;
  long long sweeps = -1;
  int chains = 1;
  bool summary = true;
  double tol = 1e-12;
};

struct LltArgs {
  std::vector<int> n = {40, 80, 160};
  std::string alpha = "const:0.5";
  std::vector<std::string> defects;
  std::string lambda_mode = "finite";  // finite | limit
  std::string pmf_binary;
  std::string pmf_csv;
  std::optional<int> export_n;
  double tol = 1e-12;
};

struct ConvergeArgs {
  double rho = 0.5;
  double m = 0.05;
  std::vector<int> ell = {50, 200};
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::string method = "mcmc";
  long long sweeps = -1;
  int grid = 1024;
  bool self_test = false;
  double tol = 1e-12;
};

struct VershikArgs {
  double rho = 0.5;
  double m = 0.0;
  int grid = 1024;
  double tol = 1e-12;
};

void run_invert(const InvertArgs& args, std::ostream& out);
void run_profile(const ProfileArgs& args, std::ostream& out);
void run_sample(const SampleArgs& args, std::ostream& out);
void run_llt(const LltArgs& args, std::ostream& out);
/// Returns false when the self-test fails.
bool run_converge(const ConvergeArgs& args, std::ostream& out);
void run_vershik(const VershikArgs& args, std::ostream& out);

}  // namespace eqens::cli
