#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "eqens/ensemble.hpp"
#include "eqens/error.hpp"
#include "eqens/inversion.hpp"
#include "eqens/io.hpp"
#include "eqens/llt.hpp"
#include "eqens/vershik.hpp"
#include "eqens/young.hpp"
#include "parallel.hpp"

namespace eqens::cli {
namespace {

using nlohmann::json;

InversionOptions inversion_options(double tol) {
  InversionOptions opts;
  opts.tol = tol;
  return opts;
}

json params_json(const ProfileParams& p) {
  return {{"a", p.a()}, {"b", p.b()}, {"log_odds", p.log_odds()}};
}

CanonicalSpec resolve_spec(const SampleArgs& args) {
  if (args.K && args.M) {
    const CanonicalSpec spec{args.ell, *args.K, *args.M};
    if (!spec.feasible()) {
      std::ostringstream os;
      os << "sample: (K, M) = (" << spec.K << ", " << spec.M << ") is infeasible for l = "
         << spec.ell;
      throw Error(ErrorKind::InfeasibleConstraint, os.str());
    }
    return spec;
  }
  if (args.rho && args.m) {
    const MacroState target{*args.rho, *args.m};
    if (!target.in_domain()) {
      throw Error(ErrorKind::OutOfDomain, "sample: (rho, m) outside the domain");
    }
    return CanonicalSpec::from_macro(args.ell, target);
  }
  throw Error(ErrorKind::OutOfDomain, "sample: give either --K and --M or --rho and --m");
}

std::vector<ParticleConfig> draw(const CanonicalSpec& spec, const std::string& method,
                                 std::uint64_t seed, std::size_t count, long long sweeps,
                                 int chains) {
  if (method == "exact") return sample_exact(spec, seed, count);
  McmcOptions opts;
  opts.sweeps = sweeps;
  opts.chains = chains;
  return sample_mcmc(spec, seed, opts, count);
}

std::string resolve_method(const std::string& method, int ell) {
  if (method == "auto") return ell <= kDefaultExactSamplerCap ? "exact" : "mcmc";
  if (method != "exact" && method != "mcmc") {
    throw Error(ErrorKind::OutOfDomain, "unknown method '" + method + "'");
  }
  return method;
}

// Total variation between the empirical law and the uniform law on the
// class; unseen configurations contribute their full uniform mass.
double tv_to_uniform(const std::vector<ParticleConfig>& samples, const Count& size) {
  std::map<std::vector<std::uint8_t>, std::size_t> hist;
  for (const auto& s : samples) ++hist[s.occupancy];
  const double u = 1.0 / static_cast<double>(size);
  const double total = static_cast<double>(samples.size());
  double tv = 0.0;
  for (const auto& [occ, hits] : hist) tv += std::abs(static_cast<double>(hits) / total - u);
  tv += (static_cast<double>(size) - static_cast<double>(hist.size())) * u;
  return 0.5 * tv;
}

std::function<double(double)> parse_alpha(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "const") {
      const double p = std::stod(rest);
      return [p](double) { return p; };
    }
    if (kind == "profile") {
      const auto comma = rest.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("profile needs a,b");
      const ProfileParams params(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
      return [params](double x) { return beta(2.0 * x - 1.0, params); };
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::OutOfDomain,
              "--alpha must be const:p or profile:a,b (got '" + spec + "')");
}

std::vector<int> parse_defects(const std::vector<std::string>& tokens, int n) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t == "mid") {
      out.push_back(n / 2);
      continue;
    }
    try {
      std::size_t used = 0;
      const int k = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      out.push_back(k);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::OutOfDomain, "--defects: bad token '" + t + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void run_invert(const InvertArgs& args, std::ostream& out) {
  const auto r = invert({args.rho, args.m}, inversion_options(args.tol));
  json j = params_json(r.params);
  j["rho"] = args.rho;
  j["m"] = args.m;
  j["residual_rho"] = r.residual_rho;
  j["residual_m"] = r.residual_m;
  j["residual"] = std::max(r.residual_rho, r.residual_m);
  j["iterations"] = r.iterations;
  out << j.dump() << '\n';
}

void run_profile(const ProfileArgs& args, std::ostream& out) {
  std::optional<ProfileParams> p;
  if (args.a && args.b) {
    p.emplace(*args.a, *args.b);
  } else if (args.rho && args.m) {
    p.emplace(invert({*args.rho, *args.m}, inversion_options(args.tol)).params);
  } else {
    throw Error(ErrorKind::OutOfDomain, "profile: give either --a and --b or --rho and --m");
  }
  const auto grid = Curve::uniform_grid(-1.0, 1.0, args.grid);
  out << "x,beta,psi\n";
  for (double x : grid) {
    out << format_real(x) << ',' << format_real(beta(x, *p)) << ','
        << format_real(limit_height(x, *p)) << '\n';
  }
}

void run_sample(const SampleArgs& args, std::ostream& out) {
  const CanonicalSpec spec = resolve_spec(args);
  const std::string method = resolve_method(args.method, spec.ell);
  const auto samples = draw(spec, method, args.seed, args.count, args.sweeps, args.chains);
  for (const auto& s : samples) out << json(s).dump() << '\n';
  if (!args.summary) return;

  const int ell = spec.ell;
  const int n = spec.sites();
  std::vector<double> one_point(static_cast<std::size_t>(n), 0.0);
  std::vector<double> height(static_cast<std::size_t>(n), 0.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = -ell; k <= ell; ++k) x[k + ell] = static_cast<double>(k) / ell;
  for (const auto& s : samples) {
    const HeightFunction h(s);
    for (int k = -ell; k <= ell; ++k) {
      one_point[k + ell] += s.at(k);
      height[k + ell] += static_cast<double>(h(k)) / ell;
    }
  }
  const double drawn = std::max<double>(1.0, static_cast<double>(samples.size()));
  for (auto& v : one_point) v /= drawn;
  for (auto& v : height) v /= drawn;

  const MacroState realized = spec.realized();
  json summary = {
      {"ell", ell},
      {"K", spec.K},
      {"M", spec.M},
      {"realized_rho", realized.rho},
      {"realized_m", realized.m},
      {"method", method},
      {"seed", args.seed},
      {"count", samples.size()},
      {"one_point", one_point},
      {"scaled_height", {{"x", x}, {"value", height}}},
  };
  if (ell <= kMaxExactEll && !samples.empty()) {
    summary["tv_distance"] = tv_to_uniform(samples, count(spec));
  }
  if (realized.in_domain() && std::abs(realized.m) < 0.5 * (1 - 1e-6) * realized.v()) {
    const auto p = invert(realized, inversion_options(args.tol)).params;
    std::vector<double> limit;
    for (double xi : x) limit.push_back(beta(xi, p));
    summary["profile"] = params_json(p);
    summary["limit_profile"] = limit;
  }
  out << json{{"summary", summary}}.dump() << '\n';
}

void run_llt(const LltArgs& args, std::ostream& out) {
  const auto alpha = parse_alpha(args.alpha);
  if (args.lambda_mode != "finite" && args.lambda_mode != "limit") {
    throw Error(ErrorKind::OutOfDomain, "--lambda-mode must be finite or limit");
  }
  const bool limit_mode = args.lambda_mode == "limit";
  for (int n : args.n) {
    if (n < 2) throw Error(ErrorKind::OutOfDomain, "--n entries must be >= 2");
    if (n > kDefaultPmfCap) {
      throw Error(ErrorKind::CapExceeded,
                  "llt: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(kDefaultPmfCap));
    }
  }
  const int export_n = args.export_n.value_or(args.n.empty() ? 0 : args.n.back());

  struct Row {
    int n = 0;
    std::size_t active = 0, defects = 0;
    double lambda = 0.0, mass = 0.0;
    SupError err;
  };
  std::vector<Row> rows(args.n.size());
  parallel_for(args.n.size(), [&](std::size_t i) {
    const int n = args.n[i];
    const auto model = WeightedSumModel::from_profile(n, alpha, parse_defects(args.defects, n));
    const auto pmf = exact_pmf(model);
    const auto mo = moments(model);
    const double lambda = limit_mode ? limit_constants(alpha).lambda : mo.lambda;
    Row& row = rows[i];
    row.n = n;
    row.active = model.active_sites().size();
    row.defects = model.defects().size();
    row.lambda = lambda;
    row.mass = pmf.mass();
    row.err = sup_error(pmf, mo, lambda);
    if (n == export_n) {
      if (!args.pmf_binary.empty()) {
        std::ofstream bin(args.pmf_binary, std::ios::binary);
        if (!bin) throw Error(ErrorKind::OutOfDomain, "cannot open " + args.pmf_binary);
        write_pmf_binary(bin, pmf, model.defects().size());
      }
      if (!args.pmf_csv.empty()) {
        std::ofstream csv(args.pmf_csv);
        if (!csv) throw Error(ErrorKind::OutOfDomain, "cannot open " + args.pmf_csv);
        write_pmf_csv(csv, pmf, mo, lambda);
      }
    }
  });

  for (const auto& r : rows) {
    if (std::abs(r.mass - 1.0) > args.tol) {
      throw NumericalFailure("llt: PMF mass at n = " + std::to_string(r.n) + " is " +
                             format_real(r.mass));
    }
  }
  double slope = NAN;
  if (rows.size() >= 2) {
    std::vector<double> ns, es;
    for (const auto& r : rows) {
      ns.push_back(r.n);
      es.push_back(r.err.value);
    }
    slope = loglog_slope(ns, es);
  }
  out << "n,active_sites,defects,sup_error,K,L,lambda,slope\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.active << ',' << r.defects << ',' << format_real(r.err.value) << ','
        << r.err.K << ',' << r.err.L << ',' << format_real(r.lambda) << ','
        << format_real(slope) << '\n';
  }
}

bool run_converge(const ConvergeArgs& args, std::ostream& out) {
  const MacroState target{args.rho, args.m};
  const auto p = invert(target, inversion_options(args.tol)).params;
  const Curve psi = limit_curve(p, args.grid);
  if (args.self_test) {
    std::vector<double> lifted(psi.y());
    for (auto& v : lifted) v += 0.1;
    const double identical = sup_distance(psi, psi);
    const double shifted = sup_distance(psi, Curve(psi.x(), lifted));
    const bool pass = identical == 0.0 && std::abs(shifted - 0.1) < 1e-12;
    out << json{{"identical", identical}, {"shifted", shifted}, {"pass", pass}}.dump() << '\n';
    return pass;
  }
  std::vector<CanonicalSpec> specs;
  std::vector<std::string> methods;
  for (int ell : args.ell) {
    specs.push_back(CanonicalSpec::from_macro(ell, target));
    methods.push_back(resolve_method(args.method, ell));
    if (methods.back() == "exact" && ell > kDefaultExactSamplerCap) {
      throw Error(ErrorKind::CapExceeded, "converge: exact sampling capped at l = " +
                                              std::to_string(kDefaultExactSamplerCap));
    }
  }
  struct Row {
    double mean = 0.0, sd = 0.0;
  };
  std::vector<Row> rows(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const auto samples = draw(specs[i], methods[i], args.seed, args.samples, args.sweeps, 1);
    std::vector<double> d;
    for (const auto& s : samples) d.push_back(sup_distance(scaled_height_steps(HeightFunction(s)), psi));
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    rows[i] = {mean, d.size() > 1 ? std::sqrt(ss / static_cast<double>(d.size() - 1)) : 0.0};
  });
  out << "ell,K,M,samples,method,mean_sup_distance,sd\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out << specs[i].ell << ',' << specs[i].K << ',' << specs[i].M << ',' << args.samples << ','
        << methods[i] << ',' << format_real(rows[i].mean) << ',' << format_real(rows[i].sd)
        << '\n';
  }
  return true;
}

void run_vershik(const VershikArgs& args, std::ostream& out) {
  if (args.grid < 5) throw Error(ErrorKind::GridTooCoarse, "vershik: need --grid >= 5");
  if (!MacroState{args.rho, args.m}.in_domain()) {
    throw Error(ErrorKind::OutOfDomain, "vershik: (rho, m) outside the domain");
  }
  const auto id = identify_curves(args.rho, args.m, args.grid);
  const BoseCurveParams& bose = id.bose;
  const double c = bose.c_bar;

  const auto fermi = rotate_to_fermi(bose, args.grid);
  std::vector<double> d1(fermi.beta.size()), d2(fermi.beta.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    d1[i] = -fermi.beta[i];
    d2[i] = -fermi.beta_prime[i];
  }
  const double fermi_residual = ode_residual(d1, d2, std::numbers::sqrt2 * c);

  // L'' = c (1 - L'^2) checked against central differences of L
  const auto t = Curve::uniform_grid(0.0, 1.0, args.grid);
  double bose_residual = 0.0;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    const double fd2 =
        (bose_L(t[i + 1], bose) - 2.0 * bose_L(t[i], bose) + bose_L(t[i - 1], bose)) / (h * h);
    const double lp = bose_L_prime(t[i], bose);
    bose_residual = std::max(bose_residual, std::abs(fd2 - c * (1.0 - lp * lp)));
  }

  json j = params_json(id.params);
  j["rho"] = args.rho;
  j["m"] = args.m;
  j["rho_bar"] = bose.rho_bar;
  j["c_bar"] = c;
  j["grid"] = args.grid;
  j["sup_discrepancy"] = id.discrepancy;
  j["ode_residual_fermi"] = fermi_residual;
  j["ode_residual_bose"] = bose_residual;
  j["ode_residual_limit"] = limit_curve_ode_residual(id.params, -id.params.b(), args.grid);
  j["L0"] = bose_L(0.0, bose);
  j["L1"] = bose_L(1.0, bose);
  out << j.dump() << '\n';
}

}  // namespace eqens::cli
