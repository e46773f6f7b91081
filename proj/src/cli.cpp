#include "sphdeconv/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "sphdeconv/certify.hpp"
#include "sphdeconv/error.hpp"
#include "sphdeconv/filters.hpp"
#include "sphdeconv/forward.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/io.hpp"
#include "sphdeconv/reconstruct.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

namespace {

using io::json;

struct Args {
  // shared
  long n = 0;
  int m = 0;
  int m_max = 0;
  int m_min = 3;
  std::uint64_t seed = 0;
  std::string rule = "center";
  std::string out, nodes_out, nodes_in, filter_in, truth_in, truth_out, measurements_in,
      solution_in, table_in, scaled_csv;
  // filter
  std::string kind;
  std::string method = "closed";
  double theta0 = 0.0, lambda0 = 0.0, radius = 0.0, altitude = 0.0;
  double tol = 1e-12;
  double gamma = 0.0, zeta = 0.0, omega = 0.0;
  // simulate / certify / experiment
  int truth_degree = 30;
  double truth_sigma = 2.0;
  double beta = 0.0;
  std::string betas = "0";
  double f_norm_omega = 0.0;
  double target_eps = 0.5;
  bool search = false;
};

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    io::write_atomic(path, content);
  }
}

bool given(const CLI::App* sub, const std::string& name) { return sub->count(name) > 0; }

void need(const CLI::App* sub, const std::string& name, const std::string& why) {
  if (!given(sub, name)) fail(ErrorKind::InvalidArgument, name + " is required " + why);
}

NodeRule parse_rule(const std::string& rule) {
  if (rule == "center") return NodeRule::AreaCenter;
  if (rule == "random") return NodeRule::RandomInRegion;
  fail(ErrorKind::InvalidArgument, "--rule must be 'center' or 'random', got '" + rule + "'");
}

MzFamily family_for(const CLI::App* sub, const Args& a) {
  if (!a.nodes_in.empty()) return io::nodes_from_csv(io::read_file(a.nodes_in));
  need(sub, "--n", "(or pass --nodes)");
  const NodeRule rule = parse_rule(a.rule);
  if (rule == NodeRule::RandomInRegion) need(sub, "--seed", "for random node placement");
  return pick_nodes(build_partition(a.n), rule, a.seed);
}

MultiplierFilter load_filter_or_identity(const std::string& path, int m_max) {
  if (path.empty()) return MultiplierFilter::identity(m_max);
  return io::filter_from_json(io::read_json(path));
}

std::vector<double> parse_list(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, name + ": '" + field + "' is not a number");
    }
  }
  require(!out.empty(), name + ": empty list");
  return out;
}

// Decay and lower fits for a certificate: keep stored fits unless the
// requested exponent differs.
void ensure_fits(MultiplierFilter& f, const CLI::App* sub, const Args& a, double& gamma, double& zeta) {
  if (given(sub, "--gamma")) {
    gamma = a.gamma;
    if (!f.decay_fit || f.decay_fit->gamma != gamma) fit_decay(f, gamma);
  } else if (f.decay_fit) {
    gamma = f.decay_fit->gamma;
  } else if (f.provenance == Provenance::Identity) {
    gamma = 0.0;
    fit_decay(f, gamma);
  } else {
    fail(ErrorKind::InvalidArgument, "--gamma is required when the filter has no decay_fit");
  }
  zeta = given(sub, "--zeta") ? a.zeta : (f.lower_fit ? f.lower_fit->zeta : gamma);
  if (!f.lower_fit || f.lower_fit->zeta != zeta) fit_lower(f, zeta);
}

int cmd_partition(const CLI::App* sub, const Args& a, std::ostream& out) {
  const EqualAreaPartition p = build_partition(a.n);
  const std::string text = io::partition_to_json(p).dump(2) + "\n";
  write_or_print(a.out, text, out);
  if (!a.nodes_out.empty()) {
    const NodeRule rule = parse_rule(a.rule);
    if (rule == NodeRule::RandomInRegion) need(sub, "--seed", "for random node placement");
    io::write_atomic(a.nodes_out, io::nodes_to_csv(pick_nodes(p, rule, a.seed)));
  }
  if (!a.out.empty()) emit(out, json{{"command", "partition"}, {"N", p.N}, {"s", p.s}});
  return 0;
}

int cmd_nodes(const CLI::App* sub, const Args& a, std::ostream& out) {
  write_or_print(a.out, io::nodes_to_csv(family_for(sub, a)), out);
  return 0;
}

int cmd_filter(const CLI::App* sub, const Args& a, std::ostream& out) {
  need(sub, "--m-max", "");
  MultiplierFilter f;
  std::optional<RadialProfile> profile;
  if (a.kind == "identity") {
    f = MultiplierFilter::identity(a.m_max);
  } else {
    if (a.kind == "cap") {
      need(sub, "--theta0", "for a cap filter");
      profile = RadialProfile::cap(a.theta0);
    } else if (a.kind == "planck") {
      need(sub, "--lambda0", "for a planck filter");
      need(sub, "--radius", "for a planck filter");
      profile = RadialProfile::planck(a.lambda0, a.radius);
    } else if (a.kind == "lunar") {
      need(sub, "--radius", "for a lunar filter");
      need(sub, "--altitude", "for a lunar filter");
      profile = RadialProfile::lunar(a.radius, a.altitude);
    } else if (a.kind == "tabulated") {
      need(sub, "--table", "for a tabulated filter");
      std::vector<double> r, v;
      std::istringstream in(io::read_file(a.table_in));
      std::string line;
      std::getline(in, line);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      require(line == "r,value", "--table: expected header 'r,value'");
      while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto vals = parse_list(line, "--table");
        require(vals.size() == 2, "--table: expected two columns");
        r.push_back(vals[0]);
        v.push_back(vals[1]);
      }
      profile = RadialProfile::tabulated(std::move(r), std::move(v));
    } else {
      fail(ErrorKind::InvalidArgument, "--kind must be identity, cap, planck, lunar or tabulated");
    }
    if (a.kind == "cap" && a.method == "closed") {
      f = cap_multipliers(a.theta0, a.m_max);
    } else {
      require(a.method == "closed" || a.method == "quadrature",
              "--method must be 'closed' or 'quadrature'");
      f = multipliers_from_profile(*profile, JacobiParams::sphere(2), a.m_max, a.tol);
    }
  }
  if (given(sub, "--gamma")) fit_decay(f, a.gamma);
  if (given(sub, "--zeta")) fit_lower(f, a.zeta);
  write_or_print(a.out, io::filter_to_json(f).dump(2) + "\n", out);

  if (!a.scaled_csv.empty()) {
    const double g = given(sub, "--gamma") ? a.gamma : 0.0;
    std::string csv = "m,b,scaled\n";
    for (int m = 0; m <= f.m_max(); ++m) {
      const double scaled = std::abs(f.b[m]) * std::pow(1.0 + m * (m + 1.0), 0.5 * g);
      csv += std::to_string(m) + "," + io::fmt(f.b[m]) + "," + io::fmt(scaled) + "\n";
    }
    io::write_atomic(a.scaled_csv, csv);
  }
  if (!a.out.empty()) {
    json summary{{"command", "filter"}, {"kind", a.kind}, {"m_max", f.m_max()}};
    if (profile) summary["h_l2_norm"] = profile_l2_norm(*profile);
    if (f.decay_fit) summary["c"] = f.decay_fit->c;
    if (f.lower_fit) summary["c0"] = f.lower_fit->c0;
    emit(out, summary);
  }
  return 0;
}

CoefficientVector truth_for(const CLI::App* sub, const Args& a) {
  if (!a.truth_in.empty()) return io::coefficients_from_json(io::read_json(a.truth_in));
  need(sub, "--seed", "to draw a random truth (or pass --truth)");
  return random_poly(a.truth_degree, SobolevParams{a.truth_sigma}, a.seed, true);
}

int cmd_simulate(const CLI::App* sub, const Args& a, std::ostream& out) {
  require(!a.out.empty(), "--out is required");
  require(a.beta >= 0.0, "--beta must be non-negative");
  if (a.beta > 0.0) need(sub, "--seed", "when --beta > 0");
  const CoefficientVector truth = truth_for(sub, a);
  const MultiplierFilter f = load_filter_or_identity(a.filter_in, truth.m_max());
  const MzFamily fam = family_for(sub, a);
  const MeasurementSet ms = simulate(truth, f, fam, a.beta, a.seed);
  io::write_atomic(a.out, io::measurements_to_csv(ms));
  io::write_atomic(a.out + ".json", io::measurement_sidecar(ms).dump(2) + "\n");
  if (!a.truth_out.empty()) {
    io::write_atomic(a.truth_out, io::coefficients_to_json(truth).dump(2) + "\n");
  }
  emit(out, json{{"command", "simulate"}, {"count", ms.size()}, {"beta", ms.beta},
                 {"truth_ref", *ms.truth_ref}});
  return 0;
}

MeasurementSet load_measurements(const std::string& path) {
  const std::string side = path + ".json";
  if (std::filesystem::exists(side)) {
    const json j = io::read_json(side);
    return io::measurements_from_csv(io::read_file(path), &j);
  }
  return io::measurements_from_csv(io::read_file(path));
}

MzFamily family_of(const MeasurementSet& ms) {
  MzFamily fam;
  fam.nodes = ms.nodes;
  fam.weights = ms.weights;
  return fam;
}

int cmd_reconstruct(const CLI::App* sub, const Args& a, std::ostream& out) {
  need(sub, "--measurements", "");
  need(sub, "--m", "");
  const MeasurementSet ms = load_measurements(a.measurements_in);
  const MultiplierFilter f = load_filter_or_identity(a.filter_in, a.m);
  const LsqReport r = lsq_solve(f, family_of(ms), a.m, ms.y);
  write_or_print(a.out, io::solution_to_json(r).dump(2) + "\n", out);
  if (!a.out.empty()) {
    json summary = io::lsq_summary(r);
    summary["command"] = "reconstruct";
    emit(out, summary);
  }
  return 0;
}

int cmd_certify(const CLI::App* sub, const Args& a, std::ostream& out) {
  need(sub, "--measurements", "");
  need(sub, "--solution", "");
  need(sub, "--omega", "");
  const MeasurementSet ms = load_measurements(a.measurements_in);
  const CoefficientVector solution = io::solution_from_json(io::read_json(a.solution_in));
  std::optional<CoefficientVector> truth;
  if (!a.truth_in.empty()) truth = io::coefficients_from_json(io::read_json(a.truth_in));
  const int top = std::max(solution.m_max(), truth ? truth->m_max() : 0);
  MultiplierFilter f = load_filter_or_identity(a.filter_in, top);
  double gamma = 0.0, zeta = 0.0;
  ensure_fits(f, sub, a, gamma, zeta);

  const int m = solution.m_max();
  const MzConstants k = mz_constants(family_of(ms), m);
  CertificateInputs in;
  in.omega = a.omega;
  in.gamma = gamma;
  in.zeta = zeta;
  in.c = f.decay_fit->c;
  in.c0 = f.lower_fit->c0;
  in.fit_m_lo = 0;
  in.fit_m_hi = f.m_max();
  in.epsilon = k.epsilon;
  in.m = m;
  in.beta = given(sub, "--beta") ? a.beta : ms.beta;
  if (truth) {
    in.norm_ff_sigma = sobolev_norm(apply_multiplier(f, *truth), SobolevParams{a.omega + gamma});
    in.norm_f_omega = sobolev_norm(*truth, SobolevParams{a.omega});
    in.truth_degree = truth->m_max();
  }
  if (given(sub, "--f-norm-omega")) in.norm_f_omega = a.f_norm_omega;
  const Certificate cert = bound_apriori(in);
  json j = io::certificate_to_json(cert);
  j["A"] = k.A;
  j["B"] = k.B;
  if (truth) {
    const VerifyReport v = verify_bound(*truth, f, solution, cert);
    j["verify"] = json{{"measured_Hzeta", v.measured_Hzeta},
                       {"measured_L2", v.measured_L2},
                       {"pass_Hzeta", v.pass_Hzeta},
                       {"pass_L2", v.pass_L2 ? json(*v.pass_L2) : json(nullptr)},
                       {"result", v.pass() ? "PASS" : "FAIL"}};
  } else {
    j["verify"] = nullptr;
  }
  write_or_print(a.out, j.dump(2) + "\n", out);
  if (!a.out.empty()) {
    json summary{{"command", "certify"}, {"bound_Hzeta", cert.bound_Hzeta}};
    if (truth) summary["result"] = j["verify"]["result"];
    emit(out, summary);
  }
  return 0;
}

int cmd_verify_mz(const CLI::App* sub, const Args& a, std::ostream& out) {
  need(sub, "--m", "");
  json j;
  if (a.search) {
    const MzSearch s = find_mz_family(a.m, a.target_eps);
    json trace = json::array();
    for (const auto& [N, eps] : s.trace) trace.push_back(json{{"N", N}, {"epsilon", eps}});
    j = json{{"m", a.m}, {"N", s.N}, {"A", s.constants.A}, {"B", s.constants.B},
             {"epsilon", s.constants.epsilon}, {"C1", s.C1}, {"trace", trace}};
  } else {
    const MzFamily fam = family_for(sub, a);
    const MzConstants k = mz_constants(fam, a.m);
    j = json{{"m", a.m}, {"N", fam.size()}, {"A", k.A}, {"B", k.B}, {"epsilon", k.epsilon}};
  }
  j["is_mz"] = j["epsilon"].get<double>() < 1.0;
  write_or_print(a.out, j.dump(2) + "\n", out);
  return 0;
}

int cmd_experiment(const CLI::App* sub, const Args& a, std::ostream& out) {
  need(sub, "--omega", "");
  need(sub, "--seed", "to draw the random truth");
  need(sub, "--m-max", "");
  require(a.m_min >= 0 && a.m_min <= a.m_max, "--m-min must lie in [0, --m-max]");
  const std::vector<double> betas = parse_list(a.betas, "--beta");
  for (double b : betas) require(b >= 0.0, "--beta values must be non-negative");

  const CoefficientVector truth = truth_for(sub, a);
  MultiplierFilter f = load_filter_or_identity(a.filter_in, std::max(truth.m_max(), a.m_max));
  require(f.m_max() >= std::max(truth.m_max(), a.m_max),
          "experiment: the filter must reach the truth degree and --m-max");
  double gamma = 0.0, zeta = 0.0;
  ensure_fits(f, sub, a, gamma, zeta);

  std::string csv = "m,N,beta,measured_L2,measured_Hzeta,bound_Hzeta,bound_L2\n";
  int passes = 0, rows = 0;
  for (int m = a.m_min; m <= a.m_max; ++m) {
    const MzSearch s = find_mz_family(m, a.target_eps);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      ExperimentSetup setup{f, truth, a.omega, zeta, m, betas[i], a.seed + 1000003ULL * (i + 1) + m};
      const ExperimentResult r = run_experiment(setup, s.family);
      csv += std::to_string(m) + "," + std::to_string(r.N) + "," + io::fmt(betas[i]) + "," +
             io::fmt(r.verify.measured_L2) + "," + io::fmt(r.verify.measured_Hzeta) + "," +
             io::fmt(r.certificate.bound_Hzeta) + "," +
             (r.certificate.bound_L2 ? io::fmt(*r.certificate.bound_L2) : std::string()) + "\n";
      ++rows;
      if (r.verify.pass()) ++passes;
    }
  }
  write_or_print(a.out, csv, out);
  if (!a.out.empty()) {
    emit(out, json{{"command", "experiment"}, {"rows", rows}, {"pass", passes},
                   {"result", passes == rows ? "PASS" : "FAIL"}});
  }
  return 0;
}

// Flattens a JSON config object into flag arguments.
std::vector<std::string> config_args(const std::string& path, const CLI::App* sub) {
  const json j = io::read_json(path);
  require(j.is_object(), "--config: expected a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    flag = "--" + flag;
    if (sub->get_option_no_throw(flag) == nullptr) {
      fail(ErrorKind::InvalidArgument, "--config: unknown key '" + key + "' for " + sub->get_name());
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      out.push_back(flag);
      out.push_back(value.dump());
    } else if (value.is_number()) {
      out.push_back(flag);
      out.push_back(io::fmt(value.get<double>()));
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ",";
        joined += v.is_number_float() ? io::fmt(v.get<double>()) : v.dump();
      }
      out.push_back(flag);
      out.push_back(joined);
    } else {
      fail(ErrorKind::InvalidArgument, "--config: unsupported value for key '" + key + "'");
    }
  }
  return out;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  emit(err, json{{"error", {{"kind", kind}, {"message", message}}}});
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical deconvolution toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Args a;
  std::string config_path;

  auto add_common = [&](CLI::App* s) {
    s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    s->add_option("--config", config_path, "JSON file of option values");
    s->add_option("--out", a.out, "output file (stdout when omitted)");
  };
  auto add_nodes = [&](CLI::App* s) {
    s->add_option("--n", a.n, "partition size N >= 50");
    s->add_option("--nodes", a.nodes_in, "node CSV (theta,phi,weight)");
    s->add_option("--rule", a.rule, "node rule: center or random");
    s->add_option("--seed", a.seed, "random seed");
  };

  auto* partition = app.add_subcommand("partition", "equal-area partition JSON and nodes");
  add_common(partition);
  partition->add_option("--n", a.n, "N >= 50")->required();
  partition->add_option("--nodes-out", a.nodes_out, "also write node CSV");
  partition->add_option("--rule", a.rule, "node rule: center or random");
  partition->add_option("--seed", a.seed, "random seed");

  auto* nodes = app.add_subcommand("nodes", "node CSV of a partition");
  add_common(nodes);
  add_nodes(nodes);

  auto* filter = app.add_subcommand("filter", "multiplier sequence JSON");
  add_common(filter);
  filter->add_option("--kind", a.kind, "identity, cap, planck, lunar or tabulated")->required();
  filter->add_option("--m-max", a.m_max, "highest degree");
  filter->add_option("--theta0", a.theta0, "cap radius in radians");
  filter->add_option("--lambda0", a.lambda0, "planck wavelength");
  filter->add_option("--radius", a.radius, "planck aperture / lunar body radius");
  filter->add_option("--altitude", a.altitude, "lunar spacecraft altitude");
  filter->add_option("--table", a.table_in, "CSV r,value for a tabulated profile");
  filter->add_option("--method", a.method, "cap coefficients: closed or quadrature");
  filter->add_option("--tol", a.tol, "quadrature tolerance");
  filter->add_option("--gamma", a.gamma, "fit the decay constant c for this gamma");
  filter->add_option("--zeta", a.zeta, "fit the lower constant c0 for this zeta");
  filter->add_option("--scaled-csv", a.scaled_csv, "CSV of m, b_m, (1+m(m+1))^(gamma/2)|b_m|");

  auto* sim = app.add_subcommand("simulate", "noisy samples of F f");
  add_common(sim);
  add_nodes(sim);
  sim->add_option("--filter", a.filter_in, "filter JSON (identity when omitted)");
  sim->add_option("--truth", a.truth_in, "coefficient JSON of f");
  sim->add_option("--truth-degree", a.truth_degree, "degree of a random truth");
  sim->add_option("--truth-sigma", a.truth_sigma, "smoothness of a random truth");
  sim->add_option("--truth-out", a.truth_out, "write the truth coefficients");
  sim->add_option("--beta", a.beta, "noise level");

  auto* rec = app.add_subcommand("reconstruct", "weighted least-squares solution JSON");
  add_common(rec);
  rec->add_option("--measurements", a.measurements_in, "measurement CSV");
  rec->add_option("--filter", a.filter_in, "filter JSON (identity when omitted)");
  rec->add_option("--m", a.m, "degree of the estimator");

  auto* cert = app.add_subcommand("certify", "error certificate JSON");
  add_common(cert);
  cert->add_option("--measurements", a.measurements_in, "measurement CSV");
  cert->add_option("--solution", a.solution_in, "solution JSON");
  cert->add_option("--filter", a.filter_in, "filter JSON (identity when omitted)");
  cert->add_option("--truth", a.truth_in, "coefficient JSON of f, enables PASS/FAIL");
  cert->add_option("--omega", a.omega, "smoothness of f");
  cert->add_option("--gamma", a.gamma, "decay exponent of the filter");
  cert->add_option("--zeta", a.zeta, "error norm exponent");
  cert->add_option("--beta", a.beta, "noise level (defaults to the sidecar value)");
  cert->add_option("--f-norm-omega", a.f_norm_omega, "bound on ||f||_{H^omega}");

  auto* vmz = app.add_subcommand("verify-mz", "frame constants A, B, epsilon");
  add_common(vmz);
  add_nodes(vmz);
  vmz->add_option("--m", a.m, "degree");
  vmz->add_flag("--search", a.search, "double N until epsilon <= --target-eps");
  vmz->add_option("--target-eps", a.target_eps, "epsilon target for --search");

  auto* exp = app.add_subcommand("experiment", "convergence sweep CSV");
  add_common(exp);
  exp->add_option("--filter", a.filter_in, "filter JSON (identity when omitted)");
  exp->add_option("--omega", a.omega, "smoothness of the truth");
  exp->add_option("--gamma", a.gamma, "decay exponent of the filter");
  exp->add_option("--zeta", a.zeta, "error norm exponent");
  exp->add_option("--m-min", a.m_min, "first degree");
  exp->add_option("--m-max", a.m_max, "last degree");
  exp->add_option("--beta", a.betas, "comma separated noise levels");
  exp->add_option("--truth-degree", a.truth_degree, "degree of the random truth");
  exp->add_option("--seed", a.seed, "random seed");
  exp->add_option("--target-eps", a.target_eps, "epsilon target of the node search");

  try {
    std::vector<std::string> args = raw_args;
    // Expand --config right after the subcommand so explicit flags win.
    auto cfg = std::find_if(args.begin(), args.end(), [](const std::string& s) {
      return s == "--config" || s.rfind("--config=", 0) == 0;
    });
    if (cfg != args.end()) {
      std::string path;
      if (*cfg == "--config") {
        require(std::next(cfg) != args.end(), "--config needs a file argument");
        path = *std::next(cfg);
        args.erase(cfg, std::next(cfg, 2));
      } else {
        path = cfg->substr(9);
        args.erase(cfg);
      }
      require(!args.empty(), "missing subcommand");
      CLI::App* sub = nullptr;
      try {
        sub = app.get_subcommand(args.front());
      } catch (const CLI::OptionNotFound&) {
        fail(ErrorKind::InvalidArgument, "unknown subcommand '" + args.front() + "'");
      }
      const std::vector<std::string> extra = config_args(path, sub);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "invalid_argument", e.what());
    return 2;
  } catch (const Error& e) {
    print_error(err, to_string(e.kind()), e.what());
    return 2;
  }

  try {
    if (*partition) return cmd_partition(partition, a, out);
    if (*nodes) return cmd_nodes(nodes, a, out);
    if (*filter) return cmd_filter(filter, a, out);
    if (*sim) return cmd_simulate(sim, a, out);
    if (*rec) return cmd_reconstruct(rec, a, out);
    if (*cert) return cmd_certify(cert, a, out);
    if (*vmz) return cmd_verify_mz(vmz, a, out);
    if (*exp) return cmd_experiment(exp, a, out);
  } catch (const Error& e) {
    print_error(err, to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
  return 1;
}

}  // namespace sphdeconv
