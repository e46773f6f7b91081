#include "sphdeconv/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sphdeconv/error.hpp"

namespace sphdeconv::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::Io, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move output into place at '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
  }
}

json partition_to_json(const EqualAreaPartition& p) {
  return json{{"N", p.N},
              {"theta0", p.theta0},
              {"s", p.s},
              {"delta_theta", p.delta_theta},
              {"ell", p.ell},
              {"theta_bounds", p.theta_bounds},
              {"max_cap_radius", p.max_cap_radius},
              {"min_inscribed_radius", p.min_inscribed_radius}};
}

json coefficients_to_json(const CoefficientVector& c) {
  return json{{"m_max", c.m_max()},
              {"coeffs", std::vector<double>(c.values().begin(), c.values().end())}};
}

CoefficientVector coefficients_from_json(const json& j) {
  try {
    return CoefficientVector(j.at("m_max").get<int>(), j.at("coeffs").get<std::vector<double>>());
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("coefficient JSON: ") + e.what());
  }
}

json filter_to_json(const MultiplierFilter& f) {
  json j{{"m_max", f.m_max()}, {"b", f.b}, {"provenance", to_string(f.provenance)}};
  if (f.decay_fit) {
    j["decay_fit"] = json{{"c", f.decay_fit->c},
                          {"gamma", f.decay_fit->gamma},
                          {"m_range", {f.decay_fit->m_lo, f.decay_fit->m_hi}}};
  }
  if (f.lower_fit) {
    j["lower_fit"] = json{{"c0", f.lower_fit->c0},
                          {"zeta", f.lower_fit->zeta},
                          {"m_range", {f.lower_fit->m_lo, f.lower_fit->m_hi}}};
  }
  return j;
}

MultiplierFilter filter_from_json(const json& j) {
  try {
    MultiplierFilter f;
    f.b = j.at("b").get<std::vector<double>>();
    require(!f.b.empty(), "filter JSON: empty b");
    if (j.contains("m_max")) {
      require(j.at("m_max").get<int>() == f.m_max(), "filter JSON: m_max does not match length of b");
    }
    f.provenance = provenance_from_string(j.value("provenance", std::string("custom")));
    auto range = [&](const json& fit, int& lo, int& hi) {
      lo = 0;
      hi = f.m_max();
      if (fit.contains("m_range")) {
        lo = fit.at("m_range").at(0).get<int>();
        hi = fit.at("m_range").at(1).get<int>();
      }
    };
    if (j.contains("decay_fit")) {
      const json& d = j.at("decay_fit");
      DecayFit fit{d.at("c").get<double>(), d.at("gamma").get<double>(), 0, 0};
      range(d, fit.m_lo, fit.m_hi);
      f.decay_fit = fit;
    }
    if (j.contains("lower_fit")) {
      const json& d = j.at("lower_fit");
      LowerFit fit{d.at("c0").get<double>(), d.at("zeta").get<double>(), 0, 0};
      range(d, fit.m_lo, fit.m_hi);
      f.lower_fit = fit;
    }
    return f;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("filter JSON: ") + e.what());
  }
}

json lsq_summary(const LsqReport& r) {
  json j{{"rank", r.rank},
         {"rank_deficient", r.rank_deficient},
         {"A", r.frame_lower_active},
         {"B", r.frame_upper_active},
         {"residual", r.residual},
         {"active_count", r.active_indices.size()}};
  if (!r.singular_values.empty()) {
    j["sigma_max"] = r.singular_values.front();
    j["sigma_min"] = r.singular_values.back();
  }
  return j;
}

json solution_to_json(const LsqReport& r) {
  json j = coefficients_to_json(r.solution);
  j["report"] = lsq_summary(r);
  return j;
}

CoefficientVector solution_from_json(const json& j) { return coefficients_from_json(j); }

json certificate_to_json(const Certificate& c) {
  json j{{"d", c.d},
         {"omega", c.omega},
         {"gamma", c.gamma},
         {"sigma", c.sigma},
         {"zeta", c.zeta},
         {"c", c.c},
         {"c0", c.c0},
         {"fit_m_range", {c.fit_m_lo, c.fit_m_hi}},
         {"range_limited", c.range_limited},
         {"epsilon", c.epsilon},
         {"kappa", c.kappa},
         {"m", c.m},
         {"beta", c.beta},
         {"norm_ff_sigma_used", c.norm_ff_sigma_used},
         {"term_approx", c.term_approx},
         {"term_approx_sharp", c.term_approx_sharp},
         {"term_noise", c.term_noise},
         {"bound_Hzeta", c.bound_Hzeta}};
  j["norm_ff_sigma_exact"] = c.norm_ff_sigma_exact ? json(*c.norm_ff_sigma_exact) : json(nullptr);
  j["norm_ff_sigma_via_c"] = c.norm_ff_sigma_via_c ? json(*c.norm_ff_sigma_via_c) : json(nullptr);
  j["bound_L2"] = c.bound_L2 ? json(*c.bound_L2) : json(nullptr);
  return j;
}

namespace {

std::vector<std::vector<double>> parse_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::InvalidArgument, "CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    fail(ErrorKind::InvalidArgument, "CSV: expected header '" + header + "', got '" + line + "'");
  }
  const std::size_t cols = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::vector<std::vector<double>> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidArgument,
             "CSV line " + std::to_string(lineno) + ": '" + field + "' is not a number");
      }
    }
    if (row.size() != cols) {
      fail(ErrorKind::InvalidArgument, "CSV line " + std::to_string(lineno) + ": expected " +
                                           std::to_string(cols) + " fields");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string nodes_to_csv(const MzFamily& fam) {
  std::string out = "theta,phi,weight\n";
  for (std::size_t j = 0; j < fam.size(); ++j) {
    out += fmt(fam.nodes[j].theta) + "," + fmt(fam.nodes[j].phi) + "," + fmt(fam.weights[j]) + "\n";
  }
  return out;
}

MzFamily nodes_from_csv(const std::string& text) {
  MzFamily fam;
  for (const auto& row : parse_csv(text, "theta,phi,weight")) {
    fam.nodes.push_back(SpherePoint::make(row[0], row[1]));
    fam.weights.push_back(row[2]);
  }
  return fam;
}

std::string measurements_to_csv(const MeasurementSet& ms) {
  std::string out = "theta,phi,weight,y\n";
  for (std::size_t j = 0; j < ms.size(); ++j) {
    out += fmt(ms.nodes[j].theta) + "," + fmt(ms.nodes[j].phi) + "," + fmt(ms.weights[j]) + "," +
           fmt(ms.y[j]) + "\n";
  }
  return out;
}

json measurement_sidecar(const MeasurementSet& ms) {
  json j{{"beta", ms.beta}, {"count", ms.size()}, {"y_digest", digest(ms.y)}};
  j["seed"] = ms.seed ? json(*ms.seed) : json(nullptr);
  j["truth_ref"] = ms.truth_ref ? json(*ms.truth_ref) : json(nullptr);
  return j;
}

MeasurementSet measurements_from_csv(const std::string& text, const json* sidecar) {
  MeasurementSet ms;
  for (const auto& row : parse_csv(text, "theta,phi,weight,y")) {
    ms.nodes.push_back(SpherePoint::make(row[0], row[1]));
    ms.weights.push_back(row[2]);
    ms.y.push_back(row[3]);
  }
  if (sidecar) {
    try {
      ms.beta = sidecar->value("beta", 0.0);
      if (sidecar->contains("seed") && !sidecar->at("seed").is_null()) {
        ms.seed = sidecar->at("seed").get<std::uint64_t>();
      }
      if (sidecar->contains("truth_ref") && !sidecar->at("truth_ref").is_null()) {
        ms.truth_ref = sidecar->at("truth_ref").get<std::string>();
      }
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("measurement sidecar: ") + e.what());
    }
  }
  ms.validate();
  return ms;
}

}  // namespace sphdeconv::io
