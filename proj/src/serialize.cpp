#include "whitney/serialize.hpp"

#include <cstdio>
#include <sstream>

namespace whitney {
namespace {

using nlohmann::json;

std::string num(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double as_double(const json& j) { return j.is_number() ? j.get<double>() : std::nan(""); }

json params_json(const std::map<std::string, std::vector<double>>& params) {
  json p = json::object();
  for (const auto& [k, v] : params) p[k] = v;
  return p;
}

json nested(const RealTensor& t) {
  if (t.rank() == 0 || t.size() == 0) return json::array();
  std::vector<int> idx(t.rank(), 0);
  auto build = [&](auto&& self, int depth) -> json {
    json arr = json::array();
    for (int i = 0; i < t.dim(); ++i) {
      idx[depth] = i;
      arr.push_back(depth + 1 == t.rank() ? json(t.at(idx)) : self(self, depth + 1));
    }
    return arr;
  };
  return build(build, 0);
}

const char* depth_name(Depth d) {
  switch (d) {
    case Depth::kPointwise: return "pointwise";
    case Depth::kWithDerivatives: return "with_derivatives";
    case Depth::kFull: return "full";
  }
  return "?";
}

const char* const kFunctionals[] = {"hhat_n", "hhat_2", "h_2", "H_2", "hhat_2_from_norm_identity", "volume"};

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  if (s.size() >= width) return s;
  return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

std::string identities_table(const json& doc) {
  std::ostringstream out;
  out << "immersion: " << doc.value("immersion", "") << "   points: " << doc["points"].size() << "\n";
  out << pad("check", 36) << pad("max residual", 14, true) << pad("tolerance", 12, true) << pad("samples", 9, true)
      << "  status\n";
  out << std::string(79, '-') << "\n";
  for (const json& c : doc["checks"]) {
    out << pad(c["name"].get<std::string>(), 36) << pad(num(as_double(c["max_residual"]), "%.3e"), 14, true)
        << pad(num(as_double(c["tolerance"]), "%.1e"), 12, true)
        << pad(std::to_string(c["samples"].get<int>()), 9, true) << "  " << (c["pass"].get<bool>() ? "pass" : "FAIL")
        << "\n";
  }
  out << std::string(79, '-') << "\n";
  out << "commutator convention: " << doc.value("commutator_convention", "")
      << "   (alternative residual " << num(as_double(doc["commutator_alt_residual"]), "%.3e") << ")\n";
  for (auto it = doc["diagnostics"].begin(); it != doc["diagnostics"].end(); ++it) {
    out << "diagnostic " << pad(it.key(), 36) << pad(num(as_double(*it), "%.6e"), 14, true) << "\n";
  }
  out << "overall: " << (doc["all_pass"].get<bool>() ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string energy_table(const json& doc) {
  std::ostringstream out;
  const json& rule = doc["rule"];
  out << "immersion: " << doc.value("immersion", "") << "   rule: " << rule["nodes_per_axis"].get<int>() << " per axis, degree " << rule["degree"].get<int>() << ", "
      << rule["node_count"].get<std::size_t>() << " nodes\n";
  out << pad("functional", 30) << pad("value", 24, true) << "\n" << std::string(54, '-') << "\n";
  for (const char* name : kFunctionals) {
    out << pad(name, 30) << pad(num(as_double(doc["functionals"][name]), "%.15e"), 24, true) << "\n";
  }
  out << pad("growth_limit", 30) << pad(num(as_double(doc["growth_limit"]), "%.15e"), 24, true) << "  ("
      << doc["growth_note"].get<std::string>() << ")\n";
  if (!doc.contains("michael_simon")) return out.str();
  const json& ms = doc["michael_simon"];
  out << "michael-simon, v = " << ms["test_function"].get<std::string>() << ": lhs "
      << num(as_double(ms["lhs"]), "%.6e") << ", rhs without C " << num(as_double(ms["rhs"]), "%.6e") << "\n";
  if (ms["has_sobolev"].get<bool>()) {
    out << "sobolev pair: lhs " << num(as_double(ms["sobolev_lhs"]), "%.6e") << ", rhs without C "
        << num(as_double(ms["sobolev_rhs"]), "%.6e") << "\n";
  }
  return out.str();
}

std::string scan_table(const json& doc) {
  std::ostringstream out;
  out << "scan of " << doc["family"].get<std::string>() << " over " << doc["param"].get<std::string>() << "["
      << doc["index"].get<int>() << "]\n";
  out << pad("value", 12, true);
  for (const char* name : kFunctionals) out << pad(name, 24, true);
  out << "\n";
  for (const json& row : doc["rows"]) {
    out << pad(num(as_double(row["value"]), "%.6g"), 12, true);
    for (const char* name : kFunctionals) out << pad(num(as_double(row["functionals"][name]), "%.12e"), 24, true);
    out << "\n";
  }
  return out.str();
}

}  // namespace

json to_json(const identities::IdentityReport& report) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "identities";
  doc["immersion"] = report.immersion;
  doc["params"] = params_json(report.params);
  json points = json::array();
  for (const ChartPoint& p : report.points) points.push_back({{"chart", p.chart_id}, {"coords", p.coords}});
  doc["points"] = points;
  json checks = json::array();
  for (const identities::Check& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"tolerance", c.tolerance},
                      {"samples", c.samples},
                      {"pass", c.pass()}});
  }
  doc["checks"] = checks;
  doc["commutator_convention"] = report.commutator_convention;
  doc["commutator_alt_residual"] = report.commutator_alt_residual;
  json diag = json::object();
  for (const auto& [k, v] : report.diagnostics) diag[k] = v;
  doc["diagnostics"] = diag;
  doc["all_pass"] = report.all_pass();
  return doc;
}

json to_json(const GeometryState& s, const Immersion& imm, const identities::Tolerances& tol) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "geometry_state";
  doc["immersion"] = s.immersion;
  doc["params"] = params_json(imm.params);
  doc["ambient"] = imm.ambient == AmbientKind::kHomogeneousSphere ? "CPn" : "Cn";
  doc["point"] = {{"chart", s.point.chart_id}, {"coords", s.point.coords}};
  doc["n"] = s.n;
  doc["c_amb"] = s.c_amb;
  doc["depth"] = depth_name(s.depth);
  doc["tolerances"] = {{"jet_exact", tol.rung(0)}, {"once_fd", tol.rung(1)}, {"twice_fd", tol.rung(2)}};
  doc["metric"] = {{"g", nested(s.metric.g)},
                   {"g_inv", nested(s.metric.g_inv)},
                   {"christoffel", nested(s.metric.christoffel)},
                   {"sqrt_det_g", s.metric.sqrt_det_g}};
  doc["frame"] = {{"e", s.frame.e}, {"Je", s.frame.Je}, {"gauge", nested(s.frame.gauge)}};
  doc["h"] = nested(s.h.raw());
  doc["H"] = std::vector<double>(s.H.values().begin(), s.H.values().end());
  doc["hhat"] = nested(s.hhat.raw());
  doc["grad_h"] = nested(s.grad_h);
  doc["grad_hhat"] = nested(s.grad_hhat);
  doc["T"] = nested(s.T.raw());
  doc["R"] = nested(s.R);
  doc["maslov_alpha"] = s.maslov.alpha;
  return doc;
}

json to_json(const MichaelSimon& ms) {
  return {{"lhs", ms.lhs},
          {"rhs", ms.rhs},
          {"has_sobolev", ms.has_sobolev},
          {"sobolev_lhs", ms.sobolev_lhs},
          {"sobolev_rhs", ms.sobolev_rhs}};
}

json to_json(const EnergyReport& r) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "energy";
  doc["immersion"] = r.immersion;
  doc["functionals"] = {{"hhat_n", r.hhat_n},
                        {"hhat_2", r.hhat_2},
                        {"h_2", r.h_2},
                        {"H_2", r.H_2},
                        {"hhat_2_from_norm_identity", r.hhat_2_from_norm_identity},
                        {"volume", r.volume}};
  doc["growth_limit"] = r.growth_limit;
  doc["growth_note"] = r.growth_note;
  doc["rule"] = {{"nodes_per_axis", r.nodes_per_axis}, {"degree", r.degree}, {"node_count", r.node_count}};
  return doc;
}

json scan_to_json(const std::string& family, const std::string& param, int index, const std::vector<ScanRow>& rows) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "scan";
  doc["family"] = family;
  doc["param"] = param;
  doc["index"] = index;
  json out = json::array();
  for (const ScanRow& row : rows) {
    json e = to_json(row.energy);
    out.push_back({{"value", row.value}, {"functionals", e["functionals"]}, {"rule", e["rule"]}});
  }
  doc["rows"] = out;
  return doc;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

json parse_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kIo, std::string("report: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kSchemaVersion) {
    fail(ErrorKind::kIo, "report: missing or unsupported schema version");
  }
  const std::string kind = doc.value("kind", "");
  if (kind != "identities" && kind != "energy" && kind != "scan") fail(ErrorKind::kIo, "report: unknown kind '" + kind + "'");
  return doc;
}

std::string render_csv(const json& doc) {
  std::ostringstream out;
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "identities") {
    out << "name,max_residual,tolerance,samples,pass\n";
    for (const json& c : doc["checks"]) {
      out << c["name"].get<std::string>() << "," << num(as_double(c["max_residual"])) << ","
          << num(as_double(c["tolerance"])) << "," << c["samples"].get<int>() << ","
          << (c["pass"].get<bool>() ? "true" : "false") << "\n";
    }
  } else if (kind == "energy") {
    out << "name,value,degree,node_count\n";
    const json& rule = doc["rule"];
    for (const char* name : kFunctionals) {
      out << name << "," << num(as_double(doc["functionals"][name])) << "," << rule["degree"].get<int>() << ","
          << rule["node_count"].get<std::size_t>() << "\n";
    }
  } else {
    out << doc["param"].get<std::string>();
    for (const char* name : kFunctionals) out << "," << name;
    out << ",degree,node_count\n";
    for (const json& row : doc["rows"]) {
      out << num(as_double(row["value"]));
      for (const char* name : kFunctionals) out << "," << num(as_double(row["functionals"][name]));
      out << "," << row["rule"]["degree"].get<int>() << "," << row["rule"]["node_count"].get<std::size_t>() << "\n";
    }
  }
  return out.str();
}

std::string render_table(const json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "identities") return identities_table(doc);
  if (kind == "energy") return energy_table(doc);
  return scan_table(doc);
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return dump_json(doc);
  if (format == "csv") return render_csv(doc);
  if (format == "table") return render_table(doc);
  fail(ErrorKind::kInvalidArgument, "unknown output format '" + format + "'");
}

}  // namespace whitney
