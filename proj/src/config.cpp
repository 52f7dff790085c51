#include "whitney/config.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "whitney/cpn.hpp"

namespace whitney {
namespace {

using nlohmann::json;

struct FamilyInfo {
  std::string name;
  std::set<std::string> params;
};

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list = {
      {"whitney", {"n", "r", "A"}},
      {"whitney_cpn", {"n", "theta"}},
      {"torus", {"radii"}},
      {"plane", {"n", "complexify"}},
      {"perturbed_whitney", {"n", "r", "eps", "mode"}},
      {"rpn", {"n"}},
  };
  return list;
}

const FamilyInfo& family_info(const std::string& name) {
  for (const FamilyInfo& f : families())
    if (f.name == name) return f;
  fail(ErrorKind::kConfig, "unknown immersion family '" + name + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::kConfig, "config: '" + key + "' expects a number, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
  if (out.empty()) fail(ErrorKind::kConfig, "config: '" + key + "' is empty");
  return out;
}

int as_int(const std::string& key, double v) {
  if (v != std::floor(v) || std::abs(v) > 1e9) fail(ErrorKind::kConfig, "config: '" + key + "' must be an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  fail(ErrorKind::kConfig, "config: '" + key + "' expects true or false");
}

std::vector<double> json_numbers(const std::string& key, const json& j) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_array() && !j.empty()) {
    for (const json& v : j) {
      if (!v.is_number()) fail(ErrorKind::kConfig, "config: '" + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
  } else {
    fail(ErrorKind::kConfig, "config: '" + key + "' must be a number or a nonempty array");
  }
  return out;
}

double json_number(const std::string& key, const json& j) {
  if (!j.is_number()) fail(ErrorKind::kConfig, "config: '" + key + "' must be a number");
  return j.get<double>();
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(ErrorKind::kConfig, "config: '" + where + "' must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; })) {
      fail(ErrorKind::kConfig, "config: unknown key '" + it.key() + "' in " + where);
    }
  }
}

void validate(RunConfig& c) {
  if (c.immersion.family.empty()) fail(ErrorKind::kConfig, "config: missing immersion family");
  const FamilyInfo& info = family_info(c.immersion.family);
  for (const auto& [key, _] : c.immersion.params) {
    if (!info.params.contains(key)) {
      fail(ErrorKind::kConfig, "config: family '" + info.name + "' has no parameter '" + key + "'");
    }
  }
  if (c.samples < 1) fail(ErrorKind::kConfig, "config: samples must be >= 1");
  if (c.quadrature_nodes < 0) fail(ErrorKind::kConfig, "config: quadrature nodes must be >= 0");
  if (!(c.tolerances.scale > 0.0)) fail(ErrorKind::kConfig, "config: tolerance scale must be positive");
  if (c.format != "json" && c.format != "csv" && c.format != "table") {
    fail(ErrorKind::kConfig, "config: format must be json, csv or table");
  }
  if (c.scan) {
    if (!info.params.contains(c.scan->param)) {
      fail(ErrorKind::kConfig, "config: scan parameter '" + c.scan->param + "' not in family '" + info.name + "'");
    }
    if (c.scan->values.empty()) fail(ErrorKind::kConfig, "config: scan needs values");
    if (c.scan->index < 0) fail(ErrorKind::kConfig, "config: scan index must be >= 0");
    for (double v : c.scan->values)
      if (!std::isfinite(v)) fail(ErrorKind::kConfig, "config: scan values must be finite");
    if (!std::is_sorted(c.scan->values.begin(), c.scan->values.end())) {
      fail(ErrorKind::kConfig, "config: scan values must be nondecreasing");
    }
  }
}

int int_param(const ImmersionSpec& spec, const std::string& key, int fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  if (it->second.size() != 1) fail(ErrorKind::kConfig, "config: '" + key + "' must be a single number");
  return as_int(key, it->second[0]);
}

double real_param(const ImmersionSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  if (it->second.size() != 1) fail(ErrorKind::kConfig, "config: '" + key + "' must be a single number");
  return it->second[0];
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(j, "config", {"immersion", "samples", "seed", "fd_simons", "tolerances", "quadrature", "output", "scan"});
  RunConfig c;
  if (!j.contains("immersion")) fail(ErrorKind::kConfig, "config: missing 'immersion'");
  const json& im = j["immersion"];
  if (!im.is_object()) fail(ErrorKind::kConfig, "config: 'immersion' must be an object");
  for (auto it = im.begin(); it != im.end(); ++it) {
    if (it.key() == "family") {
      if (!it->is_string()) fail(ErrorKind::kConfig, "config: 'family' must be a string");
      c.immersion.family = it->get<std::string>();
    } else {
      c.immersion.params[it.key()] = json_numbers(it.key(), *it);
    }
  }
  if (j.contains("samples")) c.samples = as_int("samples", json_number("samples", j["samples"]));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(ErrorKind::kConfig, "config: 'seed' must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("fd_simons")) {
    if (!j["fd_simons"].is_boolean()) fail(ErrorKind::kConfig, "config: 'fd_simons' must be a boolean");
    c.fd_simons = j["fd_simons"].get<bool>();
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, "tolerances", {"scale", "jet_exact", "once_fd", "twice_fd", "simons_fd"});
    if (t.contains("scale")) c.tolerances.scale = json_number("scale", t["scale"]);
    if (t.contains("jet_exact")) c.tolerances.jet_exact = json_number("jet_exact", t["jet_exact"]);
    if (t.contains("once_fd")) c.tolerances.once_fd = json_number("once_fd", t["once_fd"]);
    if (t.contains("twice_fd")) c.tolerances.twice_fd = json_number("twice_fd", t["twice_fd"]);
    if (t.contains("simons_fd")) c.tolerances.simons_fd = json_number("simons_fd", t["simons_fd"]);
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    check_keys(q, "quadrature", {"nodes_per_axis"});
    if (q.contains("nodes_per_axis")) {
      c.quadrature_nodes = as_int("nodes_per_axis", json_number("nodes_per_axis", q["nodes_per_axis"]));
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) fail(ErrorKind::kConfig, "config: output path must be a string");
      c.out = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) fail(ErrorKind::kConfig, "config: output format must be a string");
      c.format = o["format"].get<std::string>();
    }
  }
  if (j.contains("scan")) {
    const json& s = j["scan"];
    check_keys(s, "scan", {"param", "index", "values"});
    ScanSpec scan;
    if (!s.contains("param") || !s["param"].is_string()) fail(ErrorKind::kConfig, "config: scan needs a 'param' string");
    scan.param = s["param"].get<std::string>();
    if (s.contains("index")) scan.index = as_int("index", json_number("index", s["index"]));
    if (!s.contains("values")) fail(ErrorKind::kConfig, "config: scan needs 'values'");
    scan.values = json_numbers("values", s["values"]);
    c.scan = scan;
  }
  validate(c);
  return c;
}

RunConfig parse_config_kv(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  ScanSpec scan;
  bool has_scan = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::kConfig, "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "family") c.immersion.family = value;
    else if (key == "samples") c.samples = as_int(key, parse_number(key, value));
    else if (key == "seed") {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        fail(ErrorKind::kConfig, "config: 'seed' must be a nonnegative integer");
      }
      c.seed = std::stoull(value);
    }
    else if (key == "fd_simons") c.fd_simons = parse_bool(key, value);
    else if (key == "tol_scale") c.tolerances.scale = parse_number(key, value);
    else if (key == "tol.jet_exact") c.tolerances.jet_exact = parse_number(key, value);
    else if (key == "tol.once_fd") c.tolerances.once_fd = parse_number(key, value);
    else if (key == "tol.twice_fd") c.tolerances.twice_fd = parse_number(key, value);
    else if (key == "tol.simons_fd") c.tolerances.simons_fd = parse_number(key, value);
    else if (key == "quadrature_nodes") c.quadrature_nodes = as_int(key, parse_number(key, value));
    else if (key == "out") c.out = value;
    else if (key == "format") c.format = value;
    else if (key == "scan.param") { scan.param = value; has_scan = true; }
    else if (key == "scan.index") { scan.index = as_int(key, parse_number(key, value)); has_scan = true; }
    else if (key == "scan.values") { scan.values = parse_list(key, value); has_scan = true; }
    else c.immersion.params[key] = parse_list(key, value);
  }
  if (has_scan) c.scan = scan;
  validate(c);
  return c;
}

RunConfig parse_config(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_config_json(text);
  return parse_config_kv(text);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kConfig, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> family_names() {
  std::vector<std::string> names;
  for (const FamilyInfo& f : families()) names.push_back(f.name);
  return names;
}

Immersion build_immersion(const ImmersionSpec& spec) {
  const FamilyInfo& info = family_info(spec.family);
  for (const auto& [key, _] : spec.params) {
    if (!info.params.contains(key)) fail(ErrorKind::kConfig, "family '" + info.name + "' has no parameter '" + key + "'");
  }
  const std::string& f = spec.family;
  if (f == "whitney") {
    const int n = int_param(spec, "n", 2);
    std::vector<std::complex<double>> A;
    if (auto it = spec.params.find("A"); it != spec.params.end()) {
      if (it->second.size() != 2 * static_cast<std::size_t>(n)) {
        fail(ErrorKind::kConfig, "config: 'A' needs 2n numbers (re, im pairs)");
      }
      for (int k = 0; k < n; ++k) A.emplace_back(it->second[2 * k], it->second[2 * k + 1]);
    }
    return make_whitney_cn(real_param(spec, "r", 1.0), A, n);
  }
  if (f == "whitney_cpn") return make_whitney_cpn(real_param(spec, "theta", 1.0), int_param(spec, "n", 2));
  if (f == "torus") {
    auto it = spec.params.find("radii");
    return make_product_torus(it == spec.params.end() ? std::vector<double>{1.0, 1.0} : it->second);
  }
  if (f == "plane") return make_lagrangian_plane(int_param(spec, "n", 2), real_param(spec, "complexify", 0.0));
  if (f == "perturbed_whitney") {
    return make_perturbed_whitney(real_param(spec, "r", 1.0), real_param(spec, "eps", 0.05),
                                  int_param(spec, "mode", 1), int_param(spec, "n", 2));
  }
  return make_rpn(int_param(spec, "n", 2));
}

ImmersionSpec with_scan_value(const ImmersionSpec& spec, const ScanSpec& scan, double value) {
  ImmersionSpec out = spec;
  std::vector<double>& p = out.params[scan.param];
  if (p.size() <= static_cast<std::size_t>(scan.index)) {
    if (scan.index != 0 || !p.empty()) {
      fail(ErrorKind::kConfig, "config: scan index " + std::to_string(scan.index) + " outside '" + scan.param + "'");
    }
    p.resize(1);
  }
  p[scan.index] = value;
  return out;
}

}  // namespace whitney
