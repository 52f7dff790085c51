#pragma once

// Run configuration for the batch front-end: a single JSON document or an
// equivalent key=value file.
//
// JSON:
//   {"immersion": {"family": "torus", "radii": [1, 2]},
//    "samples": 20, "seed": 7, "fd_simons": true,
//    "tolerances": {"scale": 1, "jet_exact": 1e-9, ...},
//    "quadrature": {"nodes_per_axis": 0},
//    "output": {"path": "report.json", "format": "json"},
//    "scan": {"param": "radii", "index": 1, "values": [1, 2, 4]}}
//
// key=value (one per line, '#' starts a comment):
//   family = torus
//   radii = 1, 2
//   samples = 20
//   scan.param = radii
//   scan.values = 1, 2, 4

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "whitney/identities.hpp"

namespace whitney {

struct ImmersionSpec {
  std::string family;
  std::map<std::string, std::vector<double>> params;
};

struct ScanSpec {
  std::string param;
  int index = 0;  // component of a vector-valued parameter
  std::vector<double> values;
};

struct RunConfig {
  ImmersionSpec immersion;
  int samples = 20;
  std::uint64_t seed = 1;
  bool fd_simons = true;
  identities::Tolerances tolerances;
  int quadrature_nodes = 0;  // per axis; 0 picks the family default
  std::string out;
  std::string format = "json";
  std::optional<ScanSpec> scan;
};

// All parse and validation failures throw kConfig.
RunConfig parse_config_json(const std::string& text);
RunConfig parse_config_kv(const std::string& text);
// Chooses the format from the first non-blank character ('{' means JSON).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Families: whitney (n, r, A), whitney_cpn (n, theta), torus (radii),
// plane (n, complexify), perturbed_whitney (n, r, eps, mode), rpn (n).
// A lists re, im pairs. Unknown families and parameters throw kConfig;
// invalid values throw from the constructors.
Immersion build_immersion(const ImmersionSpec& spec);
std::vector<std::string> family_names();

// Copy of spec with params[scan.param][scan.index] = value.
ImmersionSpec with_scan_value(const ImmersionSpec& spec, const ScanSpec& scan, double value);

}  // namespace whitney
