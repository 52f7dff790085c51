#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "whitney/config.hpp"
#include "whitney/serialize.hpp"

namespace {

using namespace whitney;

enum ExitCode {
  kOk = 0,
  kChecksFailed = 1,
  kConfigError = 2,
  kConstructionError = 3,
  kGeometryError = 4,
  kIoError = 5,
};

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
  std::string report_path;
};

class Stage : public std::runtime_error {
 public:
  Stage(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

RunConfig load(const Options& opt) {
  if (opt.config.empty()) throw Stage(kConfigError, "config error: --config is required");
  RunConfig cfg;
  try {
    cfg = load_config(opt.config);
  } catch (const Error& e) {
    throw Stage(kConfigError, std::string("config error: ") + e.what());
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.tol_scale) {
    if (!(*opt.tol_scale > 0.0)) throw Stage(kConfigError, "config error: --tol-scale must be positive");
    cfg.tolerances.scale = *opt.tol_scale;
  }
  if (!opt.out.empty()) cfg.out = opt.out;
  if (!opt.format.empty()) cfg.format = opt.format;
  return cfg;
}

Immersion construct(const ImmersionSpec& spec) {
  try {
    return build_immersion(spec);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw Stage(kConfigError, std::string("config error: ") + e.what());
    throw Stage(kConstructionError, std::string("construction error: ") + e.what());
  }
}

template <class F>
auto geometry(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Stage(kGeometryError, std::string("geometry error: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Stage(kIoError, "io error: cannot write '" + path + "'");
  f << text;
  if (!f) throw Stage(kIoError, "io error: failed writing '" + path + "'");
}

ModelFunction michael_simon_function(const Immersion& imm, std::string& label) {
  if (imm.source == SourceKind::kSphere) {
    const int last = imm.model_dim() - 1;
    label = "1 + x_" + std::to_string(last + 1);
    return [last](std::span<const Jet> x) { return 1.0 + x[last]; };
  }
  label = "1";
  return [](std::span<const Jet> x) { return Jet::constant_like(x[0], 1.0); };
}

nlohmann::json energy_document(const Immersion& imm, int nodes) {
  return geometry([&] {
    const QuadratureRule rule = make_rule(imm, nodes);
    nlohmann::json doc = to_json(energy_report(imm, rule));
    std::string label;
    const ModelFunction v = michael_simon_function(imm, label);
    doc["michael_simon"] = to_json(michael_simon_ratio(imm, v, rule));
    doc["michael_simon"]["test_function"] = label;
    doc["params"] = nlohmann::json::object();
    for (const auto& [k, p] : imm.params) doc["params"][k] = p;
    return doc;
  });
}

int cmd_identities(const Options& opt) {
  const RunConfig cfg = load(opt);
  const Immersion imm = construct(cfg.immersion);
  auto report = geometry([&] {
    std::mt19937_64 rng(cfg.seed);
    const auto points = sample_points(imm, cfg.samples, rng);
    return identities::check_immersion(imm, points, cfg.tolerances, {}, cfg.fd_simons);
  });
  nlohmann::json doc = to_json(report);
  doc["seed"] = cfg.seed;
  doc["tolerance_scale"] = cfg.tolerances.scale;
  emit(render(doc, cfg.format), cfg.out);
  return report.all_pass() ? kOk : kChecksFailed;
}

int cmd_energy(const Options& opt) {
  const RunConfig cfg = load(opt);
  const Immersion imm = construct(cfg.immersion);
  emit(render(energy_document(imm, cfg.quadrature_nodes), cfg.format), cfg.out);
  return kOk;
}

int cmd_scan(const Options& opt) {
  RunConfig cfg = load(opt);
  if (!cfg.scan) throw Stage(kConfigError, "config error: scan needs a 'scan' section");
  if (opt.format.empty() && cfg.format == "json" && cfg.out.empty()) cfg.format = "csv";
  std::vector<ScanRow> rows;
  for (double value : cfg.scan->values) {
    ImmersionSpec spec;
    try {
      spec = with_scan_value(cfg.immersion, *cfg.scan, value);
    } catch (const Error& e) {
      throw Stage(kConfigError, std::string("config error: ") + e.what());
    }
    const Immersion imm = construct(spec);
    ScanRow row;
    row.value = value;
    row.energy = geometry([&] { return energy_report(imm, make_rule(imm, cfg.quadrature_nodes)); });
    rows.push_back(row);
  }
  const auto doc = scan_to_json(cfg.immersion.family, cfg.scan->param, cfg.scan->index, rows);
  emit(render(doc, cfg.format), cfg.out);
  return kOk;
}

int cmd_report(const Options& opt) {
  std::ifstream in(opt.report_path, std::ios::binary);
  if (!in) throw Stage(kIoError, "io error: cannot open '" + opt.report_path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = parse_report(ss.str());
  } catch (const Error& e) {
    throw Stage(kIoError, std::string("io error: ") + e.what());
  }
  emit(render(doc, opt.format.empty() ? "table" : opt.format), opt.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian immersion identity and energy checks"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Run configuration (JSON or key=value)");
    sub->add_option("--out", opt.out, "Output path (default stdout)");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--seed", opt.seed, "Override the config seed");
    sub->add_option("--tol-scale", opt.tol_scale, "Multiply every tolerance");
  };
  CLI::App* identities = app.add_subcommand("identities", "Run the identity checks at sampled points");
  CLI::App* energy = app.add_subcommand("energy", "Integrate the energy functionals");
  CLI::App* scan = app.add_subcommand("scan", "Energy functionals across a parameter range");
  CLI::App* report = app.add_subcommand("report", "Render a saved JSON report");
  for (CLI::App* sub : {identities, energy, scan}) add_common(sub);
  report->add_option("report", opt.report_path, "Report file")->required();
  report->add_option("--out", opt.out, "Output path (default stdout)");
  report->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*identities) return cmd_identities(opt);
    if (*energy) return cmd_energy(opt);
    if (*scan) return cmd_scan(opt);
    return cmd_report(opt);
  } catch (const Stage& e) {
    std::cerr << "whitney: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "whitney: error: " << e.what() << "\n";
    return kGeometryError;
  }
}
