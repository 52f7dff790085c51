#pragma once

// Report documents. Every report is first turned into a JSON value with a
// top-level "schema": 1 and a "kind"; CSV and fixed-width tables are
// rendered from that value, so `report` can re-render saved files.

#include <string>
#include <vector>

#include <json.hpp>

#include "whitney/identities.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

inline constexpr int kSchemaVersion = 1;

struct ScanRow {
  double value = 0.0;
  EnergyReport energy;
};

nlohmann::json to_json(const identities::IdentityReport& report);
// Tensors as nested arrays; ambient tagged "Cn" or "CPn".
nlohmann::json to_json(const GeometryState& state, const Immersion& imm, const identities::Tolerances& tol = {});
nlohmann::json to_json(const EnergyReport& report);
nlohmann::json to_json(const MichaelSimon& ms);
nlohmann::json scan_to_json(const std::string& family, const std::string& param, int index,
                            const std::vector<ScanRow>& rows);

// Keys sorted, two-space indent, newline-terminated.
std::string dump_json(const nlohmann::json& doc);
// Throws kIo on parse errors or a missing/unknown schema.
nlohmann::json parse_report(const std::string& text);

// format: json | csv | table. Throws kInvalidArgument for unknown formats.
std::string render(const nlohmann::json& doc, const std::string& format);

std::string render_csv(const nlohmann::json& doc);
std::string render_table(const nlohmann::json& doc);

}  // namespace whitney
