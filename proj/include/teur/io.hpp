#pragma once

// File formats: instance/schedule/campaign JSON inputs, report JSON, and the
// CSV exports for trajectories and campaign summaries.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "teur/bounds.hpp"
#include "teur/hamiltonian.hpp"
#include "teur/harness.hpp"
#include "teur/propagator.hpp"

namespace teur {

using json = nlohmann::json;

/// Parses text as JSON, turning syntax errors into InputError with line/column.
json parse_json(const std::string& text, const std::string& source);
json load_json(const std::filesystem::path& path);

/// {"n": int, "couplings": [[i, j, J], ...], "fields": [[i, h], ...]}
IsingInstance ising_from_json(const json& j);
json to_json(const IsingInstance& inst);

/// {"kind": "linear"} | {"kind": "poly", "power": p} |
/// {"kind": "tabulated", "knots": [[tau, f, g], ...]}, optional "h".
Schedule schedule_from_json(const json& j);
json to_json(const Schedule& s);

/// "linear", "poly:<p>", or a path to a schedule JSON file.
Schedule schedule_from_arg(const std::string& arg);

/// Campaign definition; relative "instance" paths resolve against base_dir.
Campaign campaign_from_json(const json& j, const std::filesystem::path& base_dir = {});
json to_json(const Campaign& c);

json to_json(const EventResult& ev);
json to_json(const BoundReport& r);
json to_json(const RunRecord& r);
json to_json(const CampaignSummary& s);
json to_json(const CampaignResult& r);

/// Column label, one value per trajectory sample.
using ExtraColumn = std::pair<std::string, std::vector<double>>;

/// t, re_overlap, im_overlap, survival, then d_<label>, rhs_<label> per beta policy.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const std::vector<ExtraColumn>& extra = {});
json trajectory_metadata(const Trajectory& tr, std::optional<std::uint64_t> seed = std::nullopt);

/// One CSV row per run.
void write_summary_csv(std::ostream& os, const CampaignResult& r);

/// reports/<key>.json per run, summary.csv, summary.json and margins.csv.
void write_campaign(const CampaignResult& r, const std::filesystem::path& dir);

}  // namespace teur
