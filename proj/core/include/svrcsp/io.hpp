#pragma once

#include <string>
#include <utility>
#include <vector>

#include "svrcsp/cuts.hpp"
#include "svrcsp/model.hpp"
#include "svrcsp/routes.hpp"

namespace svrcsp {

inline constexpr int kSchemaVersion = 1;

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

// Plans are stored as semantic step records (kind/locations/start/request),
// independent of arc numbering, and rebuilt against a graph bundle.
std::string plan_to_json(const Plan& plan, const GraphBundle& graphs);
Plan plan_from_json(const std::string& text, const GraphBundle& graphs);
void save_plan(const Plan& plan, const GraphBundle& graphs, const std::string& path);
Plan load_plan(const std::string& path, const GraphBundle& graphs);

// LP text format; `cuts` (optional) are appended as extra rows under a
// comment marker.
std::string model_to_lp(const MilpModel& model, const std::vector<Cut>* cuts = nullptr);
void emit_lp(const MilpModel& model, const std::string& path,
             const std::vector<Cut>* cuts = nullptr);

// Reads `name value` lines; unknown names are counted, not fatal.
std::pair<std::vector<double>, int> read_solution(const std::string& path,
                                                  const MilpModel& model);

}  // namespace svrcsp
