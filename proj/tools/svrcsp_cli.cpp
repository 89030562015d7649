#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svrcsp/bnc.hpp"
#include "svrcsp/cuts.hpp"
#include "svrcsp/generate.hpp"
#include "svrcsp/heuristic.hpp"
#include "svrcsp/io.hpp"
#include "svrcsp/model.hpp"
#include "svrcsp/oracle.hpp"

namespace {

using namespace svrcsp;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInput = 4;

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Flavor parse_flavor(const std::string& s) {
  if (s == "lt") return Flavor::LT;
  if (s == "ltc") return Flavor::LTC;
  if (s == "ltr") return Flavor::LTR;
  throw std::runtime_error("expected lt, ltc or ltr");
}

SyncOpt parse_sync(const std::string& s) {
  if (s == "two-sided") return SyncOpt::TwoSided;
  if (s == "sync1") return SyncOpt::Sync1;
  if (s == "sync2") return SyncOpt::Sync2;
  throw std::runtime_error("expected two-sided, sync1 or sync2");
}

PrecedenceOpt parse_precedence(const std::string& s) {
  if (s == "original") return PrecedenceOpt::Original;
  if (s == "prec") return PrecedenceOpt::Prec;
  throw std::runtime_error("expected original or prec");
}

std::vector<Cut> gen_family(const MilpModel& m, const std::string& name) {
  if (name == "prec") return gen_prec(m);
  if (name == "pd1") return gen_pd1(m);
  if (name == "pd2") return gen_pd2(m);
  if (name == "pd3") return gen_pd3(m, 2, Pd3Variant::B);
  if (name == "sec1") return gen_sec1(m, 3);
  if (name == "sec2") return gen_sec2(m, 3);
  if (name == "all") return gen_all(m);
  throw std::runtime_error("unknown cut family " + name);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Shared per-command inputs.
struct ModelArgs {
  std::string instance_path;
  std::string flavor = "lt";
  std::string sync = "two-sided";
  std::string precedence = "original";

  void attach(CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    cmd->add_option("--flavor", flavor, "formulation: lt, ltc, ltr");
    cmd->add_option("--sync", sync, "sync rows on service arcs: two-sided, sync1, sync2");
    cmd->add_option("--precedence", precedence, "precedence rows: original, prec");
  }

  BuildOptions options() const {
    return {parse_flavor(flavor), parse_precedence(precedence), parse_sync(sync)};
  }
};

struct Built {
  Instance inst;
  GraphBundle graphs;
  MilpModel model;
};

Built build_from(const ModelArgs& args) {
  Built b;
  b.inst = load_instance(args.instance_path);
  const auto issues = validate_instance(b.inst);
  if (!issues.empty()) throw std::runtime_error("invalid instance: " + issues.front());
  b.graphs = build_bundle(b.inst, parse_flavor(args.flavor));
  b.model = build_model(b.inst, b.graphs, args.options());
  b.model.graphs = &b.graphs;
  return b;
}

int cmd_generate(const std::string& preset_name, std::uint64_t seed,
                 const std::map<std::string, int>& overrides, const std::string& out) {
  GenSpec spec = preset(preset_name);
  spec.seed = seed;
  for (const auto& [key, value] : overrides) {
    if (key == "locations") spec.num_locations = value;
    else if (key == "requests") spec.num_requests = value;
    else if (key == "days") spec.days = value;
    else if (key == "instants") spec.instants_per_day = value;
    else if (key == "trucks") spec.num_trucks = value;
    else if (key == "drivers") spec.num_drivers = value;
    else throw std::runtime_error("unknown override " + key);
  }
  const Instance inst = generate(spec);
  const auto issues = validate_instance(inst);
  if (!issues.empty()) throw std::runtime_error("generated instance invalid: " + issues.front());
  write_text(out, instance_to_json(inst));
  return kExitOk;
}

int cmd_validate(const std::string& instance_path, const std::string& plan_path,
                 const std::string& flavor) {
  const Instance inst = load_instance(instance_path);
  std::vector<std::string> issues = validate_instance(inst);
  if (issues.empty() && !plan_path.empty()) {
    const GraphBundle graphs = build_bundle(inst, parse_flavor(flavor));
    const Plan plan = load_plan(plan_path, graphs);
    issues = check_plan(plan, graphs);
  }
  if (issues.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& msg : issues) std::cerr << msg << "\n";
  return kExitInput;
}

int cmd_build(const ModelArgs& args, const std::string& families, const std::string& out) {
  const Built b = build_from(args);
  if (families.empty()) {
    write_text(out, model_to_lp(b.model));
    return kExitOk;
  }
  CutPool pool;
  std::stringstream ss(families);
  for (std::string name; std::getline(ss, name, ',');) pool.add_all(gen_family(b.model, name));
  write_text(out, model_to_lp(b.model, &pool.cuts));
  return kExitOk;
}

int cmd_relax(const ModelArgs& args) {
  const Built b = build_from(args);
  const LpOutcome out = solve_lp(to_standard_lp(lp_relaxation(b.model)));
  if (out.status == LpStatus::Infeasible) {
    std::cout << "{\"status\": \"infeasible\"}\n";
    return kExitInfeasible;
  }
  if (out.status != LpStatus::Optimal) {
    std::cout << "{\"status\": \"limit\"}\n";
    return kExitLimit;
  }
  std::printf("{\"status\": \"optimal\", \"lr\": %.17g, \"iterations\": %ld}\n", out.objective,
              out.iterations);
  return kExitOk;
}

int cmd_solve(const ModelArgs& args, bool warm, bool cuts, double time_limit, long node_limit,
              const std::string& plan_out, const std::string& result_out,
              const std::string& csv_out, bool verbose) {
  const Built b = build_from(args);

  CutPool pool;
  if (cuts) pool.add_all(gen_all(b.model));

  std::optional<std::vector<double>> warm_values;
  if (warm) {
    if (const auto plan = greedy_warm_start(b.inst, b.graphs)) {
      warm_values = warm_start_assignment(*plan, b.model);
    }
  }

  SolverConfig config;
  config.time_limit_s = time_limit;
  config.node_limit = node_limit;
  if (verbose) config.log = &std::cerr;
  const SolveResult res = solve_milp(b.model, cuts ? &pool : nullptr,
                                     warm_values ? &*warm_values : nullptr, config);

  std::ostringstream json;
  json << "{\"status\": \"" << solve_status_name(res.status) << "\""
       << ", \"nodes\": " << res.nodes << ", \"cuts_added\": " << res.cuts_added;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", res.best_bound);
  json << ", \"best_bound\": " << buf;
  std::snprintf(buf, sizeof buf, "%.17g", res.root_bound);
  json << ", \"root_bound\": " << buf;
  if (!res.incumbent.empty()) {
    std::snprintf(buf, sizeof buf, "%.17g", res.objective);
    json << ", \"objective\": " << buf;
  }
  std::snprintf(buf, sizeof buf, "%.3f", res.wall_time_s);
  json << ", \"wall_time_s\": " << buf << "}\n";
  write_text(result_out.empty() ? "-" : result_out, json.str());

  if (!plan_out.empty() && !res.incumbent.empty()) {
    save_plan(solution_to_plan(b.model, res.incumbent), b.graphs, plan_out);
  }
  if (!csv_out.empty()) {
    const bool fresh = !std::ifstream(csv_out).good();
    std::ofstream csv(csv_out, std::ios::app);
    if (fresh) csv << "instance,flavor,sync,status,objective,best_bound,nodes,cuts,time_s\n";
    csv << args.instance_path << ',' << args.flavor << ',' << args.sync << ','
        << solve_status_name(res.status) << ',';
    if (res.incumbent.empty()) csv << "";
    else csv << res.objective;
    csv << ',' << res.best_bound << ',' << res.nodes << ',' << res.cuts_added << ','
        << res.wall_time_s << "\n";
  }

  switch (res.status) {
    case SolveStatus::Optimal: return kExitOk;
    case SolveStatus::Infeasible: return kExitInfeasible;
    default: return kExitLimit;
  }
}

int cmd_oracle(const std::string& instance_path, const std::string& plan_out, bool force) {
  const Instance inst = load_instance(instance_path);
  OracleBudget budget;
  budget.enforce_tiny = !force;
  try {
    const OracleResult res = exhaustive_solve(inst, budget);
    if (res.status == OracleStatus::Infeasible) {
      std::cout << "{\"status\": \"infeasible\"}\n";
      return kExitInfeasible;
    }
    std::cout << "{\"status\": \"optimal\", \"objective\": " << res.value << "}\n";
    if (!plan_out.empty()) {
      const GraphBundle graphs = build_bundle(inst, Flavor::LT);
      save_plan(res.plan, graphs, plan_out);
    }
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitLimit;
  }
}

// Root-node cut report: per-family inequality count, generation+solve time
// and remaining root gap against the best known objective.
int cmd_cuts(const ModelArgs& args, const std::string& families, const std::string& out) {
  const Built b = build_from(args);

  const LpOutcome base = solve_lp(to_standard_lp(lp_relaxation(b.model)));
  if (base.status == LpStatus::Infeasible) return kExitInfeasible;
  const SolveResult exact = solve_milp(b.model, nullptr, nullptr, {});
  if (exact.status == SolveStatus::Infeasible) return kExitInfeasible;
  if (exact.incumbent.empty()) return kExitLimit;
  const double opt = exact.objective;
  auto gap = [&](double bound) {
    return std::abs(opt) < 1e-12 ? 0.0 : (opt - bound) / std::abs(opt);
  };

  std::ostringstream csv;
  csv << "family,ineq_count,time_s,root_gap\n";
  char line[256];
  std::snprintf(line, sizeof line, "none,0,%.3f,%.6f\n", 0.0, gap(base.objective));
  csv << line;

  std::stringstream ss(families);
  for (std::string name; std::getline(ss, name, ',');) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Cut> cuts = gen_family(b.model, name);
    StandardLp lp = to_standard_lp(lp_relaxation(b.model));
    for (const Cut& c : cuts) lp.add_row(c.coeffs, c.sense, c.rhs);
    const LpOutcome with = solve_lp(lp);
    const double elapsed = now_minus(t0);
    if (with.status != LpStatus::Optimal) return kExitLimit;
    std::snprintf(line, sizeof line, "%s,%zu,%.3f,%.6f\n", name.c_str(), cuts.size(), elapsed,
                  gap(with.objective));
    csv << line;
  }
  write_text(out, csv.str());
  return kExitOk;
}

int cmd_compare(const ModelArgs& args, const std::string& out) {
  Instance inst = load_instance(args.instance_path);
  const auto issues = validate_instance(inst);
  if (!issues.empty()) throw std::runtime_error("invalid instance: " + issues.front());

  std::ostringstream csv;
  csv << "flavor,vars,cons,root_lr,status,objective,nodes,time_s\n";
  bool any_infeasible = false;
  for (const auto& [name, flavor] :
       std::vector<std::pair<std::string, Flavor>>{{"lt", Flavor::LT}, {"ltc", Flavor::LTC},
                                                   {"ltr", Flavor::LTR}}) {
    const GraphBundle graphs = build_bundle(inst, flavor);
    BuildOptions options = args.options();
    options.flavor = flavor;
    const MilpModel model = build_model(inst, graphs, options);
    const LpOutcome lr = solve_lp(to_standard_lp(lp_relaxation(model)));
    const SolveResult res = solve_milp(model, nullptr, nullptr, {});
    any_infeasible = any_infeasible || res.status == SolveStatus::Infeasible;
    csv << name << ',' << model.num_vars() << ',' << model.rows.size() << ',';
    if (lr.status == LpStatus::Optimal) csv << lr.objective;
    csv << ',' << solve_status_name(res.status) << ',';
    if (!res.incumbent.empty()) csv << res.objective;
    csv << ',' << res.nodes << ',' << res.wall_time_s << "\n";
  }
  write_text(out, csv.str());
  return any_infeasible ? kExitInfeasible : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for simultaneous vehicle routing and crew scheduling"};
  app.require_subcommand(1);

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "write a seeded random instance");
  std::string gen_preset = "desk";
  std::uint64_t gen_seed = 1;
  std::map<std::string, int> gen_overrides;
  std::string gen_out = "-";
  generate_cmd->add_option("--preset", gen_preset, "desk, tiny, s1..s5");
  generate_cmd->add_option("--seed", gen_seed, "random seed");
  generate_cmd->add_option("--set", gen_overrides,
                           "override key=value (locations, requests, days, instants, trucks, "
                           "drivers)");
  generate_cmd->add_option("-o,--output", gen_out, "output path, - for stdout");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check an instance and optional plan");
  std::string val_instance, val_plan, val_flavor = "lt";
  validate_cmd->add_option("--instance", val_instance, "instance JSON file")->required();
  validate_cmd->add_option("--plan", val_plan, "plan JSON file");
  validate_cmd->add_option("--flavor", val_flavor, "flavor for plan checking");

  // build
  auto* build_cmd = app.add_subcommand("build", "emit the model as an LP file");
  ModelArgs build_args;
  build_args.attach(build_cmd);
  std::string build_families, build_out = "-";
  build_cmd->add_option("--with-cuts", build_families,
                        "comma-separated cut families to append (prec,pd1,pd2,pd3,sec1,sec2,all)");
  build_cmd->add_option("-o,--output", build_out, "output path, - for stdout");

  // relax
  auto* relax_cmd = app.add_subcommand("relax", "solve the LP relaxation");
  ModelArgs relax_args;
  relax_args.attach(relax_cmd);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "branch-and-cut to optimality");
  ModelArgs solve_args;
  solve_args.attach(solve_cmd);
  bool solve_warm = false, solve_cuts = false, solve_verbose = false;
  double solve_time_limit = 600.0;
  long solve_node_limit = 1000000;
  std::string solve_plan_out, solve_result_out, solve_csv;
  solve_cmd->add_flag("--warm-start", solve_warm, "seed the search with a greedy plan");
  solve_cmd->add_flag("--cuts", solve_cuts, "separate the full cut pool at the root");
  solve_cmd->add_flag("-v,--verbose", solve_verbose, "progress lines on stderr");
  solve_cmd->add_option("--time-limit", solve_time_limit, "seconds");
  solve_cmd->add_option("--node-limit", solve_node_limit, "nodes");
  solve_cmd->add_option("--plan", solve_plan_out, "write the incumbent plan JSON here");
  solve_cmd->add_option("--result", solve_result_out, "write the result JSON here (default stdout)");
  solve_cmd->add_option("--csv", solve_csv, "append a summary row to this CSV");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive exact solve (tiny instances)");
  std::string oracle_instance, oracle_plan_out;
  bool oracle_force = false;
  oracle_cmd->add_option("--instance", oracle_instance, "instance JSON file")->required();
  oracle_cmd->add_option("--plan", oracle_plan_out, "write the optimal plan JSON here");
  oracle_cmd->add_flag("--force", oracle_force, "skip the tiny-instance guard");

  // cuts
  auto* cuts_cmd = app.add_subcommand("cuts", "root-node cut experiment (CSV)");
  ModelArgs cuts_args;
  cuts_args.attach(cuts_cmd);
  std::string cuts_families = "prec,pd1,pd2,pd3,sec1,sec2";
  std::string cuts_out = "-";
  cuts_cmd->add_option("--families", cuts_families, "comma-separated families");
  cuts_cmd->add_option("-o,--output", cuts_out, "CSV path, - for stdout");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "solve all flavors, emit a comparison CSV");
  ModelArgs compare_args;
  compare_args.attach(compare_cmd);
  std::string compare_out = "-";
  compare_cmd->add_option("-o,--output", compare_out, "CSV path, - for stdout");

  try {
    app.parse(argc, argv);
    if (*generate_cmd) return cmd_generate(gen_preset, gen_seed, gen_overrides, gen_out);
    if (*validate_cmd) return cmd_validate(val_instance, val_plan, val_flavor);
    if (*build_cmd) return cmd_build(build_args, build_families, build_out);
    if (*relax_cmd) return cmd_relax(relax_args);
    if (*solve_cmd)
      return cmd_solve(solve_args, solve_warm, solve_cuts, solve_time_limit, solve_node_limit,
                       solve_plan_out, solve_result_out, solve_csv, solve_verbose);
    if (*oracle_cmd) return cmd_oracle(oracle_instance, oracle_plan_out, oracle_force);
    if (*cuts_cmd) return cmd_cuts(cuts_args, cuts_families, cuts_out);
    if (*compare_cmd) return cmd_compare(compare_args, compare_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
