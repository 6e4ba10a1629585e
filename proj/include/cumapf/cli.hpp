#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cumapf/core.hpp"

namespace cumapf::cli {

// exit codes shared by all subcommands
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // bad flags or invalid instance
inline constexpr int kExitValidation = 3;  // a produced plan failed validation
inline constexpr int kExitInternal = 4;    // planner internal error

std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& text, int vertex_count);

struct SolveOptions {
  std::string instance_path;
  std::string algo = "pull";  // pull | single | lacam
  std::string out_path;
  int time_limit_ms = 10000;  // lacam only
  std::uint64_t seed = 0;
  bool validate = false;
};
int cmd_solve(const SolveOptions& opt);

struct GenOptions {
  std::string map_path;  // exactly one of map_path / tight / grid3
  int tight_k = 0, tight_l = 0;
  int grid3_k = 0;
  int agents = 0;  // map instances only
  std::uint64_t seed = 0;
  std::string out_path;
};
int cmd_gen(const GenOptions& opt);

struct BenchOptions {
  std::string map_path;
  std::vector<int> agents;
  int per = 25;
  std::vector<std::string> algos = {"pull", "single"};
  std::uint64_t seed = 0;
  std::string out_path;
  std::string summary_path;  // defaults to out_path + ".summary.csv"
  int time_limit_ms = 10000;
  int threads = 0;  // 0: CUMAPF_THREADS env or 1
  bool no_timing = false;  // zero the time columns for byte-stable output
};
int cmd_bench(const BenchOptions& opt);

struct ValidateOptions {
  std::string instance_path;
  std::string plan_path;
};
int cmd_validate(const ValidateOptions& opt);

struct LbOptions {
  std::string instance_path;
};
int cmd_lb(const LbOptions& opt);

struct OracleOptions {
  std::string instance_path;
  std::string out_path;
  int max_agents = 4;
  int max_vertices = 25;
  std::int64_t max_states = 1000000;
};
int cmd_oracle(const OracleOptions& opt);

struct RefineLogOptions {
  std::string instance_path;
  int trials = 0;
  int time_limit_ms = 1000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string raw_out_path;  // optional per-iteration lines
  int buckets = 20;
};
int cmd_refine_log(const RefineLogOptions& opt);

}  // namespace cumapf::cli
