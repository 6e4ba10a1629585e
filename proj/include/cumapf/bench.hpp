#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cumapf {

// one planner run on one instance; ratio and times are quantized to their CSV
// precision at creation so a parse-recompute round trip is exact
struct BenchRecord {
  std::string map_id;
  int n = 0;
  std::uint64_t seed = 0;
  std::string algo;
  int makespan = 0;
  int lb = 0;
  double ratio = 0;         // makespan / max(lb, 1), 6 decimals
  double plan_time_ms = 0;  // planner work only, 3 decimals
  double step_mean_ms = 0;  // plan_time_ms / steps, 6 decimals
  int steps = 0;
};

struct SummaryRow {
  std::string map_id;
  int n = 0;
  std::string algo;
  int count = 0;
  double ratio_mean = 0, ratio_p25 = 0, ratio_p75 = 0;
  double time_mean_ms = 0, time_p25_ms = 0, time_p75_ms = 0;
  double step_mean_ms = 0, step_p25_ms = 0, step_p75_ms = 0;
};

std::string format_fixed(double x, int decimals);
double quantize(double x, int decimals);  // value the CSV text parses back to

// linear interpolation between closest ranks (type 7); p in [0,1]
double percentile_type7(std::vector<double> values, double p);

extern const char* const kRecordsCsvHeader;
std::string records_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_csv(const std::string& text);

// per (map, n, algo) means and quartiles, groups sorted by key
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

}  // namespace cumapf
