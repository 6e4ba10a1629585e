#include "cumapf/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cumapf {

std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return buf;
}

double quantize(double x, int decimals) {
  return std::strtod(format_fixed(x, decimals).c_str(), nullptr);
}

double percentile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(values.begin(), values.end());
  double h = (static_cast<double>(values.size()) - 1.0) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

const char* const kRecordsCsvHeader =
    "map,n,seed,algo,makespan,lb,ratio,plan_time_ms,step_mean_ms,steps";

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::string out = kRecordsCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.map_id + ',' + std::to_string(r.n) + ',' + std::to_string(r.seed) + ',' +
           r.algo + ',' + std::to_string(r.makespan) + ',' + std::to_string(r.lb) +
           ',' + format_fixed(r.ratio, 6) + ',' + format_fixed(r.plan_time_ms, 3) +
           ',' + format_fixed(r.step_mean_ms, 6) + ',' + std::to_string(r.steps) + '\n';
  }
  return out;
}

std::vector<BenchRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRecordsCsvHeader)
    throw std::runtime_error("records csv: bad header");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw std::runtime_error("records csv: bad row: " + line);
    BenchRecord r;
    r.map_id = fields[0];
    r.n = std::stoi(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.algo = fields[3];
    r.makespan = std::stoi(fields[4]);
    r.lb = std::stoi(fields[5]);
    r.ratio = std::strtod(fields[6].c_str(), nullptr);
    r.plan_time_ms = std::strtod(fields[7].c_str(), nullptr);
    r.step_mean_ms = std::strtod(fields[8].c_str(), nullptr);
    r.steps = std::stoi(fields[9]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<std::string, int, std::string>;
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) groups[{r.map_id, r.n, r.algo}].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [key, group] : groups) {
    SummaryRow row;
    std::tie(row.map_id, row.n, row.algo) = key;
    row.count = static_cast<int>(group.size());
    std::vector<double> ratios, times, steps;
    double ratio_sum = 0, time_sum = 0, step_sum = 0;
    for (const BenchRecord* r : group) {
      ratios.push_back(r->ratio);
      times.push_back(r->plan_time_ms);
      steps.push_back(r->step_mean_ms);
      ratio_sum += r->ratio;
      time_sum += r->plan_time_ms;
      step_sum += r->step_mean_ms;
    }
    row.ratio_mean = ratio_sum / row.count;
    row.time_mean_ms = time_sum / row.count;
    row.step_mean_ms = step_sum / row.count;
    row.ratio_p25 = percentile_type7(ratios, 0.25);
    row.ratio_p75 = percentile_type7(ratios, 0.75);
    row.time_p25_ms = percentile_type7(times, 0.25);
    row.time_p75_ms = percentile_type7(times, 0.75);
    row.step_p25_ms = percentile_type7(steps, 0.25);
    row.step_p75_ms = percentile_type7(steps, 0.75);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "map,n,algo,count,ratio_mean,ratio_p25,ratio_p75,"
      "time_mean_ms,time_p25_ms,time_p75_ms,step_mean_ms,step_p25_ms,step_p75_ms\n";
  for (const auto& r : rows) {
    out += r.map_id + ',' + std::to_string(r.n) + ',' + r.algo + ',' +
           std::to_string(r.count) + ',' + format_fixed(r.ratio_mean, 6) + ',' +
           format_fixed(r.ratio_p25, 6) + ',' + format_fixed(r.ratio_p75, 6) + ',' +
           format_fixed(r.time_mean_ms, 6) + ',' + format_fixed(r.time_p25_ms, 6) +
           ',' + format_fixed(r.time_p75_ms, 6) + ',' + format_fixed(r.step_mean_ms, 6) +
           ',' + format_fixed(r.step_p25_ms, 6) + ',' + format_fixed(r.step_p75_ms, 6) +
           '\n';
  }
  return out;
}

}  // namespace cumapf
