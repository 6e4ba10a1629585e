#include "cumapf/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <thread>

#include "cumapf/bench.hpp"
#include "cumapf/instances.hpp"
#include "cumapf/lacam.hpp"
#include "cumapf/lowerbound.hpp"
#include "cumapf/oracle.hpp"
#include "cumapf/pull.hpp"
#include "json.hpp"

namespace cumapf::cli {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::optional<Instance> load_or_complain(const std::string& path) {
  try {
    return load_instance(path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return std::nullopt;
  }
}

double elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::string plan_to_json(const Plan& plan) {
  nlohmann::json j;
  j["makespan"] = plan.makespan();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& config : plan.steps) steps.push_back(config.positions);
  j["steps"] = steps;
  return j.dump() + "\n";
}

Plan plan_from_json(const std::string& text, int vertex_count) {
  nlohmann::json j = nlohmann::json::parse(text);
  Plan plan;
  for (const auto& step : j.at("steps"))
    plan.steps.emplace_back(step.get<std::vector<Vertex>>(), vertex_count);
  if (plan.steps.empty()) throw std::runtime_error("plan json: no steps");
  if (j.at("makespan").get<int>() != plan.makespan())
    throw std::runtime_error("plan json: makespan field disagrees with steps");
  return plan;
}

int cmd_solve(const SolveOptions& opt) {
  auto instance = load_or_complain(opt.instance_path);
  if (!instance) return kExitUsage;

  Plan result;
  try {
    if (opt.algo == "pull") {
      result = plan(*instance, StepAlgo::pull);
    } else if (opt.algo == "single") {
      result = plan(*instance, StepAlgo::single);
    } else if (opt.algo == "lacam") {
      SearchResult search = lacam_search(
          *instance, std::chrono::milliseconds(opt.time_limit_ms), opt.seed);
      if (search.status == SearchStatus::none) {
        std::fprintf(stderr, "error: search found no plan within the budget\n");
        return kExitInternal;
      }
      result = std::move(search.plan);
    } else {
      std::fprintf(stderr, "error: unknown algorithm '%s'\n", opt.algo.c_str());
      return kExitUsage;
    }
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }

  int lb = bottleneck_lb(instance->g(), instance->starts, instance->targets);
  double ratio = static_cast<double>(result.makespan()) / std::max(lb, 1);
  if (!opt.out_path.empty()) write_file(opt.out_path, plan_to_json(result));
  std::printf("makespan=%d lb=%d ratio=%s\n", result.makespan(), lb,
              format_fixed(ratio, 6).c_str());

  if (opt.validate) {
    ValidationReport report = validate_plan(*instance, result);
    if (!report.ok()) {
      for (const auto& v : report.violations)
        std::fprintf(stderr, "violation: step %d condition %d: %s\n", v.step,
                     v.condition, v.message.c_str());
      return kExitValidation;
    }
  }
  return kExitOk;
}

int cmd_gen(const GenOptions& opt) {
  int kinds = (!opt.map_path.empty()) + (opt.tight_k > 0) + (opt.grid3_k > 0);
  if (kinds != 1) {
    std::fprintf(stderr, "error: pass exactly one of --map, --tight, --grid3\n");
    return kExitUsage;
  }
  if (opt.out_path.empty()) {
    std::fprintf(stderr, "error: --out is required\n");
    return kExitUsage;
  }
  try {
    Instance instance;
    if (!opt.map_path.empty()) {
      if (opt.agents <= 0) {
        std::fprintf(stderr, "error: --agents is required with --map\n");
        return kExitUsage;
      }
      auto graph = std::make_shared<Graph>(parse_map(load_text_file(opt.map_path)));
      instance = gen_random_instance(std::move(graph), opt.agents, opt.seed);
      instance.map_ref = opt.map_path;
    } else if (opt.tight_k > 0) {
      instance = gen_tight(opt.tight_k, opt.tight_l);
      instance.seed = opt.seed;
    } else {
      instance = gen_grid3(opt.grid3_k);
      instance.seed = opt.seed;
    }
    save_instance(instance, opt.out_path);
    std::printf("wrote %s (n=%d, |V|=%d)\n", opt.out_path.c_str(), instance.n,
                instance.g().vertex_count);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}

namespace {

struct BenchTask {
  int n = 0;
  int index = 0;
  std::uint64_t seed = 0;
};

int bench_threads(const BenchOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  if (const char* env = std::getenv("CUMAPF_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int cmd_bench(const BenchOptions& opt) {
  if (opt.agents.empty() || opt.per <= 0 || opt.out_path.empty()) {
    std::fprintf(stderr, "error: --agents, --per and --out are required\n");
    return kExitUsage;
  }
  for (const auto& algo : opt.algos) {
    if (algo != "pull" && algo != "single" && algo != "lacam") {
      std::fprintf(stderr, "error: unknown algorithm '%s'\n", algo.c_str());
      return kExitUsage;
    }
  }
  std::shared_ptr<const Graph> graph;
  try {
    graph = std::make_shared<Graph>(parse_map(load_text_file(opt.map_path)));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  const std::string map_id = std::filesystem::path(opt.map_path).stem().string();

  std::vector<BenchTask> tasks;
  for (int n : opt.agents)
    for (int index = 0; index < opt.per; ++index)
      tasks.push_back({n, index, derive_stream(opt.seed, static_cast<std::uint64_t>(n),
                                               static_cast<std::uint64_t>(index))});

  std::vector<std::vector<BenchRecord>> slots(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next_task{0};

  auto worker = [&] {
    while (true) {
      std::size_t at = next_task.fetch_add(1);
      if (at >= tasks.size()) break;
      const BenchTask& task = tasks[at];
      try {
        Instance instance = gen_random_instance(graph, task.n, task.seed);
        int lb = bottleneck_lb(instance.g(), instance.starts, instance.targets);
        DistanceField dist = multi_source_distance(instance.g(), instance.targets);
        for (const auto& algo : opt.algos) {
          auto t0 = std::chrono::steady_clock::now();
          Plan result;
          if (algo == "lacam") {
            SearchResult search = lacam_search(
                instance, std::chrono::milliseconds(opt.time_limit_ms), task.seed);
            if (search.status == SearchStatus::none)
              throw std::runtime_error("search found no plan within the budget");
            result = std::move(search.plan);
          } else {
            result = plan(instance, algo == "pull" ? StepAlgo::pull : StepAlgo::single,
                          &dist);
          }
          double ms = elapsed_ms_since(t0);
          ValidationReport report = validate_plan(instance, result);
          if (!report.ok())
            throw std::runtime_error("generated plan failed validation (" + algo + ")");
          BenchRecord record;
          record.map_id = map_id;
          record.n = task.n;
          record.seed = task.seed;
          record.algo = algo;
          record.makespan = result.makespan();
          record.lb = lb;
          record.ratio = quantize(static_cast<double>(record.makespan) /
                                      std::max(lb, 1), 6);
          record.steps = result.makespan();
          if (!opt.no_timing) {
            record.plan_time_ms = quantize(ms, 3);
            record.step_mean_ms =
                record.steps > 0 ? quantize(record.plan_time_ms / record.steps, 6) : 0;
          }
          slots[at].push_back(std::move(record));
        }
      } catch (const std::exception& e) {
        errors[at] = e.what();
      }
    }
  };

  int thread_count = bench_threads(opt);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<BenchRecord> records;
  bool any_error = false;
  for (std::size_t at = 0; at < tasks.size(); ++at) {
    if (!errors[at].empty()) {
      any_error = true;
      std::fprintf(stderr, "error: n=%d index=%d: %s\n", tasks[at].n, tasks[at].index,
                   errors[at].c_str());
      continue;
    }
    for (auto& r : slots[at]) records.push_back(std::move(r));
  }

  write_file(opt.out_path, records_to_csv(records));
  std::vector<SummaryRow> summary = summarize(records);
  std::string summary_path =
      opt.summary_path.empty() ? opt.out_path + ".summary.csv" : opt.summary_path;
  write_file(summary_path, summary_to_csv(summary));
  for (const auto& row : summary)
    std::printf("map=%s n=%d algo=%s ratio_mean=%s ratio_iqr=[%s,%s] time_mean_ms=%s\n",
                row.map_id.c_str(), row.n, row.algo.c_str(),
                format_fixed(row.ratio_mean, 3).c_str(),
                format_fixed(row.ratio_p25, 3).c_str(),
                format_fixed(row.ratio_p75, 3).c_str(),
                format_fixed(row.time_mean_ms, 3).c_str());
  return any_error ? kExitValidation : kExitOk;
}

int cmd_validate(const ValidateOptions& opt) {
  auto instance = load_or_complain(opt.instance_path);
  if (!instance) return kExitUsage;
  Plan candidate;
  try {
    candidate = plan_from_json(load_text_file(opt.plan_path),
                               instance->g().vertex_count);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  ValidationReport report = validate_plan(*instance, candidate);
  if (!report.ok()) {
    for (const auto& v : report.violations)
      std::fprintf(stderr, "violation: step %d condition %d: %s\n", v.step, v.condition,
                   v.message.c_str());
    std::printf("invalid (%zu violations)\n", report.violations.size());
    return kExitValidation;
  }
  std::printf("valid makespan=%d\n", candidate.makespan());
  return kExitOk;
}

int cmd_lb(const LbOptions& opt) {
  auto instance = load_or_complain(opt.instance_path);
  if (!instance) return kExitUsage;
  std::printf("%d\n", bottleneck_lb(instance->g(), instance->starts, instance->targets));
  return kExitOk;
}

int cmd_oracle(const OracleOptions& opt) {
  auto instance = load_or_complain(opt.instance_path);
  if (!instance) return kExitUsage;
  OracleCaps caps;
  caps.max_agents = opt.max_agents;
  caps.max_vertices = opt.max_vertices;
  caps.max_states = opt.max_states;
  try {
    OracleResult result = optimal_makespan(*instance, caps);
    if (!opt.out_path.empty()) write_file(opt.out_path, plan_to_json(result.plan));
    std::printf("makespan=%d states=%lld\n", result.makespan,
                static_cast<long long>(result.states));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_refine_log(const RefineLogOptions& opt) {
  if (opt.trials <= 0) {
    std::fprintf(stderr, "error: --trials must be positive\n");
    return kExitUsage;
  }
  auto instance = load_or_complain(opt.instance_path);
  if (!instance) return kExitUsage;
  if (opt.out_path.empty()) {
    std::fprintf(stderr, "error: --out is required\n");
    return kExitUsage;
  }
  int lb = bottleneck_lb(instance->g(), instance->starts, instance->targets);

  std::vector<SearchStats> trials;
  std::string raw = "trial,iteration,elapsed_ms,best_makespan,status\n";
  for (int t = 0; t < opt.trials; ++t) {
    SearchResult result =
        lacam_search(*instance, std::chrono::milliseconds(opt.time_limit_ms),
                     derive_stream(opt.seed, static_cast<std::uint64_t>(t)));
    for (const auto& event : result.stats.refine_log)
      raw += std::to_string(t) + ',' + std::to_string(event.iteration) + ',' +
             format_fixed(event.elapsed_ms, 3) + ',' +
             std::to_string(event.best_makespan) + ',' + to_string(event.status) + '\n';
    trials.push_back(std::move(result.stats));
  }
  if (!opt.raw_out_path.empty()) write_file(opt.raw_out_path, raw);

  // fraction of trials sitting at each makespan/LB ratio per elapsed-time
  // bucket; ratio -1 marks trials with no solution yet
  std::string agg = "bucket_ms,ratio,fraction\n";
  for (int b = 1; b <= opt.buckets; ++b) {
    double edge = static_cast<double>(opt.time_limit_ms) * b / opt.buckets;
    std::map<std::string, int> at_ratio;
    for (const auto& stats : trials) {
      int best = -1;
      for (const auto& event : stats.refine_log)
        if (event.elapsed_ms <= edge && event.best_makespan >= 0)
          best = event.best_makespan;
      std::string ratio =
          best < 0 ? "-1.000000"
                   : format_fixed(static_cast<double>(best) / std::max(lb, 1), 6);
      ++at_ratio[ratio];
    }
    for (const auto& [ratio, count] : at_ratio)
      agg += format_fixed(edge, 3) + ',' + ratio + ',' +
             format_fixed(static_cast<double>(count) / opt.trials, 6) + '\n';
  }
  write_file(opt.out_path, agg);
  std::printf("wrote %s (%d trials, lb=%d)\n", opt.out_path.c_str(), opt.trials, lb);
  return kExitOk;
}

}  // namespace cumapf::cli
