#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>

#include "cumapf/bench.hpp"
#include "cumapf/cli.hpp"
#include "cumapf/instances.hpp"
#include "doctest.h"

using namespace cumapf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / "cumapf_cli_test";
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) { return load_text_file(path); }

}  // namespace

TEST_CASE("plan json round trip") {
  Instance inst = gen_grid3(2);
  Plan p;
  p.steps.push_back(inst.start_config());
  p.steps.emplace_back(std::vector<Vertex>{1, 4}, inst.g().vertex_count);
  std::string text = cli::plan_to_json(p);
  Plan back = cli::plan_from_json(text, inst.g().vertex_count);
  CHECK(back.makespan() == 1);
  CHECK(back.steps[1].positions == std::vector<Vertex>{1, 4});
  CHECK_THROWS(cli::plan_from_json("{\"makespan\":3,\"steps\":[[0]]}", 4));
}

TEST_CASE("solve: fan instance, validation on, exit codes") {
  TempDir tmp;
  Instance inst = gen_tight(5, 4);
  save_instance(inst, tmp / "tight.json");

  cli::SolveOptions opt;
  opt.instance_path = tmp / "tight.json";
  opt.out_path = tmp / "plan.json";
  opt.validate = true;
  CHECK(cli::cmd_solve(opt) == cli::kExitOk);
  Plan written = cli::plan_from_json(slurp(tmp / "plan.json"), inst.g().vertex_count);
  CHECK(written.makespan() == 9);

  opt.algo = "nonsense";
  CHECK(cli::cmd_solve(opt) == cli::kExitUsage);
  opt.algo = "pull";
  opt.instance_path = tmp / "missing.json";
  CHECK(cli::cmd_solve(opt) == cli::kExitUsage);
}

TEST_CASE("solve: lacam agrees with the construction optimum") {
  TempDir tmp;
  save_instance(gen_grid3(4), tmp / "g4.json");
  cli::SolveOptions opt;
  opt.instance_path = tmp / "g4.json";
  opt.algo = "lacam";
  opt.time_limit_ms = 20000;
  opt.out_path = tmp / "plan.json";
  opt.validate = true;
  CHECK(cli::cmd_solve(opt) == cli::kExitOk);
  Plan written = cli::plan_from_json(slurp(tmp / "plan.json"), 12);
  CHECK(written.makespan() == 2);
}

TEST_CASE("gen + lb on a generated instance") {
  TempDir tmp;
  cli::GenOptions gen;
  gen.grid3_k = 6;
  gen.out_path = tmp / "grid.json";
  CHECK(cli::cmd_gen(gen) == cli::kExitOk);
  cli::LbOptions lb;
  lb.instance_path = tmp / "grid.json";
  CHECK(cli::cmd_lb(lb) == cli::kExitOk);

  cli::GenOptions bad;
  bad.out_path = tmp / "x.json";
  CHECK(cli::cmd_gen(bad) == cli::kExitUsage);
  cli::GenOptions two;
  two.grid3_k = 3;
  two.tight_k = 2;
  two.tight_l = 2;
  two.out_path = tmp / "y.json";
  CHECK(cli::cmd_gen(two) == cli::kExitUsage);
}

TEST_CASE("oracle command writes a witness plan") {
  TempDir tmp;
  save_instance(gen_tight(2, 2), tmp / "fan.json");
  cli::OracleOptions opt;
  opt.instance_path = tmp / "fan.json";
  opt.out_path = tmp / "witness.json";
  CHECK(cli::cmd_oracle(opt) == cli::kExitOk);
  Plan witness = cli::plan_from_json(slurp(tmp / "witness.json"), 6);
  CHECK(witness.makespan() == 4);

  cli::ValidateOptions val;
  val.instance_path = tmp / "fan.json";
  val.plan_path = tmp / "witness.json";
  CHECK(cli::cmd_validate(val) == cli::kExitOk);
}

TEST_CASE("validate flags a corrupted plan") {
  TempDir tmp;
  Instance inst = gen_grid3(2);
  save_instance(inst, tmp / "inst.json");
  Plan p;
  p.steps.push_back(inst.start_config());
  p.steps.emplace_back(std::vector<Vertex>{2, 3}, inst.g().vertex_count);  // jump
  std::FILE* f = std::fopen((tmp / "bad.json").c_str(), "wb");
  std::fputs(cli::plan_to_json(p).c_str(), f);
  std::fclose(f);
  cli::ValidateOptions val;
  val.instance_path = tmp / "inst.json";
  val.plan_path = tmp / "bad.json";
  CHECK(cli::cmd_validate(val) == cli::kExitValidation);
}

TEST_CASE("bench: records parse back and the summary recomputes exactly") {
  TempDir tmp;
  cli::BenchOptions opt;
  opt.map_path = "maps/random-16-16-20.map";
  opt.agents = {8, 12};
  opt.per = 4;
  opt.seed = 9;
  opt.out_path = tmp / "records.csv";
  CHECK(cli::cmd_bench(opt) == cli::kExitOk);

  std::string csv = slurp(tmp / "records.csv");
  std::vector<BenchRecord> records = records_from_csv(csv);
  CHECK(records.size() == 2 * 4 * 2);  // two n values, four seeds, two algos
  for (const auto& r : records) {
    if (r.lb >= 1) CHECK(r.ratio >= 1.0);
    CHECK(r.makespan >= r.lb);
  }
  CHECK(records_to_csv(records) == csv);

  std::string summary = slurp(tmp / "records.csv.summary.csv");
  CHECK(summary_to_csv(summarize(records)) == summary);
}

TEST_CASE("bench: byte-identical output across runs without timing") {
  TempDir tmp;
  cli::BenchOptions opt;
  opt.map_path = "maps/random-16-16-20.map";
  opt.agents = {10};
  opt.per = 3;
  opt.seed = 4;
  opt.no_timing = true;
  opt.out_path = tmp / "a.csv";
  CHECK(cli::cmd_bench(opt) == cli::kExitOk);
  opt.out_path = tmp / "b.csv";
  opt.threads = 2;  // fan-out must not change the records
  CHECK(cli::cmd_bench(opt) == cli::kExitOk);
  CHECK(slurp(tmp / "a.csv") == slurp(tmp / "b.csv"));
  CHECK(slurp(tmp / "a.csv.summary.csv") == slurp(tmp / "b.csv.summary.csv"));
}

TEST_CASE("refine-log: aggregate fractions per bucket") {
  TempDir tmp;
  save_instance(gen_grid3(3), tmp / "inst.json");
  cli::RefineLogOptions opt;
  opt.instance_path = tmp / "inst.json";
  opt.trials = 4;
  opt.time_limit_ms = 2000;
  opt.out_path = tmp / "agg.csv";
  opt.raw_out_path = tmp / "raw.csv";
  CHECK(cli::cmd_refine_log(opt) == cli::kExitOk);
  std::string agg = slurp(tmp / "agg.csv");
  CHECK(agg.rfind("bucket_ms,ratio,fraction\n", 0) == 0);
  // tiny instance: every trial proves optimality, ratio 1 at the last bucket
  CHECK(agg.find("1.000000,1.000000") != std::string::npos);
  std::string raw = slurp(tmp / "raw.csv");
  CHECK(raw.find("optimal-proved") != std::string::npos);

  opt.trials = 0;
  CHECK(cli::cmd_refine_log(opt) == cli::kExitUsage);
}
