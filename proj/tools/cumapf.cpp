#include <cstdio>

#include "CLI11.hpp"
#include "cumapf/cli.hpp"

using namespace cumapf;

int main(int argc, char** argv) {
  CLI::App app{"CUMAPF toolkit: connected unlabeled multi-agent pathfinding"};
  app.require_subcommand(1);

  cli::SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "plan one instance");
  solve_cmd->add_option("--instance", solve.instance_path)->required();
  solve_cmd->add_option("--algo", solve.algo, "pull | single | lacam");
  solve_cmd->add_option("--out", solve.out_path, "plan JSON output");
  solve_cmd->add_option("--time-limit", solve.time_limit_ms, "search budget in ms");
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_flag("--validate", solve.validate, "re-check the plan, exit 3 on failure");

  cli::GenOptions gen;
  std::vector<int> tight_args;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--map", gen.map_path, "MovingAI map file");
  gen_cmd->add_option("--tight", tight_args,
                      "K L: fan construction with optimal makespan K+L")
      ->expected(2);
  gen_cmd->add_option("--grid3", gen.grid3_k, "K: Kx3 grid, columns 1 -> 3");
  gen_cmd->add_option("--agents", gen.agents);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out_path)->required();

  cli::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "batch benchmark on one map");
  bench_cmd->add_option("--map", bench.map_path)->required();
  bench_cmd->add_option("--agents", bench.agents, "agent counts")->required();
  bench_cmd->add_option("--per", bench.per, "instances per agent count");
  bench_cmd->add_option("--algos", bench.algos);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out_path, "records CSV")->required();
  bench_cmd->add_option("--summary", bench.summary_path, "summary CSV");
  bench_cmd->add_option("--time-limit", bench.time_limit_ms, "lacam budget in ms");
  bench_cmd->add_option("--threads", bench.threads, "0 = CUMAPF_THREADS env or 1");
  bench_cmd->add_flag("--no-timing", bench.no_timing,
                      "zero the time columns (byte-stable output)");

  cli::ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "check a plan against an instance");
  validate_cmd->add_option("--instance", validate.instance_path)->required();
  validate_cmd->add_option("--plan", validate.plan_path)->required();

  cli::LbOptions lb;
  auto* lb_cmd = app.add_subcommand("lb", "print the bottleneck-matching lower bound");
  lb_cmd->add_option("--instance", lb.instance_path)->required();

  cli::OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum for tiny instances");
  oracle_cmd->add_option("--instance", oracle.instance_path)->required();
  oracle_cmd->add_option("--out", oracle.out_path, "witness plan JSON");
  oracle_cmd->add_option("--max-agents", oracle.max_agents);
  oracle_cmd->add_option("--max-vertices", oracle.max_vertices);
  oracle_cmd->add_option("--max-states", oracle.max_states);

  cli::RefineLogOptions refine;
  auto* refine_cmd =
      app.add_subcommand("refine-log", "multi-trial anytime search refinement data");
  refine_cmd->add_option("--instance", refine.instance_path)->required();
  refine_cmd->add_option("--trials", refine.trials)->required();
  refine_cmd->add_option("--time-limit", refine.time_limit_ms)->required();
  refine_cmd->add_option("--seed", refine.seed);
  refine_cmd->add_option("--out", refine.out_path)->required();
  refine_cmd->add_option("--raw-out", refine.raw_out_path, "per-iteration log lines");
  refine_cmd->add_option("--buckets", refine.buckets);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  if (tight_args.size() == 2) {
    gen.tight_k = tight_args[0];
    gen.tight_l = tight_args[1];
  }

  if (solve_cmd->parsed()) return cli::cmd_solve(solve);
  if (gen_cmd->parsed()) return cli::cmd_gen(gen);
  if (bench_cmd->parsed()) return cli::cmd_bench(bench);
  if (validate_cmd->parsed()) return cli::cmd_validate(validate);
  if (lb_cmd->parsed()) return cli::cmd_lb(lb);
  if (oracle_cmd->parsed()) return cli::cmd_oracle(oracle);
  if (refine_cmd->parsed()) return cli::cmd_refine_log(refine);
  return cli::kExitUsage;
}
