#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cumapf/core.hpp"
#include "cumapf/graph.hpp"

namespace cumapf {

// fixed 64-bit generator so instances reproduce across platforms; bounded
// draws go through modulo reduction on purpose (uniform_int_distribution is
// implementation-defined)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int bounded(int k) { return static_cast<int>(next() % static_cast<std::uint64_t>(k)); }

 private:
  std::mt19937_64 eng_;
};

// splitmix-style stream derivation so batches can be generated independently
// of iteration or thread order
std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// connected vertex set grown from a uniform start by uniform frontier picks
std::vector<Vertex> random_connected_subset(const Graph& g, int n, Rng& rng);

// S and T drawn independently from the seed's two derived streams
Instance gen_random_instance(std::shared_ptr<const Graph> graph, int n,
                             std::uint64_t seed);

// top path of k vertices fanned into a stem of l vertices fanned into a bottom
// path of k vertices; S = top, T = bottom. Optimal makespan is k + l.
Instance gen_tight(int k, int l);

// k x 3 open grid, S = first column, T = last column; optimal makespan is 2
Instance gen_grid3(int k);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

// parses instance JSON; map paths are resolved against base_dir first
Instance parse_instance_json(const std::string& text, const std::string& base_dir);
std::string instance_to_json(const Instance& instance);

}  // namespace cumapf
