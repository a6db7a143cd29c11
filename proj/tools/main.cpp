/**
 * @file main.cpp
 * @brief Command line front end: run, check, bench, gen.
 *
 * Exit codes: 0 success, 1 usage or input errors, 2 check found a mismatch.
 */

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fuzzybisim/engine.hpp"
#include "fuzzybisim/oracle.hpp"

namespace {

using namespace fuzzybisim;

struct TimedRun {
  PartitionResult partition;
  double time_ms = 0.0;
  std::size_t split_calls = 0;
  std::size_t max_participation = 0;
};

TimedRun timed_run(const FuzzyGraph& g, bool counting) {
  BisimulationEngine engine(g, EngineOptions{counting});
  auto start = std::chrono::steady_clock::now();
  TimedRun out;
  out.partition = engine.run();
  auto stop = std::chrono::steady_clock::now();
  out.time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  out.split_calls = engine.split_calls();
  out.max_participation = engine.max_split_participation();
  return out;
}

FuzzyGraph read_graph(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return FuzzyGraph::parse(buf.str());
  }
  return FuzzyGraph::load(path);
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

double log2_clamped(double x) { return std::max(std::log2(x), 1.0); }

int cmd_run(const std::string& input, bool counting,
            const std::string& format) {
  FuzzyGraph g = read_graph(input);
  TimedRun run = timed_run(g, counting);

  if (format == "json") {
    nlohmann::json j;
    j["partition"] = run.partition.blocks;
    j["stats"] = {
        {"n", g.vertex_count()},
        {"m", g.edge_count()},
        {"l", g.distinct_degree_count()},
        {"labels", g.label_count()},
        {"blocks", run.partition.block_count()},
        {"split_calls", run.split_calls},
        {"max_participation", run.max_participation},
        {"mode", counting ? "counting" : "plain"},
        {"time_ms", run.time_ms},  // the only nondeterministic field
    };
    std::cout << j.dump(2) << "\n";
  } else {
    // Partition on stdout (byte-identical across runs), stats on stderr.
    std::cout << run.partition.to_text();
    std::cerr << "n=" << g.vertex_count() << " m=" << g.edge_count()
              << " l=" << g.distinct_degree_count()
              << " labels=" << g.label_count()
              << " blocks=" << run.partition.block_count()
              << " splits=" << run.split_calls
              << " max_participation=" << run.max_participation
              << " mode=" << (counting ? "counting" : "plain")
              << " time_ms=" << run.time_ms << "\n";
  }
  return 0;
}

int cmd_check(std::size_t cases, std::uint64_t seed, std::size_t max_n,
              std::size_t max_m, std::size_t max_l, std::size_t max_labels) {
  if (cases == 0) {
    std::cerr << "warning: 0 cases requested; nothing was checked\n";
    return 0;
  }
  for (std::size_t i = 0; i < cases; ++i) {
    std::uint64_t case_seed = seed + i;
    std::mt19937_64 rng(case_seed);
    oracle::RandomGraphParams params;
    params.vertex_count = 1 + rng() % max_n;
    params.max_edges = rng() % (max_m + 1);
    params.degree_pool = 1 + rng() % max_l;
    params.label_count = 1 + rng() % max_labels;
    params.seed = rng();
    FuzzyGraph g = oracle::random_graph(params);

    for (bool counting : {false, true}) {
      PartitionResult got = compute_partition(g, EngineOptions{counting});
      PartitionResult want =
          counting ? oracle::naive_largest_counting_bisimulation(g)
                   : oracle::naive_largest_bisimulation(g);
      if (got != want) {
        std::cerr << "mismatch in case " << i << " (seed " << case_seed
                  << ", " << (counting ? "counting" : "plain") << " mode)\n"
                  << "graph:\n"
                  << g.serialize() << "expected:\n"
                  << want.to_text() << "got:\n"
                  << got.to_text();
        return 2;
      }
    }
  }
  std::cout << "checked " << cases
            << " cases in both modes: engine matches the reference\n";
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& sizes, double edge_factor,
              std::size_t pool, std::size_t labels, std::uint64_t seed,
              bool counting, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_out(out_path, file);
  out << "n,m,l,labels,mode,time_ms,split_calls,max_participation,"
         "participation_bound,ratio\n";
  for (std::size_t n : sizes) {
    oracle::RandomGraphParams params;
    params.vertex_count = n;
    params.max_edges = static_cast<std::size_t>(edge_factor * n);
    params.degree_pool = pool;
    params.label_count = labels;
    params.seed = seed + n;
    FuzzyGraph g = oracle::random_graph(params);
    TimedRun run = timed_run(g, counting);

    double m = static_cast<double>(g.edge_count());
    double nn = static_cast<double>(n);
    double key_log = counting
                         ? log2_clamped(std::max(m, 2.0))
                         : log2_clamped(static_cast<double>(
                               std::max(g.distinct_degree_count(),
                                        std::size_t{2})));
    double denom = (m * key_log + nn) * log2_clamped(nn);
    std::size_t bound = 0;
    while ((std::size_t{1} << bound) < n) ++bound;
    out << n << ',' << g.edge_count() << ',' << g.distinct_degree_count()
        << ',' << g.label_count() << ','
        << (counting ? "counting" : "plain") << ',' << run.time_ms << ','
        << run.split_calls << ',' << run.max_participation << ',' << bound
        << ',' << run.time_ms / denom << '\n';
  }
  return 0;
}

int cmd_gen(std::size_t n, std::size_t m, std::size_t pool,
            std::size_t labels, std::uint64_t seed,
            const std::string& out_path) {
  FuzzyGraph g = oracle::random_graph({n, m, pool, labels, seed});
  std::ofstream file;
  open_out(out_path, file) << g.serialize();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Largest crisp bisimulation partitions of finite fuzzy labeled "
      "graphs"};
  app.require_subcommand(1);

  std::string input = "-";
  bool counting = false;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t cases = 1000;
  std::size_t n = 12, m = 40, l = 6, labels = 2;
  std::vector<std::size_t> sizes{1024, 2048, 4096, 8192, 16384};
  double edge_factor = 4.0;
  std::string out_path;

  CLI::App* run = app.add_subcommand(
      "run", "Compute the partition of one input graph");
  run->add_option("-i,--input", input, "Graph file, or - for stdin");
  run->add_flag("--counting", counting,
                "Use the counting-successors variant");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* check = app.add_subcommand(
      "check", "Cross-validate the engine against the naive reference");
  check->add_option("--cases", cases, "Number of random cases");
  check->add_option("--seed", seed, "Base seed");
  check->add_option("--n", n, "Max vertices per case");
  check->add_option("--m", m, "Max edges per case");
  check->add_option("--l", l, "Max degree-pool size per case");
  check->add_option("--labels", labels, "Max edge labels per case");

  CLI::App* bench = app.add_subcommand(
      "bench", "Time the engine across a size schedule (CSV output)");
  bench->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--edge-factor", edge_factor, "Edges per vertex");
  bench->add_option("--l", l, "Degree-pool size");
  bench->add_option("--labels", labels, "Edge labels");
  bench->add_option("--seed", seed, "Base seed");
  bench->add_flag("--counting", counting,
                  "Use the counting-successors variant");
  bench->add_option("--out", out_path, "Output file, or - for stdout");

  CLI::App* gen = app.add_subcommand(
      "gen", "Emit a deterministic random graph in the text format");
  gen->add_option("--n", n, "Vertices");
  gen->add_option("--m", m, "Max edges");
  gen->add_option("--l", l, "Degree-pool size");
  gen->add_option("--labels", labels, "Edge labels");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", out_path, "Output file, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(input, counting, format);
    if (check->parsed()) return cmd_check(cases, seed, n, m, l, labels);
    if (bench->parsed())
      return cmd_bench(sizes, edge_factor, l, labels, seed, counting,
                       out_path);
    if (gen->parsed()) return cmd_gen(n, m, l, labels, seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
