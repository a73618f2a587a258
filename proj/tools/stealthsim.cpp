#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stealthsim/descriptor.hpp"
#include "stealthsim/experiment.hpp"
#include "stealthsim/report.hpp"

namespace fs = std::filesystem;
using namespace stealthsim;

namespace {

constexpr std::string_view kVersion = "0.1.0";

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_text(const std::string& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + std::string(what) + " file: " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << body;
}

struct Topology {
  AsGraph graph;
  std::string digest;
};

Topology load_topology(const std::string& path) {
  auto bytes = read_topology_bytes(path);
  return {parse_as_rel(bytes), sha256_hex(bytes)};
}

struct SimulateArgs {
  std::string topology, scenario, monitors, out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a, const std::string& command) {
  const std::string started = utc_now();
  auto topo = load_topology(a.topology);
  ExperimentSpec spec;
  try {
    spec = parse_scenario_descriptor(read_text(a.scenario, "scenario"));
  } catch (const ParseError& e) {
    throw ParseError(a.scenario + ": " + e.what());
  }
  spec.seed = a.seed;
  spec.threads = a.threads;
  MonitorConfig mon;
  if (!a.monitors.empty()) {
    try {
      mon = parse_monitor_peers(read_text(a.monitors, "monitors"));
    } catch (const ParseError& e) {
      throw ParseError(a.monitors + ": " + e.what());
    }
  }

  auto outcome = run_experiment(topo.graph, spec, mon);
  if (outcome.dropped_pairs > 0)
    std::cerr << "dropped " << outcome.dropped_pairs << " source-victim pairs with no route\n";

  std::ostringstream results, cdf;
  write_results_csv(results, outcome.results);
  auto counted = counted_results(outcome);
  write_cdf_csv(cdf, counted.empty() ? std::vector<CdfPoint>{} : cdf_points(counted));
  auto aggregate = aggregate_json(outcome, a.seed, topo.digest).dump(2) + "\n";

  if (a.out.empty()) {
    std::cout << results.str();
    std::cerr << aggregate;
    return 0;
  }

  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_file(dir / "results.csv", results.str());
  write_file(dir / "cdf.csv", cdf.str());
  write_file(dir / "aggregate.json", aggregate);
  nlohmann::json manifest = {
      {"topology", {{"path", a.topology}, {"sha256", topo.digest}}},
      {"monitors", a.monitors.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.monitors)},
      {"scenario", a.scenario},
      {"seed", a.seed},
      {"sampler", kSamplerName},
      {"command", command},
      {"version", kVersion},
      {"started_at", started},
      {"finished_at", utc_now()},
  };
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int cmd_cone_rank(const std::string& topology, std::size_t k) {
  auto g = load_topology(topology).graph;
  auto ranks = rank_by_cone(g, k);
  std::cout << "rank,asn,cone_size\n";
  for (std::size_t i = 0; i < ranks.size(); ++i)
    std::cout << i + 1 << ',' << ranks[i].as.value() << ',' << ranks[i].cone_size << '\n';
  return 0;
}

int cmd_check(const std::string& topology) {
  auto report = check_as_rel(read_topology_bytes(topology));
  for (const auto& a : report.anomalies) std::cout << "error: " << a << '\n';
  for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
  std::cout << (report.ok() ? "ok" : "invalid") << '\n'
            << "nodes " << report.nodes << '\n'
            << "edges " << report.edges << '\n'
            << "provider_customer " << report.provider_customer_edges << '\n'
            << "peer " << report.peer_edges << '\n';
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AS-level simulator for stealthy NO_EXPORT sub-prefix hijacks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string default_topology;
  if (const char* env = std::getenv("STEALTHSIM_TOPOLOGY")) default_topology = env;

  auto add_topology = [&](CLI::App* sub, std::string& target) {
    target = default_topology;
    auto* opt = sub->add_option("--topology", target, "CAIDA serial-1 as-rel file, optionally gzipped "
                                                      "(default: $STEALTHSIM_TOPOLOGY)");
    if (default_topology.empty()) opt->required();
  };

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run a hijack experiment");
  add_topology(simulate, sim.topology);
  simulate->add_option("--scenario", sim.scenario, "scenario descriptor (JSON)")->required();
  simulate->add_option("--monitors", sim.monitors, "monitor peers file");
  simulate->add_option("--seed", sim.seed, "sampling seed")->default_val(0);
  simulate->add_option("--out", sim.out, "output directory (default: results on stdout)");
  simulate->add_option("--threads", sim.threads, "worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);

  std::string rank_topology;
  std::size_t k = 10;
  auto* cone_rank = app.add_subcommand("cone-rank", "list the largest customer cones");
  add_topology(cone_rank, rank_topology);
  cone_rank->add_option("--k", k, "number of rows")->default_val(10);

  std::string check_topology;
  auto* check = app.add_subcommand("check", "validate a topology file");
  add_topology(check, check_topology);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  try {
    if (*simulate) return cmd_simulate(sim, command);
    if (*cone_rank) return cmd_cone_rank(rank_topology, k);
    return cmd_check(check_topology);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
