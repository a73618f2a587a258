#include "stealthsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "stealthsim/dataplane.hpp"

namespace stealthsim {

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  // Reject the lowest (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t floor = (0 - bound) % bound;
  std::uint64_t r;
  do {
    r = engine();
  } while (r < floor);
  return r % bound;
}

std::vector<AsId> sample_ases(std::vector<AsId> population, std::size_t count, std::uint64_t seed) {
  if (count > population.size())
    throw ConfigError("sample size " + std::to_string(count) + " exceeds the " +
                      std::to_string(population.size()) + " eligible ASes");
  std::sort(population.begin(), population.end());
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto j = i + uniform_below(engine, population.size() - i);
    std::swap(population[i], population[j]);
  }
  population.erase(population.begin() + static_cast<std::ptrdiff_t>(count), population.end());
  std::sort(population.begin(), population.end());
  return population;
}

std::vector<AsId> resolve_targets(const AsGraph& graph, const TargetStrategy& strategy) {
  if (const auto* fixed = std::get_if<FixedTargets>(&strategy)) {
    for (AsId a : fixed->ases)
      if (!graph.contains(a)) throw ConfigError("target AS " + a.to_string() + " is not in the topology");
    return fixed->ases;
  }
  return top_by_cone(graph, std::get<TopConeTargets>(strategy).k);
}

namespace {

HijackResult evaluate_victim(const AsGraph& graph, const AsGraph& attack_graph,
                             const ExperimentSpec& spec, const MonitorConfig& mon,
                             const std::vector<AsId>& targets, const std::vector<AsId>& sources,
                             AsId victim) {
  AttackOptions opts = spec.attack;
  opts.require_adjacent = !spec.infected_injection;
  auto scenario = build_attack(attack_graph, victim, spec.victim_prefix, spec.adversary, targets,
                               spec.kind, opts, spec.registry);
  auto policy = make_policy(spec.defense, spec.registry, scenario);

  Rib rib;
  if (spec.infected_injection) {
    std::vector<OriginationSpec> benign{scenario.victim};
    rib = propagate(graph, benign, policy);
    inject_attack(rib, scenario, targets, policy);
  } else {
    auto origs = scenario.originations();
    rib = propagate(attack_graph, origs, policy);
  }

  auto infected = infected_set(rib, scenario);
  auto tally = tally_hijack(rib, victim, spec.victim_prefix, infected, sources, {spec.adversary});
  bool stealthy = visible_peers(rib, mon, scenario.malicious.prefix).stealthy;
  return HijackResult{victim, tally.fraction(), tally.compromised, tally.denominator, tally.no_route,
                      stealthy};
}

}  // namespace

ExperimentOutcome run_experiment(const AsGraph& graph, const ExperimentSpec& spec,
                                 const MonitorConfig& mon) {
  mon.validate(graph);
  spec.defense.validate(graph);
  if (spec.infected_injection && spec.kind == AttackKind::EquallySpecific)
    throw ConfigError("route injection is only defined for sub-prefix attacks");

  ExperimentOutcome out;
  out.targets = resolve_targets(graph, spec.strategy);
  if (spec.kind == AttackKind::SubPrefixStealthy && out.targets.empty())
    throw ConfigError("stealthy attack needs at least one target");

  std::vector<AsId> population = graph.nodes();
  std::erase(population, spec.adversary);
  out.sample = sample_ases(std::move(population), spec.sample_size, spec.seed);

  std::vector<AsId> victims = out.sample;
  if (spec.victim) {
    if (!graph.contains(*spec.victim))
      throw ConfigError("victim AS " + spec.victim->to_string() + " is not in the topology");
    victims = {*spec.victim};
  }

  const AsGraph attack_graph =
      spec.infected_injection ? AsGraph{} : attach_adversary(graph, spec.adversary, out.targets);
  const AsGraph& attack_view = spec.infected_injection ? graph : attack_graph;

  std::vector<std::optional<HijackResult>> slots(victims.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      auto i = next.fetch_add(1);
      if (i >= victims.size()) return;
      try {
        slots[i] = evaluate_victim(graph, attack_view, spec, mon, out.targets, out.sample, victims[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = victims.size();
        return;
      }
    }
  };
  unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(victims.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (auto& s : slots) {
    const HijackResult& r = *s;
    out.results.push_back(r);
    out.dropped_pairs += r.no_route;
    out.stealthy_all = out.stealthy_all && r.stealthy;
    if (r.denominator > 0) {
      sum += r.fraction;
      ++out.n;
    }
  }
  std::sort(out.results.begin(), out.results.end(),
            [](const HijackResult& a, const HijackResult& b) { return a.victim < b.victim; });
  if (out.n > 0) {
    out.mean = sum / static_cast<double>(out.n);
    double sq = 0.0;
    for (const auto& r : out.results)
      if (r.denominator > 0) sq += (r.fraction - out.mean) * (r.fraction - out.mean);
    out.stddev = std::sqrt(sq / static_cast<double>(out.n));
  }
  return out;
}

std::vector<CdfPoint> cdf_points(std::span<const HijackResult> results) {
  if (results.empty()) throw std::invalid_argument("cdf_points: no results");
  std::vector<double> f;
  f.reserve(results.size());
  for (const auto& r : results) f.push_back(r.fraction);
  std::sort(f.begin(), f.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i + 1 < f.size() && f[i + 1] == f[i]) continue;
    out.push_back({f[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

}  // namespace stealthsim
