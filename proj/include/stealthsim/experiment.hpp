#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "stealthsim/monitoring.hpp"
#include "stealthsim/scenario.hpp"

namespace stealthsim {

/// Name of the pinned sampling algorithm, recorded in output metadata.
inline constexpr std::string_view kSamplerName = "mt19937_64/rejection-bounded/partial-fisher-yates";

/// Uniform integer in [0, bound) from a 64-bit engine without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound);

/// `count` ASes drawn without replacement from `population` (taken in
/// ascending order), returned ascending. Fully determined by `seed`.
std::vector<AsId> sample_ases(std::vector<AsId> population, std::size_t count, std::uint64_t seed);

struct FixedTargets {
  std::vector<AsId> ases;
};
struct TopConeTargets {
  std::size_t k;
};
using TargetStrategy = std::variant<FixedTargets, TopConeTargets>;

struct ExperimentSpec {
  std::size_t sample_size = 150;
  std::uint64_t seed = 0;
  TargetStrategy strategy = FixedTargets{};
  /// Install the malicious route straight into the targets instead of
  /// attaching the adversary and propagating.
  bool infected_injection = false;
  AttackKind kind = AttackKind::SubPrefixStealthy;
  AttackOptions attack;
  Prefix victim_prefix = Prefix(0x0A000000, 23);
  AsId adversary = AsId(4200000000u);
  /// Single-victim mode; otherwise every sampled AS takes a turn.
  std::optional<AsId> victim;
  DefenseConfig defense;
  CommunityRegistry registry;
  /// Worker threads; 0 = hardware concurrency. Output is independent of it.
  unsigned threads = 0;
};

struct HijackResult {
  AsId victim;
  double fraction;
  std::size_t compromised;
  std::size_t denominator;
  std::size_t no_route;
  bool stealthy;
};

struct ExperimentOutcome {
  std::vector<HijackResult> results;  // ascending victim ASN
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;  // victims with a non-empty denominator
  bool stealthy_all = true;
  std::size_t dropped_pairs = 0;
  std::vector<AsId> targets;
  std::vector<AsId> sample;
};

ExperimentOutcome run_experiment(const AsGraph& graph, const ExperimentSpec& spec,
                                 const MonitorConfig& mon);

/// Resolves the strategy to a concrete target list.
std::vector<AsId> resolve_targets(const AsGraph& graph, const TargetStrategy& strategy);

struct CdfPoint {
  double fraction;
  double cumulative_share;
};

/// Empirical CDF: one point per distinct fraction, ascending, final share 1.
std::vector<CdfPoint> cdf_points(std::span<const HijackResult> results);

}  // namespace stealthsim
