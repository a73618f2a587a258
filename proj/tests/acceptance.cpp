// Desk acceptance suite: one PASS/FAIL line per criterion. Criteria that need
// a real CAIDA snapshot live in acceptance_caida.cpp.

#include <iostream>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "stealthsim/dataplane.hpp"
#include "stealthsim/experiment.hpp"
#include "stealthsim/monitoring.hpp"
#include "stealthsim/report.hpp"
#include "stealthsim/scenario.hpp"

using namespace stealthsim;

namespace {

const Prefix kP = Prefix::parse("10.0.0.0/23");
const Prefix kQ = Prefix::parse("10.0.0.0/24");
const Ipv4 kInQ = parse_ipv4("10.0.0.7");
constexpr int kGraphs = 1000;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(bool ok, std::string_view name, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::vector<oracle::RandomCase> cases() {
  std::mt19937_64 rng(kSeed);
  std::vector<oracle::RandomCase> out;
  for (int i = 0; i < kGraphs; ++i) out.push_back(oracle::random_case(rng));
  return out;
}

MonitorConfig all_ebgp(const AsGraph& g) {
  MonitorConfig m;
  for (AsId a : g.nodes()) m.peers.emplace(a, MonitorSession::EbgpMultihop);
  return m;
}

Rib run(const AsGraph& g, const AttackScenario& s, const PolicyConfig& policy = {}) {
  auto o = s.originations();
  return propagate(g, o, policy);
}

std::vector<AsId> ids(std::initializer_list<std::uint32_t> v) {
  std::vector<AsId> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

void core_stealth(const std::vector<oracle::RandomCase>& cs) {
  int visible = 0, effective = 0;
  for (const auto& c : cs) {
    auto s = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixStealthy);
    auto rib = run(c.graph, s);
    auto v = stealthy_and_effective(rib, all_ebgp(c.graph), s, c.graph.nodes());
    if (!v.stealthy) ++visible;
    if (v.fraction > 0) ++effective;
  }
  std::ostringstream d;
  d << kGraphs << " graphs, " << visible << " visible at an eBGP monitor, " << effective
    << " with hijack fraction > 0";
  report(visible == 0 && effective > 0, "core stealth property", d.str());
}

void control_attack(const std::vector<oracle::RandomCase>& cs) {
  int mismatches = 0;
  for (const auto& c : cs) {
    auto s = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixLoud);
    auto rib = run(c.graph, s);
    auto seen = visible_peers(rib, all_ebgp(c.graph), kQ).exporting_peers;
    auto holders = rib.holders(kQ);
    if (seen != std::set<AsId>(holders.begin(), holders.end())) ++mismatches;
  }
  auto g = oracle::t5();
  auto s = build_attack(g, AsId(5), kP, AsId(6), ids({1}), AttackKind::SubPrefixLoud);
  MonitorConfig mon;
  mon.peers.emplace(AsId(1), MonitorSession::EbgpMultihop);
  mon.peers.emplace(AsId(2), MonitorSession::EbgpMultihop);
  auto t5 = stealthy_and_effective(run(g, s), mon, s, ids({1, 2, 3, 4}));
  std::ostringstream d;
  d << mismatches << "/" << kGraphs << " graphs where a monitor holding the sub-prefix missed it; T5 stealthy="
    << (t5.stealthy ? "true" : "false") << " fraction=" << t5.fraction;
  report(mismatches == 0 && !t5.stealthy && t5.fraction == 1.0, "control attack", d.str());
}

void oracle_and_forwarding(const std::vector<oracle::RandomCase>& cs) {
  int rib_mismatch = 0, runs = 0;
  long pairs = 0, disagreements = 0, skipped = 0;
  for (const auto& c : cs) {
    auto stealthy = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixStealthy);
    auto loud = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixLoud);
    auto equal = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::EquallySpecific);
    std::vector<std::vector<OriginationSpec>> scenarios{
        {stealthy.victim}, equal.originations(), stealthy.originations(), loud.originations()};
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      auto rib = propagate(c.graph, scenarios[i]);
      ++runs;
      if (!(rib == oracle::naive_propagate(c.graph, scenarios[i]))) ++rib_mismatch;

      const AttackScenario& sc = i == 1 ? equal : stealthy;
      std::set<AsId> infected;
      if (i > 0) infected = infected_set(rib, sc);
      for (AsId src : c.graph.nodes()) {
        auto fw = forward(rib, src, kInQ, c.victim);
        auto ex = is_compromised(rib, src, kP, infected);
        ++pairs;
        if (ex == Exposure::NoRoute) {
          ++skipped;
          if (fw.verdict == Verdict::Victim) ++disagreements;
          continue;
        }
        if ((fw.verdict == Verdict::Adversary) != (ex == Exposure::Compromised)) ++disagreements;
      }
    }
  }
  std::ostringstream d1;
  d1 << rib_mismatch << " RIB mismatches over " << runs
     << " propagations (benign, equally-specific, stealthy and loud sub-prefix)";
  report(rib_mismatch == 0, "oracle equivalence", d1.str());
  std::ostringstream d2;
  d2 << disagreements << " disagreements over " << pairs << " source/destination pairs (" << skipped
     << " without a route to the victim prefix)";
  report(disagreements == 0, "forward/path-membership agreement", d2.str());
}

void defense_soundness(const std::vector<oracle::RandomCase>& cs) {
  std::mt19937_64 rng(kSeed + 1);
  int infecting = 0, still_stealthy = 0, forwarding_changed = 0;
  int rov_leaks = 0, slack_cases = 0, slack_zero = 0;
  const AsId stub(999);
  for (const auto& c : cs) {
    auto s = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixStealthy);
    MonitorConfig mon;
    PolicyConfig rewrite;
    for (AsId a : c.graph.nodes()) {
      if (a == c.adversary || rng() % 2) continue;
      mon.peers.emplace(a, MonitorSession::EbgpMultihop);
      apply_rewrite_defense(rewrite, a);
    }
    auto plain = run(c.graph, s);
    auto defended = run(c.graph, s, rewrite);
    bool hits = false;
    for (AsId a : infected_set(plain, s)) hits = hits || mon.peers.contains(a);
    if (hits) {
      ++infecting;
      if (visible_peers(defended, mon, kQ).stealthy) ++still_stealthy;
    }
    for (AsId src : c.graph.nodes()) {
      auto x = forward(plain, src, kInQ, c.victim);
      auto y = forward(defended, src, kInQ, c.victim);
      if (x.verdict != y.verdict || x.path_taken != y.path_taken) ++forwarding_changed;
    }

    auto g = attach_adversary(c.graph, stub, c.targets);
    for (auto kind : {AttackKind::SubPrefixStealthy, AttackKind::SubPrefixLoud}) {
      for (bool spoof : {false, true}) {
        AttackOptions opts;
        opts.spoof_victim_origin = spoof;
        auto a = build_attack(g, c.victim, kP, stub, c.targets, kind, opts);
        DefenseConfig d;
        d.rov = RovPolicy{};
        d.victim_roa_max_length = kP.length();
        auto sources = g.nodes();
        if (stealthy_and_effective(run(g, a, make_policy(d, {}, a)), {}, a, sources).fraction != 0.0) ++rov_leaks;
        if (!spoof) continue;
        double undefended = stealthy_and_effective(run(g, a), {}, a, sources).fraction;
        if (undefended == 0.0) continue;
        ++slack_cases;
        d.victim_roa_max_length = static_cast<std::uint8_t>(kP.length() + 1);
        if (stealthy_and_effective(run(g, a, make_policy(d, {}, a)), {}, a, sources).fraction == 0.0) ++slack_zero;
      }
    }
  }
  std::ostringstream d;
  d << "rewrite: " << still_stealthy << "/" << infecting << " peer-infecting scenarios still stealthy, "
    << forwarding_changed << " forwarding changes; exact ROV: " << rov_leaks
    << " scenarios with fraction > 0; slack ROA + spoof: " << slack_zero << "/" << slack_cases
    << " effective scenarios driven to 0";
  report(infecting > 0 && still_stealthy == 0 && forwarding_changed == 0 && rov_leaks == 0 && slack_cases > 0 &&
             slack_zero == 0,
         "defense soundness", d.str());
}

void determinism() {
  auto g = oracle::synthetic_internet(kSeed, 5, 30, 300);
  std::string reference;
  bool same = true;
  for (unsigned threads : {1u, 2u, 4u, 8u, 1u}) {
    ExperimentSpec spec;
    spec.seed = 7;
    spec.strategy = TopConeTargets{3};
    spec.threads = threads;
    std::ostringstream csv;
    write_results_csv(csv, run_experiment(g, spec, {}).results);
    if (reference.empty()) reference = csv.str();
    same = same && csv.str() == reference;
  }
  report(same, "determinism", "results.csv identical across runs with 1, 2, 4 and 8 threads (150 victims)");
}

void full_victims() {
  auto g = oracle::synthetic_internet(kSeed + 2, 5, 30, 300);
  std::size_t eligible = 0, wrong = 0;
  for (bool injection : {true, false}) {
    for (std::size_t k = 1; k <= 5; ++k) {
      ExperimentSpec spec;
      spec.seed = k;
      spec.strategy = TopConeTargets{k};
      spec.infected_injection = injection;
      auto out = run_experiment(g, spec, {});
      std::set<AsId> infected(out.targets.begin(), out.targets.end());
      for (const auto& r : out.results) {
        auto provs = g.providers(r.victim);
        bool all = !provs.empty() && g.peers(r.victim).empty() && g.customers(r.victim).empty();
        for (AsId p : provs) all = all && infected.contains(p);
        if (!all || r.denominator == 0) continue;
        ++eligible;
        if (r.fraction != 1.0) ++wrong;
      }
    }
  }
  std::ostringstream d;
  d << wrong << " of " << eligible
    << " sampled stub victims with every provider infected below fraction 1.0";
  report(eligible > 0 && wrong == 0, "100%-victim property", d.str());
}

}  // namespace

int main() {
  auto cs = cases();
  core_stealth(cs);
  control_attack(cs);
  oracle_and_forwarding(cs);
  defense_soundness(cs);
  determinism();
  full_victims();
  std::cout << (failures == 0 ? "all desk criteria passed" : "some desk criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
