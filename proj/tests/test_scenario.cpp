#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "stealthsim/dataplane.hpp"
#include "stealthsim/monitoring.hpp"
#include "stealthsim/scenario.hpp"

using namespace stealthsim;

namespace {

const Prefix kP = Prefix::parse("10.0.0.0/23");
const Prefix kQ = Prefix::parse("10.0.0.0/24");
const Ipv4 kInQ = parse_ipv4("10.0.0.7");

std::vector<AsId> ids(std::initializer_list<std::uint32_t> v) {
  std::vector<AsId> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

MonitorConfig ebgp(std::initializer_list<std::uint32_t> peers) {
  MonitorConfig m;
  for (auto p : peers) m.peers.emplace(AsId(p), MonitorSession::EbgpMultihop);
  return m;
}

AttackScenario t5_attack(AttackKind kind, AttackOptions opts = {}) {
  return build_attack(oracle::t5(), AsId(5), kP, AsId(6), ids({1}), kind, opts);
}

Rib run(const AsGraph& g, const AttackScenario& s, const PolicyConfig& policy = {}) {
  auto o = s.originations();
  return propagate(g, o, policy);
}

}  // namespace

TEST(BuildAttack, T5Kinds) {
  auto s = t5_attack(AttackKind::SubPrefixStealthy);
  EXPECT_EQ(s.malicious.prefix, kQ);
  EXPECT_EQ(s.malicious.communities, CommunitySet{Community(65535, 65281)});
  EXPECT_EQ(s.malicious.announce_to, ids({1}));
  EXPECT_EQ(s.malicious.origin, AsId(6));
  EXPECT_EQ(s.victim.prefix, kP);
  EXPECT_TRUE(s.malicious.path_suffix.empty());

  auto loud = t5_attack(AttackKind::SubPrefixLoud);
  EXPECT_TRUE(loud.malicious.communities.empty());
  auto rib = run(oracle::t5(), loud);
  EXPECT_EQ(rib.holders(kQ), oracle::t5().nodes());

  auto eq = t5_attack(AttackKind::EquallySpecific);
  EXPECT_EQ(eq.malicious.prefix, kP);

  AttackOptions spoof;
  spoof.spoof_victim_origin = true;
  EXPECT_EQ(t5_attack(AttackKind::SubPrefixStealthy, spoof).malicious.path_suffix, ids({5}));
}

TEST(BuildAttack, Errors) {
  auto g = oracle::t5();
  auto host = Prefix::parse("10.0.0.1/32");
  EXPECT_THROW(build_attack(g, AsId(5), host, AsId(6), ids({1}), AttackKind::SubPrefixStealthy), ConfigError);
  EXPECT_THROW(build_attack(g, AsId(5), host, AsId(6), ids({1}), AttackKind::SubPrefixLoud), ConfigError);
  EXPECT_NO_THROW(build_attack(g, AsId(5), host, AsId(6), ids({1}), AttackKind::EquallySpecific));
  EXPECT_THROW(build_attack(g, AsId(5), kP, AsId(6), ids({3}), AttackKind::SubPrefixStealthy), ConfigError);
  EXPECT_THROW(build_attack(g, AsId(5), kP, AsId(5), ids({1}), AttackKind::SubPrefixStealthy), ConfigError);
  EXPECT_THROW(build_attack(g, AsId(99), kP, AsId(6), ids({1}), AttackKind::SubPrefixStealthy), ConfigError);
  AttackOptions inject;
  inject.require_adjacent = false;
  EXPECT_NO_THROW(build_attack(g, AsId(5), kP, AsId(6), ids({3}), AttackKind::SubPrefixStealthy, inject));
}

TEST(BuildAttack, ScopedCommunityMustActAtTargets) {
  CommunityRegistry reg;
  reg.add_scoped(AsId(1), Community(1, 990), CommunityAction::NoExport);
  AttackOptions opts;
  opts.communities = CommunitySet{Community(1, 990)};
  auto g = oracle::t5();
  EXPECT_NO_THROW(build_attack(g, AsId(5), kP, AsId(6), ids({1}), AttackKind::SubPrefixStealthy, opts, reg));
  opts.communities = CommunitySet{Community(2, 990)};
  EXPECT_THROW(build_attack(g, AsId(5), kP, AsId(6), ids({1}), AttackKind::SubPrefixStealthy, opts, reg),
               ConfigError);
}

TEST(AttachAdversary, AddsTransitEdges) {
  auto g = attach_adversary(oracle::t5(), AsId(100), ids({3, 4}));
  EXPECT_EQ(g.relation(AsId(100), AsId(3)), Role::Provider);
  EXPECT_EQ(g.relation(AsId(4), AsId(100)), Role::Customer);
  auto same = attach_adversary(oracle::t5(), AsId(6), ids({1}));
  EXPECT_EQ(same.edge_count(), oracle::t5().edge_count());
}

TEST(RewriteDefense, T5Examples) {
  auto g = oracle::t5();
  auto s = t5_attack(AttackKind::SubPrefixStealthy);
  auto sources = ids({1, 2, 3, 4});

  PolicyConfig at1;
  apply_rewrite_defense(at1, AsId(1));
  auto rib1 = run(g, s, at1);
  auto v1 = stealthy_and_effective(rib1, ebgp({1}), s, sources);
  EXPECT_FALSE(v1.stealthy);
  EXPECT_DOUBLE_EQ(v1.fraction, 0.75);
  const RibEntry* e = rib1.find(AsId(1), kQ);
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->route.communities.contains(Community(1, 123)));
  EXPECT_FALSE(e->route.communities.contains(kNoExport));
  EXPECT_TRUE(e->egress_filtered);
  EXPECT_EQ(rib1.holders(kQ), ids({1, 6}));

  PolicyConfig at2;
  apply_rewrite_defense(at2, AsId(2));
  auto v2 = stealthy_and_effective(run(g, s, at2), ebgp({1}), s, sources);
  EXPECT_TRUE(v2.stealthy);
  EXPECT_DOUBLE_EQ(v2.fraction, 0.75);
}

TEST(RewriteDefense, NoAdvertiseResidual) {
  AttackOptions opts;
  opts.communities = CommunitySet{kNoAdvertise};
  auto s = t5_attack(AttackKind::SubPrefixStealthy, opts);
  PolicyConfig policy;
  apply_rewrite_defense(policy, AsId(1));
  auto rib = run(oracle::t5(), s, policy);
  for (auto session : {MonitorSession::EbgpMultihop, MonitorSession::Ibgp}) {
    MonitorConfig m;
    m.peers.emplace(AsId(1), session);
    EXPECT_TRUE(visible_peers(rib, m, kQ).stealthy);
  }
  EXPECT_EQ(infected_set(rib, s), (std::set<AsId>{AsId(1), AsId(6)}));
}

TEST(Rov, T5MaxLength) {
  auto g = oracle::t5();
  auto sources = ids({1, 2, 3, 4});
  auto mon = ebgp({2});
  for (auto [maxlen, spoof, expect] : {std::tuple{23, false, 0.0}, std::tuple{23, true, 0.0},
                                       std::tuple{24, false, 0.0}, std::tuple{24, true, 0.75}}) {
    AttackOptions opts;
    opts.spoof_victim_origin = spoof;
    auto s = t5_attack(AttackKind::SubPrefixStealthy, opts);
    DefenseConfig d;
    d.rov = RovPolicy{};
    d.victim_roa_max_length = static_cast<std::uint8_t>(maxlen);
    auto rib = run(g, s, make_policy(d, {}, s));
    EXPECT_DOUBLE_EQ(stealthy_and_effective(rib, mon, s, sources).fraction, expect)
        << "maxlen " << maxlen << " spoof " << spoof;
    EXPECT_EQ(rib.holders(kP).size(), g.node_count());
  }
}

TEST(Rov, EnforcersOutsideTopology) {
  DefenseConfig d;
  d.rov = RovPolicy{{}, std::set<AsId>{AsId(42)}};
  EXPECT_THROW(d.validate(oracle::t5()), ConfigError);
  DefenseConfig r;
  r.rewrite_no_export_at = {AsId(42)};
  EXPECT_THROW(r.validate(oracle::t5()), ConfigError);
}

TEST(InjectAttack, InstallsAtTargetsOnly) {
  auto g = oracle::t5();
  AttackOptions opts;
  opts.require_adjacent = false;
  auto s = build_attack(g, AsId(5), kP, AsId(6), ids({2, 3}), AttackKind::SubPrefixStealthy, opts);
  std::vector<OriginationSpec> benign{s.victim};
  auto rib = propagate(g, benign);
  inject_attack(rib, s, ids({2, 3}), {});
  EXPECT_EQ(rib.holders(kQ), ids({2, 3, 6}));
  EXPECT_EQ(rib.find(AsId(2), kQ)->route.as_path, ids({2, 6}));
  EXPECT_TRUE(rib.find(AsId(2), kQ)->export_locked);
  EXPECT_EQ(infected_set(rib, s), (std::set<AsId>{AsId(2), AsId(3), AsId(6)}));
  EXPECT_EQ(forward(rib, AsId(4), kInQ, AsId(5)).verdict, Verdict::Adversary);
}

class ScenarioProperties : public ::testing::TestWithParam<int> {};

TEST_P(ScenarioProperties, InfectedWithinTargetsAndRewriteKeepsForwarding) {
  std::mt19937_64 rng(9100 + GetParam());
  for (int i = 0; i < 60; ++i) {
    auto c = oracle::random_case(rng);
    auto s = build_attack(c.graph, c.victim, kP, c.adversary, c.targets, AttackKind::SubPrefixStealthy);
    auto plain = run(c.graph, s);
    auto infected = infected_set(plain, s);
    std::set<AsId> allowed(c.targets.begin(), c.targets.end());
    allowed.insert(c.adversary);
    for (AsId a : infected) EXPECT_TRUE(allowed.contains(a)) << a.value();

    PolicyConfig policy;
    MonitorConfig mon;
    for (AsId a : c.graph.nodes()) {
      if (rng() % 2) continue;
      apply_rewrite_defense(policy, a);
      mon.peers.emplace(a, MonitorSession::EbgpMultihop);
    }
    auto defended = run(c.graph, s, policy);
    bool hits_peer = false;
    for (AsId a : infected) hits_peer = hits_peer || (mon.peers.contains(a) && a != c.adversary);
    if (hits_peer) EXPECT_FALSE(visible_peers(defended, mon, kQ).stealthy);
    for (AsId src : c.graph.nodes()) {
      auto x = forward(plain, src, kInQ, c.victim);
      auto y = forward(defended, src, kInQ, c.victim);
      EXPECT_EQ(x.verdict, y.verdict);
      EXPECT_EQ(x.path_taken, y.path_taken);
    }
  }
}

TEST_P(ScenarioProperties, ExactRovStopsSubPrefixAttacks) {
  std::mt19937_64 rng(4400 + GetParam());
  for (int i = 0; i < 60; ++i) {
    // A stub adversary: ROV cannot help against an AS already on the legitimate path.
    auto c = oracle::random_case(rng);
    const AsId adv(999);
    auto g = attach_adversary(c.graph, adv, c.targets);
    auto kind = rng() % 2 ? AttackKind::SubPrefixStealthy : AttackKind::SubPrefixLoud;
    AttackOptions opts;
    opts.spoof_victim_origin = rng() % 2;
    auto s = build_attack(g, c.victim, kP, adv, c.targets, kind, opts);
    DefenseConfig d;
    d.rov = RovPolicy{};
    d.victim_roa_max_length = kP.length();
    auto rib = run(g, s, make_policy(d, {}, s));
    auto sources = g.nodes();
    EXPECT_DOUBLE_EQ(stealthy_and_effective(rib, MonitorConfig{}, s, sources).fraction, 0.0);

    if (!opts.spoof_victim_origin) continue;
    d.victim_roa_max_length = static_cast<std::uint8_t>(kP.length() + 1);
    auto slack = run(g, s, make_policy(d, {}, s));
    auto plain = run(g, s);
    EXPECT_EQ(infected_set(slack, s), infected_set(plain, s));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ScenarioProperties, ::testing::Range(0, 4));
