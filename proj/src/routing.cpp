#include "stealthsim/routing.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <tuple>

namespace stealthsim {

std::string_view to_string(LearnedFrom lf) {
  switch (lf) {
    case LearnedFrom::Origin: return "origin";
    case LearnedFrom::Customer: return "customer";
    case LearnedFrom::Peer: return "peer";
    case LearnedFrom::Provider: return "provider";
  }
  return "?";
}

LearnedFrom learned_from_role(Role neighbor_role) {
  switch (neighbor_role) {
    case Role::Customer: return LearnedFrom::Customer;
    case Role::Peer: return LearnedFrom::Peer;
    case Role::Provider: return LearnedFrom::Provider;
  }
  return LearnedFrom::Provider;
}

bool export_allowed(const RibEntry& entry, Role to_role) {
  if (entry.export_locked || entry.advertise_locked || entry.egress_filtered) return false;
  return entry.learned_from == LearnedFrom::Origin ||
         entry.learned_from == LearnedFrom::Customer || to_role == Role::Customer;
}

namespace {

// Preference key; smaller is better.
using RankKey = std::tuple<LearnedFrom, std::size_t, std::uint32_t>;

RankKey rank_key(LearnedFrom lf, std::size_t path_len, AsId next_hop) {
  return {lf, path_len, next_hop.value()};
}

}  // namespace

RibEntry select_best(std::span<const Candidate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("select_best: no candidates");
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (!best || rank_key(c.learned_from, c.route.as_path.size(), c.route.next_hop()) <
                     rank_key(best->learned_from, best->route.as_path.size(),
                              best->route.next_hop()))
      best = &c;
  }
  return RibEntry{best->route, best->learned_from};
}

// ---------------------------------------------------------------------------
// Rib

const RibEntry* Rib::find(AsId as, const Prefix& prefix) const {
  auto t = tables_.find(prefix);
  if (t == tables_.end()) return nullptr;
  auto e = t->second.find(as);
  return e == t->second.end() ? nullptr : &e->second;
}

void Rib::install(AsId as, RibEntry entry) { tables_[entry.route.prefix].insert_or_assign(as, std::move(entry)); }

std::vector<Prefix> Rib::prefixes() const {
  std::vector<Prefix> out;
  for (const auto& [p, _] : tables_) out.push_back(p);
  return out;
}

std::vector<AsId> Rib::holders(const Prefix& prefix) const {
  std::vector<AsId> out;
  if (auto t = tables_.find(prefix); t != tables_.end())
    for (const auto& [as, _] : t->second) out.push_back(as);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Prefix> Rib::prefixes_at(AsId as) const {
  std::vector<Prefix> out;
  for (const auto& [p, table] : tables_)
    if (table.contains(as)) out.push_back(p);
  return out;
}

std::size_t Rib::size() const {
  std::size_t n = 0;
  for (const auto& [_, t] : tables_) n += t.size();
  return n;
}

// ---------------------------------------------------------------------------
// policy helpers

Community rewrite_community(AsId at) {
  // 32-bit ASNs keep only their low half.
  return Community(static_cast<std::uint16_t>(at.value() & 0xFFFF), 123);
}

std::optional<CommunitySet> rewrite_no_export(AsId at, const CommunitySet& communities) {
  if (!communities.contains(kNoExport) && !communities.contains(kNoExportSubconfed))
    return std::nullopt;
  CommunitySet out = communities;
  out.erase(kNoExport);
  out.erase(kNoExportSubconfed);
  out.insert(rewrite_community(at));
  return out;
}

RovVerdict rov_validate(std::span<const Roa> roas, const RouteAnnouncement& ann) {
  return rov_validate(roas, ann.prefix, ann.origin());
}

// ---------------------------------------------------------------------------
// propagation

namespace {

constexpr std::uint32_t kNone = ~std::uint32_t{0};

struct Slot {
  bool has = false;
  LearnedFrom learned_from = LearnedFrom::Origin;
  std::vector<AsId> path;
  std::shared_ptr<const CommunitySet> communities;
  bool export_locked = false;
  bool advertise_locked = false;
  bool egress_filtered = false;
  std::uint32_t source = kNone;  // which origination this route descends from

  bool same_as(const Slot& o) const {
    if (has != o.has) return false;
    if (!has) return true;
    return learned_from == o.learned_from && path == o.path && source == o.source &&
           export_locked == o.export_locked && advertise_locked == o.advertise_locked &&
           egress_filtered == o.egress_filtered &&
           (communities == o.communities || *communities == *o.communities);
  }
};

class PrefixPropagation {
 public:
  PrefixPropagation(const AsGraph& g, const Prefix& prefix,
                    std::span<const OriginationSpec* const> origins, const PolicyConfig& policy)
      : g_(g), prefix_(prefix), origins_(origins), policy_(policy), n_(g.node_count()) {}

  void run(Rib& out) {
    slots_.assign(n_, Slot{});
    dirty_.assign(n_, 0);
    origin_slot_.assign(n_, kNone);
    rewrites_.assign(n_, 0);
    enforces_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      AsId as = g_.at(i);
      rewrites_[i] = policy_.rewrite_no_export_at.contains(as);
      enforces_[i] = policy_.rov && policy_.rov->enforces(as);
    }

    targets_.resize(origins_.size());
    invalid_.resize(origins_.size());
    for (std::uint32_t k = 0; k < origins_.size(); ++k) {
      const auto& o = *origins_[k];
      auto idx = g_.index_of(o.origin);
      origin_slot_[idx] = k;
      Slot s;
      s.has = true;
      s.learned_from = LearnedFrom::Origin;
      s.path.push_back(o.origin);
      s.path.insert(s.path.end(), o.path_suffix.begin(), o.path_suffix.end());
      s.communities = std::make_shared<const CommunitySet>(o.communities);
      apply_locks(o.origin, s);
      s.source = k;
      slots_[idx] = std::move(s);

      if (o.announce_to) {
        for (AsId t : *o.announce_to) targets_[k].insert(static_cast<std::uint32_t>(g_.index_of(t)));
      }
      invalid_[k] = policy_.rov &&
                    rov_validate(policy_.rov->roas, prefix_, slots_[idx].path.back()) ==
                        RovVerdict::Invalid;
      mark_neighbors(idx);
    }

    schedule();

    for (std::size_t i = 0; i < n_; ++i) {
      auto& s = slots_[i];
      if (!s.has) continue;
      out.install(g_.at(i), RibEntry{RouteAnnouncement{prefix_, std::move(s.path), *s.communities},
                                     s.learned_from, s.export_locked, s.advertise_locked,
                                     s.egress_filtered});
    }
  }

 private:
  // Up through providers in customer-first order, one sweep for peers, then
  // down to customers; repeated until nothing is left to recompute.
  void schedule() {
    auto up = provider_order();
    std::vector<std::uint32_t> down(up.rbegin(), up.rend());
    const std::size_t max_rounds = 2 * n_ + 16;
    for (std::size_t round = 0; pending_ > 0; ++round) {
      if (round == max_rounds)
        throw InvariantError("propagation of " + prefix_.to_string() + " did not converge");
      for (auto i : up)
        if (dirty_[i]) recompute(i);
      for (std::uint32_t i = 0; i < n_; ++i)
        if (dirty_[i]) recompute(i);
      for (auto i : down)
        if (dirty_[i]) recompute(i);
    }
  }

  // Customers before providers (Kahn order); ASes on provider-customer
  // cycles are appended at the end.
  std::vector<std::uint32_t> provider_order() const {
    std::vector<std::uint32_t> pending_customers(n_);
    std::vector<std::uint32_t> order;
    order.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      pending_customers[i] = static_cast<std::uint32_t>(g_.customers(g_.at(i)).size());
      if (pending_customers[i] == 0) order.push_back(i);
    }
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (const auto& l : g_.links(order[head]))
        if (l.role == Role::Provider && --pending_customers[l.index] == 0) order.push_back(l.index);
    }
    if (order.size() < n_) {
      std::vector<char> placed(n_, 0);
      for (auto i : order) placed[i] = 1;
      for (std::uint32_t i = 0; i < n_; ++i)
        if (!placed[i]) order.push_back(i);
    }
    return order;
  }

  void mark_neighbors(std::size_t idx) {
    for (const auto& l : g_.links(idx)) {
      if (!dirty_[l.index]) {
        dirty_[l.index] = 1;
        ++pending_;
      }
    }
  }

  void apply_locks(AsId at, Slot& s) const {
    auto action = policy_.registry.effective_action(at, *s.communities);
    s.export_locked = action == CommunityAction::NoExport ||
                      action == CommunityAction::NoExportSubconfed;
    s.advertise_locked = action == CommunityAction::NoAdvertise;
  }

  // Does neighbor `from` (whose role relative to `to` is given) export its
  // current route to `to`?
  bool exports_to(std::uint32_t from, std::uint32_t to, Role from_role_at_to) const {
    const Slot& s = slots_[from];
    if (s.learned_from == LearnedFrom::Origin) {
      auto k = origin_slot_[from];
      return !origins_[k]->announce_to || targets_[k].contains(to);
    }
    if (s.export_locked || s.advertise_locked || s.egress_filtered) return false;
    // `to` is a customer of `from` iff `from` is a provider of `to`.
    return s.learned_from == LearnedFrom::Customer || from_role_at_to == Role::Provider;
  }

  void recompute(std::uint32_t idx) {
    dirty_[idx] = 0;
    --pending_;
    if (origin_slot_[idx] != kNone) return;

    const AsId self = g_.at(idx);
    std::uint32_t best = kNone;
    RankKey best_key{};
    for (const auto& l : g_.links(idx)) {
      const Slot& s = slots_[l.index];
      if (!s.has || !exports_to(l.index, idx, l.role)) continue;
      if (std::find(s.path.begin(), s.path.end(), self) != s.path.end()) continue;
      if (enforces_[idx] && invalid_[s.source]) continue;
      RankKey key = rank_key(learned_from_role(l.role), s.path.size() + 1, g_.at(l.index));
      if (best == kNone || key < best_key) {
        best = l.index;
        best_key = key;
      }
    }

    Slot next;
    if (best != kNone) {
      const Slot& from = slots_[best];
      next.has = true;
      next.learned_from = std::get<0>(best_key);
      next.source = from.source;
      next.path.reserve(from.path.size() + 1);
      next.path.push_back(self);
      next.path.insert(next.path.end(), from.path.begin(), from.path.end());
      next.communities = from.communities;
      if (rewrites_[idx]) {
        if (auto rewritten = rewrite_no_export(self, *from.communities))
          next.communities = std::make_shared<const CommunitySet>(std::move(*rewritten));
        next.egress_filtered = next.communities->contains(rewrite_community(self));
      }
      apply_locks(self, next);
    }
    if (!next.same_as(slots_[idx])) {
      slots_[idx] = std::move(next);
      mark_neighbors(idx);
    }
  }

  const AsGraph& g_;
  Prefix prefix_;
  std::span<const OriginationSpec* const> origins_;
  const PolicyConfig& policy_;
  std::size_t n_;

  std::vector<Slot> slots_;
  std::vector<char> dirty_;
  std::size_t pending_ = 0;
  std::vector<std::uint32_t> origin_slot_;
  std::vector<char> rewrites_;
  std::vector<char> enforces_;
  std::vector<std::set<std::uint32_t>> targets_;
  std::vector<char> invalid_;
};

}  // namespace

Rib propagate(const AsGraph& graph, std::span<const OriginationSpec> originations,
              const PolicyConfig& policy) {
  std::map<Prefix, std::vector<const OriginationSpec*>> by_prefix;
  for (const auto& o : originations) {
    if (!graph.contains(o.origin))
      throw ConfigError("origination of " + o.prefix.to_string() + " from AS " +
                        o.origin.to_string() + ", which is not in the topology");
    if (o.announce_to) {
      for (AsId t : *o.announce_to)
        if (!graph.relation(o.origin, t))
          throw ConfigError("AS " + o.origin.to_string() + " announces " + o.prefix.to_string() +
                            " to AS " + t.to_string() + ", which is not a neighbor");
    }
    auto& group = by_prefix[o.prefix];
    for (const auto* other : group)
      if (other->origin == o.origin)
        throw ConfigError("AS " + o.origin.to_string() + " originates " + o.prefix.to_string() +
                          " twice");
    group.push_back(&o);
  }
  if (policy.rov)
    for (const auto& roa : policy.rov->roas) roa.validate();

  Rib rib;
  for (const auto& [prefix, group] : by_prefix)
    PrefixPropagation(graph, prefix, group, policy).run(rib);
  return rib;
}

}  // namespace stealthsim
