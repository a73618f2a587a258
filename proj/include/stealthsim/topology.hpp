#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stealthsim/types.hpp"

namespace stealthsim {

/// Role of a neighbor relative to the AS whose adjacency is being read.
enum class Role : std::uint8_t { Customer, Peer, Provider };

std::string_view to_string(Role role);

/// Annotated AS-level topology. Every edge is stored on both endpoints so
/// (a,b)=Provider implies (b,a)=Customer, and peering is symmetric.
class AsGraph {
 public:
  /// Adds an isolated AS; no-op if already present.
  void add_node(AsId as);

  /// Throws ConfigError on self-loops or when the pair already has an edge.
  void add_provider_customer(AsId provider, AsId customer);
  void add_peering(AsId a, AsId b);

  bool contains(AsId as) const { return index_.contains(as); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Role of `b` as seen from `a`; nothing if not adjacent.
  std::optional<Role> relation(AsId a, AsId b) const;

  std::span<const AsId> customers(AsId as) const { return node(as).customers; }
  std::span<const AsId> providers(AsId as) const { return node(as).providers; }
  std::span<const AsId> peers(AsId as) const { return node(as).peers; }
  std::size_t degree(AsId as) const;

  /// All ASes in ascending order.
  std::vector<AsId> nodes() const;

  // Dense indexing for propagation workers. Indices are stable for the
  // lifetime of the graph and follow insertion order.
  std::size_t index_of(AsId as) const;
  AsId at(std::size_t index) const { return nodes_[index].id; }

  struct Link {
    std::uint32_t index;
    Role role;  // role of the neighbor
  };
  std::span<const Link> links(std::size_t index) const { return nodes_[index].links; }

 private:
  struct Node {
    AsId id;
    std::vector<AsId> customers;
    std::vector<AsId> providers;
    std::vector<AsId> peers;
    std::vector<Link> links;
  };

  const Node& node(AsId as) const { return nodes_[index_of(as)]; }
  void insert_edge(AsId a, AsId b, Role b_relative_to_a);

  std::vector<Node> nodes_;
  std::unordered_map<AsId, std::size_t> index_;
  // Key: (min << 32 | max); value: role of max relative to min.
  std::unordered_map<std::uint64_t, Role> edges_;
};

/// Parses CAIDA serial-1 text (`<asn>|<asn>|<rel>`, rel -1 = provider of,
/// 0 = peers). Errors carry the 1-based line number.
AsGraph parse_as_rel(std::string_view text);

/// Reads a topology file, transparently gunzipping compressed input.
std::string read_topology_bytes(const std::filesystem::path& path);

AsGraph load_as_rel(const std::filesystem::path& path);

/// Serial-1 text with one line per edge, sorted; parse(write(g)) has the
/// same edge set as g.
std::string write_as_rel(const AsGraph& graph);

/// Non-throwing validation pass used by `check`.
struct AsRelReport {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t provider_customer_edges = 0;
  std::size_t peer_edges = 0;
  std::vector<std::string> anomalies;  // invariant violations, with line numbers
  std::vector<std::string> warnings;   // e.g. provider-customer cycles
  bool ok() const { return anomalies.empty(); }
};

AsRelReport check_as_rel(std::string_view text);

/// {a} plus everything reachable from `a` over provider->customer edges,
/// ascending.
std::vector<AsId> customer_cone(const AsGraph& graph, AsId as);

struct ConeRank {
  AsId as;
  std::size_t cone_size;
};

/// The k largest customer cones, ties broken by ascending ASN.
std::vector<ConeRank> rank_by_cone(const AsGraph& graph, std::size_t k);
std::vector<AsId> top_by_cone(const AsGraph& graph, std::size_t k);

}  // namespace stealthsim
