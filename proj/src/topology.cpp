#include "stealthsim/topology.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace stealthsim {

AsId parse_asn(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("not an AS number: '" + std::string(text) + "'");
  if (v == 0 || v > 0xFFFFFFFFull)
    throw ParseError("AS number out of range: '" + std::string(text) + "'");
  return AsId(static_cast<std::uint32_t>(v));
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Customer: return "customer";
    case Role::Peer: return "peer";
    case Role::Provider: return "provider";
  }
  return "?";
}

namespace {

std::uint64_t pair_key(AsId a, AsId b) {
  auto lo = std::min(a, b).value();
  auto hi = std::max(a, b).value();
  return (std::uint64_t{lo} << 32) | hi;
}

Role invert(Role r) {
  switch (r) {
    case Role::Customer: return Role::Provider;
    case Role::Provider: return Role::Customer;
    case Role::Peer: return Role::Peer;
  }
  return r;
}

std::string pair_name(AsId a, AsId b) {
  return "{" + std::min(a, b).to_string() + "," + std::max(a, b).to_string() + "}";
}

}  // namespace

void AsGraph::add_node(AsId as) {
  if (index_.contains(as)) return;
  index_.emplace(as, nodes_.size());
  nodes_.push_back(Node{as, {}, {}, {}, {}});
}

std::size_t AsGraph::index_of(AsId as) const {
  auto it = index_.find(as);
  if (it == index_.end()) throw ConfigError("unknown AS " + as.to_string());
  return it->second;
}


std::size_t AsGraph::degree(AsId as) const {
  const auto& n = node(as);
  return n.customers.size() + n.providers.size() + n.peers.size();
}

void AsGraph::insert_edge(AsId a, AsId b, Role b_relative_to_a) {
  if (a == b) throw ConfigError("self-loop on AS " + a.to_string());
  auto key = pair_key(a, b);
  if (auto it = edges_.find(key); it != edges_.end()) {
    Role existing = a < b ? it->second : invert(it->second);
    throw ConfigError((existing == b_relative_to_a ? "duplicate edge for pair "
                                                   : "conflicting edge for pair ") +
                      pair_name(a, b));
  }
  edges_.emplace(key, a < b ? b_relative_to_a : invert(b_relative_to_a));
  add_node(a);
  add_node(b);
  auto push = [](Node& n, AsId other, Role r) {
    switch (r) {
      case Role::Customer: n.customers.push_back(other); break;
      case Role::Provider: n.providers.push_back(other); break;
      case Role::Peer: n.peers.push_back(other); break;
    }
  };
  auto ia = index_of(a);
  auto ib = index_of(b);
  push(nodes_[ia], b, b_relative_to_a);
  push(nodes_[ib], a, invert(b_relative_to_a));
  nodes_[ia].links.push_back({static_cast<std::uint32_t>(ib), b_relative_to_a});
  nodes_[ib].links.push_back({static_cast<std::uint32_t>(ia), invert(b_relative_to_a)});
}

void AsGraph::add_provider_customer(AsId provider, AsId customer) {
  insert_edge(provider, customer, Role::Customer);
}

void AsGraph::add_peering(AsId a, AsId b) { insert_edge(a, b, Role::Peer); }

std::optional<Role> AsGraph::relation(AsId a, AsId b) const {
  auto it = edges_.find(pair_key(a, b));
  if (it == edges_.end()) return std::nullopt;
  return a < b ? it->second : invert(it->second);
}

std::vector<AsId> AsGraph::nodes() const {
  std::vector<AsId> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// serial-1 I/O

namespace {

struct EdgeLine {
  AsId first;
  AsId second;
  int rel;  // -1 or 0
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Returns nothing for comment/blank lines; throws ParseError (without line
// number) on malformed content.
std::optional<EdgeLine> parse_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty() || line.front() == '#') return std::nullopt;
  auto fields = split(line, '|');
  if (fields.size() != 3)
    throw ParseError("expected 3 '|'-separated fields, got " + std::to_string(fields.size()));
  AsId a = parse_asn(fields[0]);
  AsId b = parse_asn(fields[1]);
  int rel;
  if (fields[2] == "-1") {
    rel = -1;
  } else if (fields[2] == "0") {
    rel = 0;
  } else {
    throw ParseError("relationship must be -1 or 0, got '" + std::string(fields[2]) + "'");
  }
  return EdgeLine{a, b, rel};
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(++line_no, text.substr(start, end - start));
    start = end + 1;
  }
}

void add_edge(AsGraph& g, const EdgeLine& e) {
  if (e.rel == -1)
    g.add_provider_customer(e.first, e.second);
  else
    g.add_peering(e.first, e.second);
}

}  // namespace

AsGraph parse_as_rel(std::string_view text) {
  AsGraph g;
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    try {
      auto e = parse_line(line);
      if (!e) return;
      auto key = pair_key(e->first, e->second);
      try {
        add_edge(g, *e);
      } catch (const ConfigError& err) {
        std::string msg = err.what();
        if (auto it = first_seen.find(key); it != first_seen.end())
          msg += " (first defined on line " + std::to_string(it->second) + ")";
        throw ParseError(msg);
      }
      first_seen.emplace(key, line_no);
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
    }
  });
  return g;
}

std::string read_topology_bytes(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw ConfigError("cannot open topology file: " + path.string());
  std::string out;
  char buf[1 << 16];
  for (;;) {
    int n = gzread(f, buf, sizeof buf);
    if (n < 0) {
      gzclose(f);
      throw ConfigError("read error in topology file: " + path.string());
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  gzclose(f);
  return out;
}

AsGraph load_as_rel(const std::filesystem::path& path) {
  auto text = read_topology_bytes(path);
  try {
    return parse_as_rel(text);
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

std::string write_as_rel(const AsGraph& graph) {
  std::vector<std::pair<std::pair<AsId, AsId>, int>> lines;
  for (AsId a : graph.nodes()) {
    for (AsId c : graph.customers(a)) lines.push_back({{a, c}, -1});
    for (AsId p : graph.peers(a))
      if (a < p) lines.push_back({{a, p}, 0});
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  for (const auto& [pair, rel] : lines)
    out << pair.first.value() << '|' << pair.second.value() << '|' << rel << '\n';
  return out.str();
}

AsRelReport check_as_rel(std::string_view text) {
  AsRelReport report;
  AsGraph g;
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    try {
      auto e = parse_line(line);
      if (!e) return;
      auto key = pair_key(e->first, e->second);
      try {
        add_edge(g, *e);
        first_seen.emplace(key, line_no);
        (e->rel == -1 ? report.provider_customer_edges : report.peer_edges)++;
      } catch (const ConfigError& err) {
        std::string msg = "line " + std::to_string(line_no) + ": " + err.what();
        if (auto it = first_seen.find(key); it != first_seen.end())
          msg += " (first defined on line " + std::to_string(it->second) + ")";
        report.anomalies.push_back(std::move(msg));
      }
    } catch (const ParseError& err) {
      report.anomalies.push_back("line " + std::to_string(line_no) + ": " + err.what());
    }
  });
  report.nodes = g.node_count();
  report.edges = g.edge_count();

  // Kahn's algorithm over provider->customer edges; leftovers sit on cycles.
  std::vector<std::size_t> pending(g.node_count());
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    pending[i] = g.providers(g.at(i)).size();
    if (pending[i] == 0) ready.push_back(i);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    auto i = ready.back();
    ready.pop_back();
    ++done;
    for (AsId c : g.customers(g.at(i)))
      if (--pending[g.index_of(c)] == 0) ready.push_back(g.index_of(c));
  }
  if (done != g.node_count())
    report.warnings.push_back(std::to_string(g.node_count() - done) +
                              " ASes lie on or below provider-customer cycles");
  std::size_t isolated = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (g.degree(g.at(i)) == 0) ++isolated;
  if (isolated > 0) report.warnings.push_back(std::to_string(isolated) + " isolated ASes");
  return report;
}

// ---------------------------------------------------------------------------
// customer cones

std::vector<AsId> customer_cone(const AsGraph& graph, AsId as) {
  std::vector<char> seen(graph.node_count(), 0);
  std::vector<AsId> stack{as};
  std::vector<AsId> cone;
  seen[graph.index_of(as)] = 1;
  while (!stack.empty()) {
    AsId cur = stack.back();
    stack.pop_back();
    cone.push_back(cur);
    for (AsId c : graph.customers(cur)) {
      auto i = graph.index_of(c);
      if (!seen[i]) {
        seen[i] = 1;
        stack.push_back(c);
      }
    }
  }
  std::sort(cone.begin(), cone.end());
  return cone;
}

std::vector<ConeRank> rank_by_cone(const AsGraph& graph, std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (k > graph.node_count())
    throw ConfigError("k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(graph.node_count()) + " ASes in the topology");
  const std::size_t n = graph.node_count();
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::size_t> stack;
  std::vector<ConeRank> ranks;
  ranks.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    const auto tag = static_cast<std::uint32_t>(root + 1);
    std::size_t size = 0;
    stack.assign(1, root);
    stamp[root] = tag;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      ++size;
      for (AsId c : graph.customers(graph.at(cur))) {
        auto i = graph.index_of(c);
        if (stamp[i] != tag) {
          stamp[i] = tag;
          stack.push_back(i);
        }
      }
    }
    ranks.push_back({graph.at(root), size});
  }
  std::partial_sort(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(k), ranks.end(),
                    [](const ConeRank& a, const ConeRank& b) {
                      if (a.cone_size != b.cone_size) return a.cone_size > b.cone_size;
                      return a.as < b.as;
                    });
  ranks.erase(ranks.begin() + static_cast<std::ptrdiff_t>(k), ranks.end());
  return ranks;
}

std::vector<AsId> top_by_cone(const AsGraph& graph, std::size_t k) {
  std::vector<AsId> out;
  for (const auto& r : rank_by_cone(graph, k)) out.push_back(r.as);
  return out;
}

}  // namespace stealthsim
