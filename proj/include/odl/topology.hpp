#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace odl {

namespace topo {
struct Complete {};
struct Star {
  std::size_t center = 0;
};
struct RandomRegular {
  std::size_t degree = 4;
};
// Barabasi-Albert preferential attachment, m_attach edges per new node.
struct ScaleFree {
  std::size_t m_attach = 2;
};
struct ErdosRenyi {
  double p = 0.1;
};
// Loaded from an edge list rather than generated.
struct Explicit {};
}  // namespace topo

using TopologyKind = std::variant<topo::Complete, topo::Star, topo::RandomRegular, topo::ScaleFree,
                                  topo::ErdosRenyi, topo::Explicit>;

std::string topology_kind_name(const TopologyKind& kind);

// Undirected simple graph stored as sorted neighbor lists. No self-loops,
// no multi-edges.
class Topology {
 public:
  Topology() = default;
  Topology(TopologyKind kind, std::vector<std::vector<std::size_t>> adjacency);

  const TopologyKind& kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
  std::size_t degree(std::size_t node) const { return adjacency_.at(node).size(); }
  std::size_t edge_count() const noexcept;
  bool has_edge(std::size_t u, std::size_t v) const;

  // Each edge once as "u v" with u < v, 0-indexed, sorted.
  void write_edge_list(std::ostream& out) const;
  static Topology read_edge_list(std::istream& in, std::size_t node_count);

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  TopologyKind kind_{topo::Complete{}};
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Deterministic in (kind, n, seed). Throws Error{InvalidParams} when the
// kind cannot be realised for n nodes.
Topology generate_topology(const TopologyKind& kind, std::size_t n, std::uint64_t seed);

}  // namespace odl
