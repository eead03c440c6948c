#include "odl/topology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "odl/error.hpp"
#include "odl/rng.hpp"
#include "overloaded.hpp"

namespace odl {

using detail::overloaded;

std::string topology_kind_name(const TopologyKind& kind) {
  return std::visit(overloaded{
                        [](const topo::Complete&) { return "complete"; },
                        [](const topo::Star&) { return "star"; },
                        [](const topo::RandomRegular&) { return "random_regular"; },
                        [](const topo::ScaleFree&) { return "scale_free"; },
                        [](const topo::ErdosRenyi&) { return "erdos_renyi"; },
                        [](const topo::Explicit&) { return "edge_list"; },
                    },
                    kind);
}

Topology::Topology(TopologyKind kind, std::vector<std::vector<std::size_t>> adjacency)
    : kind_(std::move(kind)), adjacency_(std::move(adjacency)) {
  const std::size_t n = adjacency_.size();
  for (std::size_t u = 0; u < n; ++u) {
    auto& nb = adjacency_[u];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw Error(Errc::InvalidParams, "duplicate edge at node " + std::to_string(u));
    }
    for (std::size_t v : nb) {
      if (v == u) throw Error(Errc::InvalidParams, "self-loop at node " + std::to_string(u));
      if (v >= n) throw Error(Errc::InvalidParams, "neighbor index out of range");
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (!std::binary_search(adjacency_[v].begin(), adjacency_[v].end(), u)) {
        throw Error(Errc::InvalidParams, "adjacency is not symmetric");
      }
    }
  }
}

std::size_t Topology::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& nb : adjacency_) twice += nb.size();
  return twice / 2;
}

bool Topology::has_edge(std::size_t u, std::size_t v) const {
  const auto& nb = adjacency_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Topology::write_edge_list(std::ostream& out) const {
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

Topology Topology::read_edge_list(std::istream& in, std::size_t node_count) {
  std::vector<std::vector<std::size_t>> adj(node_count);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = -1;
    long long v = -1;
    if (!(ls >> u >> v) || u < 0 || v < 0) {
      throw Error(Errc::Io, "edge list line " + std::to_string(lineno) + ": expected \"u v\"");
    }
    const auto uu = static_cast<std::size_t>(u);
    const auto vv = static_cast<std::size_t>(v);
    if (uu >= node_count || vv >= node_count) {
      throw Error(Errc::Io, "edge list line " + std::to_string(lineno) + ": node out of range");
    }
    adj[uu].push_back(vv);
    adj[vv].push_back(uu);
  }
  return Topology(topo::Explicit{}, std::move(adj));
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency complete(std::size_t n) {
  Adjacency adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    adj[u].reserve(n - 1);
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v) adj[u].push_back(v);
    }
  }
  return adj;
}

bool linked(const Adjacency& adj, std::size_t u, std::size_t v) {
  return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

// Steger-Wormald style stub pairing: join random compatible stubs, restart
// when the remaining stubs cannot be paired.
Adjacency random_regular(std::size_t n, std::size_t d, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Adjacency adj(n);
    std::vector<std::size_t> stubs;
    stubs.reserve(n * d);
    for (std::size_t u = 0; u < n; ++u) stubs.insert(stubs.end(), d, u);

    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      bool joined = false;
      for (int tries = 0; tries < 64 && !joined; ++tries) {
        const std::size_t a = rng.index(stubs.size());
        const std::size_t b = rng.index(stubs.size());
        const std::size_t u = stubs[a];
        const std::size_t v = stubs[b];
        if (a == b || u == v || linked(adj, u, v)) continue;
        adj[u].push_back(v);
        adj[v].push_back(u);
        // Remove the larger index first so the smaller stays valid.
        for (std::size_t idx : {std::max(a, b), std::min(a, b)}) {
          stubs[idx] = stubs.back();
          stubs.pop_back();
        }
        joined = true;
      }
      if (joined) continue;
      // Random probing failed; check whether any compatible pair is left.
      stuck = true;
      for (std::size_t a = 0; a < stubs.size() && stuck; ++a) {
        for (std::size_t b = a + 1; b < stubs.size(); ++b) {
          if (stubs[a] != stubs[b] && !linked(adj, stubs[a], stubs[b])) {
            stuck = false;
            break;
          }
        }
      }
    }
    if (!stuck) return adj;
  }
  throw Error(Errc::InvalidParams, "could not realise random regular graph");
}

Adjacency scale_free(std::size_t n, std::size_t m, Rng& rng) {
  Adjacency adj(n);
  // Seed with a clique on m + 1 nodes; afterwards every node appears in
  // `ends` once per incident edge, so uniform draws are degree-proportional.
  std::vector<std::size_t> ends;
  for (std::size_t u = 0; u <= m; ++u) {
    for (std::size_t v = u + 1; v <= m; ++v) {
      adj[u].push_back(v);
      adj[v].push_back(u);
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  std::vector<std::size_t> targets;
  for (std::size_t node = m + 1; node < n; ++node) {
    targets.clear();
    while (targets.size() < m) {
      const std::size_t t = ends[rng.index(ends.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (std::size_t t : targets) {
      adj[node].push_back(t);
      adj[t].push_back(node);
      ends.push_back(node);
      ends.push_back(t);
    }
  }
  return adj;
}

}  // namespace

Topology generate_topology(const TopologyKind& kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::InvalidParams, "topology needs at least 2 nodes");
  Rng rng(seed);
  Adjacency adj = std::visit(
      overloaded{
          [&](const topo::Complete&) { return complete(n); },
          [&](const topo::Star& s) {
            if (s.center >= n) throw Error(Errc::InvalidParams, "star center out of range");
            Adjacency a(n);
            for (std::size_t v = 0; v < n; ++v) {
              if (v == s.center) continue;
              a[s.center].push_back(v);
              a[v].push_back(s.center);
            }
            return a;
          },
          [&](const topo::RandomRegular& r) {
            if (r.degree == 0 || r.degree >= n) {
              throw Error(Errc::InvalidParams, "random regular degree must lie in [1, n-1]");
            }
            if ((r.degree * n) % 2 != 0) {
              throw Error(Errc::InvalidParams, "random regular needs degree * n even");
            }
            return random_regular(n, r.degree, rng);
          },
          [&](const topo::ScaleFree& s) {
            if (s.m_attach == 0 || s.m_attach >= n) {
              throw Error(Errc::InvalidParams, "scale-free m_attach must lie in [1, n-1]");
            }
            return scale_free(n, s.m_attach, rng);
          },
          [&](const topo::ErdosRenyi& e) {
            if (!(e.p >= 0.0 && e.p <= 1.0)) {
              throw Error(Errc::InvalidParams, "edge probability must lie in [0, 1]");
            }
            Adjacency a(n);
            for (std::size_t u = 0; u < n; ++u) {
              for (std::size_t v = u + 1; v < n; ++v) {
                if (rng.uniform() < e.p) {
                  a[u].push_back(v);
                  a[v].push_back(u);
                }
              }
            }
            return a;
          },
          [&](const topo::Explicit&) -> Adjacency {
            throw Error(Errc::InvalidParams, "edge-list topologies are loaded, not generated");
          },
      },
      kind);
  return Topology(kind, std::move(adj));
}

}  // namespace odl
