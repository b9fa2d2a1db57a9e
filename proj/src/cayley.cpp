#include "dqw/cayley.hpp"

#include <queue>
#include <sstream>

namespace dqw {

int vertex_index(int s, int r, int n) {
  if (s != 0 && s != 1) throw InputError("reflection bit must be 0 or 1");
  if (r < 0 || r >= n) throw InputError("rotation index out of range");
  return s * n + r;
}

CayleyGraph build_cayley(int n) {
  if (n < 3) throw InputError("Cayley graph needs n >= 3");
  CayleyGraph g;
  g.n = n;
  g.directed_arcs.reserve(2 * n);
  g.undirected_edges.reserve(n);
  // generator a: inner ring advances, outer ring (reflected coset) runs the
  // opposite way, so the two cycles have opposite orientation
  for (int r = 0; r < n; ++r) g.directed_arcs.push_back({{0, r}, {0, (r + 1) % n}});
  for (int r = 0; r < n; ++r) g.directed_arcs.push_back({{1, r}, {1, (r - 1 + n) % n}});
  // generator b: reflection spokes, involutive hence undirected
  for (int r = 0; r < n; ++r) g.undirected_edges.push_back({{0, r}, {1, r}});
  return g;
}

bool is_reversible(const CayleyGraph& g) {
  const int nv = 2 * g.n;
  std::vector<std::vector<int>> adj(nv);
  for (const auto& [u, v] : g.directed_arcs)
    adj[vertex_index(u.s, u.r, g.n)].push_back(vertex_index(v.s, v.r, g.n));
  for (const auto& [u, v] : g.undirected_edges) {
    int a = vertex_index(u.s, u.r, g.n), b = vertex_index(v.s, v.r, g.n);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // for every arc u->v, search a directed path v .. u
  auto reaches = [&](int from, int to) {
    std::vector<char> seen(nv, 0);
    std::queue<int> q;
    q.push(from);
    seen[from] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (u == to) return true;
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    return false;
  };
  for (const auto& [u, v] : g.directed_arcs) {
    if (!reaches(vertex_index(v.s, v.r, g.n), vertex_index(u.s, u.r, g.n))) return false;
  }
  for (const auto& [u, v] : g.undirected_edges) {
    if (!reaches(vertex_index(v.s, v.r, g.n), vertex_index(u.s, u.r, g.n))) return false;
    if (!reaches(vertex_index(u.s, u.r, g.n), vertex_index(v.s, v.r, g.n))) return false;
  }
  return true;
}

std::string to_edge_list(const CayleyGraph& g) {
  std::ostringstream os;
  for (const auto& [u, v] : g.directed_arcs)
    os << "D " << u.s << " " << u.r << " " << v.s << " " << v.r << "\n";
  for (const auto& [u, v] : g.undirected_edges)
    os << "U " << u.s << " " << u.r << " " << v.s << " " << v.r << "\n";
  return os.str();
}

}  // namespace dqw
