#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqw/types.hpp"

namespace dqw {

// Vertex b^s a^r of the dihedral group D_n.
struct DihedralVertex {
  int s = 0;  // reflection bit, 0 or 1
  int r = 0;  // rotation index, 0..n-1
  friend bool operator==(const DihedralVertex& a, const DihedralVertex& b) {
    return a.s == b.s && a.r == b.r;
  }
};

// Cay(D_n, {a, b}): two opposite-oriented directed n-cycles joined by
// undirected reflection edges (0,r) -- (1,r).
struct CayleyGraph {
  int n = 0;
  std::vector<std::pair<DihedralVertex, DihedralVertex>> directed_arcs;
  std::vector<std::pair<DihedralVertex, DihedralVertex>> undirected_edges;
};

CayleyGraph build_cayley(int n);  // n >= 3

// True iff every arc u->v admits a directed return path v..u, counting
// undirected edges both ways.
bool is_reversible(const CayleyGraph& g);

// Canonical position ordering: s*n + r.
int vertex_index(int s, int r, int n);

// Edge-list text: "D s r s' r'" per arc, "U s r s' r'" per undirected edge.
std::string to_edge_list(const CayleyGraph& g);

}  // namespace dqw
