#include <doctest.h>

#include <algorithm>
#include <map>

#include "dqw/cayley.hpp"

using namespace dqw;

TEST_SUITE("cayley") {

TEST_CASE("n=4 structure") {
  CayleyGraph g = build_cayley(4);
  CHECK(g.n == 4);
  CHECK(g.directed_arcs.size() == 8);
  CHECK(g.undirected_edges.size() == 4);
  // rotation arcs advance the inner ring and reverse on the reflected ring
  for (int r = 0; r < 4; ++r) {
    CHECK(g.directed_arcs[r].first == DihedralVertex{0, r});
    CHECK(g.directed_arcs[r].second == DihedralVertex{0, (r + 1) % 4});
    CHECK(g.directed_arcs[4 + r].first == DihedralVertex{1, r});
    CHECK(g.directed_arcs[4 + r].second == DihedralVertex{1, (r + 3) % 4});
    CHECK(g.undirected_edges[r].first == DihedralVertex{0, r});
    CHECK(g.undirected_edges[r].second == DihedralVertex{1, r});
  }
}

TEST_CASE("n=3 counts") {
  CayleyGraph g = build_cayley(3);
  CHECK(g.directed_arcs.size() == 6);
  CHECK(g.undirected_edges.size() == 3);
}

TEST_CASE("n below 3 rejected") {
  CHECK_THROWS_AS(build_cayley(2), InputError);
  CHECK_THROWS_AS(build_cayley(0), InputError);
  CHECK_THROWS_AS(build_cayley(-5), InputError);
}

TEST_CASE("vertex index layout") {
  CHECK(vertex_index(0, 0, 4) == 0);
  CHECK(vertex_index(0, 3, 4) == 3);
  CHECK(vertex_index(1, 0, 4) == 4);
  CHECK(vertex_index(1, 2, 4) == 6);
  CHECK_THROWS_AS(vertex_index(1, 4, 4), InputError);
  CHECK_THROWS_AS(vertex_index(0, -1, 4), InputError);
  CHECK_THROWS_AS(vertex_index(2, 0, 4), InputError);
}

TEST_CASE("every vertex has one outgoing arc and one spoke") {
  CayleyGraph g = build_cayley(7);
  std::map<int, int> outdeg, spokes;
  for (const auto& [u, v] : g.directed_arcs) outdeg[vertex_index(u.s, u.r, g.n)]++;
  for (const auto& [u, v] : g.undirected_edges) {
    spokes[vertex_index(u.s, u.r, g.n)]++;
    spokes[vertex_index(v.s, v.r, g.n)]++;
  }
  for (int i = 0; i < 2 * g.n; ++i) {
    CHECK(outdeg[i] == 1);
    CHECK(spokes[i] == 1);
  }
}

TEST_CASE("reversibility holds for the dihedral graph family") {
  for (int n = 3; n <= 64; ++n) CHECK(is_reversible(build_cayley(n)));
}

TEST_CASE("reversibility check detects a one-way arc") {
  // deleting a ring arc keeps reversibility (the long way around remains)
  CayleyGraph detour = build_cayley(12);
  detour.directed_arcs.erase(detour.directed_arcs.begin());
  CHECK(is_reversible(detour));

  // an arc into a vertex with no way back is flagged
  CayleyGraph dead_end;
  dead_end.n = 3;
  dead_end.directed_arcs.push_back({{0, 0}, {0, 1}});
  CHECK(!is_reversible(dead_end));
}

TEST_CASE("edge list text covers all arcs and spokes") {
  CayleyGraph g = build_cayley(3);
  std::string txt = to_edge_list(g);
  CHECK(std::count(txt.begin(), txt.end(), '\n') == 9);
  CHECK(txt.find("D 0 0 0 1") != std::string::npos);
  CHECK(txt.find("D 1 0 1 2") != std::string::npos);
  CHECK(txt.find("U 0 2 1 2") != std::string::npos);
}

}  // TEST_SUITE
