// The Bass-Serre tree near the base vertex, the shortest tree path gamma of a
// group element, ends and boundary points of lasso rays, and the regions
// R_v = {u in L : gamma of u ends at v} that cut L along the tree.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "autgog/fsa.hpp"
#include "autgog/gog.hpp"
#include "autgog/ygraph.hpp"

namespace autgog {

// Vertex h V~ of the tree, stabilizer h G_V h^-1 with V = target(edge).
std::string stabilizer_descriptor(GraphOfGroups const& g, ConjugateRep const& v);
// Sum over edges E at V of [G_V : d0(F_E)]; -1 when G_V is infinite.
int vertex_degree(GraphOfGroups const& g, int v);

struct TreeBall {
  std::vector<ConjugateRep> vertices;  // breadth first, base first
  std::vector<int> parent;             // -1 for the base
  std::vector<int> depth;
  std::vector<int> degree;  // full degree in the tree, -1 when infinite
  std::map<ConjugateRep, int> index;
  int radius = 0;
  bool truncated = false;  // some free vertex group had its cosets cut at free_radius

  int find(ConjugateRep const& v) const;  // -1 when outside
  std::vector<std::size_t> level_sizes() const;
  std::vector<int> neighbours(int i) const;  // parent and children inside the ball
};

TreeBall tree_ball(GraphOfGroups const& g, int radius, int free_radius = 1,
                   std::size_t cap = 100000);

struct TreePath {
  std::vector<ConjugateRep> vertices;  // starts at the base vertex
  int length() const { return static_cast<int>(vertices.size()) - 1; }
  ConjugateRep const& end() const { return vertices.back(); }
  bool operator==(TreePath const&) const = default;
};

// Path from the base to the vertex where the normal form of x ends.
TreePath gamma_path(GraphOfGroups const& g, NormalForm const& x);
TreePath gamma_path(GraphOfGroups const& g, Word const& w);
std::string format_path(GraphOfGroups const& g, TreePath const& p);

// Longest prefixes u0 of u and u0' of u' whose gamma paths both equal the
// longest common initial segment of gamma(u) and gamma(u').
std::pair<Word, Word> trim_to_common_path(GraphOfGroups const& g, Word const& u, Word const& u2);

// Paths from the base to every ball vertex at exactly the given depth.
std::vector<TreePath> ends(GraphOfGroups const& g, int depth, int free_radius = 1);

// The ray prefix . period^omega.
struct Lasso {
  Word prefix;
  Word period;
};

struct RayClass {
  bool end = false;   // gamma keeps growing
  TreePath path;      // gamma of prefix.period^3
  // Boundary point data: the stabilized vertex (E, h), the cut position in
  // the unrolled ray, the edge group element f with value(w0) = h d1(f), and
  // the tail read in L_h after the marker.
  int cut = -1;
  int f = -1;
  Lasso tail;
  bool tail_in_vertex = false;  // every tail letter lies in G_target(E) or is e
};

// Throws unless every prefix of prefix.period^3 is a prefix of a word of lang.
RayClass classify_ray(GraphOfGroups const& g, Dfa const& lang, Lasso const& ray);

struct VertexBoundary {
  ConjugateRep vertex;
  int depth = 0;
  std::string stabilizer;
  std::string label;        // deployment class label
  int boundary_points = 0;  // ends of the stabilizer; -1 for a Cantor set
  Dfa region;               // R_v
  long fiber = -1;          // |{x in h G_V : gamma(x) ends at v}|, -1 when infinite
};

struct BoundaryReport {
  int radius = 0;
  int maxlen = 0;
  std::vector<VertexBoundary> vertices;
  std::vector<std::size_t> cylinder_counts;  // ball vertices at depth 1..radius
  bool disjoint = true;     // the R_v are pairwise disjoint
  bool exhaustive = true;   // every word up to maxlen with gamma in the ball is in its R_v
  std::vector<std::string> problems;
};

// Regions are built on the product of lang with exact values, tracked to
// gamma depth radius + 2; free syllables longer than free_radius + 2 are
// followed only while they stay in their vertex group.
BoundaryReport boundary_report(GraphOfGroups const& g, YGraph const& x, int radius,
                               int maxlen = 6, int free_radius = 1);
std::vector<Dfa> region_languages(GraphOfGroups const& g, Dfa const& lang, TreeBall const& ball,
                                  int free_radius = 1, std::size_t cap = 200000);

std::string tree_ball_to_dot(GraphOfGroups const& g, TreeBall const& ball);

}  // namespace autgog
