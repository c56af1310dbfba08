// Graphs of groups with finite edge groups: the convenient alphabet, the
// canonical normal form, the word problem and the Cayley metric of the
// fundamental group.
//
// Oriented edges are numbered 2k (as declared) and 2k+1 (reversed). The
// virtual base edge E0 ends at the base vertex, has trivial edge group and
// id 2 * num_edges(); it has no reverse and never occurs inside a normal form.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autgog/fsa.hpp"
#include "autgog/vgroups.hpp"

namespace autgog {

// g0 t_{E1} g1 ... t_{Em} gm. Syllables are canonical vertex-group words over
// the convenient alphabet; syllables.size() == edges.size() + 1.
struct NormalForm {
  std::vector<Word> syllables{Word{}};
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
  bool is_identity() const { return edges.empty() && syllables[0].empty(); }
  Word const& last() const { return syllables.back(); }
  auto operator<=>(NormalForm const&) const = default;
};

class GraphOfGroups {
 public:
  struct Vertex {
    std::string name;
    std::string group_name;
    VertexGroup group;
  };
  struct Edge {
    std::string name;
    int from = 0;
    int to = 0;
    std::string group_name;
    FiniteGroupTable group;
    std::vector<Word> d0;  // local canonical words in the source group, per element
    std::vector<Word> d1;  // same, in the target group
    bool tree = true;
    std::string letter;  // stable letter name for non-tree edges
  };

  // Validates everything and builds the convenient alphabet. Throws Error.
  GraphOfGroups(std::vector<Vertex> vertices, std::vector<Edge> edges, int base);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_oriented() const { return 2 * num_edges() + 1; }  // including E0
  int base() const { return base_; }
  int base_edge() const { return 2 * num_edges(); }
  Vertex const& vertex(int v) const { return vertices_.at(v); }
  Edge const& edge(int k) const { return edges_.at(k); }
  std::vector<Vertex> const& vertices() const { return vertices_; }
  std::vector<Edge> const& edges() const { return edges_; }

  int source(int oe) const;  // -1 for E0
  int target(int oe) const;
  int reverse(int oe) const;  // -1 for E0
  bool is_tree(int oe) const;
  std::string oriented_name(int oe) const;  // "E", "E^-1", "E0"
  int find_vertex(std::string_view name) const;         // -1 when absent
  int find_oriented_edge(std::string_view name) const;  // -1 when absent
  std::vector<int> out_edges(int v) const;              // oriented, excluding E0

  FiniteGroupTable const& edge_group(int oe) const;
  int edge_order(int oe) const { return edge_group(oe).order(); }
  // Images of edge-group elements as canonical words over the convenient alphabet.
  Word d0(int oe, int f) const;
  Word d1(int oe, int f) const;
  int d0_preimage(int oe, Word const& canonical) const;  // -1 when not in the image
  int d1_preimage(int oe, Word const& canonical) const;

  // Convenient alphabet. Letter 0 is e; vertex letters follow in declaration
  // order with letters identified across tree edges merged; stable letters last.
  Alphabet const& alphabet() const { return alphabet_; }
  int num_letters() const { return alphabet_.size(); }
  std::vector<int> const& letter_vertices(Letter a) const { return letter_vertices_.at(a); }
  int stable_edge(Letter a) const { return stable_edge_.at(a); }  // -1 unless a stable letter
  Letter stable_letter(int oe) const;  // kEpsilon for tree edges
  bool in_vertex(int v, Letter a) const { return to_local(v, a) != kEpsilon; }
  Letter to_local(int v, Letter a) const { return to_local_[v][a]; }
  Letter to_global(int v, Letter a) const { return to_global_[v].at(a); }
  Word to_local(int v, std::span<Letter const> w) const;
  Word to_global(int v, std::span<Letter const> w) const;
  std::vector<Letter> vertex_letters(int v) const;  // non-identity letters of G_v

  // Vertex group arithmetic on words over the convenient alphabet.
  Word vertex_evaluate(int v, std::span<Letter const> w) const;
  bool vertex_canonical(int v, std::span<Letter const> w) const;
  Word vertex_multiply(int v, Word const& x, Word const& y) const;
  Word vertex_invert(int v, Word const& x) const;
  Dfa vertex_acceptor(int v) const;  // canonical words over the convenient alphabet
  std::vector<Word> vertex_elements(int v) const;  // finite groups only
  bool vertex_finite(int v) const { return vertices_[v].group.is_finite(); }

  // Oriented tree edges from u to w.
  std::vector<int> const& tree_path(int u, int w) const { return tree_path_[u][w]; }
  int tree_distance(int u, int w) const { return static_cast<int>(tree_path(u, w).size()); }

  // Word problem.
  NormalForm normal_form(std::span<Letter const> w) const;
  NormalForm append(NormalForm const& x, Letter a) const;
  NormalForm append(NormalForm const& x, std::span<Letter const> w) const;
  NormalForm multiply(NormalForm const& x, NormalForm const& y) const;
  NormalForm inverse(NormalForm const& x) const;
  // Form ending at vertex v: the tree path to v is appended and kept. Unique
  // per (element, v).
  NormalForm path_form(NormalForm const& x, int v) const;
  int end_vertex(NormalForm const& x) const;
  Word to_word(NormalForm const& x) const;  // tree stable letters omitted
  std::string format(NormalForm const& x) const;
  bool equals(std::span<Letter const> w1, std::span<Letter const> w2) const;

 private:
  struct Builder;
  Builder builder_of(NormalForm const& x) const;
  void push_letter(Builder& b, Letter a) const;
  void push_edge(Builder& b, int oe) const;
  void move_to(Builder& b, int v) const;
  NormalForm finish(Builder b, bool strip) const;
  Word local_d0(int oe, int f) const;
  Word local_d1(int oe, int f) const;
  void validate();
  void build_alphabet();
  void build_tree_paths();

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  int base_ = 0;
  FiniteGroupTable base_group_ = trivial_table();
  Alphabet alphabet_;
  std::vector<std::vector<int>> letter_vertices_;
  std::vector<int> stable_edge_;
  std::vector<std::vector<Letter>> to_local_;   // [v][global]
  std::vector<std::vector<Letter>> to_global_;  // [v][local]
  std::vector<std::vector<std::vector<int>>> tree_path_;
};

// Spec file format, line oriented with '#' comments:
//   group <name> finite {elements=1,a,...; table=<n*n names>|cyclic}
//   group <name> free {rank=k; gens=c,d}
//   vertex <name> group=<g> [class=<label>]
//   edge <name> from=<v> to=<v> group=<g> d0={f=word;...} d1={...} tree=yes|no [letter=t]
//   base <vertex>
GraphOfGroups parse_spec(std::string_view text);
GraphOfGroups load_spec(std::string const& path);
// Spec text that parse_spec reads back to the same graph of groups.
std::string format_spec(GraphOfGroups const& g);

// Collapses non-loop tree edges whose edge group fills an endpoint group.
// letter_images (optional) receives old letter name -> new letter name.
GraphOfGroups reduce(GraphOfGroups const& g,
                     std::map<std::string, std::string>* letter_images = nullptr);
bool is_reduced(GraphOfGroups const& g);

// Tree vertex of the Bass-Serre tree: the edge E of Y-hat and the path form
// of h in G_E with final syllable 1. (E0, identity) is the base vertex.
struct ConjugateRep {
  int edge = 0;
  NormalForm h;
  auto operator<=>(ConjugateRep const&) const = default;
};

// (E, h) with h G_V h^-1 = x G_V x^-1 and target(E) = V.
ConjugateRep find_conjugate_rep(GraphOfGroups const& g, NormalForm const& x, int v);
// Whether some normal form of x ends with edge E and a final syllable in d1(F_E).
bool in_scriptGE(GraphOfGroups const& g, NormalForm const& x, int oe);

class CayleyBall {
 public:
  static constexpr std::size_t kDefaultCap = 2'000'000;

  CayleyBall(GraphOfGroups const& g, int radius, std::size_t cap = kDefaultCap);

  int radius() const { return radius_; }
  std::size_t size() const { return dist_.size(); }
  // Exact distance from the identity, or radius() + 1 when outside the ball.
  int distance(NormalForm const& x) const;
  int distance(std::span<Letter const> w1, std::span<Letter const> w2) const;
  std::map<NormalForm, int> const& entries() const { return dist_; }
  std::vector<std::size_t> sphere_sizes() const;

 private:
  GraphOfGroups const* g_;
  int radius_;
  std::map<NormalForm, int> dist_;
};

}  // namespace autgog
