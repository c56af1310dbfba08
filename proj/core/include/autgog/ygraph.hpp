// Y-graphs: finite labelled graphs over a graph of groups that classify
// asynchronous automatic structures on its fundamental group, and their
// compilation to regular languages.
//
// A rational subset S of a vertex group G_V is stored as the Dfa of its
// canonical words ("value set"); the language L_e of an edge is the preimage
// of S in the vertex language. Vertex languages are Dfas over the convenient
// alphabet using only letters of G_V (and e).

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autgog/fsa.hpp"
#include "autgog/gog.hpp"

namespace autgog {

// ---------------------------------------------------------------- value sets

Dfa value_set(GraphOfGroups const& g, int v, std::vector<Word> const& canonical);
Dfa all_values(GraphOfGroups const& g, int v);
// d0(F_E) as a value set at source(E), d1(F_E) at target(E).
Dfa initial_image(GraphOfGroups const& g, int oe);
Dfa terminal_image(GraphOfGroups const& g, int oe);
// left * S * right for canonical words left, right of G_v.
Dfa translate_values(GraphOfGroups const& g, int v, Word const& left, Dfa const& s,
                     Word const& right);
std::vector<Word> value_words(GraphOfGroups const& g, int v, Dfa const& s);  // finite S
bool contains_value(GraphOfGroups const& g, int v, Dfa const& s, Word const& canonical);
// Set of values of a vertex language.
Dfa image(GraphOfGroups const& g, int v, Dfa const& lang);
// Words of lang whose value lies in S.
Dfa preimage(GraphOfGroups const& g, int v, Dfa const& lang, Dfa const& s);
// The language w.L (w prefixed to every word; e letters dropped from w).
Dfa prefix_language(Word const& w, Dfa const& lang);
// Throws unless lang is a structure on G_v: only letters of G_v, every
// element represented, and for free groups only freely reduced words with
// interspersed e.
void check_structure(GraphOfGroups const& g, int v, Dfa const& lang);

// Pairs (u, u.a) of canonical words for a letter a of G_v.
TwoTapeDfa global_multiplier(GraphOfGroups const& g, int v, Letter a);

// Cells S_f = S_1 d0(f), f in F_E, partitioning G_V (V = source(E)); S_1 is
// the set of shortlex-least words of the right cosets of d0(F_E).
std::vector<Dfa> shortlex_coset_partition(GraphOfGroups const& g, int oe);

// ---------------------------------------------------------------- Y-graphs

struct YVertex {
  std::string name;
  int type = 0;       // vertex of Y
  std::string label;  // structure class label
  Dfa lang;
};

struct YEdge {
  std::string name;
  int from = 0;
  int to = 0;
  int type = 0;  // oriented edge of Y
  Dfa values;    // the rational set S_e
};

struct ActionKey {
  int vertex = 0;
  int edge_type = 0;
  int f = 0;
  auto operator<=>(ActionKey const&) const = default;
};

struct YGraph {
  std::vector<YVertex> vertices;
  std::vector<YEdge> edges;
  int start = 0;
  // Vertex permutations of the F_E-actions; missing entries are the identity.
  std::map<ActionKey, std::vector<int>> actions;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  std::vector<int> out_edges(int v) const;
  std::vector<int> in_edges(int v) const;
  std::vector<int> permutation(int v, int edge_type, int f) const;
  int find_vertex(std::string const& name) const;  // -1 when absent
};

struct Violation {
  std::string axiom;
  std::string detail;
};

// Every violated Y-graph axiom with a witness. Empty means valid.
std::vector<Violation> validate_ygraph(GraphOfGroups const& g, YGraph const& x);

// Per-vertex structures default to the vertex acceptors and labels to the
// vertex class labels.
struct VertexStructures {
  std::vector<Dfa> langs;
  std::vector<std::string> labels;
  static VertexStructures standard(GraphOfGroups const& g);
};

// Special Y-graph with a vertex per (E, f), E an edge of Y-hat, f in F_E.
YGraph default_ygraph(GraphOfGroups const& g,
                      std::optional<VertexStructures> const& s = std::nullopt);
// Y-graph isomorphic to Y with full edge labels and trivial actions.
YGraph biautomatic_ygraph(GraphOfGroups const& g,
                          std::optional<VertexStructures> const& s = std::nullopt);

// ---------------------------------------------------------------- languages

// The convenient alphabet plus letters r_E for oriented tree edges; these
// stand in for the empty stable letters until erased.
Alphabet visible_alphabet(GraphOfGroups const& g);
Letter visible_letter(GraphOfGroups const& g, int oe);
std::vector<Letter> tree_letters(GraphOfGroups const& g);
// Visible-alphabet Dfa to a Dfa over the convenient alphabet.
Dfa erase_tree_letters(GraphOfGroups const& g, Dfa const& visible);

// Subdivided-edge automaton of X, before pinch prohibition.
Gfsa language_gfsa(GraphOfGroups const& g, YGraph const& x, int start_vertex = -1);
// Visible language via the prohibition route and via the two-state-per-incoming-type machine.
Dfa visible_language(GraphOfGroups const& g, YGraph const& x, int start_vertex = -1);
Gfsa bx_gfsa(GraphOfGroups const& g, YGraph const& x);
Dfa visible_language_bx(GraphOfGroups const& g, YGraph const& x);

struct StructureHandle {
  GraphOfGroups const* graph = nullptr;
  std::shared_ptr<YGraph const> origin;
  Dfa dfa;      // over the convenient alphabet, minimized
  Dfa visible;  // over the visible alphabet, minimized
  bool unique = false;
};

StructureHandle language_dfa(GraphOfGroups const& g, YGraph const& x);
// Sublanguage with coset-representative inner syllables; bijects onto G.
StructureHandle synchronize(GraphOfGroups const& g, YGraph const& x);
// Words labelling paths from vertex v (erased), the suffix language L_v.
Dfa suffix_language(GraphOfGroups const& g, YGraph const& x, int v);

// ---------------------------------------------------------------- moves

struct CollapseResult {
  bool ok = false;
  YGraph graph;
  std::string reason;
  Word witness1, witness2;  // words failing the fellow-traveller test
  std::vector<std::vector<int>> classes;
};

// Equivariantly identifies v and v2 after checking that the suffix languages
// of identified vertices fellow travel at distance K on words up to maxlen.
CollapseResult collapse(GraphOfGroups const& g, YGraph const& x, int v, int v2, int K,
                        int maxlen);

// Redirects the element u (in G_E, E = last edge) to a new vertex orbit
// carrying the given structure.
YGraph split_for_element(GraphOfGroups const& g, YGraph const& x, Word const& u, int oe,
                         std::string const& label, Dfa const& lang);
// X-lift of the normal form path of h, as X edges; throws when absent.
std::vector<int> lift_path(GraphOfGroups const& g, YGraph const& x, NormalForm const& h);

// ---------------------------------------------------------------- I/O

// Writes <path> and sidecar automaton files <path>.v<i>.fsa / <path>.e<i>.fsa.
void write_ygraph(GraphOfGroups const& g, YGraph const& x, std::string const& path);
YGraph read_ygraph(GraphOfGroups const& g, std::string const& path);
std::string ygraph_to_dot(GraphOfGroups const& g, YGraph const& x);

}  // namespace autgog
