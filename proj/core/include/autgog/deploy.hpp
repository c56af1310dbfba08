// Deployments: the vertex-group structures a structure on G induces on the
// conjugates of vertex groups, edge path decompositions, fellow-traveller
// checks and the lazy tracker machine.
//
// Everything is computed on the decomposition automaton P of a language L:
// the product of L's Dfa with a walk in Y, over the visible alphabet (tree
// edges get explicit letters). A run of P on a visible word is exactly an
// edge path decomposition of the erased word, with the no-pinch condition
// enforced at every reverse step.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autgog/fsa.hpp"
#include "autgog/gog.hpp"
#include "autgog/ygraph.hpp"

namespace autgog {

class DecompositionAutomaton {
 public:
  struct State {
    int q = 0;         // state of L's Dfa
    int vertex = 0;    // current vertex of Y
    int last = 0;      // last edge crossed (E0 at the start)
    int value = 0;     // syllable value: element (finite) or 0/1 identity flag (free)
    bool fresh = true; // no letter read since the last edge
    auto operator<=>(State const&) const = default;
  };

  DecompositionAutomaton(GraphOfGroups const& g, Dfa const& lang);

  GraphOfGroups const& graph() const { return *g_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  int start() const { return 0; }
  State const& state(int p) const { return states_[p]; }
  // Next state on a visible letter, or kNoState; only live states are kept.
  int next(int p, Letter a) const { return delta_[static_cast<std::size_t>(p) * letters_ + a]; }
  bool is_accept(int p) const;
  int num_letters() const { return letters_; }

 private:
  GraphOfGroups const* g_;
  Dfa lang_;
  int letters_ = 0;
  std::vector<State> states_;
  std::vector<int> delta_;
};

struct EdgePathDecomposition {
  std::vector<Word> syllables;  // u_0 .. u_m
  std::vector<int> edges;       // E_1 .. E_m
  std::vector<int> cuts;        // position in the word of each edge (index of its letter or cut)
};

// Earliest-cut decomposition of an accepted word (or accepted-word prefix).
EdgePathDecomposition edge_path_decompose(GraphOfGroups const& g, Dfa const& lang,
                                          Word const& w, bool prefix = false);

// States of P reached by prefixes ending with t_E and evaluating to h, for h in G_E.
std::vector<int> state_sets(DecompositionAutomaton const& p, int oe, NormalForm const& h,
                            std::size_t cap = 200000);
// Complete syllables readable from the given P states: N_h when states = S_h.
Dfa syllable_language(DecompositionAutomaton const& p, int oe, std::vector<int> const& states);
// The union over f in F_E of marker(f) N_{h d1(f)}, the marker of the identity being e.
Dfa marked_induced_language(DecompositionAutomaton const& p, int oe, NormalForm const& h);
// L_h with the leading identity marker elided.
Dfa induced_language(DecompositionAutomaton const& p, int oe, NormalForm const& h);
Dfa induced_language(GraphOfGroups const& g, Dfa const& lang, int oe, NormalForm const& h);
// Replaces the leading marker d1(f') of every word by d1(f f').
Dfa translate_marker(GraphOfGroups const& g, int oe, int f, Dfa const& marked);
Dfa elide_identity_marker(Dfa const& marked);

// Children of a tree vertex away from the base. For free vertex groups only
// coset representatives of length <= free_radius are produced.
std::vector<ConjugateRep> tree_children(GraphOfGroups const& g, ConjugateRep const& v,
                                        int free_radius = 1);
int tree_depth(ConjugateRep const& v);
// Every tree vertex within depth of the base, breadth first.
std::vector<ConjugateRep> tree_positions(GraphOfGroups const& g, int depth, int free_radius = 1,
                                         std::size_t cap = 100000);

struct DeploymentEntry {
  ConjugateRep position;
  std::string label;   // class label (X-vertex label for Y-graph handles)
  int x_vertex = -1;   // X vertex reached by the lift, for Y-graph handles
  Dfa marked;          // marked L_h
  Dfa lang;            // L_h, identity marker elided
  int language_id = 0; // index among distinct minimized L_h seen so far
};

class Deployment {
 public:
  explicit Deployment(StructureHandle handle);

  DeploymentEntry const& at(ConjugateRep const& position);
  std::size_t size() const { return cache_.size(); }
  std::size_t distinct_languages() const { return distinct_.size(); }
  std::map<ConjugateRep, DeploymentEntry> const& entries() const { return cache_; }
  // Equivariance psi(h) = f psi(h f) on every cached position; messages for failures.
  std::vector<std::string> check_equivariance() const;
  StructureHandle const& handle() const { return handle_; }
  DecompositionAutomaton const& automaton() const { return *p_; }

 private:
  StructureHandle handle_;
  std::shared_ptr<DecompositionAutomaton> p_;
  std::map<ConjugateRep, DeploymentEntry> cache_;
  std::vector<Dfa> distinct_;
};

Deployment deployment_of(StructureHandle const& handle);

// ---------------------------------------------------------------- fellow travel

struct FellowTravel {
  bool ok = false;
  std::vector<std::pair<int, int>> path;  // grid path on success
};

// Distances between prefix values via a Cayley ball of radius >= K.
FellowTravel async_fellow_travel(GraphOfGroups const& g, Word const& w1, Word const& w2, int K,
                                 CayleyBall const* ball = nullptr);
bool async_fellow_travel_naive(GraphOfGroups const& g, Word const& w1, Word const& w2, int K);
bool sync_fellow_travel(GraphOfGroups const& g, Word const& w1, Word const& w2, int K,
                        CayleyBall const* ball = nullptr);

struct FtReport {
  bool ok = false;
  int K = 0;            // least K passing every tested pair
  int maxlen = 0;
  int bound = 0;        // largest K tried
  bool sync = false;
  std::size_t pairs = 0;
  Word worst1, worst2;  // a pair attaining K (or exceeding the bound)
};

// Pairs of accepted words up to maxlen whose values are at distance <= 1.
std::vector<std::pair<Word, Word>> neighbour_pairs(GraphOfGroups const& g,
                                                   std::vector<Word> const& words);
FtReport ft_constant(GraphOfGroups const& g, Dfa const& lang, int maxlen, bool sync,
                     int bound = 6);
// Least K for which the pair fellow travels, capped at bound + 1.
int pair_constant(GraphOfGroups const& g, Word const& w1, Word const& w2, bool sync,
                  CayleyBall const& ball);

struct EquivalenceReport {
  bool ok = false;
  int maxlen = 0;
  int K = 0;
  std::size_t pairs = 0;
  Word witness1, witness2;
};

EquivalenceReport equivalent_upto(GraphOfGroups const& g, Dfa const& l1, Dfa const& l2,
                                  int maxlen, int K);

// ---------------------------------------------------------------- tracker

// Lazy deterministic machine accepting every word. Its state after w records,
// for each offset b in the K-ball, the P states reached by prefixes u of
// decomposed L-words with value w b that K-fellow travel w.
class TrackerMachine {
 public:
  TrackerMachine(GraphOfGroups const& g, Dfa const& lang, int K, std::size_t state_cap = 5000);

  int start() const { return 0; }
  int next(int s, Letter a);
  int run(Word const& w);
  std::size_t num_states() const { return states_.size(); }
  // For each edge E with the current value in G_E (as witnessed by a
  // fellow-travelling prefix ending with t_E): the P states reached.
  std::map<int, std::vector<int>> report(int s) const;
  DecompositionAutomaton const& automaton() const { return p_; }

 private:
  using Key = std::set<std::pair<NormalForm, int>>;
  int intern(Key key);
  Key closure(Key key) const;

  GraphOfGroups const* g_;
  DecompositionAutomaton p_;
  int K_;
  std::size_t cap_;
  CayleyBall ball_;
  std::vector<Key> states_;
  std::map<Key, int> index_;
  std::map<std::pair<int, Letter>, int> delta_;
};

}  // namespace autgog
