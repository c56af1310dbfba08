#include "autgog/deploy.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace autgog {

namespace {

struct VertexValues {
  bool finite = true;
  int identity = 0;
  std::vector<int> elem;  // global letter -> element
  FiniteGroupTable const* table = nullptr;
};

VertexValues vertex_values(GraphOfGroups const& g, int v) {
  VertexValues out;
  auto const& grp = g.vertex(v).group;
  out.finite = grp.is_finite();
  if (!out.finite) return out;
  out.table = &grp.table();
  out.identity = grp.table().identity();
  out.elem.assign(g.num_letters(), -1);
  out.elem[0] = out.identity;
  for (Letter a = 1; a < g.num_letters(); ++a)
    if (g.in_vertex(v, a)) out.elem[a] = grp.element_of(grp.evaluate(Word{g.to_local(v, a)}));
  return out;
}

Letter marker(GraphOfGroups const& g, int oe, int f) {
  Word w = g.d1(oe, f);
  return w.empty() ? Letter{0} : w.at(0);
}

// Copy of d as an Nfa plus a fresh start state; returns the new start.
std::pair<Nfa, int> with_new_start(Dfa const& d) {
  Nfa n(d.num_letters());
  for (int s = 0; s < d.num_states(); ++s) n.add_state(d.is_accept(s));
  for (int s = 0; s < d.num_states(); ++s)
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int t = d.next(s, a); t != kNoState) n.add_edge(s, a, t);
  int start = n.add_state(false);
  n.add_start(start);
  return {std::move(n), start};
}

}  // namespace

// ---------------------------------------------------------------- automaton P

DecompositionAutomaton::DecompositionAutomaton(GraphOfGroups const& g, Dfa const& lang)
    : g_(&g), lang_(lang), letters_(g.num_letters() + g.base_edge()) {
  if (lang.num_letters() != g.num_letters()) throw Error("language alphabet mismatch");
  std::vector<VertexValues> values;
  for (int v = 0; v < g.num_vertices(); ++v) values.push_back(vertex_values(g, v));
  std::vector<std::set<int>> pinned(g.base_edge());
  for (int oe = 0; oe < g.base_edge(); ++oe) {
    auto const& vv = values[g.target(oe)];
    for (int f = 0; f < g.edge_order(oe); ++f) {
      if (!vv.finite) {
        pinned[oe].insert(0);
        continue;
      }
      int x = vv.identity;
      for (Letter a : g.d1(oe, f)) x = vv.table->mul(x, vv.elem[a]);
      pinned[oe].insert(x);
    }
  }
  auto identity = [&](int v) { return values[v].finite ? values[v].identity : 0; };

  std::map<State, int> index;
  std::vector<State> all;
  std::vector<std::vector<std::pair<Letter, int>>> out;
  auto intern = [&](State const& s) {
    auto [it, fresh] = index.try_emplace(s, static_cast<int>(all.size()));
    if (fresh) {
      all.push_back(s);
      out.emplace_back();
    }
    return it->second;
  };
  intern({lang.start(), g.base(), g.base_edge(), identity(g.base()), true});
  for (std::size_t i = 0; i < all.size(); ++i) {
    State st = all[i];
    auto const& vv = values[st.vertex];
    for (Letter a = 0; a < g.num_letters(); ++a) {
      if (a != 0 && !g.in_vertex(st.vertex, a)) continue;
      int q = lang.next(st.q, a);
      if (q == kNoState) continue;
      int value = vv.finite ? vv.table->mul(st.value, vv.elem[a]) : (a == 0 ? st.value : 1);
      int t = intern({q, st.vertex, st.last, value, false});
      out[i].emplace_back(a, t);
    }
    for (int oe : g.out_edges(st.vertex)) {
      if (st.last != g.base_edge() && oe == g.reverse(st.last) &&
          pinned[st.last].contains(st.value))
        continue;
      Letter s = visible_letter(g, oe);
      int q = g.is_tree(oe) ? st.q : lang.next(st.q, s);
      if (q == kNoState) continue;
      int t = intern({q, g.target(oe), oe, identity(g.target(oe)), true});
      out[i].emplace_back(g.is_tree(oe) ? g.num_letters() + oe : s, t);
    }
  }
  // Keep live states only.
  std::vector<std::vector<int>> in(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (auto [a, t] : out[i]) in[t].push_back(static_cast<int>(i));
  std::vector<char> live(all.size(), 0);
  std::vector<int> stack;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (lang.is_accept(all[i].q)) {
      live[i] = 1;
      stack.push_back(static_cast<int>(i));
    }
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : in[t])
      if (!live[s]) {
        live[s] = 1;
        stack.push_back(s);
      }
  }
  std::vector<int> renumber(all.size(), kNoState);
  live[0] = 1;  // the start stays, even for an empty language
  for (std::size_t i = 0; i < all.size(); ++i)
    if (live[i]) {
      renumber[i] = static_cast<int>(states_.size());
      states_.push_back(all[i]);
    }
  delta_.assign(states_.size() * letters_, kNoState);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!live[i]) continue;
    for (auto [a, t] : out[i])
      if (live[t]) delta_[static_cast<std::size_t>(renumber[i]) * letters_ + a] = renumber[t];
  }
}

bool DecompositionAutomaton::is_accept(int p) const { return lang_.is_accept(states_[p].q); }

// ---------------------------------------------------------------- decompositions

EdgePathDecomposition edge_path_decompose(GraphOfGroups const& g, Dfa const& lang, Word const& w,
                                          bool prefix) {
  DecompositionAutomaton p(g, lang);
  int n = static_cast<int>(w.size());
  std::set<std::pair<int, int>> dead;
  std::vector<std::pair<int, int>> events;  // (edge or -1 for a letter, position)
  std::function<bool(int, int)> search = [&](int pos, int s) -> bool {
    if (dead.contains({pos, s})) return false;
    if (pos == n && (prefix || p.is_accept(s))) return true;
    // Earliest cut: try tree edges before consuming the next letter.
    for (int oe = 0; oe < g.base_edge(); ++oe) {
      if (!g.is_tree(oe)) continue;
      int t = p.next(s, g.num_letters() + oe);
      if (t == kNoState) continue;
      events.emplace_back(oe, pos);
      if (search(pos, t)) return true;
      events.pop_back();
    }
    if (pos < n) {
      int t = p.next(s, w[pos]);
      if (t != kNoState) {
        int edge = g.stable_edge(w[pos]);
        events.emplace_back(edge, pos);
        if (search(pos + 1, t)) return true;
        events.pop_back();
      }
    }
    dead.insert({pos, s});
    return false;
  };
  if (!search(0, p.start()))
    throw Error("word " + g.alphabet().format(w) + " is not " +
                (prefix ? "an accepted-word prefix" : "accepted"));
  EdgePathDecomposition d;
  d.syllables.emplace_back();
  for (auto [edge, pos] : events) {
    if (edge < 0) {
      d.syllables.back().push_back(w[pos]);
      continue;
    }
    d.edges.push_back(edge);
    d.cuts.push_back(pos);
    d.syllables.emplace_back();
  }
  return d;
}

// ---------------------------------------------------------------- S_h, N_h, L_h

std::vector<int> state_sets(DecompositionAutomaton const& p, int oe, NormalForm const& h,
                            std::size_t cap) {
  auto const& g = p.graph();
  if (oe == g.base_edge()) {
    if (!h.is_identity()) throw Error("only the identity lies in G_E0");
    return {p.start()};
  }
  if (h.edges.empty() || h.edges.back() != oe || g.d1_preimage(oe, h.last()) < 0)
    throw Error("element is not in G_" + g.oriented_name(oe) + " in path form");
  int m = h.length();
  // P state -> admissible offsets f_i in F_{E_i} (unused before the first edge).
  std::map<int, std::set<int>> frontier{{p.start(), {0}}};
  for (int i = 0; i < m; ++i) {
    int y = i == 0 ? g.base() : g.target(h.edges[i - 1]);
    int next_edge = h.edges[i];
    Letter step = visible_letter(g, next_edge);
    bool free = !g.vertex_finite(y);
    std::map<int, std::set<int>> advanced;
    for (auto const& [start, offsets] : frontier) {
      // Target syllable values, each with the offset f_{i+1} it produces.
      std::map<Word, std::set<int>> targets;
      std::size_t longest = 0;
      for (int fprev : offsets) {
        Word base = h.syllables[i];
        if (i > 0)
          base = g.vertex_multiply(y, g.vertex_invert(y, g.d1(h.edges[i - 1], fprev)), base);
        for (int f = 0; f < g.edge_order(next_edge); ++f) {
          if (i == m - 1 && g.d1(next_edge, f) != h.last()) continue;
          Word tau = g.vertex_multiply(y, base, g.d0(next_edge, f));
          longest = std::max(longest, tau.size());
          targets[tau].insert(f);
        }
      }
      std::set<std::pair<int, Word>> seen{{start, Word{}}};
      std::deque<std::pair<int, Word>> queue{{start, Word{}}};
      while (!queue.empty()) {
        auto [s, value] = queue.front();
        queue.pop_front();
        if (auto it = targets.find(value); it != targets.end())
          if (int t = p.next(s, step); t != kNoState)
            advanced[t].insert(it->second.begin(), it->second.end());
        for (Letter a = 0; a < g.num_letters(); ++a) {
          if (a != 0 && !g.in_vertex(y, a)) continue;
          int t = p.next(s, a);
          if (t == kNoState) continue;
          Word v = a == 0 ? value : g.vertex_multiply(y, value, Word{a});
          if (free && v.size() > longest + 4) continue;
          if (seen.insert({t, v}).second) {
            if (seen.size() > cap) throw Error("state_sets cap exceeded");
            queue.emplace_back(t, std::move(v));
          }
        }
      }
    }
    frontier = std::move(advanced);
  }
  std::vector<int> out;
  for (auto const& [s, offsets] : frontier) out.push_back(s);
  return out;
}

Dfa syllable_language(DecompositionAutomaton const& p, int oe, std::vector<int> const& states) {
  auto const& g = p.graph();
  int v = g.target(oe);
  Nfa n(g.num_letters());
  for (int s = 0; s < p.num_states(); ++s) {
    bool accept = p.is_accept(s);
    for (Letter a = g.num_letters(); a < p.num_letters() && !accept; ++a)
      accept = p.next(s, a) != kNoState;
    for (int e2 = 0; e2 < g.base_edge() && !accept; ++e2)
      if (!g.is_tree(e2)) accept = p.next(s, g.stable_letter(e2)) != kNoState;
    n.add_state(accept);
  }
  for (int s = 0; s < p.num_states(); ++s)
    for (Letter a = 0; a < g.num_letters(); ++a) {
      if (a != 0 && !g.in_vertex(v, a)) continue;
      if (g.stable_edge(a) >= 0) continue;
      if (int t = p.next(s, a); t != kNoState) n.add_edge(s, a, t);
    }
  for (int s : states) n.add_start(s);
  if (states.empty()) return empty_language(g.num_letters());
  return minimize(determinize(n));
}

Dfa marked_induced_language(DecompositionAutomaton const& p, int oe, NormalForm const& h) {
  auto const& g = p.graph();
  int n = g.num_letters();
  if (oe == g.base_edge())
    return minimize(concatenate(finite_language(n, {Word{0}}),
                                syllable_language(p, oe, state_sets(p, oe, h))));
  int v = g.target(oe);
  std::vector<Dfa> parts;
  for (int f = 0; f < g.edge_order(oe); ++f) {
    NormalForm hf = h;
    hf.syllables.back() = g.vertex_multiply(v, h.last(), g.d1(oe, f));
    Dfa nh = syllable_language(p, oe, state_sets(p, oe, hf));
    parts.push_back(concatenate(finite_language(n, {Word{marker(g, oe, f)}}), nh));
  }
  return minimize(union_of(parts, n));
}

Dfa elide_identity_marker(Dfa const& marked) {
  auto [n, start] = with_new_start(marked);
  int s0 = marked.start();
  if (int t = marked.next(s0, 0); t != kNoState) n.add_edge(start, kEpsilon, t);
  for (Letter a = 1; a < marked.num_letters(); ++a)
    if (int t = marked.next(s0, a); t != kNoState) n.add_edge(start, a, t);
  Nfa only(n.num_letters());
  for (int s = 0; s < n.num_states(); ++s) only.add_state(n.is_accept(s));
  for (int s = 0; s < n.num_states(); ++s)
    for (auto const& e : n.edges(s)) only.add_edge(s, e.letter, e.target);
  only.add_start(start);
  return minimize(determinize(only));
}

Dfa induced_language(DecompositionAutomaton const& p, int oe, NormalForm const& h) {
  return elide_identity_marker(marked_induced_language(p, oe, h));
}

Dfa induced_language(GraphOfGroups const& g, Dfa const& lang, int oe, NormalForm const& h) {
  DecompositionAutomaton p(g, lang);
  return induced_language(p, oe, h);
}

Dfa translate_marker(GraphOfGroups const& g, int oe, int f, Dfa const& marked) {
  auto const& grp = g.edge_group(oe);
  Nfa n(marked.num_letters());
  for (int s = 0; s < marked.num_states(); ++s) n.add_state(marked.is_accept(s));
  for (int s = 0; s < marked.num_states(); ++s)
    for (Letter a = 0; a < marked.num_letters(); ++a)
      if (int t = marked.next(s, a); t != kNoState) n.add_edge(s, a, t);
  int start = n.add_state(false);
  n.add_start(start);
  for (int f2 = 0; f2 < grp.order(); ++f2)
    if (int t = marked.next(marked.start(), marker(g, oe, f2)); t != kNoState)
      n.add_edge(start, marker(g, oe, grp.mul(f, f2)), t);
  return minimize(determinize(n));
}

// ---------------------------------------------------------------- tree positions

std::vector<ConjugateRep> tree_children(GraphOfGroups const& g, ConjugateRep const& v,
                                        int free_radius) {
  int V = g.target(v.edge);
  std::vector<ConjugateRep> out;
  Word prefix = g.to_word(v.h);
  for (int oe : g.out_edges(V)) {
    std::vector<Word> reps;
    if (g.vertex_finite(V)) {
      std::set<Word> done;
      for (auto const& x : g.vertex_elements(V)) {
        if (done.contains(x)) continue;
        Word best = x;
        for (int f = 0; f < g.edge_order(oe); ++f) {
          Word y = g.vertex_multiply(V, x, g.d0(oe, f));
          done.insert(y);
          if (shortlex_less(y, best)) best = y;
        }
        reps.push_back(best);
      }
      std::sort(reps.begin(), reps.end(), [](Word const& a, Word const& b) {
        return shortlex_less(a, b);
      });
    } else {
      reps = enumerate_words(g.vertex_acceptor(V), free_radius);
    }
    for (auto const& r : reps) {
      if (v.edge != g.base_edge() && oe == g.reverse(v.edge) && g.d0_preimage(oe, r) >= 0)
        continue;
      Word w = prefix;
      w.insert(w.end(), r.begin(), r.end());
      if (!g.is_tree(oe)) w.push_back(g.stable_letter(oe));
      // The coset x G_V read off the path form; no reducedness needed here.
      NormalForm h = g.path_form(g.normal_form(w), g.target(oe));
      h.syllables.back().clear();
      if (h.edges.empty() || h.edges.back() != oe)
        throw Error("tree child does not end with the expected edge");
      out.push_back({oe, std::move(h)});
    }
  }
  return out;
}

int tree_depth(ConjugateRep const& v) { return v.h.length(); }

std::vector<ConjugateRep> tree_positions(GraphOfGroups const& g, int depth, int free_radius,
                                         std::size_t cap) {
  std::vector<ConjugateRep> out{ConjugateRep{g.base_edge(), NormalForm{}}};
  std::size_t level_begin = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (auto& c : tree_children(g, out[i], free_radius)) {
        out.push_back(std::move(c));
        if (out.size() > cap) throw Error("tree ball cap exceeded");
      }
    level_begin = level_end;
  }
  return out;
}

// ---------------------------------------------------------------- deployments

Deployment::Deployment(StructureHandle handle)
    : handle_(std::move(handle)),
      p_(std::make_shared<DecompositionAutomaton>(*handle_.graph, handle_.dfa)) {}

DeploymentEntry const& Deployment::at(ConjugateRep const& position) {
  if (auto it = cache_.find(position); it != cache_.end()) return it->second;
  auto const& g = *handle_.graph;
  DeploymentEntry e;
  e.position = position;
  e.marked = marked_induced_language(*p_, position.edge, position.h);
  e.lang = elide_identity_marker(e.marked);
  e.language_id = -1;
  for (std::size_t i = 0; i < distinct_.size() && e.language_id < 0; ++i)
    if (equivalent(distinct_[i], e.lang)) e.language_id = static_cast<int>(i);
  if (e.language_id < 0) {
    e.language_id = static_cast<int>(distinct_.size());
    distinct_.push_back(e.lang);
  }
  if (handle_.origin) {
    auto const& x = *handle_.origin;
    auto path = lift_path(g, x, position.h);
    e.x_vertex = path.empty() ? x.start : x.edges[path.back()].to;
    e.label = x.vertices[e.x_vertex].label;
  } else {
    e.label = "L" + std::to_string(e.language_id);
  }
  return cache_.emplace(position, std::move(e)).first->second;
}

std::vector<std::string> Deployment::check_equivariance() const {
  auto const& g = *handle_.graph;
  std::vector<std::string> out;
  for (auto const& [pos, e] : cache_) {
    if (pos.edge == g.base_edge()) continue;
    int v = g.target(pos.edge);
    for (int f = 0; f < g.edge_order(pos.edge); ++f) {
      NormalForm hf = pos.h;
      hf.syllables.back() = g.vertex_multiply(v, pos.h.last(), g.d1(pos.edge, f));
      Dfa other = marked_induced_language(*p_, pos.edge, hf);
      if (!equivalent(e.marked, translate_marker(g, pos.edge, f, other)))
        out.push_back("equivariance fails at " + g.format(pos.h) + " for f=" +
                      g.edge_group(pos.edge).names[f]);
    }
  }
  return out;
}

Deployment deployment_of(StructureHandle const& handle) {
  if (!handle.graph) throw Error("structure handle has no graph of groups");
  return Deployment(handle);
}

// ---------------------------------------------------------------- fellow travel

namespace {

std::vector<NormalForm> prefix_values(GraphOfGroups const& g, Word const& w) {
  std::vector<NormalForm> out{NormalForm{}};
  for (Letter a : w) out.push_back(g.append(out.back(), a));
  return out;
}

// Distances d(w1(i), w2(j)), with node values built one letter at a time
// along each row and memoized.
class PairDistances {
 public:
  PairDistances(GraphOfGroups const& g, Word const& w1, Word const& w2, CayleyBall const& ball)
      : g_(&g), ball_(&ball), w2_(&w2),
        values_((w1.size() + 1) * (w2.size() + 1)),
        dist_(values_.size(), -1) {
    auto prefixes = prefix_values(g, w1);
    for (std::size_t i = 0; i < prefixes.size(); ++i) values_[index(i, 0)] = g.inverse(prefixes[i]);
  }

  int operator()(int i, int j) {
    int& d = dist_[index(i, j)];
    if (d < 0) d = ball_->distance(value(i, j));
    return d;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * (w2_->size() + 1) + j; }

  NormalForm const& value(int i, int j) {
    auto& v = values_[index(i, j)];
    if (!v) v = g_->append(value(i, j - 1), (*w2_)[j - 1]);
    return *v;
  }

  GraphOfGroups const* g_;
  CayleyBall const* ball_;
  Word const* w2_;
  std::vector<std::optional<NormalForm>> values_;
  std::vector<int> dist_;
};

PairDistances distances(GraphOfGroups const& g, Word const& w1, Word const& w2,
                        CayleyBall const& ball) {
  return PairDistances(g, w1, w2, ball);
}

}  // namespace

FellowTravel async_fellow_travel(GraphOfGroups const& g, Word const& w1, Word const& w2, int K,
                                 CayleyBall const* ball) {
  std::optional<CayleyBall> own;
  if (!ball || ball->radius() < K) ball = &own.emplace(g, K);
  auto d = distances(g, w1, w2, *ball);
  int n1 = static_cast<int>(w1.size()), n2 = static_cast<int>(w2.size());
  // parent[i][j]: predecessor on a reachable path, -2 when unreachable.
  std::vector<std::vector<int>> parent(n1 + 1, std::vector<int>(n2 + 1, -2));
  if (d(0, 0) <= K) parent[0][0] = -1;
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n2; ++j) {
      if (i + j == 0 || parent[i][j] != -2) continue;
      int from = -2;
      if (i > 0 && j > 0 && parent[i - 1][j - 1] != -2) from = 2;
      else if (i > 0 && parent[i - 1][j] != -2) from = 0;
      else if (j > 0 && parent[i][j - 1] != -2) from = 1;
      if (from == -2 || d(i, j) > K) continue;  // only reachable nodes pay for a distance
      parent[i][j] = from;
    }
  FellowTravel out;
  if (parent[n1][n2] == -2) return out;
  out.ok = true;
  for (int i = n1, j = n2;;) {
    out.path.emplace_back(i, j);
    int from = parent[i][j];
    if (from == -1) break;
    if (from != 1) --i;
    if (from != 0) --j;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

bool async_fellow_travel_naive(GraphOfGroups const& g, Word const& w1, Word const& w2, int K) {
  CayleyBall ball(g, K);
  auto d = distances(g, w1, w2, ball);
  int n1 = static_cast<int>(w1.size()), n2 = static_cast<int>(w2.size());
  std::function<bool(int, int)> go = [&](int i, int j) {
    if (d(i, j) > K) return false;
    if (i == n1 && j == n2) return true;
    return (i < n1 && j < n2 && go(i + 1, j + 1)) || (i < n1 && go(i + 1, j)) ||
           (j < n2 && go(i, j + 1));
  };
  return go(0, 0);
}

bool sync_fellow_travel(GraphOfGroups const& g, Word const& w1, Word const& w2, int K,
                        CayleyBall const* ball) {
  std::optional<CayleyBall> own;
  if (!ball || ball->radius() < K) ball = &own.emplace(g, K);
  auto d = distances(g, w1, w2, *ball);
  int n1 = static_cast<int>(w1.size()), n2 = static_cast<int>(w2.size());
  for (int t = 0; t <= std::max(n1, n2); ++t)
    if (d(std::min(t, n1), std::min(t, n2)) > K) return false;
  return true;
}

int pair_constant(GraphOfGroups const& g, Word const& w1, Word const& w2, bool sync,
                  CayleyBall const& ball) {
  auto d = distances(g, w1, w2, ball);
  int n1 = static_cast<int>(w1.size()), n2 = static_cast<int>(w2.size());
  if (sync) {
    int worst = 0;
    for (int t = 0; t <= std::max(n1, n2); ++t)
      worst = std::max(worst, d(std::min(t, n1), std::min(t, n2)));
    return worst;
  }
  // Bottleneck path through the grid.
  int const inf = ball.radius() + 1;
  std::vector<std::vector<int>> best(n1 + 1, std::vector<int>(n2 + 1, inf));
  for (int i = 0; i <= n1; ++i)
    for (int j = 0; j <= n2; ++j) {
      int via = i + j == 0 ? 0 : inf;
      if (i > 0) via = std::min(via, best[i - 1][j]);
      if (j > 0) via = std::min(via, best[i][j - 1]);
      if (i > 0 && j > 0) via = std::min(via, best[i - 1][j - 1]);
      best[i][j] = std::max(via, d(i, j));
    }
  return best[n1][n2];
}

std::vector<std::pair<Word, Word>> neighbour_pairs(GraphOfGroups const& g,
                                                   std::vector<Word> const& words) {
  std::map<NormalForm, std::vector<int>> by_value;
  std::vector<NormalForm> values;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) {
    values.push_back(g.normal_form(words[i]));
    by_value[values.back()].push_back(i);
  }
  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) {
    for (int j : by_value[values[i]])
      if (i < j) pairs.emplace(i, j);
    for (Letter a = 1; a < g.num_letters(); ++a) {
      auto it = by_value.find(g.append(values[i], a));
      if (it == by_value.end()) continue;
      for (int j : it->second)
        if (i != j) pairs.emplace(std::min(i, j), std::max(i, j));
    }
  }
  std::vector<std::pair<Word, Word>> out;
  for (auto [i, j] : pairs) out.emplace_back(words[i], words[j]);
  return out;
}

FtReport ft_constant(GraphOfGroups const& g, Dfa const& lang, int maxlen, bool sync, int bound) {
  FtReport r;
  r.maxlen = maxlen;
  r.bound = bound;
  r.sync = sync;
  CayleyBall ball(g, bound);
  auto pairs = neighbour_pairs(g, enumerate_words(lang, maxlen));
  r.pairs = pairs.size();
  for (auto const& [w1, w2] : pairs) {
    int k = pair_constant(g, w1, w2, sync, ball);
    if (k > r.K || r.worst1.empty() && r.worst2.empty() && k == r.K) {
      r.K = k;
      r.worst1 = w1;
      r.worst2 = w2;
    }
  }
  r.ok = r.K <= bound;
  return r;
}

EquivalenceReport equivalent_upto(GraphOfGroups const& g, Dfa const& l1, Dfa const& l2,
                                  int maxlen, int K) {
  EquivalenceReport r;
  r.maxlen = maxlen;
  r.K = K;
  CayleyBall ball(g, K);
  Dfa both = minimize(product_boolean(l1, l2, BoolOp::kOr));
  auto pairs = neighbour_pairs(g, enumerate_words(both, maxlen));
  r.pairs = pairs.size();
  r.ok = true;
  for (auto const& [w1, w2] : pairs)
    if (!async_fellow_travel(g, w1, w2, K, &ball).ok) {
      r.ok = false;
      r.witness1 = w1;
      r.witness2 = w2;
      break;
    }
  return r;
}

// ---------------------------------------------------------------- tracker

TrackerMachine::TrackerMachine(GraphOfGroups const& g, Dfa const& lang, int K,
                               std::size_t state_cap)
    : g_(&g), p_(g, lang), K_(K), cap_(state_cap), ball_(g, K) {
  intern(closure({{NormalForm{}, p_.start()}}));
}

TrackerMachine::Key TrackerMachine::closure(Key key) const {
  std::vector<std::pair<NormalForm, int>> work(key.begin(), key.end());
  while (!work.empty()) {
    auto [b, s] = work.back();
    work.pop_back();
    for (Letter x = 0; x < p_.num_letters(); ++x) {
      int t = p_.next(s, x);
      if (t == kNoState) continue;
      NormalForm b2 = (x == 0 || x >= g_->num_letters()) ? b : g_->append(b, x);
      if (ball_.distance(b2) > K_) continue;
      if (key.emplace(b2, t).second) work.emplace_back(std::move(b2), t);
    }
  }
  return key;
}

int TrackerMachine::intern(Key key) {
  auto [it, fresh] = index_.try_emplace(key, static_cast<int>(states_.size()));
  if (fresh) {
    if (states_.size() >= cap_) throw Error("tracker state cap exceeded");
    states_.push_back(std::move(key));
  }
  return it->second;
}

int TrackerMachine::next(int s, Letter a) {
  if (auto it = delta_.find({s, a}); it != delta_.end()) return it->second;
  NormalForm back = a == 0 ? NormalForm{} : g_->normal_form(Word{g_->alphabet().inverse(a)});
  Key moved;
  for (auto const& [b, p] : states_[s]) {
    NormalForm b2 = g_->multiply(back, b);
    if (ball_.distance(b2) <= K_) moved.emplace(std::move(b2), p);
  }
  int t = intern(closure(std::move(moved)));
  delta_[{s, a}] = t;
  return t;
}

int TrackerMachine::run(Word const& w) {
  int s = start();
  for (Letter a : w) s = next(s, a);
  return s;
}

std::map<int, std::vector<int>> TrackerMachine::report(int s) const {
  std::map<int, std::vector<int>> out;
  for (auto const& [b, p] : states_.at(s)) {
    auto const& st = p_.state(p);
    if (b.is_identity() && st.fresh) out[st.last].push_back(p);
  }
  return out;
}

}  // namespace autgog
