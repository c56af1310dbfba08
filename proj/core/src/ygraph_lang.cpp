// Compilation of Y-graphs to word acceptors.

#include <map>

#include "autgog/ygraph.hpp"

namespace autgog {

namespace {

Dfa widen(Dfa const& d, int n) {
  Dfa out(n, d.num_states());
  out.set_start(d.start());
  for (int q = 0; q < d.num_states(); ++q) {
    out.set_accept(q, d.is_accept(q));
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int r = d.next(q, a); r != kNoState) out.set_next(q, a, r);
  }
  return out;
}

Dfa diff(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kDiff)); }
Dfa meet(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kAnd)); }

Dfa single_letter(int n, Letter a) { return finite_language(n, {Word{a}}); }

Dfa edge_language(GraphOfGroups const& g, YGraph const& x, YEdge const& e) {
  auto const& v = x.vertices[e.from];
  return preimage(g, v.type, v.lang, e.values);
}

// L_v minus the edge languages and the empty word: final syllables that no
// midpoint state accepts.
Dfa leftover(GraphOfGroups const& g, YGraph const& x, int v) {
  std::vector<Dfa> parts{finite_language(g.num_letters(), {Word{}})};
  for (int i : x.out_edges(v)) parts.push_back(edge_language(g, x, x.edges[i]));
  return diff(x.vertices[v].lang, union_of(parts, g.num_letters()));
}

// Words of the vertex language at v whose value lies in d1(F_oe).
Dfa pinned(GraphOfGroups const& g, YGraph const& x, int v, int oe) {
  auto const& vx = x.vertices[v];
  if (oe == g.base_edge()) return empty_language(g.num_letters());
  return preimage(g, vx.type, vx.lang, terminal_image(g, oe));
}

}  // namespace

Alphabet visible_alphabet(GraphOfGroups const& g) {
  Alphabet a = g.alphabet();
  int base = a.size();
  for (int oe = 0; oe < g.base_edge(); ++oe) a.add("r_" + g.oriented_name(oe));
  for (int oe = 0; oe < g.base_edge(); ++oe) a.set_inverse(base + oe, base + g.reverse(oe));
  return a;
}

Letter visible_letter(GraphOfGroups const& g, int oe) {
  return g.is_tree(oe) ? g.num_letters() + oe : g.stable_letter(oe);
}

std::vector<Letter> tree_letters(GraphOfGroups const& g) {
  std::vector<Letter> out;
  for (int oe = 0; oe < g.base_edge(); ++oe)
    if (g.is_tree(oe)) out.push_back(g.num_letters() + oe);
  return out;
}

Dfa erase_tree_letters(GraphOfGroups const& g, Dfa const& visible) {
  std::vector<Letter> image(visible.num_letters(), kEpsilon);
  for (Letter a = 0; a < g.num_letters(); ++a) image[a] = a;
  return minimize(map_letters(visible, image, g.num_letters()));
}

Gfsa language_gfsa(GraphOfGroups const& g, YGraph const& x, int start_vertex) {
  int n = g.num_letters() + g.base_edge();
  Gfsa a;
  a.num_letters = n;
  for (auto const& v : x.vertices) a.add_state(v.lang.accepts(Word{}));
  a.starts = {start_vertex < 0 ? x.start : start_vertex};
  int end = -1;
  for (int v = 0; v < x.num_vertices(); ++v) {
    for (int i : x.out_edges(v)) {
      auto const& e = x.edges[i];
      int mid = a.add_state(true);
      a.add_edge(v, mid, widen(edge_language(g, x, e), n));
      a.add_edge(mid, e.to, single_letter(n, visible_letter(g, e.type)));
    }
    Dfa rest = leftover(g, x, v);
    if (is_empty(rest)) continue;
    if (end < 0) end = a.add_state(true);
    a.add_edge(v, end, widen(rest, n));
  }
  return a;
}

Dfa visible_language(GraphOfGroups const& g, YGraph const& x, int start_vertex) {
  int n = g.num_letters() + g.base_edge();
  Dfa d = minimize(determinize(expand_gfsa(language_gfsa(g, x, start_vertex))));
  // Prohibit s_E u s_E^-1 with u a syllable whose value lies in d1(F_E).
  std::vector<Word> bad;
  std::vector<Dfa> patterns;
  Dfa anything = all_words(n);
  for (int oe = 0; oe < g.base_edge(); ++oe) {
    std::vector<Dfa> parts;
    for (int v = 0; v < x.num_vertices(); ++v)
      if (x.vertices[v].type == g.target(oe)) parts.push_back(pinned(g, x, v, oe));
    Dfa u = minimize(union_of(parts, g.num_letters()));
    if (is_empty(u)) continue;
    Letter s = visible_letter(g, oe), s2 = visible_letter(g, g.reverse(oe));
    if (is_finite(u)) {
      for (auto const& w : enumerate_words(u, trim(u).num_states())) {
        Word p{s};
        p.insert(p.end(), w.begin(), w.end());
        p.push_back(s2);
        bad.push_back(std::move(p));
      }
    } else {
      Dfa p = concatenate(anything, single_letter(n, s));
      p = concatenate(p, widen(u, n));
      p = concatenate(p, single_letter(n, s2));
      patterns.push_back(minimize(concatenate(p, anything)));
    }
  }
  if (!bad.empty()) d = prohibit_subwords(d, bad);
  for (auto const& p : patterns) d = diff(d, p);
  return minimize(d);
}

Gfsa bx_gfsa(GraphOfGroups const& g, YGraph const& x) {
  int n = g.num_letters() + g.base_edge();
  int e0 = g.base_edge();
  Gfsa a;
  a.num_letters = n;
  std::map<std::pair<int, int>, int> node;
  std::vector<std::pair<int, int>> queue;
  auto get = [&](int v, int ein) {
    auto [it, fresh] = node.try_emplace({v, ein}, 0);
    if (fresh) {
      it->second = a.add_state(x.vertices[v].lang.accepts(Word{}));
      queue.emplace_back(v, ein);
    }
    return it->second;
  };
  a.starts = {get(x.start, e0)};
  int end = -1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [v, ein] = queue[qi];
    int here = node.at({v, ein});
    Dfa pin = pinned(g, x, v, ein);
    for (int i : x.out_edges(v)) {
      auto const& e = x.edges[i];
      Dfa le = edge_language(g, x, e);
      Dfa step = single_letter(n, visible_letter(g, e.type));
      Dfa free_part = diff(le, pin), pinned_part = meet(le, pin);
      if (!is_empty(free_part)) {
        int mid = a.add_state(true);
        a.add_edge(here, mid, widen(free_part, n));
        a.add_edge(mid, get(e.to, e.type), step);
      }
      if (!is_empty(pinned_part)) {
        int mid = a.add_state(true);
        a.add_edge(here, mid, widen(pinned_part, n));
        if (ein == e0 || e.type != g.reverse(ein)) a.add_edge(mid, get(e.to, e.type), step);
      }
    }
    Dfa rest = leftover(g, x, v);
    if (is_empty(rest)) continue;
    if (end < 0) end = a.add_state(true);
    a.add_edge(here, end, widen(rest, n));
  }
  return a;
}

Dfa visible_language_bx(GraphOfGroups const& g, YGraph const& x) {
  return minimize(determinize(expand_gfsa(bx_gfsa(g, x))));
}

StructureHandle language_dfa(GraphOfGroups const& g, YGraph const& x) {
  StructureHandle h;
  h.graph = &g;
  h.origin = std::make_shared<YGraph const>(x);
  h.visible = visible_language(g, x);
  h.dfa = erase_tree_letters(g, h.visible);
  return h;
}

Dfa suffix_language(GraphOfGroups const& g, YGraph const& x, int v) {
  return erase_tree_letters(g, visible_language(g, x, v));
}

namespace {

// Words of L_v representing the chosen representatives of the right cosets
// of d0(F_oe): per coset, the element whose L_v word is shortlex least.
Dfa coset_reps(GraphOfGroups const& g, YGraph const& x, int v, int oe) {
  auto const& vx = x.vertices[v];
  if (g.edge_order(oe) == 1) return vx.lang;
  std::map<Word, Word> word_of;  // canonical value -> its word in L_v
  for (auto const& w : enumerate_words(vx.lang, trim(vx.lang).num_states()))
    word_of.emplace(g.vertex_evaluate(vx.type, w), w);
  std::vector<Word> reps;
  for (auto const& [value, w] : word_of) {
    bool least = true;
    for (int f = 0; f < g.edge_order(oe) && least; ++f) {
      Word other = g.vertex_multiply(vx.type, value, g.d0(oe, f));
      if (shortlex_less(word_of.at(other), w)) least = false;
    }
    if (least) reps.push_back(value);
  }
  return preimage(g, vx.type, vx.lang, value_set(g, vx.type, reps));
}

void require_unique(GraphOfGroups const& g, YVertex const& v) {
  Dfa t = trim(v.lang);
  if (g.vertex_finite(v.type)) {
    if (!is_finite(t) ||
        static_cast<int>(enumerate_words(t, t.num_states()).size()) !=
            g.vertex(v.type).group.order())
      throw Error("synchronize needs a bijective structure at " + v.name);
    return;
  }
  for (int q = 0; q < t.num_states(); ++q)
    if (t.next(q, 0) != kNoState)
      throw Error("synchronize needs a free structure without e letters at " + v.name);
}

}  // namespace

StructureHandle synchronize(GraphOfGroups const& g, YGraph const& x) {
  for (auto const& v : x.vertices) require_unique(g, v);
  int n = g.num_letters() + g.base_edge();
  int e0 = g.base_edge();
  Gfsa a;
  a.num_letters = n;
  std::map<std::pair<int, int>, int> node;
  std::vector<std::pair<int, int>> queue;
  auto get = [&](int v, int ein) {
    auto [it, fresh] = node.try_emplace({v, ein}, 0);
    if (fresh) {
      it->second = a.add_state(false);
      queue.emplace_back(v, ein);
    }
    return it->second;
  };
  a.starts = {get(x.start, e0)};
  int end = a.add_state(true);
  std::map<std::pair<int, int>, Dfa> reps;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    auto [v, ein] = queue[qi];
    int here = node.at({v, ein});
    Dfa pin = pinned(g, x, v, ein);
    for (int i : x.out_edges(v)) {
      auto const& e = x.edges[i];
      auto it = reps.find({v, e.type});
      if (it == reps.end()) it = reps.emplace(std::pair{v, e.type}, coset_reps(g, x, v, e.type)).first;
      Dfa syllable = meet(edge_language(g, x, e), it->second);
      if (ein != e0 && e.type == g.reverse(ein)) syllable = diff(syllable, pin);
      if (is_empty(syllable)) continue;
      int mid = a.add_state(false);
      a.add_edge(here, mid, widen(syllable, n));
      a.add_edge(mid, get(e.to, e.type), single_letter(n, visible_letter(g, e.type)));
    }
    Dfa last = x.vertices[v].lang;
    if (ein != e0 && g.is_tree(ein)) last = diff(last, pin);
    if (!is_empty(last)) a.add_edge(here, end, widen(last, n));
  }
  StructureHandle h;
  h.graph = &g;
  h.origin = std::make_shared<YGraph const>(x);
  h.visible = minimize(determinize(expand_gfsa(a)));
  h.dfa = erase_tree_letters(g, h.visible);
  h.unique = true;
  return h;
}

}  // namespace autgog
