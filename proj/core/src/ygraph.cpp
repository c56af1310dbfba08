#include "autgog/ygraph.hpp"

#include "ygraph_detail.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace autgog {

namespace {

// Element bookkeeping for a finite vertex group over the convenient alphabet.
struct FiniteView {
  FiniteGroupTable const* table = nullptr;
  std::vector<int> elem;   // global letter -> element, -1 outside the group
  std::vector<Word> word;  // element -> canonical global word
};

FiniteView finite_view(GraphOfGroups const& g, int v) {
  auto const& grp = g.vertex(v).group;
  FiniteView f;
  f.table = &grp.table();
  f.elem.assign(g.num_letters(), -1);
  f.elem[0] = grp.table().identity();
  for (int x = 0; x < grp.order(); ++x) f.word.push_back(g.to_global(v, grp.word_of(x)));
  for (Letter a = 1; a < g.num_letters(); ++a)
    if (g.in_vertex(v, a)) f.elem[a] = grp.element_of(grp.evaluate(Word{g.to_local(v, a)}));
  return f;
}

// Adds e self-loops everywhere: words of s with the identity letter interspersed.
Dfa e_interleave(Dfa s) {
  for (int q = 0; q < s.num_states(); ++q) s.set_next(q, 0, q);
  return s;
}

Dfa diff(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kDiff)); }
Dfa meet(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kAnd)); }
Dfa join(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kOr)); }

std::string describe(GraphOfGroups const& g, Dfa const& s) {
  if (!is_finite(s)) return "<infinite set>";
  std::string out = "{";
  bool first = true;
  for (auto const& w : enumerate_words(s, trim(s).num_states())) {
    if (!first) out += ",";
    first = false;
    out += w.empty() ? std::string("1") : g.alphabet().format(w);
  }
  return out + "}";
}

std::string word_text(GraphOfGroups const& g, Word const& w) {
  return w.empty() ? std::string("1") : g.alphabet().format(w);
}

Word drop_e(Word w) {
  std::erase(w, Letter{0});
  return w;
}

}  // namespace

namespace detail {

YGraph prune(YGraph x) {
  std::vector<int> index(x.num_vertices(), -1);
  std::vector<int> order{x.start};
  index[x.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto const& e : x.edges)
      if (e.from == order[i] && index[e.to] < 0) {
        index[e.to] = static_cast<int>(order.size());
        order.push_back(e.to);
      }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
  YGraph out;
  for (int v : order) out.vertices.push_back(std::move(x.vertices[v]));
  out.start = index[x.start];
  for (auto& e : x.edges)
    if (index[e.from] >= 0) {
      e.from = index[e.from];
      e.to = index[e.to];
      out.edges.push_back(std::move(e));
    }
  for (auto const& [key, perm] : x.actions) {
    if (index[key.vertex] < 0) continue;
    std::vector<int> p(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      int image = perm[order[i]];
      p[i] = index[image] >= 0 ? index[image] : static_cast<int>(i);
    }
    out.actions[{index[key.vertex], key.edge_type, key.f}] = std::move(p);
  }
  return out;
}

}  // namespace detail

namespace {

using detail::prune;

}  // namespace

// ---------------------------------------------------------------- value sets

Dfa value_set(GraphOfGroups const& g, int v, std::vector<Word> const& canonical) {
  for (auto const& w : canonical)
    if (!g.vertex_canonical(v, w))
      throw Error("value " + word_text(g, w) + " is not canonical in " + g.vertex(v).name);
  return minimize(finite_language(g.num_letters(), canonical));
}

Dfa all_values(GraphOfGroups const& g, int v) { return minimize(g.vertex_acceptor(v)); }

Dfa initial_image(GraphOfGroups const& g, int oe) {
  if (g.source(oe) < 0) throw Error("the base edge has no initial vertex");
  std::vector<Word> words;
  for (int f = 0; f < g.edge_order(oe); ++f) words.push_back(g.d0(oe, f));
  return value_set(g, g.source(oe), words);
}

Dfa terminal_image(GraphOfGroups const& g, int oe) {
  std::vector<Word> words;
  for (int f = 0; f < g.edge_order(oe); ++f) words.push_back(g.d1(oe, f));
  return value_set(g, g.target(oe), words);
}

std::vector<Word> value_words(GraphOfGroups const&, int, Dfa const& s) {
  if (!is_finite(s)) throw Error("value set is infinite");
  return enumerate_words(s, trim(s).num_states());
}

bool contains_value(GraphOfGroups const&, int, Dfa const& s, Word const& canonical) {
  return s.accepts(canonical);
}

Dfa translate_values(GraphOfGroups const& g, int v, Word const& left, Dfa const& s,
                     Word const& right) {
  if (left.empty() && right.empty()) return minimize(s);
  if (!is_finite(s)) throw Error("cannot translate an infinite value set");
  std::vector<Word> out;
  for (auto const& w : value_words(g, v, s))
    out.push_back(g.vertex_multiply(v, g.vertex_multiply(v, left, w), right));
  return value_set(g, v, out);
}

Dfa image(GraphOfGroups const& g, int v, Dfa const& lang) {
  if (!g.vertex_finite(v)) return minimize(erase_letters(lang, {0}));
  auto view = finite_view(g, v);
  int order = view.table->order();
  std::vector<char> seen(static_cast<std::size_t>(lang.num_states()) * order, 0);
  std::set<int> values;
  std::deque<std::pair<int, int>> queue{{lang.start(), view.table->identity()}};
  seen[static_cast<std::size_t>(lang.start()) * order + view.table->identity()] = 1;
  while (!queue.empty()) {
    auto [q, x] = queue.front();
    queue.pop_front();
    if (lang.is_accept(q)) values.insert(x);
    for (Letter a = 0; a < lang.num_letters(); ++a) {
      int r = lang.next(q, a);
      if (r == kNoState || view.elem[a] < 0) continue;
      int y = view.table->mul(x, view.elem[a]);
      auto& mark = seen[static_cast<std::size_t>(r) * order + y];
      if (!mark) {
        mark = 1;
        queue.emplace_back(r, y);
      }
    }
  }
  std::vector<Word> words;
  for (int x : values) words.push_back(view.word[x]);
  return value_set(g, v, words);
}

Dfa preimage(GraphOfGroups const& g, int v, Dfa const& lang, Dfa const& s) {
  if (!g.vertex_finite(v)) return meet(lang, e_interleave(s));
  auto view = finite_view(g, v);
  int order = view.table->order();
  Dfa out(lang.num_letters(), 1);
  std::vector<int> id(static_cast<std::size_t>(lang.num_states()) * order, kNoState);
  std::deque<std::pair<int, int>> queue;
  bool fresh_start = true;  // state 0 is allocated but not yet used
  auto visit = [&](int q, int x) {
    auto& slot = id[static_cast<std::size_t>(q) * order + x];
    if (slot == kNoState) {
      bool accept = lang.is_accept(q) && s.accepts(view.word[x]);
      if (fresh_start) {
        slot = 0;
        out.set_accept(0, accept);
        fresh_start = false;
      } else {
        slot = out.add_state(accept);
      }
      queue.emplace_back(q, x);
    }
    return slot;
  };
  out.set_start(visit(lang.start(), view.table->identity()));
  while (!queue.empty()) {
    auto [q, x] = queue.front();
    queue.pop_front();
    int from = id[static_cast<std::size_t>(q) * order + x];
    for (Letter a = 0; a < lang.num_letters(); ++a) {
      int r = lang.next(q, a);
      if (r == kNoState || view.elem[a] < 0) continue;
      out.set_next(from, a, visit(r, view.table->mul(x, view.elem[a])));
    }
  }
  return minimize(out);
}

Dfa prefix_language(Word const& w, Dfa const& lang) {
  return minimize(concatenate(finite_language(lang.num_letters(), {drop_e(w)}), lang));
}

void check_structure(GraphOfGroups const& g, int v, Dfa const& lang) {
  if (lang.num_letters() != g.num_letters()) throw Error("structure alphabet mismatch");
  Dfa t = trim(lang);
  for (int q = 0; q < t.num_states(); ++q)
    for (Letter a = 1; a < t.num_letters(); ++a)
      if (t.next(q, a) != kNoState && !g.in_vertex(v, a))
        throw Error("letter " + g.alphabet().name(a) + " is not in " + g.vertex(v).name);
  Dfa values = image(g, v, lang);
  if (!g.vertex_finite(v) && !subset_of(values, all_values(g, v)))
    throw Error("free structure has words that are not freely reduced");
  if (auto w = difference_witness(all_values(g, v), values))
    throw Error("element " + word_text(g, *w) + " is not represented");
}

TwoTapeDfa global_multiplier(GraphOfGroups const& g, int v, Letter a) {
  int n = g.num_letters();
  if (a != 0 && !g.in_vertex(v, a)) throw Error("multiplier letter outside the vertex group");
  if (g.vertex_finite(v)) {
    TwoTapeDfa probe(n, Dfa(TwoTapeDfa::pair_letters(n)));
    std::vector<Word> pairs;
    for (auto const& u : g.vertex_elements(v))
      pairs.push_back(probe.padded(u, g.vertex_evaluate(v, [&] {
        Word ua = u;
        ua.push_back(a);
        return ua;
      }())));
    return TwoTapeDfa(n, minimize(finite_language(TwoTapeDfa::pair_letters(n), pairs)));
  }
  auto const& grp = g.vertex(v).group;
  TwoTapeDfa local = grp.multiplier(g.to_local(v, a));
  int base = local.base_letters();
  auto lift = [&](Letter l) { return l == base ? n : g.to_global(v, l); };
  std::vector<Letter> image(local.dfa().num_letters());
  for (Letter p = 0; p < local.dfa().num_letters(); ++p)
    image[p] = lift(local.first(p)) * (n + 1) + lift(local.second(p));
  return TwoTapeDfa(n, minimize(map_letters(local.dfa(), image, TwoTapeDfa::pair_letters(n))));
}

std::vector<Dfa> shortlex_coset_partition(GraphOfGroups const& g, int oe) {
  int v = g.source(oe);
  if (v < 0) throw Error("the base edge has no coset partition");
  int n = g.num_letters();
  if (g.edge_order(oe) == 1) return {all_values(g, v)};
  std::vector<Dfa> parts;
  for (int f = 0; f < g.edge_order(oe); ++f) {
    Word w = g.d0(oe, f);
    parts.push_back(global_multiplier(g, v, w.empty() ? 0 : w.at(0)).dfa());
  }
  TwoTapeDfa relation(n, minimize(union_of(parts, TwoTapeDfa::pair_letters(n))));
  Dfa first = shortlex_filter(all_values(g, v), relation);
  std::vector<Dfa> cells;
  for (int f = 0; f < g.edge_order(oe); ++f)
    cells.push_back(translate_values(g, v, {}, first, g.d0(oe, f)));
  return cells;
}

// ---------------------------------------------------------------- Y-graphs

std::vector<int> YGraph::out_edges(int v) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].from == v) out.push_back(i);
  return out;
}

std::vector<int> YGraph::in_edges(int v) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].to == v) out.push_back(i);
  return out;
}

std::vector<int> YGraph::permutation(int v, int edge_type, int f) const {
  if (auto it = actions.find({v, edge_type, f}); it != actions.end()) return it->second;
  std::vector<int> id(vertices.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return id;
}

int YGraph::find_vertex(std::string const& name) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i].name == name) return i;
  return -1;
}

namespace {

// The union required of the type-oe labels at vertex v.
Dfa required_union(GraphOfGroups const& g, YGraph const& x, int v, int oe) {
  Dfa all = all_values(g, x.vertices[v].type);
  if (v == x.start) return all;
  auto in = x.in_edges(v);
  if (in.empty()) return all;
  for (int i : in)
    if (x.edges[i].type != g.reverse(oe)) return all;
  return diff(all, initial_image(g, oe));
}

}  // namespace

std::vector<Violation> validate_ygraph(GraphOfGroups const& g, YGraph const& x) {
  std::vector<Violation> out;
  auto bad = [&](std::string axiom, std::string detail) {
    out.push_back({std::move(axiom), std::move(detail)});
  };
  int nv = x.num_vertices();
  if (nv == 0 || x.start < 0 || x.start >= nv) {
    bad("start", "start vertex out of range");
    return out;
  }
  for (auto const& v : x.vertices) {
    if (v.type < 0 || v.type >= g.num_vertices()) {
      bad("vertex-type", v.name + " has no vertex type");
      continue;
    }
    try {
      check_structure(g, v.type, v.lang);
    } catch (Error const& e) {
      bad("vertex-structure", v.name + ": " + e.what());
    }
  }
  if (!out.empty()) return out;
  if (x.vertices[x.start].type != g.base())
    bad("start", "start vertex is not of the base type");
  for (auto const& e : x.edges) {
    if (e.from < 0 || e.from >= nv || e.to < 0 || e.to >= nv) {
      bad("edge-endpoints", e.name + " has endpoints out of range");
      continue;
    }
    if (e.type < 0 || e.type >= g.num_oriented() - 1) {
      bad("edge-type", e.name + " has no edge type");
      continue;
    }
    auto const& a = x.vertices[e.from];
    auto const& b = x.vertices[e.to];
    if (g.source(e.type) != a.type || g.target(e.type) != b.type) {
      bad("edge-type", e.name + " of type " + g.oriented_name(e.type) + " joins " + a.name +
                           " to " + b.name);
      continue;
    }
    if (is_empty(e.values)) bad("edge-label", e.name + " has an empty label");
    if (auto w = difference_witness(e.values, all_values(g, a.type)))
      bad("edge-label", e.name + " contains the non-canonical word " + word_text(g, *w));
  }
  if (!out.empty()) return out;

  std::vector<char> reached(nv, 0);
  std::vector<int> stack{x.start};
  reached[x.start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int i : x.out_edges(v))
      if (!reached[x.edges[i].to]) {
        reached[x.edges[i].to] = 1;
        stack.push_back(x.edges[i].to);
      }
  }
  for (int v = 0; v < nv; ++v)
    if (!reached[v]) bad("reachable", x.vertices[v].name + " is not reachable from the start");

  // Labels of each type partition the vertex group (minus the pinch set).
  for (int v = 0; v < nv; ++v) {
    int type = x.vertices[v].type;
    for (int oe : g.out_edges(type)) {
      std::vector<int> group;
      for (int i : x.out_edges(v))
        if (x.edges[i].type == oe) group.push_back(i);
      Dfa seen = empty_language(g.num_letters());
      for (int i : group) {
        Dfa overlap = meet(seen, x.edges[i].values);
        if (auto w = difference_witness(overlap, empty_language(g.num_letters())))
          bad("partition", x.vertices[v].name + ": labels of type " + g.oriented_name(oe) +
                               " overlap at " + word_text(g, *w));
        seen = join(seen, x.edges[i].values);
      }
      Dfa want = required_union(g, x, v, oe);
      if (auto w = difference_witness(want, seen))
        bad("partition", x.vertices[v].name + ": no " + g.oriented_name(oe) + " edge for " +
                             word_text(g, *w));
      if (auto w = difference_witness(seen, want))
        bad("partition", x.vertices[v].name + ": " + g.oriented_name(oe) +
                             " edge labels contain the pinch value " + word_text(g, *w));
    }
  }

  for (auto const& [key, perm] : x.actions) {
    bool ok = key.vertex >= 0 && key.vertex < nv && key.edge_type >= 0 &&
              key.edge_type < g.num_oriented() - 1 &&
              g.source(key.edge_type) == x.vertices[key.vertex].type && key.f >= 0 &&
              key.f < g.edge_order(key.edge_type) && static_cast<int>(perm.size()) == nv;
    if (ok) {
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < nv; ++i) ok = ok && sorted[i] == i;
    }
    if (!ok) bad("action", "malformed action entry at vertex " + std::to_string(key.vertex));
  }
  if (!out.empty()) return out;

  for (int v = 0; v < nv; ++v) {
    int type = x.vertices[v].type;
    for (int oe : g.out_edges(type)) {
      auto const& grp = g.edge_group(oe);
      if (grp.order() == 1) continue;
      std::set<int> moved_ok;
      for (int i : x.out_edges(v))
        if (x.edges[i].type == oe) moved_ok.insert(x.edges[i].to);
      std::string where = x.vertices[v].name + " " + g.oriented_name(oe);
      for (int f = 0; f < grp.order(); ++f) {
        auto p = x.permutation(v, oe, f);
        for (int u = 0; u < nv; ++u)
          if (p[u] != u && !moved_ok.contains(u))
            bad("action-support", where + " f=" + grp.names[f] + " moves " + x.vertices[u].name);
        for (int f2 = 0; f2 < grp.order(); ++f2) {
          auto p2 = x.permutation(v, oe, f2);
          auto p12 = x.permutation(v, oe, grp.mul(f, f2));
          for (int u = 0; u < nv; ++u)
            if (p[p2[u]] != p12[u]) {
              bad("action-law", where + " at f=" + grp.names[f] + ", " + grp.names[f2]);
              u = nv;
            }
        }
        if (f == grp.identity()) continue;
        for (int m : moved_ok) {
          auto const& a = x.vertices[m];
          auto const& b = x.vertices[p[m]];
          if (a.type != b.type ||
              (!g.vertex_finite(a.type) && !equivalent(a.lang, b.lang)))
            bad("vertex-equivariance", where + " f=" + grp.names[f] + " maps " + a.name +
                                           " to " + b.name);
        }
        std::vector<int> sources{v};
        for (int m : moved_ok)
          if (m != v) sources.push_back(m);
        for (int a : sources) {
          bool in_m = moved_ok.contains(a);
          for (int i : x.out_edges(a)) {
            auto const& e = x.edges[i];
            Word left = in_m ? g.d1(oe, f) : Word{};
            Word right = (a == v && e.type == oe) ? g.d0(oe, grp.inverse(f)) : Word{};
            Dfa want = translate_values(g, x.vertices[a].type, left, e.values, right);
            bool found = false;
            for (int j : x.out_edges(p[a])) {
              auto const& e2 = x.edges[j];
              if (e2.to == p[e.to] && e2.type == e.type && equivalent(e2.values, want)) {
                found = true;
                break;
              }
            }
            if (!found)
              bad("edge-equivariance", where + " f=" + grp.names[f] + ": no image of " +
                                           e.name + " with label " + describe(g, want));
          }
        }
      }
    }
  }
  return out;
}

VertexStructures VertexStructures::standard(GraphOfGroups const& g) {
  VertexStructures s;
  for (int v = 0; v < g.num_vertices(); ++v) {
    s.langs.push_back(all_values(g, v));
    s.labels.push_back(g.vertex(v).group.class_label().empty() ? g.vertex(v).group_name
                                                               : g.vertex(v).group.class_label());
  }
  return s;
}

namespace {

VertexStructures structures_or_standard(GraphOfGroups const& g,
                                        std::optional<VertexStructures> const& s) {
  auto out = s ? *s : VertexStructures::standard(g);
  if (static_cast<int>(out.langs.size()) != g.num_vertices() ||
      static_cast<int>(out.labels.size()) != g.num_vertices())
    throw Error("need one structure per vertex");
  for (int v = 0; v < g.num_vertices(); ++v) check_structure(g, v, out.langs[v]);
  return out;
}

}  // namespace

YGraph default_ygraph(GraphOfGroups const& g, std::optional<VertexStructures> const& s_opt) {
  auto s = structures_or_standard(g, s_opt);
  int e0 = g.base_edge();
  std::vector<int> types{e0};
  for (int oe = 0; oe < e0; ++oe) types.push_back(oe);
  std::vector<int> first(g.num_oriented(), 0);
  YGraph x;
  for (int oe : types) {
    first[oe] = x.num_vertices();
    auto const& grp = g.edge_group(oe);
    for (int k = 0; k < grp.order(); ++k) {
      int type = g.target(oe);
      Word prefix = oe == e0 ? Word{} : g.d1(oe, k);
      YVertex v;
      v.type = type;
      v.name = oe == e0 ? "E0" : g.oriented_name(oe) + ":" + grp.names[k];
      v.label = prefix.empty() ? s.labels[type] : word_text(g, prefix) + "*" + s.labels[type];
      v.lang = prefix_language(prefix, s.langs[type]);
      x.vertices.push_back(std::move(v));
    }
  }
  x.start = first[e0];

  std::vector<std::vector<Dfa>> cells(e0);
  for (int oe = 0; oe < e0; ++oe) cells[oe] = shortlex_coset_partition(g, oe);
  for (int oe : types) {
    auto const& grp = g.edge_group(oe);
    int type = g.target(oe);
    for (int k = 0; k < grp.order(); ++k) {
      int from = first[oe] + k;
      Word prefix = oe == e0 ? Word{} : g.d1(oe, k);
      for (int next : g.out_edges(type)) {
        auto const& ngrp = g.edge_group(next);
        Dfa s1 = cells[next][ngrp.identity()];
        for (int j = 0; j < ngrp.order(); ++j) {
          Dfa label = translate_values(g, type, prefix, s1, g.d0(next, ngrp.inverse(j)));
          if (oe != e0 && next == g.reverse(oe)) label = diff(label, terminal_image(g, oe));
          if (is_empty(label)) continue;
          x.edges.push_back({"e" + std::to_string(x.edges.size()), from, first[next] + j, next,
                             std::move(label)});
        }
        for (int f = 0; f < ngrp.order(); ++f) {
          if (f == ngrp.identity()) continue;
          auto perm = x.permutation(from, next, f);
          for (int j = 0; j < ngrp.order(); ++j)
            perm[first[next] + j] = first[next] + ngrp.mul(f, j);
          x.actions[{from, next, f}] = std::move(perm);
        }
      }
    }
  }
  return prune(std::move(x));
}

YGraph biautomatic_ygraph(GraphOfGroups const& g, std::optional<VertexStructures> const& s_opt) {
  auto s = structures_or_standard(g, s_opt);
  YGraph x;
  for (int v = 0; v < g.num_vertices(); ++v)
    x.vertices.push_back({g.vertex(v).name, v, s.labels[v], s.langs[v]});
  x.start = g.base();
  for (int oe = 0; oe < g.base_edge(); ++oe) {
    int v = g.source(oe);
    Dfa label = all_values(g, v);
    if (v != g.base()) {
      bool pinned = true;
      for (int in = 0; in < g.base_edge(); ++in)
        if (g.target(in) == v && in != g.reverse(oe)) pinned = false;
      if (pinned) label = diff(label, initial_image(g, oe));
    }
    if (is_empty(label)) continue;
    x.edges.push_back({"e" + std::to_string(x.edges.size()), v, g.target(oe), oe, std::move(label)});
  }
  return prune(std::move(x));
}

}  // namespace autgog
