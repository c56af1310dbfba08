// Structure moves on Y-graphs: equivariant vertex identification, the
// single-element split that prescribes a new structure on one conjugate, and
// the X-lift of a normal form path.

#include <algorithm>
#include <numeric>
#include <set>

#include "autgog/deploy.hpp"
#include "autgog/ygraph.hpp"
#include "ygraph_detail.hpp"

namespace autgog {

namespace {

Dfa join(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kOr)); }
Dfa meet(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kAnd)); }
Dfa diff(Dfa const& x, Dfa const& y) { return minimize(product_boolean(x, y, BoolOp::kDiff)); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Values an out-edge family of type oe must cover at a vertex of X.
Dfa required_cover(GraphOfGroups const& g, YGraph const& x, std::vector<int> const& members,
                   int oe) {
  int type = g.source(oe);
  bool full = false;
  for (int m : members) {
    if (m == x.start) full = true;
    for (int i : x.in_edges(m))
      if (x.edges[i].type != g.reverse(oe)) full = true;
  }
  Dfa all = all_values(g, type);
  return full ? all : diff(all, initial_image(g, oe));
}

}  // namespace

CollapseResult collapse(GraphOfGroups const& g, YGraph const& x, int v, int v2, int K,
                        int maxlen) {
  CollapseResult r;
  int nv = x.num_vertices();
  if (v < 0 || v2 < 0 || v >= nv || v2 >= nv) throw Error("collapse: vertex out of range");
  UnionFind uf(nv);
  uf.unite(v, v2);
  // Closure: identified vertices have identified images under every action,
  // and when the action maps a vertex into its own class the merged labels
  // must be stable under d1(f), which identifies the targets of overlapping
  // translated labels.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto const& [key, perm] : x.actions) {
      for (int a = 0; a < nv; ++a)
        if (uf.find(a) != a) changed = uf.unite(perm[a], perm[uf.find(a)]) || changed;
      Word left = g.d1(key.edge_type, key.f);
      for (int m = 0; m < nv; ++m) {
        if (perm[m] == m || uf.find(perm[m]) != uf.find(m)) continue;
        for (int m2 = 0; m2 < nv; ++m2) {
          if (uf.find(m2) != uf.find(m)) continue;
          int type = x.vertices[m2].type;
          for (int i : x.out_edges(m2)) {
            Dfa moved = translate_values(g, type, left, x.edges[i].values, Word{});
            for (int j : x.out_edges(m2))
              if (x.edges[j].type == x.edges[i].type &&
                  !is_empty(meet(moved, x.edges[j].values)))
                changed = uf.unite(perm[x.edges[i].to], x.edges[j].to) || changed;
          }
        }
      }
    }
  }
  std::map<int, std::vector<int>> by_root;
  for (int a = 0; a < nv; ++a) by_root[uf.find(a)].push_back(a);
  std::vector<int> cls(nv);
  for (auto const& [root, members] : by_root) {
    for (int m : members) cls[m] = static_cast<int>(r.classes.size());
    r.classes.push_back(members);
  }
  auto fail = [&](std::string reason) {
    r.ok = false;
    r.reason = std::move(reason);
    return r;
  };

  for (auto const& members : r.classes)
    for (int m : members)
      if (x.vertices[m].type != x.vertices[members[0]].type)
        return fail("identification forces " + x.vertices[members[0]].name + " ~ " +
                    x.vertices[m].name + " of different types");

  // The relation is not transitive, so every identified pair is tested.
  for (auto const& members : r.classes)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        auto rep = equivalent_upto(g, suffix_language(g, x, members[i]),
                                   suffix_language(g, x, members[j]), maxlen, K);
        if (!rep.ok) {
          r.witness1 = rep.witness1;
          r.witness2 = rep.witness2;
          return fail("suffix languages of " + x.vertices[members[i]].name + " and " +
                      x.vertices[members[j]].name + " do not fellow travel at K=" +
                      std::to_string(K));
        }
      }

  // The start represents its class; the final validation catches any
  // choice that breaks equivariance.
  int nc = static_cast<int>(r.classes.size());
  std::vector<int> rep(nc);
  for (int c = 0; c < nc; ++c) rep[c] = cls[x.start] == c ? x.start : r.classes[c][0];

  YGraph out;
  for (int c = 0; c < nc; ++c) {
    YVertex vx = x.vertices[rep[c]];
    if (r.classes[c].size() > 1)
      for (int m : r.classes[c])
        if (m != rep[c]) vx.name += "+" + x.vertices[m].name;
    out.vertices.push_back(std::move(vx));
  }
  out.start = cls[x.start];
  for (int c = 0; c < nc; ++c) {
    int type = x.vertices[rep[c]].type;
    for (int oe : g.out_edges(type)) {
      Dfa need = required_cover(g, x, r.classes[c], oe);
      std::vector<int> order{rep[c]};
      for (int m : r.classes[c])
        if (m != rep[c]) order.push_back(m);
      int chosen = -1;
      for (int m : order) {
        Dfa cover = empty_language(g.num_letters());
        for (int i : x.out_edges(m))
          if (x.edges[i].type == oe) cover = join(cover, x.edges[i].values);
        if (subset_of(need, cover)) {
          chosen = m;
          break;
        }
      }
      if (chosen < 0)
        return fail("no member of " + out.vertices[c].name + " covers the " +
                    g.oriented_name(oe) + " edges");
      std::map<int, Dfa> merged;  // target class -> label
      for (int i : x.out_edges(chosen)) {
        auto const& e = x.edges[i];
        if (e.type != oe) continue;
        Dfa label = meet(e.values, need);
        if (is_empty(label)) continue;
        auto [it, fresh] = merged.try_emplace(cls[e.to], label);
        if (!fresh) it->second = join(it->second, label);
      }
      for (auto& [to, label] : merged)
        out.edges.push_back({"e" + std::to_string(out.edges.size()), c, to, oe, std::move(label)});
      for (auto const& [key, perm] : x.actions) {
        if (key.vertex != chosen || key.edge_type != oe) continue;
        std::vector<int> p(nc);
        for (int d = 0; d < nc; ++d) p[d] = cls[perm[r.classes[d][0]]];
        out.actions[{c, oe, key.f}] = std::move(p);
      }
    }
  }
  out = detail::prune(std::move(out));
  if (auto v = validate_ygraph(g, out); !v.empty())
    return fail("collapsed graph is invalid: " + v[0].axiom + ": " + v[0].detail);
  r.ok = true;
  r.graph = std::move(out);
  return r;
}

std::vector<int> lift_path(GraphOfGroups const& g, YGraph const& x, NormalForm const& h) {
  std::vector<int> out;
  int cur = x.start;
  for (int i = 0; i < h.length(); ++i) {
    int found = -1;
    for (int e : x.out_edges(cur))
      if (x.edges[e].type == h.edges[i] && x.edges[e].values.accepts(h.syllables[i])) {
        found = e;
        break;
      }
    if (found < 0)
      throw Error("no X-lift of " + g.format(h) + " at syllable " + std::to_string(i));
    out.push_back(found);
    cur = x.edges[found].to;
  }
  return out;
}

YGraph split_for_element(GraphOfGroups const& g, YGraph const& x, Word const& u, int oe,
                         std::string const& label, Dfa const& lang) {
  if (oe < 0 || oe >= g.base_edge()) throw Error("split needs an edge of Y");
  int type = g.target(oe);
  check_structure(g, type, lang);
  NormalForm h = g.path_form(g.normal_form(u), type);
  if (h.edges.empty() || h.edges.back() != oe || g.d1_preimage(oe, h.last()) < 0)
    throw Error("the value of " + g.alphabet().format(u) + " is not in G_" + g.oriented_name(oe));
  auto path = lift_path(g, x, h);
  std::set<int> visited{x.start};
  for (int e : path)
    if (!visited.insert(x.edges[e].to).second)
      throw Error("the X-lift of " + g.alphabet().format(u) + " is not embedded");

  int w = x.edges[path.back()].from;
  Word s = h.syllables[h.length() - 1];
  int src = g.source(oe);
  auto const& grp = g.edge_group(oe);
  int nv = x.num_vertices();
  YGraph out = x;
  // Vertex n_j carries s d0(j)^-1, so the action of f at w sends n_j to n_{fj}.
  std::vector<Word> values;
  for (int j = 0; j < grp.order(); ++j)
    values.push_back(g.vertex_multiply(src, s, g.d0(oe, grp.inverse(j))));
  int old_target = -1;
  for (int i : x.out_edges(w))
    if (x.edges[i].type == oe && x.edges[i].values.accepts(s)) old_target = x.edges[i].to;
  for (int j = 0; j < grp.order(); ++j) {
    Word prefix = j == grp.identity() ? Word{} : g.d1(oe, j);
    YVertex vx;
    vx.type = type;
    vx.name = "split" + std::to_string(nv) + ":" + grp.names[j];
    vx.label = prefix.empty() ? label : g.alphabet().format(prefix) + "*" + label;
    vx.lang = prefix_language(prefix, lang);
    out.vertices.push_back(std::move(vx));
  }
  for (auto& [key, perm] : out.actions)
    for (int j = 0; j < grp.order(); ++j) perm.push_back(nv + j);

  // The element's orbit at w and at the images of w under its parent's action.
  std::vector<std::pair<int, Word>> sources{{w, Word{}}};
  for (auto const& [key, perm] : x.actions)
    if (perm[w] != w) sources.emplace_back(perm[w], g.d1(key.edge_type, key.f));
  for (auto const& [a, left] : sources)
    for (int j = 0; j < grp.order(); ++j) {
      Word value = g.vertex_multiply(src, left, values[j]);
      Dfa one = value_set(g, src, {value});
      for (auto& e : out.edges)
        if (e.from == a && e.type == oe && e.values.accepts(value)) e.values = diff(e.values, one);
      out.edges.push_back({"e" + std::to_string(out.edges.size()), a, nv + j, oe, one});
    }
  std::erase_if(out.edges, [](YEdge const& e) { return is_empty(e.values); });
  for (auto const& [a, left] : sources)
    for (int j = 0; j < grp.order(); ++j) {
      if (j == grp.identity()) continue;
      auto perm = out.permutation(a, oe, j);
      for (int k = 0; k < grp.order(); ++k) perm[nv + k] = nv + grp.mul(j, k);
      out.actions[{a, oe, j}] = std::move(perm);
    }

  // n_j copies the old target's out-edges, left translated by d1(j); it is
  // entered only by oe, so pinned values are dropped from the reverse edges.
  Dfa pinned = terminal_image(g, oe);
  for (int j = 0; j < grp.order(); ++j) {
    Word left = j == grp.identity() ? Word{} : g.d1(oe, j);
    for (int i : x.out_edges(old_target)) {
      auto const& e = x.edges[i];
      Dfa labelled = translate_values(g, type, left, e.values, Word{});
      if (e.type == g.reverse(oe)) labelled = diff(labelled, pinned);
      if (is_empty(labelled)) continue;
      out.edges.push_back(
          {"e" + std::to_string(out.edges.size()), nv + j, e.to, e.type, std::move(labelled)});
    }
    for (auto const& [key, perm] : x.actions)
      if (key.vertex == old_target) {
        auto p = perm;
        for (int k = 0; k < grp.order(); ++k) p.push_back(nv + k);
        out.actions[{nv + j, key.edge_type, key.f}] = std::move(p);
      }
  }
  return detail::prune(std::move(out));
}

}  // namespace autgog
