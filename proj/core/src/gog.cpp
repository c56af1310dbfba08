#include "autgog/gog.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace autgog {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Letter single_letter(Word const& w) {
  if (w.size() > 1) throw Error("edge-group image is not a single letter");
  return w.empty() ? 0 : w[0];
}

}  // namespace

// ---------------------------------------------------------------- construction

GraphOfGroups::GraphOfGroups(std::vector<Vertex> vertices, std::vector<Edge> edges, int base)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), base_(base) {
  validate();
  build_tree_paths();
  build_alphabet();
}

void GraphOfGroups::validate() {
  int n = num_vertices();
  if (n == 0) throw Error("graph of groups has no vertices");
  if (base_ < 0 || base_ >= n) throw Error("base vertex out of range");
  std::set<std::string> names;
  for (auto const& v : vertices_)
    if (!names.insert(v.name).second) throw Error("duplicate vertex '" + v.name + "'");
  names.clear();
  UnionFind all(n), tree(n);
  int tree_edges = 0;
  for (auto& e : edges_) {
    if (!names.insert(e.name).second) throw Error("duplicate edge '" + e.name + "'");
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw Error("edge '" + e.name + "' has an unknown endpoint");
    auto const& gu = vertices_[e.from].group;
    auto const& gw = vertices_[e.to].group;
    if ((!gu.is_finite() || !gw.is_finite()) && e.group.order() != 1)
      throw Error("edge '" + e.name + "' has a nontrivial edge group at a free vertex");
    try {
      e.d0 = finite_subgroup_embedding(gu, e.group, e.d0).images;
      e.d1 = finite_subgroup_embedding(gw, e.group, e.d1).images;
    } catch (Error const& err) {
      throw Error("edge '" + e.name + "': " + err.what());
    }
    for (auto const* d : {&e.d0, &e.d1})
      for (auto const& w : *d)
        if (w.size() > 1) throw Error("edge '" + e.name + "': images must be canonical words");
    all.unite(e.from, e.to);
    if (e.tree) {
      if (tree.find(e.from) == tree.find(e.to))
        throw Error("tree edges contain a cycle at '" + e.name + "'");
      tree.unite(e.from, e.to);
      ++tree_edges;
    }
  }
  for (int v = 0; v < n; ++v)
    if (all.find(v) != all.find(0)) throw Error("graph is not connected");
  if (tree_edges != n - 1) throw Error("tree edges do not span the graph");
}

void GraphOfGroups::build_tree_paths() {
  int n = num_vertices();
  tree_path_.assign(n, std::vector<std::vector<int>>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<int> via(n, -2);
    via[s] = -1;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int oe : out_edges(u)) {
        if (!is_tree(oe)) continue;
        int w = target(oe);
        if (via[w] != -2) continue;
        via[w] = oe;
        tree_path_[s][w] = tree_path_[s][u];
        tree_path_[s][w].push_back(oe);
        queue.push_back(w);
      }
    }
  }
}

void GraphOfGroups::build_alphabet() {
  int n = num_vertices();
  std::vector<int> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + vertices_[v].group.alphabet().size();
  UnionFind uf(offset[n]);
  for (int v = 0; v < n; ++v) uf.unite(offset[v], offset[0]);
  for (auto const& e : edges_) {
    if (!e.tree) continue;
    for (int f = 0; f < e.group.order(); ++f)
      uf.unite(offset[e.from] + single_letter(e.d0[f]), offset[e.to] + single_letter(e.d1[f]));
  }
  // Classes merged through a tree edge take the edge-group element name.
  std::map<int, std::string> merged_name;
  for (auto const& e : edges_) {
    if (!e.tree) continue;
    for (int f = 0; f < e.group.order(); ++f) {
      int root = uf.find(offset[e.from] + single_letter(e.d0[f]));
      if (root == uf.find(offset[0])) continue;
      merged_name.emplace(root, e.group.names[f]);
    }
  }
  std::map<int, Letter> letter_of_root;
  to_global_.assign(n, {});
  alphabet_.add("e", 0);
  letter_of_root[uf.find(offset[0])] = 0;
  for (int v = 0; v < n; ++v) {
    auto const& la = vertices_[v].group.alphabet();
    for (Letter a = 0; a < la.size(); ++a) {
      int root = uf.find(offset[v] + a);
      auto it = letter_of_root.find(root);
      if (it == letter_of_root.end()) {
        auto nm = merged_name.find(root);
        std::string name = nm != merged_name.end() ? nm->second : la.name(a);
        if (alphabet_.find(name) != kEpsilon)
          throw Error("letter name '" + name + "' is used for two different elements");
        it = letter_of_root.emplace(root, alphabet_.add(name)).first;
      }
      to_global_[v].push_back(it->second);
    }
  }
  // Aliases: every local name and identity name parses to its class.
  for (int v = 0; v < n; ++v) {
    auto const& la = vertices_[v].group.alphabet();
    for (Letter a = 0; a < la.size(); ++a) alphabet_.add_alias(la.name(a), to_global_[v][a]);
    auto const& g = vertices_[v].group;
    if (g.is_finite()) alphabet_.add_alias(g.table().names[g.table().identity()], 0);
  }
  for (auto const& e : edges_) {
    if (!e.tree) continue;
    for (int f = 0; f < e.group.order(); ++f)
      alphabet_.add_alias(e.group.names[f], to_global_[e.from][single_letter(e.d0[f])]);
  }
  for (int v = 0; v < n; ++v) {
    auto const& la = vertices_[v].group.alphabet();
    for (Letter a = 0; a < la.size(); ++a)
      alphabet_.set_inverse(to_global_[v][a], to_global_[v][la.inverse(a)]);
  }
  int vertex_letters = alphabet_.size();
  stable_edge_.assign(vertex_letters, -1);
  for (int k = 0; k < num_edges(); ++k) {
    auto const& e = edges_[k];
    if (e.tree) continue;
    std::string name = e.letter.empty() ? "t_" + e.name : e.letter;
    if (alphabet_.find(name) != kEpsilon || alphabet_.find(name + "^-1") != kEpsilon)
      throw Error("stable letter '" + name + "' collides with another letter");
    Letter t = alphabet_.add(name);
    alphabet_.add(name + "^-1", t);
    stable_edge_.push_back(2 * k);
    stable_edge_.push_back(2 * k + 1);
  }
  letter_vertices_.assign(alphabet_.size(), {});
  to_local_.assign(n, std::vector<Letter>(alphabet_.size(), kEpsilon));
  for (int v = 0; v < n; ++v)
    for (Letter a = 0; a < static_cast<Letter>(to_global_[v].size()); ++a) {
      to_local_[v][to_global_[v][a]] = a;
      letter_vertices_[to_global_[v][a]].push_back(v);
    }
}

// ---------------------------------------------------------------- edges

int GraphOfGroups::source(int oe) const {
  if (oe == base_edge()) return -1;
  auto const& e = edges_.at(oe / 2);
  return oe % 2 == 0 ? e.from : e.to;
}

int GraphOfGroups::target(int oe) const {
  if (oe == base_edge()) return base_;
  auto const& e = edges_.at(oe / 2);
  return oe % 2 == 0 ? e.to : e.from;
}

int GraphOfGroups::reverse(int oe) const { return oe == base_edge() ? -1 : oe ^ 1; }

bool GraphOfGroups::is_tree(int oe) const {
  return oe == base_edge() || edges_.at(oe / 2).tree;
}

std::string GraphOfGroups::oriented_name(int oe) const {
  if (oe == base_edge()) return "E0";
  return edges_.at(oe / 2).name + (oe % 2 ? "^-1" : "");
}

int GraphOfGroups::find_vertex(std::string_view name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (vertices_[v].name == name) return v;
  return -1;
}

int GraphOfGroups::find_oriented_edge(std::string_view name) const {
  for (int oe = 0; oe < num_oriented(); ++oe)
    if (oriented_name(oe) == name) return oe;
  return -1;
}

std::vector<int> GraphOfGroups::out_edges(int v) const {
  std::vector<int> out;
  for (int oe = 0; oe < 2 * num_edges(); ++oe)
    if (source(oe) == v) out.push_back(oe);
  return out;
}

FiniteGroupTable const& GraphOfGroups::edge_group(int oe) const {
  return oe == base_edge() ? base_group_ : edges_.at(oe / 2).group;
}

Word GraphOfGroups::local_d0(int oe, int f) const {
  if (oe == base_edge()) throw Error("E0 has no initial vertex");
  auto const& e = edges_.at(oe / 2);
  return oe % 2 == 0 ? e.d0.at(f) : e.d1.at(f);
}

Word GraphOfGroups::local_d1(int oe, int f) const {
  if (oe == base_edge()) return Word{};
  auto const& e = edges_.at(oe / 2);
  return oe % 2 == 0 ? e.d1.at(f) : e.d0.at(f);
}

Word GraphOfGroups::d0(int oe, int f) const { return to_global(source(oe), local_d0(oe, f)); }
Word GraphOfGroups::d1(int oe, int f) const { return to_global(target(oe), local_d1(oe, f)); }

int GraphOfGroups::d0_preimage(int oe, Word const& canonical) const {
  for (int f = 0; f < edge_order(oe); ++f)
    if (d0(oe, f) == canonical) return f;
  return -1;
}

int GraphOfGroups::d1_preimage(int oe, Word const& canonical) const {
  for (int f = 0; f < edge_order(oe); ++f)
    if (d1(oe, f) == canonical) return f;
  return -1;
}

Letter GraphOfGroups::stable_letter(int oe) const {
  if (is_tree(oe)) return kEpsilon;
  for (Letter a = 0; a < num_letters(); ++a)
    if (stable_edge_[a] == oe) return a;
  return kEpsilon;
}

// ---------------------------------------------------------------- vertex words

Word GraphOfGroups::to_local(int v, std::span<Letter const> w) const {
  Word out;
  for (Letter a : w) {
    Letter l = to_local(v, a);
    if (l == kEpsilon)
      throw Error("letter '" + alphabet_.name(a) + "' is not in vertex " + vertices_[v].name);
    out.push_back(l);
  }
  return out;
}

Word GraphOfGroups::to_global(int v, std::span<Letter const> w) const {
  Word out;
  for (Letter a : w) out.push_back(to_global_[v].at(a));
  return out;
}

std::vector<Letter> GraphOfGroups::vertex_letters(int v) const {
  return {to_global_[v].begin() + 1, to_global_[v].end()};
}

Word GraphOfGroups::vertex_evaluate(int v, std::span<Letter const> w) const {
  return to_global(v, vertices_[v].group.evaluate(to_local(v, w)));
}

bool GraphOfGroups::vertex_canonical(int v, std::span<Letter const> w) const {
  for (Letter a : w)
    if (a < 0 || a >= num_letters() || to_local(v, a) == kEpsilon) return false;
  return vertices_[v].group.is_canonical(to_local(v, w));
}

Word GraphOfGroups::vertex_multiply(int v, Word const& x, Word const& y) const {
  return to_global(v, vertices_[v].group.multiply(to_local(v, x), to_local(v, y)));
}

Word GraphOfGroups::vertex_invert(int v, Word const& x) const {
  return to_global(v, vertices_[v].group.invert(to_local(v, x)));
}

Dfa GraphOfGroups::vertex_acceptor(int v) const {
  std::vector<Letter> map;
  for (Letter a : to_global_[v]) map.push_back(a);
  return map_letters(vertices_[v].group.acceptor(), map, num_letters());
}

std::vector<Word> GraphOfGroups::vertex_elements(int v) const {
  std::vector<Word> out;
  for (auto const& w : vertices_[v].group.elements()) out.push_back(to_global(v, w));
  return out;
}

// ---------------------------------------------------------------- word problem

// Raw form under construction; syllables are local words of their vertices.
struct GraphOfGroups::Builder {
  std::vector<int> edges;
  std::vector<Word> syl{Word{}};
  int vertex = 0;
};

GraphOfGroups::Builder GraphOfGroups::builder_of(NormalForm const& x) const {
  Builder b;
  b.vertex = base_;
  b.edges = x.edges;
  b.syl.clear();
  b.syl.push_back(to_local(base_, x.syllables[0]));
  for (std::size_t i = 0; i < x.edges.size(); ++i) {
    b.vertex = target(x.edges[i]);
    b.syl.push_back(to_local(b.vertex, x.syllables[i + 1]));
  }
  return b;
}

void GraphOfGroups::push_edge(Builder& b, int oe) const {
  if (!b.edges.empty() && oe == reverse(b.edges.back())) {
    int prev = b.edges.back();
    Word w = to_global(b.vertex, b.syl.back());
    int f = d1_preimage(prev, w);
    if (f >= 0) {
      // t_E d1(f) t_E^-1 = d0(f)
      b.edges.pop_back();
      b.syl.pop_back();
      b.vertex = source(prev);
      auto const& g = vertices_[b.vertex].group;
      b.syl.back() = g.multiply(b.syl.back(), local_d0(prev, f));
      return;
    }
  }
  b.edges.push_back(oe);
  b.syl.push_back(Word{});
  b.vertex = target(oe);
}

void GraphOfGroups::move_to(Builder& b, int v) const {
  for (int oe : tree_path(b.vertex, v)) push_edge(b, oe);
}

void GraphOfGroups::push_letter(Builder& b, Letter a) const {
  if (a < 0 || a >= num_letters()) throw Error("letter outside the convenient alphabet");
  if (a == 0) return;
  if (int oe = stable_edge_[a]; oe >= 0) {
    move_to(b, source(oe));
    push_edge(b, oe);
    return;
  }
  if (to_local(b.vertex, a) == kEpsilon) move_to(b, letter_vertices_[a].front());
  auto const& g = vertices_[b.vertex].group;
  Word w = b.syl.back();
  w.push_back(to_local(b.vertex, a));
  b.syl.back() = g.evaluate(w);
}

NormalForm GraphOfGroups::finish(Builder b, bool strip) const {
  if (strip) {
    while (!b.edges.empty() && is_tree(b.edges.back())) {
      int oe = b.edges.back();
      int f = d1_preimage(oe, to_global(b.vertex, b.syl.back()));
      if (f < 0) break;
      b.edges.pop_back();
      b.syl.pop_back();
      b.vertex = source(oe);
      b.syl.back() = vertices_[b.vertex].group.multiply(b.syl.back(), local_d0(oe, f));
    }
  }
  // Shortlex-least right coset representatives for inner syllables, compared
  // over the convenient alphabet.
  NormalForm out;
  out.edges = b.edges;
  out.syllables.clear();
  int v = base_;
  for (std::size_t i = 0; i < b.edges.size(); ++i) {
    int oe = b.edges[i];
    auto const& g = vertices_[v].group;
    Word best;
    int best_f = -1;
    for (int f = 0; f < edge_order(oe); ++f) {
      Word cand = to_global(v, g.multiply(b.syl[i], local_d0(oe, f)));
      if (best_f < 0 || shortlex_less(cand, best)) {
        best = cand;
        best_f = f;
      }
    }
    out.syllables.push_back(best);
    int w = target(oe);
    auto const& table = edge_group(oe);
    auto const& gw = vertices_[w].group;
    b.syl[i + 1] = gw.multiply(local_d1(oe, table.inverse(best_f)), b.syl[i + 1]);
    v = w;
  }
  out.syllables.push_back(to_global(v, b.syl.back()));
  return out;
}

NormalForm GraphOfGroups::normal_form(std::span<Letter const> w) const {
  Builder b;
  b.vertex = base_;
  for (Letter a : w) push_letter(b, a);
  return finish(std::move(b), true);
}

NormalForm GraphOfGroups::append(NormalForm const& x, Letter a) const {
  Builder b = builder_of(x);
  push_letter(b, a);
  return finish(std::move(b), true);
}

NormalForm GraphOfGroups::append(NormalForm const& x, std::span<Letter const> w) const {
  Builder b = builder_of(x);
  for (Letter a : w) push_letter(b, a);
  return finish(std::move(b), true);
}

NormalForm GraphOfGroups::multiply(NormalForm const& x, NormalForm const& y) const {
  return append(x, to_word(y));
}

NormalForm GraphOfGroups::inverse(NormalForm const& x) const {
  return normal_form(alphabet_.invert(to_word(x)));
}

NormalForm GraphOfGroups::path_form(NormalForm const& x, int v) const {
  Builder b = builder_of(x);
  move_to(b, v);
  return finish(std::move(b), false);
}

int GraphOfGroups::end_vertex(NormalForm const& x) const {
  return x.edges.empty() ? base_ : target(x.edges.back());
}

Word GraphOfGroups::to_word(NormalForm const& x) const {
  Word out = x.syllables[0];
  for (std::size_t i = 0; i < x.edges.size(); ++i) {
    if (Letter t = stable_letter(x.edges[i]); t != kEpsilon) out.push_back(t);
    out.insert(out.end(), x.syllables[i + 1].begin(), x.syllables[i + 1].end());
  }
  return out;
}

std::string GraphOfGroups::format(NormalForm const& x) const {
  auto syl = [&](Word const& w) { return w.empty() ? std::string("1") : alphabet_.format(w); };
  std::string out = syl(x.syllables[0]);
  for (std::size_t i = 0; i < x.edges.size(); ++i)
    out += " <" + oriented_name(x.edges[i]) + "> " + syl(x.syllables[i + 1]);
  return out;
}

bool GraphOfGroups::equals(std::span<Letter const> w1, std::span<Letter const> w2) const {
  return normal_form(w1) == normal_form(w2);
}

// ---------------------------------------------------------------- tree vertices

ConjugateRep find_conjugate_rep(GraphOfGroups const& g, NormalForm const& x, int v) {
  if (!is_reduced(g)) throw Error("find_conjugate_rep needs a reduced graph of groups");
  NormalForm p = g.path_form(x, v);
  p.syllables.back().clear();
  if (p.edges.empty()) return {g.base_edge(), p};
  return {p.edges.back(), p};
}

bool in_scriptGE(GraphOfGroups const& g, NormalForm const& x, int oe) {
  NormalForm p = g.path_form(x, g.target(oe));
  if (oe == g.base_edge()) return p.is_identity();
  return !p.edges.empty() && p.edges.back() == oe && g.d1_preimage(oe, p.last()) >= 0;
}

// ---------------------------------------------------------------- Cayley ball

CayleyBall::CayleyBall(GraphOfGroups const& g, int radius, std::size_t cap)
    : g_(&g), radius_(radius) {
  if (radius < 0) throw Error("negative ball radius");
  std::vector<NormalForm> frontier{NormalForm{}};
  dist_.emplace(NormalForm{}, 0);
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<NormalForm> next;
    for (auto const& x : frontier)
      for (Letter a = 1; a < g.num_letters(); ++a) {
        NormalForm y = g.append(x, a);
        if (dist_.emplace(y, r).second) {
          if (dist_.size() > cap)
            throw Error("Cayley ball exceeds the node cap of " + std::to_string(cap));
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
}

int CayleyBall::distance(NormalForm const& x) const {
  auto it = dist_.find(x);
  return it == dist_.end() ? radius_ + 1 : it->second;
}

int CayleyBall::distance(std::span<Letter const> w1, std::span<Letter const> w2) const {
  Word w = g_->alphabet().invert(w1);
  w.insert(w.end(), w2.begin(), w2.end());
  return distance(g_->normal_form(w));
}

std::vector<std::size_t> CayleyBall::sphere_sizes() const {
  std::vector<std::size_t> out(radius_ + 1, 0);
  for (auto const& [x, d] : dist_) ++out[d];
  return out;
}

}  // namespace autgog
