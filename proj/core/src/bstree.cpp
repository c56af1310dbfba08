#include "autgog/bstree.hpp"

#include <algorithm>
#include <sstream>

#include "autgog/deploy.hpp"

namespace autgog {

namespace {

ConjugateRep base_rep(GraphOfGroups const& g) { return {g.base_edge(), NormalForm{}}; }

std::string rep_name(GraphOfGroups const& g, ConjugateRep const& v) {
  return "(" + g.oriented_name(v.edge) + "," + g.format(v.h) + ")";
}

Word concat(Word a, Word const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word prefix_of(Word const& w, std::size_t n) { return Word(w.begin(), w.begin() + n); }

}  // namespace

std::string stabilizer_descriptor(GraphOfGroups const& g, ConjugateRep const& v) {
  std::string gv = "G_" + g.vertex(g.target(v.edge)).name;
  if (v.h.is_identity() || v.edge == g.base_edge()) return gv;
  std::string h = g.format(v.h);
  return h + " " + gv + " (" + h + ")^-1";
}

int vertex_degree(GraphOfGroups const& g, int v) {
  if (!g.vertex_finite(v)) return -1;
  int order = static_cast<int>(g.vertex_elements(v).size());
  int deg = 0;
  for (int oe : g.out_edges(v)) deg += order / g.edge_order(oe);
  return deg;
}

int TreeBall::find(ConjugateRep const& v) const {
  auto it = index.find(v);
  return it == index.end() ? -1 : it->second;
}

std::vector<std::size_t> TreeBall::level_sizes() const {
  std::vector<std::size_t> out(radius + 1, 0);
  for (int d : depth) ++out[d];
  return out;
}

std::vector<int> TreeBall::neighbours(int i) const {
  std::vector<int> out;
  if (parent[i] >= 0) out.push_back(parent[i]);
  for (int j = 0; j < static_cast<int>(parent.size()); ++j)
    if (parent[j] == i) out.push_back(j);
  return out;
}

TreeBall tree_ball(GraphOfGroups const& g, int radius, int free_radius, std::size_t cap) {
  if (radius < 0) throw Error("tree ball radius must be nonnegative");
  TreeBall b;
  b.radius = radius;
  auto add = [&](ConjugateRep v, int parent, int depth) {
    int type = g.target(v.edge);
    b.index.emplace(v, static_cast<int>(b.vertices.size()));
    b.vertices.push_back(std::move(v));
    b.parent.push_back(parent);
    b.depth.push_back(depth);
    b.degree.push_back(vertex_degree(g, type));
    if (b.vertices.size() > cap) throw Error("tree ball cap exceeded");
  };
  add(base_rep(g), -1, 0);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    if (b.depth[i] == radius) continue;
    if (!g.vertex_finite(g.target(b.vertices[i].edge))) b.truncated = true;
    for (auto& c : tree_children(g, b.vertices[i], free_radius))
      add(std::move(c), static_cast<int>(i), b.depth[i] + 1);
  }
  return b;
}

TreePath gamma_path(GraphOfGroups const& g, NormalForm const& x) {
  TreePath p;
  p.vertices.push_back(base_rep(g));
  for (int i = 0; i < x.length(); ++i) {
    NormalForm pre;
    pre.syllables.assign(x.syllables.begin(), x.syllables.begin() + i + 1);
    pre.edges.assign(x.edges.begin(), x.edges.begin() + i + 1);
    pre.syllables.emplace_back();
    NormalForm h = g.path_form(g.normal_form(g.to_word(pre)), g.target(x.edges[i]));
    h.syllables.back().clear();
    p.vertices.push_back({x.edges[i], std::move(h)});
  }
  return p;
}

TreePath gamma_path(GraphOfGroups const& g, Word const& w) {
  return gamma_path(g, g.normal_form(w));
}

std::string format_path(GraphOfGroups const& g, TreePath const& p) {
  std::string out;
  for (auto const& v : p.vertices) {
    if (!out.empty()) out += " -> ";
    out += rep_name(g, v);
  }
  return out;
}

std::pair<Word, Word> trim_to_common_path(GraphOfGroups const& g, Word const& u,
                                          Word const& u2) {
  TreePath a = gamma_path(g, u), b = gamma_path(g, u2);
  std::size_t k = 0;
  while (k < a.vertices.size() && k < b.vertices.size() && a.vertices[k] == b.vertices[k]) ++k;
  TreePath common;
  common.vertices.assign(a.vertices.begin(), a.vertices.begin() + k);
  auto longest = [&](Word const& w) {
    for (std::size_t n = w.size() + 1; n-- > 0;)
      if (gamma_path(g, prefix_of(w, n)) == common) return prefix_of(w, n);
    return Word{};
  };
  return {longest(u), longest(u2)};
}

std::vector<TreePath> ends(GraphOfGroups const& g, int depth, int free_radius) {
  TreeBall b = tree_ball(g, depth, free_radius);
  std::vector<TreePath> out;
  for (int i = 0; i < static_cast<int>(b.vertices.size()); ++i) {
    if (b.depth[i] != depth) continue;
    TreePath p;
    for (int j = i; j >= 0; j = b.parent[j]) p.vertices.push_back(b.vertices[j]);
    std::reverse(p.vertices.begin(), p.vertices.end());
    out.push_back(std::move(p));
  }
  return out;
}

RayClass classify_ray(GraphOfGroups const& g, Dfa const& lang, Lasso const& ray) {
  if (ray.period.empty()) throw Error("a lasso needs a nonempty period");
  Word w = ray.prefix;
  for (int k = 0; k < 3; ++k) w = concat(w, ray.period);
  Dfa live = trim(lang);
  int q = live.start();
  for (std::size_t i = 0; i < w.size(); ++i) {
    q = q == kNoState ? kNoState : live.next(q, w[i]);
    if (q == kNoState)
      throw Error("not an L-ray: " + g.alphabet().format(prefix_of(w, i + 1)) +
                  " is not a prefix of an accepted word");
  }
  std::vector<TreePath> gammas;
  for (std::size_t n = 0; n <= w.size(); ++n) gammas.push_back(gamma_path(g, prefix_of(w, n)));
  std::size_t two = ray.prefix.size() + 2 * ray.period.size();
  RayClass r;
  r.path = gammas.back();
  if (gammas.back().length() > gammas[two].length()) {
    r.end = true;
    return r;
  }
  if (!(gammas.back() == gammas[two]))
    throw Error("gamma neither grows nor stabilizes over the last period");

  ConjugateRep const& v = r.path.end();
  int type = g.target(v.edge);
  std::vector<std::pair<int, NormalForm>> candidates;
  if (v.edge == g.base_edge()) {
    candidates.emplace_back(0, NormalForm{});
  } else {
    for (int f = 0; f < g.edge_order(v.edge); ++f) {
      NormalForm hf = v.h;
      hf.syllables.back() = g.d1(v.edge, f);
      candidates.emplace_back(f, g.normal_form(g.to_word(hf)));
    }
  }
  // Smallest cut after which gamma stays put and whose value is h d1(f).
  for (std::size_t c = w.size() + 1; c-- > 0;) {
    if (c < w.size() && !(gammas[c + 1] == r.path)) break;
    NormalForm value = g.normal_form(prefix_of(w, c));
    for (auto const& [f, nf] : candidates)
      if (nf == value) {
        r.cut = static_cast<int>(c);
        r.f = f;
      }
  }
  if (r.cut >= 0) {
    std::size_t c = r.cut;
    if (c <= ray.prefix.size()) {
      r.tail.prefix.assign(ray.prefix.begin() + c, ray.prefix.end());
    } else {
      std::size_t k = (c - ray.prefix.size()) % ray.period.size();
      r.tail.prefix.assign(ray.period.begin() + k, ray.period.end());
    }
    r.tail.period = ray.period;
    r.tail_in_vertex = true;
    for (Letter a : concat(r.tail.prefix, r.tail.period))
      if (a != 0 && !g.in_vertex(type, a)) r.tail_in_vertex = false;
  }
  return r;
}

std::vector<Dfa> region_languages(GraphOfGroups const& g, Dfa const& lang, TreeBall const& ball,
                                  int free_radius, std::size_t cap) {
  struct Key {
    int q = 0;
    bool far = false;
    NormalForm value;  // exact value unless far
    ConjugateRep at;   // gamma end when far
    auto operator<=>(Key const&) const = default;
  };
  int max_depth = ball.radius + 2;
  std::size_t long_syllable = static_cast<std::size_t>(free_radius) + 2;
  Dfa live = trim(lang);
  std::map<NormalForm, ConjugateRep> ends_of;
  auto end_of = [&](NormalForm const& v) -> ConjugateRep const& {
    auto it = ends_of.find(v);
    if (it == ends_of.end()) it = ends_of.emplace(v, gamma_path(g, v).end()).first;
    return it->second;
  };

  std::vector<Key> keys{{live.start(), false, NormalForm{}, {}}};
  std::map<Key, int> id{{keys[0], 0}};
  std::vector<std::vector<std::pair<Letter, int>>> moves(1);
  std::vector<int> region(1, -1);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Key const k = keys[i];
    ConjugateRep const at = k.far ? k.at : end_of(k.value);
    if (live.is_accept(k.q)) region[i] = ball.find(at);
    int type = g.target(at.edge);
    for (Letter a = 0; a < g.num_letters(); ++a) {
      int q2 = live.next(k.q, a);
      if (q2 == kNoState) continue;
      Key n;
      n.q = q2;
      if (k.far) {
        // Canonical free syllables never cancel, so a long one stays long.
        if (a != 0 && !g.in_vertex(type, a)) continue;
        n.far = true;
        n.at = at;
      } else {
        n.value = a == 0 ? k.value : g.append(k.value, a);
        ConjugateRep const& e = end_of(n.value);
        if (tree_depth(e) > max_depth) continue;
        if (!g.vertex_finite(g.target(e.edge)) && n.value.last().size() > long_syllable) {
          n.far = true;
          n.at = e;
          n.value = NormalForm{};
        }
      }
      auto [it, fresh] = id.try_emplace(n, static_cast<int>(keys.size()));
      if (fresh) {
        keys.push_back(n);
        moves.emplace_back();
        region.push_back(-1);
        if (keys.size() > cap) throw Error("region automaton cap exceeded");
      }
      moves[i].emplace_back(a, it->second);
    }
  }
  Dfa product(g.num_letters(), static_cast<int>(keys.size()));
  product.set_start(0);
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (auto [a, t] : moves[i]) product.set_next(static_cast<int>(i), a, t);
  std::vector<Dfa> out;
  for (int v = 0; v < static_cast<int>(ball.vertices.size()); ++v) {
    Dfa d = product;
    for (std::size_t i = 0; i < keys.size(); ++i) d.set_accept(static_cast<int>(i), region[i] == v);
    out.push_back(minimize(d));
  }
  return out;
}

BoundaryReport boundary_report(GraphOfGroups const& g, YGraph const& x, int radius, int maxlen,
                               int free_radius) {
  BoundaryReport r;
  r.radius = radius;
  r.maxlen = maxlen;
  StructureHandle handle = language_dfa(g, x);
  TreeBall ball = tree_ball(g, radius, free_radius);
  auto regions = region_languages(g, handle.dfa, ball, free_radius);
  Deployment dep = deployment_of(handle);
  int n = static_cast<int>(ball.vertices.size());
  for (int i = 0; i < n; ++i) {
    auto const& v = ball.vertices[i];
    int type = g.target(v.edge);
    VertexBoundary b;
    b.vertex = v;
    b.depth = ball.depth[i];
    b.stabilizer = stabilizer_descriptor(g, v);
    b.label = dep.at(v).label;
    auto const& grp = g.vertex(type).group;
    b.boundary_points = grp.is_finite() ? 0 : grp.rank() == 1 ? 2 : -1;
    b.region = regions[i];
    if (grp.is_finite()) {
      b.fiber = 0;
      Word h = g.to_word(v.h);
      for (auto const& el : g.vertex_elements(type))
        if (gamma_path(g, concat(h, el)).end() == v) ++b.fiber;
    }
    r.vertices.push_back(std::move(b));
  }
  auto sizes = ball.level_sizes();
  r.cylinder_counts.assign(sizes.begin() + 1, sizes.end());

  auto problem = [&](std::string s) {
    if (r.problems.size() < 10) r.problems.push_back(std::move(s));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!is_empty(product_boolean(regions[i], regions[j], BoolOp::kAnd))) {
        r.disjoint = false;
        problem("R_v overlap at " + rep_name(g, ball.vertices[i]) + " and " +
                rep_name(g, ball.vertices[j]));
      }
  for (auto const& w : enumerate_words(handle.dfa, maxlen)) {
    int home = ball.find(gamma_path(g, w).end());
    if (home < 0) continue;
    for (int j = 0; j < n; ++j)
      if (regions[j].accepts(w) != (j == home)) {
        r.exhaustive = false;
        problem("word " + g.alphabet().format(w) + " misplaced at " +
                rep_name(g, ball.vertices[j]));
      }
  }
  return r;
}

std::string tree_ball_to_dot(GraphOfGroups const& g, TreeBall const& ball) {
  std::ostringstream out;
  out << "digraph bass_serre {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    auto const& grp = g.vertex(g.target(ball.vertices[i].edge)).group;
    std::string boundary = grp.is_finite() ? "empty" : grp.rank() == 1 ? "2 points" : "Cantor set";
    out << "  n" << i << " [label=\"" << rep_name(g, ball.vertices[i]) << "\\n"
        << stabilizer_descriptor(g, ball.vertices[i]) << "\", tooltip=\"boundary: " << boundary
        << "\"];\n";
  }
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    if (ball.parent[i] >= 0)
      out << "  n" << ball.parent[i] << " -> n" << i << " [label=\""
          << g.oriented_name(ball.vertices[i].edge) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace autgog
