#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "autgog/bstree.hpp"
#include "autgog/deploy.hpp"
#include "cli.hpp"

namespace autgog::cli {

namespace {

int vertex_of(YGraph const& x, std::string const& name) {
  int v = x.find_vertex(name);
  if (v < 0) throw Error("no Y-graph vertex named '" + name + "'");
  return v;
}

int edge_of(GraphOfGroups const& g, std::string const& name) {
  int oe = g.find_oriented_edge(name);
  if (oe < 0) throw Error("no edge named '" + name + "'");
  return oe;
}

std::string rep_id(GraphOfGroups const& g, ConjugateRep const& v) {
  return "(" + g.oriented_name(v.edge) + "," + g.format(v.h) + ")";
}

void describe_ygraph(Report& rep, GraphOfGroups const& g, YGraph const& x) {
  rep.add("vertices", x.num_vertices());
  rep.add("edges", x.edges.size());
  rep.add("actions", x.actions.size());
  rep.add("start", x.vertices[x.start].name);
  auto bad = validate_ygraph(g, x);
  rep.add("valid", bad.empty());
}

void language_report(Report& rep, StructureHandle const& h, int maxlen) {
  rep.add("states", h.dfa.num_states());
  rep.add("visible_states", h.visible.num_states());
  rep.add("unique", h.unique);
  std::vector<std::size_t> counts(maxlen + 1, 0);
  for (auto const& w : enumerate_words(h.dfa, maxlen)) ++counts[w.size()];
  for (int n = 0; n <= maxlen; ++n) rep.add("count." + std::to_string(n), counts[n]);
}

Result with_ygraph(GraphOfGroups const& g, YGraph const& x, Options const& o, Result r) {
  if (!o.out.empty()) {
    write_ygraph(g, x, o.out);
    r.report.add("written", o.out);
  } else if (o.format == "dot") {
    r.artifact = ygraph_to_dot(g, x);
  }
  return r;
}

}  // namespace

Result cmd_ygraph_validate(Options const& o) {
  Result r;
  auto g = load(o);
  auto x = load_ygraph(g, o.ygraph);
  auto bad = validate_ygraph(g, x);
  r.report.add("vertices", x.num_vertices());
  r.report.add("edges", x.edges.size());
  r.report.add("violations", bad.size());
  for (std::size_t i = 0; i < bad.size(); ++i)
    r.report.add("violation." + std::to_string(i), bad[i].axiom + ": " + bad[i].detail);
  if (!bad.empty()) r.code = kVerificationFailed;
  return r;
}

Result cmd_ygraph_default(Options const& o) {
  auto g = load(o);
  if (o.kind != "default" && o.kind != "biautomatic")
    throw Error("--kind must be default or biautomatic");
  auto x = load_ygraph(g, o.kind);
  Result r;
  r.report.add("kind", o.kind);
  describe_ygraph(r.report, g, x);
  return with_ygraph(g, x, o, std::move(r));
}

Result cmd_language(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  language_report(r.report, h, o.maxlen);
  if (o.format == "fsa") r.artifact = to_text(h.dfa, g.alphabet());
  return r;
}

Result cmd_synchronize(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = synchronize(g, load_ygraph(g, o.ygraph));
  language_report(r.report, h, o.maxlen);
  if (o.format == "fsa") r.artifact = to_text(h.dfa, g.alphabet());
  return r;
}

Result cmd_collapse(Options const& o) {
  auto g = load(o);
  auto x = load_ygraph(g, o.ygraph);
  auto c = collapse(g, x, vertex_of(x, o.vertex), vertex_of(x, o.vertex2), o.K, o.maxlen);
  Result r;
  r.report.add("ok", c.ok);
  r.report.add("classes", c.classes.size());
  if (!c.ok) {
    r.report.add("reason", c.reason);
    if (!c.witness1.empty() || !c.witness2.empty()) {
      r.report.add("witness1", g.alphabet().format(c.witness1));
      r.report.add("witness2", g.alphabet().format(c.witness2));
    }
    r.code = kVerificationFailed;
    return r;
  }
  describe_ygraph(r.report, g, c.graph);
  return with_ygraph(g, c.graph, o, std::move(r));
}

Result cmd_split(Options const& o) {
  auto g = load(o);
  auto x = load_ygraph(g, o.ygraph);
  int oe = edge_of(g, o.edge);
  Dfa lang;
  if (o.lang.empty()) {
    lang = all_values(g, g.target(oe));
  } else {
    std::ifstream in(o.lang);
    if (!in) throw Error("cannot open '" + o.lang + "'");
    std::stringstream s;
    s << in.rdbuf();
    lang = dfa_from_text(s.str(), g.alphabet());
  }
  auto y = split_for_element(g, x, parse_word(g, o.word), oe, o.label.empty() ? "split" : o.label,
                             lang);
  Result r;
  describe_ygraph(r.report, g, y);
  return with_ygraph(g, y, o, std::move(r));
}

Result cmd_deploy(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  auto dep = deployment_of(h);
  auto positions = tree_positions(g, o.depth, o.free_radius, o.node_cap);
  r.report.add("depth", o.depth);
  r.report.add("positions", positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    auto const& e = dep.at(positions[i]);
    std::string key = "position." + std::to_string(i);
    r.report.add(key + ".id", rep_id(g, positions[i]));
    r.report.add(key + ".label", e.label);
    r.report.add(key + ".language", e.language_id);
    r.report.add(key + ".states", e.lang.num_states());
  }
  r.report.add("distinct_languages", dep.distinct_languages());
  auto bad = dep.check_equivariance();
  r.report.add("equivariance_failures", bad.size());
  for (std::size_t i = 0; i < bad.size() && i < 10; ++i)
    r.report.add("failure." + std::to_string(i), bad[i]);
  if (!bad.empty()) r.code = kVerificationFailed;
  return r;
}

namespace {

void ft_report(Report& rep, GraphOfGroups const& g, FtReport const& ft) {
  rep.add("ok", ft.ok);
  rep.add("sync", ft.sync);
  rep.add("maxlen", ft.maxlen);
  rep.add("pairs", ft.pairs);
  rep.add("bound", ft.bound);
  rep.add("K", ft.ok ? std::to_string(ft.K) : ">" + std::to_string(ft.bound));
  rep.add("worst1", g.alphabet().format(ft.worst1));
  rep.add("worst2", g.alphabet().format(ft.worst2));
}

}  // namespace

Result cmd_check_ft(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  int bound = o.K_given ? o.K : o.bound;
  auto ft = ft_constant(g, h.dfa, o.maxlen, o.sync, bound);
  ft_report(r.report, g, ft);
  if (o.K_given) r.report.add("checked_K", o.K);
  if (!ft.ok) r.code = kVerificationFailed;
  return r;
}

Result cmd_ft_constant(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  bool stable = true;
  int first = -1;
  for (int n = std::max(1, o.maxlen - 2); n <= o.maxlen; ++n) {
    auto ft = ft_constant(g, h.dfa, n, o.sync, o.bound);
    r.report.add("K." + std::to_string(n), ft.ok ? std::to_string(ft.K) : "none");
    int k = ft.ok ? ft.K : -1;
    if (first == -1) first = k;
    if (k < 0 || k != first) stable = false;
    if (n == o.maxlen) ft_report(r.report, g, ft);
  }
  r.report.add("stable", stable);
  if (!stable) r.code = kVerificationFailed;
  return r;
}

Result cmd_equiv(Options const& o) {
  Result r;
  auto g = load(o);
  auto l1 = language_dfa(g, load_ygraph(g, o.ygraph)).dfa;
  auto l2 = language_dfa(g, load_ygraph(g, o.ygraph2)).dfa;
  auto e = equivalent_upto(g, l1, l2, o.maxlen, o.K);
  r.report.add("equivalent", e.ok);
  r.report.add("maxlen", e.maxlen);
  r.report.add("K", e.K);
  r.report.add("pairs", e.pairs);
  r.report.add("identical", equivalent(l1, l2));
  if (!e.ok) {
    r.report.add("witness1", g.alphabet().format(e.witness1));
    r.report.add("witness2", g.alphabet().format(e.witness2));
    r.code = kVerificationFailed;
  }
  return r;
}

Result cmd_tracker(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  TrackerMachine tm(g, h.dfa, o.K, o.node_cap);
  int s = tm.run(parse_word(g, o.word));
  r.report.add("word", o.word);
  r.report.add("state", s);
  r.report.add("states_built", tm.num_states());
  for (auto const& [oe, states] : tm.report(s))
    r.report.add("report." + g.oriented_name(oe), states.size());
  return r;
}

Result cmd_classify_ray(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  Lasso ray{parse_word(g, o.prefix), parse_word(g, o.period)};
  RayClass c = classify_ray(g, h.dfa, ray);
  r.report.add("kind", c.end ? "end" : "boundary_point");
  r.report.add("path", format_path(g, c.path));
  r.report.add("path_length", c.path.length());
  if (!c.end) {
    auto const& v = c.path.end();
    r.report.add("vertex", rep_id(g, v));
    r.report.add("stabilizer", stabilizer_descriptor(g, v));
    r.report.add("cut", c.cut);
    if (c.cut >= 0) {
      r.report.add("f", v.edge == g.base_edge() ? std::string("1")
                                                : g.edge_group(v.edge).names[c.f]);
      r.report.add("tail_prefix", g.alphabet().format(c.tail.prefix));
      r.report.add("tail_period", g.alphabet().format(c.tail.period));
      r.report.add("tail_in_vertex", c.tail_in_vertex);
    }
  }
  return r;
}

Result cmd_boundary(Options const& o) {
  Result r;
  auto g = load(o);
  auto rep = boundary_report(g, load_ygraph(g, o.ygraph), o.depth, o.maxlen, o.free_radius);
  r.report.add("depth", rep.radius);
  r.report.add("maxlen", rep.maxlen);
  r.report.add("vertices", rep.vertices.size());
  r.report.add("disjoint", rep.disjoint);
  r.report.add("exhaustive", rep.exhaustive);
  for (std::size_t d = 0; d < rep.cylinder_counts.size(); ++d)
    r.report.add("cylinders." + std::to_string(d + 1), rep.cylinder_counts[d]);
  for (std::size_t i = 0; i < rep.vertices.size(); ++i) {
    auto const& v = rep.vertices[i];
    std::string key = "vertex." + std::to_string(i);
    r.report.add(key + ".id", rep_id(g, v.vertex));
    r.report.add(key + ".depth", v.depth);
    r.report.add(key + ".stabilizer", v.stabilizer);
    r.report.add(key + ".label", v.label);
    r.report.add(key + ".boundary",
                 v.boundary_points < 0 ? std::string("cantor") : std::to_string(v.boundary_points));
    r.report.add(key + ".region_states", v.region.num_states());
    r.report.add(key + ".fiber", v.fiber < 0 ? std::string("inf") : std::to_string(v.fiber));
  }
  for (std::size_t i = 0; i < rep.problems.size(); ++i)
    r.report.add("problem." + std::to_string(i), rep.problems[i]);
  if (!rep.disjoint || !rep.exhaustive) r.code = kVerificationFailed;
  return r;
}

Result cmd_export_dot(Options const& o) {
  Result r;
  auto g = load(o);
  if (o.what == "ygraph") {
    r.artifact = ygraph_to_dot(g, load_ygraph(g, o.ygraph));
  } else if (o.what == "tree") {
    r.artifact = tree_ball_to_dot(g, tree_ball(g, o.depth, o.free_radius, o.node_cap));
  } else {
    throw Error("--what must be ygraph or tree");
  }
  return r;
}

Result cmd_export_fsa(Options const& o) {
  Result r;
  auto g = load(o);
  auto h = language_dfa(g, load_ygraph(g, o.ygraph));
  r.artifact = o.visible ? to_text(h.visible, visible_alphabet(g)) : to_text(h.dfa, g.alphabet());
  return r;
}

}  // namespace autgog::cli
