#include <gtest/gtest.h>

#include "autgog/deploy.hpp"
#include "autgog/ygraph.hpp"
#include "support.hpp"

namespace autgog {
namespace {

using testing::fixture;

Word parse(GraphOfGroups const& g, std::string const& text) { return g.alphabet().parse(text); }

void expect_valid(GraphOfGroups const& g, YGraph const& x) {
  for (auto const& v : validate_ygraph(g, x)) ADD_FAILURE() << v.axiom << ": " << v.detail;
}

TEST(Collapse, ModgDefaultBecomesBiautomatic) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  auto r = collapse(g, x, x.find_vertex("E0"), x.find_vertex("E^-1:1"), 2, 8);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(r.graph.num_vertices(), 2);
  expect_valid(g, r.graph);
  Dfa got = language_dfa(g, r.graph).dfa;
  Dfa want = language_dfa(g, biautomatic_ygraph(g)).dfa;
  EXPECT_TRUE(equivalent(got, want));
  EXPECT_TRUE(equivalent_upto(g, got, language_dfa(g, x).dfa, 8, 2).ok);
}

TEST(Collapse, DuplicatedVertexMergesBack) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  int start = x.find_vertex("E0"), mid = x.find_vertex("E:1");
  YGraph y = x;
  y.vertices.push_back(x.vertices[mid]);
  y.vertices.back().name = "copy";
  int copy = y.num_vertices() - 1;
  for (int i : x.out_edges(mid)) {
    auto e = x.edges[i];
    e.from = copy;
    e.name += "c";
    y.edges.push_back(e);
  }
  Dfa moved = value_set(g, g.find_vertex("V1"), {parse(g, "a")});
  for (auto& e : y.edges)
    if (e.from == start && e.to == mid)
      e.values = minimize(product_boolean(e.values, moved, BoolOp::kDiff));
  y.edges.push_back({"to-copy", start, copy, g.find_oriented_edge("E"), moved});
  expect_valid(g, y);
  auto r = collapse(g, y, mid, copy, 1, 6);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(r.graph.num_vertices(), x.num_vertices());
  EXPECT_TRUE(equivalent(language_dfa(g, r.graph).dfa, language_dfa(g, x).dfa));
}

TEST(Collapse, SmallConstantFailsWithWitness) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  auto r = collapse(g, x, x.find_vertex("E0"), x.find_vertex("E^-1:1"), 0, 4);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.witness1, r.witness2);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Collapse, RejectsDifferentTypes) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  auto r = collapse(g, x, x.find_vertex("E0"), x.find_vertex("E:1"), 2, 4);
  EXPECT_FALSE(r.ok);
}

TEST(Collapse, Sl2zClosureReachesTheTwoVertexGraph) {
  auto g = fixture("sl2z");
  auto x = default_ygraph(g);
  // The Z/2 action forces E^-1:x and then both E vertices into the merge.
  auto r = collapse(g, x, x.find_vertex("E0"), x.find_vertex("E^-1:1"), 3, 5);
  ASSERT_TRUE(r.ok) << r.reason;
  expect_valid(g, r.graph);
  EXPECT_EQ(r.graph.num_vertices(), 2);
  EXPECT_TRUE(equivalent(language_dfa(g, r.graph).dfa,
                         language_dfa(g, biautomatic_ygraph(g)).dfa));
}

TEST(Split, ModgAddsOneOrbit) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  int back = g.find_oriented_edge("E^-1");
  int v1 = g.find_vertex("V1");
  Dfa lang = finite_language(g.num_letters(), {Word{}, parse(g, "a a a")});
  auto y = split_for_element(g, x, parse(g, "a b"), back, "odd", lang);
  expect_valid(g, y);
  EXPECT_EQ(y.num_vertices(), x.num_vertices() + 1);
}

TEST(Split, ModgChangesOnlyTheTargetedConjugate) {
  auto g = fixture("modg");
  // The default X sends 1 and a to the same E vertex; separating the prefix
  // first makes the lift of a t_E b t_E^-1 the only one through the split edge.
  auto x0 = default_ygraph(g);
  auto x = split_for_element(g, x0, parse(g, "a"), g.find_oriented_edge("E"), "Z3",
                             x0.vertices[x0.find_vertex("E:1")].lang);
  expect_valid(g, x);
  int back = g.find_oriented_edge("E^-1");
  int v1 = g.find_vertex("V1");
  Dfa lang = finite_language(g.num_letters(), {Word{}, parse(g, "a a a")});
  auto y = split_for_element(g, x, parse(g, "a b"), back, "odd", lang);
  expect_valid(g, y);

  // Deployments agree everywhere except at the targeted conjugate.
  NormalForm target = g.path_form(g.normal_form(parse(g, "a b")), v1);
  target.syllables.back().clear();
  auto before = deployment_of(language_dfa(g, x));
  auto after = deployment_of(language_dfa(g, y));
  int changed = 0;
  for (auto const& pos : tree_positions(g, 3)) {
    bool here = pos.edge == back && pos.h == target;
    auto const& a = before.at(pos);
    auto const& b = after.at(pos);
    if (here) {
      EXPECT_EQ(b.label, "odd");
      EXPECT_TRUE(equivalent(b.lang, lang));
      ++changed;
    } else {
      EXPECT_EQ(a.label, b.label) << g.format(pos.h) << " edge " << g.oriented_name(pos.edge);
    }
  }
  EXPECT_EQ(changed, 1);
}

TEST(Split, Sl2zRespectsTheEdgeGroupOrbit) {
  auto g = fixture("sl2z");
  auto x = default_ygraph(g);
  int e = g.find_oriented_edge("E");
  int v2 = g.find_vertex("V2");
  auto y = split_for_element(g, x, parse(g, "a"), e, "alt", all_values(g, v2));
  expect_valid(g, y);
  int added = 0;
  for (auto const& v : y.vertices) added += v.name.rfind("split", 0) == 0;
  EXPECT_EQ(added, 2);
}

TEST(Split, ThenCollapseBack) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  int back = g.find_oriented_edge("E^-1");
  int old = x.find_vertex("E^-1:1");
  auto y = split_for_element(g, x, parse(g, "a b"), back, x.vertices[old].label,
                             x.vertices[old].lang);
  int fresh = -1;
  for (int i = 0; i < y.num_vertices(); ++i)
    if (y.vertices[i].name.rfind("split", 0) == 0) fresh = i;
  ASSERT_GE(fresh, 0);
  EXPECT_TRUE(equivalent(language_dfa(g, y).dfa, language_dfa(g, x).dfa));
  auto r = collapse(g, y, y.find_vertex("E^-1:1"), fresh, 1, 6);
  ASSERT_TRUE(r.ok) << r.reason;
  EXPECT_EQ(r.graph.num_vertices(), x.num_vertices());
  EXPECT_TRUE(equivalent(language_dfa(g, r.graph).dfa, language_dfa(g, x).dfa));
}

TEST(Split, Errors) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  int e = g.find_oriented_edge("E");
  int v2 = g.find_vertex("V2");
  // a b has final syllable b, outside d1(F_E).
  EXPECT_THROW(split_for_element(g, x, parse(g, "a b"), e, "z", all_values(g, v2)), Error);
}

TEST(LiftPath, FollowsLabels) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  NormalForm h = g.path_form(g.normal_form(parse(g, "a b")), g.find_vertex("V1"));
  auto p = lift_path(g, x, h);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(x.edges[p[0]].from, x.start);
  EXPECT_EQ(x.edges[p[1]].to, x.find_vertex("E^-1:1"));
}

}  // namespace
}  // namespace autgog
