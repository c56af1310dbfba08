#include "autgog/ygraph.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "support.hpp"

namespace autgog {
namespace {

using testing::brute_force_language;
using testing::fixture;

std::set<std::string> value_names(GraphOfGroups const& g, Dfa const& s) {
  std::set<std::string> out;
  for (auto const& w : enumerate_words(s, 4))
    out.insert(w.empty() ? std::string("1") : g.alphabet().format(w));
  return out;
}

TEST(CosetPartition, Sl2zCells) {
  auto g = fixture("sl2z");
  int e = g.find_oriented_edge("E");
  auto cells = shortlex_coset_partition(g, e);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(value_names(g, cells[0]), (std::set<std::string>{"1", "a"}));
  EXPECT_EQ(value_names(g, cells[1]), (std::set<std::string>{"x", "a3"}));
  auto back = shortlex_coset_partition(g, g.reverse(e));
  EXPECT_EQ(value_names(g, back[0]), (std::set<std::string>{"1", "b", "b2"}));
  EXPECT_EQ(value_names(g, back[1]), (std::set<std::string>{"x", "b4", "b5"}));
}

TEST(CosetPartition, TrivialEdgeGroupIsOneCell) {
  auto g = fixture("modg");
  auto cells = shortlex_coset_partition(g, g.find_oriented_edge("E^-1"));
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(value_names(g, cells[0]), (std::set<std::string>{"1", "b", "b^-1"}));
}

TEST(ValueSets, PreimageAndImage) {
  auto g = fixture("sl2z");
  int v1 = g.find_vertex("V1");
  Dfa words = all_words(g.num_letters(), {g.alphabet().at("a")});
  Dfa half = value_set(g, v1, {Word{}, g.alphabet().parse("x")});
  Dfa pre = preimage(g, v1, words, half);
  EXPECT_TRUE(pre.accepts(g.alphabet().parse("a a")));
  EXPECT_FALSE(pre.accepts(g.alphabet().parse("a")));
  EXPECT_EQ(value_names(g, image(g, v1, words)).size(), 4u);
}

TEST(ValueSets, FreeVertexPreimageKeepsInterleavedE) {
  auto g = fixture("zstar");
  int v2 = g.find_vertex("V2");
  auto c = g.alphabet().at("c");
  Dfa lang = all_words(g.num_letters(), {0, c});
  Dfa s = value_set(g, v2, {Word{c, c}});
  Dfa pre = preimage(g, v2, lang, s);
  EXPECT_TRUE(pre.accepts(Word{c, 0, c}));
  EXPECT_FALSE(pre.accepts(Word{c}));
}

TEST(Structure, RejectsMissingElementsAndForeignLetters) {
  auto g = fixture("modg");
  int v1 = g.find_vertex("V1");
  EXPECT_THROW(check_structure(g, v1, finite_language(g.num_letters(), {Word{}})), Error);
  EXPECT_THROW(check_structure(g, v1, finite_language(g.num_letters(),
                                                      {Word{}, g.alphabet().parse("a b")})),
               Error);
  EXPECT_NO_THROW(check_structure(g, v1, all_words(g.num_letters(), {g.alphabet().at("a")})));
}

TEST(DefaultYGraph, VertexCounts) {
  EXPECT_EQ(default_ygraph(fixture("modg")).num_vertices(), 3);
  EXPECT_EQ(default_ygraph(fixture("sl2z")).num_vertices(), 5);
  EXPECT_EQ(default_ygraph(fixture("zhnn")).num_vertices(), 3);
}

class YFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(YFixture, SpecialYGraphsValidate) {
  auto g = fixture(GetParam());
  for (auto const& x : {default_ygraph(g), biautomatic_ygraph(g)}) {
    auto v = validate_ygraph(g, x);
    for (auto const& e : v) ADD_FAILURE() << e.axiom << ": " << e.detail;
  }
}

TEST_P(YFixture, RoutesAgree) {
  auto g = fixture(GetParam());
  for (auto const& x : {default_ygraph(g), biautomatic_ygraph(g)}) {
    Dfa a = visible_language(g, x);
    Dfa b = visible_language_bx(g, x);
    EXPECT_TRUE(equivalent(a, b));
    EXPECT_TRUE(equivalent(erase_tree_letters(g, a), erase_tree_letters(g, b)));
  }
}

TEST_P(YFixture, MatchesBruteForcePaths) {
  auto g = fixture(GetParam());
  int const maxlen = 6;
  for (auto const& x : {default_ygraph(g), biautomatic_ygraph(g)}) {
    auto words = enumerate_words(visible_language(g, x), maxlen);
    std::set<Word> got(words.begin(), words.end());
    EXPECT_EQ(got, brute_force_language(g, x, maxlen));
  }
}

TEST_P(YFixture, LanguageCoversBall) {
  auto g = fixture(GetParam());
  CayleyBall ball(g, 3);
  auto h = language_dfa(g, default_ygraph(g));
  std::set<NormalForm> seen;
  for (auto const& w : enumerate_words(h.dfa, 9)) seen.insert(g.normal_form(w));
  for (auto const& [nf, d] : ball.entries())
    EXPECT_TRUE(seen.contains(nf)) << g.format(nf);
}

TEST_P(YFixture, SynchronizedLanguageIsBijective) {
  auto g = fixture(GetParam());
  for (auto const& x : {default_ygraph(g), biautomatic_ygraph(g)}) {
    auto h = synchronize(g, x);
    EXPECT_TRUE(h.unique);
    EXPECT_TRUE(subset_of(h.dfa, language_dfa(g, x).dfa));
    std::map<NormalForm, Word> seen;
    for (auto const& w : enumerate_words(h.dfa, 8)) {
      auto [it, fresh] = seen.emplace(g.normal_form(w), w);
      EXPECT_TRUE(fresh) << g.alphabet().format(w) << " and " << g.alphabet().format(it->second);
    }
    CayleyBall ball(g, 3);
    for (auto const& [nf, d] : ball.entries())
      EXPECT_TRUE(seen.contains(nf)) << g.format(nf);
  }
}

TEST_P(YFixture, FileRoundTrip) {
  auto g = fixture(GetParam());
  auto x = default_ygraph(g);
  auto dir = std::filesystem::temp_directory_path() / ("ygraph_rt_" + GetParam());
  std::filesystem::create_directories(dir);
  write_ygraph(g, x, (dir / "x.yg").string());
  auto y = read_ygraph(g, (dir / "x.yg").string());
  ASSERT_EQ(y.num_vertices(), x.num_vertices());
  ASSERT_EQ(y.edges.size(), x.edges.size());
  EXPECT_EQ(y.start, x.start);
  EXPECT_EQ(y.actions, x.actions);
  for (int i = 0; i < x.num_vertices(); ++i)
    EXPECT_TRUE(equivalent(x.vertices[i].lang, y.vertices[i].lang));
  for (std::size_t i = 0; i < x.edges.size(); ++i)
    EXPECT_TRUE(equivalent(x.edges[i].values, y.edges[i].values));
  EXPECT_TRUE(validate_ygraph(g, y).empty());
  std::filesystem::remove_all(dir);
}

INSTANTIATE_TEST_SUITE_P(All, YFixture, ::testing::Values("modg", "sl2z", "zhnn", "zstar"));

TEST(Language, ModgCountsUpToLengthTwo) {
  auto g = fixture("modg");
  auto h = language_dfa(g, default_ygraph(g));
  EXPECT_EQ(enumerate_words(h.dfa, 2).size(), 8u);
  EXPECT_EQ(default_ygraph(g).num_vertices(), 3);
}

TEST(Language, ZhnnIsPowersOfT) {
  auto g = fixture("zhnn");
  auto h = language_dfa(g, default_ygraph(g));
  Letter t = g.alphabet().at("t"), ti = g.alphabet().at("t^-1");
  Dfa want(g.num_letters(), 3);
  want.set_accept(0);
  want.set_accept(1);
  want.set_accept(2);
  want.set_next(0, t, 1);
  want.set_next(1, t, 1);
  want.set_next(0, ti, 2);
  want.set_next(2, ti, 2);
  EXPECT_TRUE(equivalent(h.dfa, want));
}

TEST(Language, BiautomaticModgHasFourStates) {
  auto g = fixture("modg");
  Gfsa a = language_gfsa(g, biautomatic_ygraph(g));
  EXPECT_EQ(a.num_states, 4);
}

TEST(Validate, ReportsBrokenPartition) {
  auto g = fixture("sl2z");
  auto x = default_ygraph(g);
  x.edges.pop_back();
  auto v = validate_ygraph(g, x);
  ASSERT_FALSE(v.empty());
  bool partition = false;
  for (auto const& e : v) partition = partition || e.axiom == "partition";
  EXPECT_TRUE(partition);
}

TEST(Validate, ReportsBrokenAction) {
  auto g = fixture("sl2z");
  auto x = default_ygraph(g);
  ASSERT_FALSE(x.actions.empty());
  x.actions.begin()->second = x.permutation(-1, 0, 0);
  auto v = validate_ygraph(g, x);
  EXPECT_FALSE(v.empty());
}

TEST(Validate, ReportsUnreachableVertex) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  x.vertices.push_back(x.vertices.back());
  x.vertices.back().name = "orphan";
  bool reachable = false;
  for (auto const& e : validate_ygraph(g, x)) reachable = reachable || e.axiom == "reachable";
  EXPECT_TRUE(reachable);
}

TEST(Dot, MentionsEveryVertex) {
  auto g = fixture("sl2z");
  auto x = default_ygraph(g);
  auto dot = ygraph_to_dot(g, x);
  for (auto const& v : x.vertices) EXPECT_NE(dot.find(v.name), std::string::npos);
}

}  // namespace
}  // namespace autgog
