#include "autgog/deploy.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "support.hpp"

namespace autgog {
namespace {

using testing::fixture;
using testing::generators;
using testing::words_over;

Dfa default_language(GraphOfGroups const& g) { return language_dfa(g, default_ygraph(g)).dfa; }

Word parse(GraphOfGroups const& g, std::string const& text) { return g.alphabet().parse(text); }

// P states reached right after crossing oe by visible words of length <= maxlen
// whose erased prefix evaluates to h.
std::set<int> state_oracle(GraphOfGroups const& g, DecompositionAutomaton const& p, int oe,
                           NormalForm const& h, int maxlen) {
  NormalForm want = g.normal_form(g.to_word(h));
  std::set<int> out;
  std::set<std::pair<int, NormalForm>> seen{{p.start(), NormalForm{}}};
  std::deque<std::tuple<int, NormalForm, int>> queue{{p.start(), NormalForm{}, 0}};
  while (!queue.empty()) {
    auto [s, value, len] = queue.front();
    queue.pop_front();
    auto const& st = p.state(s);
    if (st.fresh && st.last == oe && value == want) out.insert(s);
    if (len == maxlen) continue;
    for (Letter x = 0; x < p.num_letters(); ++x) {
      int t = p.next(s, x);
      if (t == kNoState) continue;
      NormalForm v = x < g.num_letters() ? g.append(value, x) : value;
      if (seen.insert({t, v}).second) queue.emplace_back(t, v, len + 1);
    }
  }
  return out;
}

// h in G_E in path form for the value of w, when it lies there.
std::optional<NormalForm> in_script_g(GraphOfGroups const& g, NormalForm const& value, int oe) {
  if (oe == g.base_edge())
    return value.is_identity() ? std::optional<NormalForm>(value) : std::nullopt;
  auto h = g.path_form(value, g.target(oe));
  if (h.edges.empty() || h.edges.back() != oe || g.d1_preimage(oe, h.last()) < 0)
    return std::nullopt;
  return h;
}

TEST(Decompose, ModgSingleTreeEdge) {
  auto g = fixture("modg");
  auto d = edge_path_decompose(g, default_language(g), parse(g, "a b"));
  ASSERT_EQ(d.edges.size(), 1u);
  EXPECT_EQ(d.edges[0], g.find_oriented_edge("E"));
  EXPECT_EQ(d.syllables, (std::vector<Word>{parse(g, "a"), parse(g, "b")}));
  EXPECT_EQ(d.cuts, (std::vector<int>{1}));
}

TEST(Decompose, ZhnnLoopTwice) {
  auto g = fixture("zhnn");
  auto d = edge_path_decompose(g, default_language(g), parse(g, "t t"));
  int e = g.find_oriented_edge("E");
  EXPECT_EQ(d.edges, (std::vector<int>{e, e}));
  EXPECT_EQ(d.syllables, (std::vector<Word>{{}, {}, {}}));
  EXPECT_EQ(d.cuts, (std::vector<int>{0, 1}));
}

TEST(Decompose, Sl2zLongSecondSyllable) {
  auto g = fixture("sl2z");
  Dfa lang = all_words(g.num_letters(), {g.alphabet().at("a"), g.alphabet().at("b")});
  auto d = edge_path_decompose(g, lang, parse(g, "a b b b b"));
  EXPECT_EQ(d.edges, (std::vector<int>{g.find_oriented_edge("E")}));
  EXPECT_EQ(d.syllables, (std::vector<Word>{parse(g, "a"), parse(g, "b b b b")}));
}

TEST(Decompose, RejectsWordsOutsideTheLanguage) {
  auto g = fixture("modg");
  EXPECT_THROW(edge_path_decompose(g, default_language(g), parse(g, "a a")), Error);
  EXPECT_NO_THROW(edge_path_decompose(g, default_language(g), parse(g, "a b"), true));
}

TEST(Decompose, ReassemblesAndAvoidsPinches) {
  for (auto name : {"modg", "sl2z", "zhnn", "zstar"}) {
    auto g = fixture(name);
    Dfa lang = default_language(g);
    for (auto const& w : enumerate_words(lang, 6)) {
      auto d = edge_path_decompose(g, lang, w);
      Word back = d.syllables[0];
      for (std::size_t i = 0; i < d.edges.size(); ++i) {
        if (!g.is_tree(d.edges[i])) back.push_back(g.stable_letter(d.edges[i]));
        back.insert(back.end(), d.syllables[i + 1].begin(), d.syllables[i + 1].end());
        if (i > 0 && d.edges[i] == g.reverse(d.edges[i - 1])) {
          Word value = g.vertex_evaluate(g.target(d.edges[i - 1]), d.syllables[i]);
          EXPECT_LT(g.d1_preimage(d.edges[i - 1], value), 0) << name;
        }
      }
      EXPECT_EQ(back, w) << name;
    }
  }
}

class DeployFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(DeployFixture, StateSetsMatchPathEnumeration) {
  auto g = fixture(GetParam());
  DecompositionAutomaton p(g, default_language(g));
  for (auto const& pos : tree_positions(g, 2)) {
    for (int f = 0; f < g.edge_order(pos.edge); ++f) {
      NormalForm h = pos.h;
      if (pos.edge != g.base_edge())
        h.syllables.back() = g.vertex_multiply(g.target(pos.edge), h.last(), g.d1(pos.edge, f));
      auto got = state_sets(p, pos.edge, h);
      std::set<int> mine(got.begin(), got.end());
      EXPECT_EQ(mine, state_oracle(g, p, pos.edge, h, 8)) << g.format(h);
    }
  }
}

TEST_P(DeployFixture, InducedLanguagesSurject) {
  auto g = fixture(GetParam());
  DecompositionAutomaton p(g, default_language(g));
  for (auto const& pos : tree_positions(g, 2)) {
    int v = g.target(pos.edge);
    Dfa l = induced_language(p, pos.edge, pos.h);
    std::set<Word> values;
    for (auto const& w : enumerate_words(l, 6)) values.insert(g.vertex_evaluate(v, w));
    if (g.vertex_finite(v)) {
      auto all = g.vertex_elements(v);
      EXPECT_EQ(values, std::set<Word>(all.begin(), all.end())) << g.format(pos.h);
    } else {
      for (auto const& w : enumerate_words(g.vertex_acceptor(v), 2))
        EXPECT_TRUE(values.contains(w)) << g.format(pos.h);
    }
  }
}

TEST_P(DeployFixture, DeploymentIsEquivariant) {
  auto g = fixture(GetParam());
  auto d = deployment_of(language_dfa(g, default_ygraph(g)));
  for (auto const& pos : tree_positions(g, 3)) d.at(pos);
  for (auto const& msg : d.check_equivariance()) ADD_FAILURE() << msg;
}

TEST_P(DeployFixture, DistinctLanguagesStabilize) {
  auto g = fixture(GetParam());
  auto h = language_dfa(g, default_ygraph(g));
  std::vector<std::size_t> counts;
  for (int depth = 1; depth <= 3; ++depth) {
    auto d = deployment_of(h);
    for (auto const& pos : tree_positions(g, depth)) d.at(pos);
    counts.push_back(d.distinct_languages());
  }
  EXPECT_LE(counts[0], counts[1]);
  EXPECT_EQ(counts[1], counts[2]);
}

TEST_P(DeployFixture, LabelsFollowTheXLift) {
  auto g = fixture(GetParam());
  auto x = default_ygraph(g);
  auto d = deployment_of(language_dfa(g, x));
  for (auto const& pos : tree_positions(g, 3)) {
    auto const& e = d.at(pos);
    ASSERT_GE(e.x_vertex, 0);
    EXPECT_EQ(x.vertices[e.x_vertex].type, g.target(pos.edge));
    EXPECT_EQ(e.label, x.vertices[e.x_vertex].label);
  }
}

INSTANTIATE_TEST_SUITE_P(All, DeployFixture, ::testing::Values("modg", "sl2z", "zhnn", "zstar"));

TEST(StateSets, BaseIsTheStart) {
  auto g = fixture("modg");
  DecompositionAutomaton p(g, default_language(g));
  EXPECT_EQ(state_sets(p, g.base_edge(), NormalForm{}), (std::vector<int>{p.start()}));
  EXPECT_THROW(state_sets(p, g.base_edge(), g.normal_form(parse(g, "a"))), Error);
}

TEST(Induced, ModgBaseLanguage) {
  auto g = fixture("modg");
  Dfa l = induced_language(g, default_language(g), g.base_edge(), NormalForm{});
  EXPECT_TRUE(equivalent(l, finite_language(g.num_letters(), {Word{}, parse(g, "a")})));
}

TEST(Induced, ZhnnAlwaysEmptyWord) {
  auto g = fixture("zhnn");
  DecompositionAutomaton p(g, default_language(g));
  Dfa eps = finite_language(g.num_letters(), {Word{}});
  for (auto const& pos : tree_positions(g, 3))
    EXPECT_TRUE(equivalent(induced_language(p, pos.edge, pos.h), eps)) << g.format(pos.h);
}

TEST(Induced, Sl2zTranslatesAcrossTheEdgeGroup) {
  auto g = fixture("sl2z");
  DecompositionAutomaton p(g, default_language(g));
  int e = g.find_oriented_edge("E");
  ConjugateRep c{e, g.path_form(g.normal_form(parse(g, "a")), g.target(e))};
  ASSERT_EQ(c.h.edges, (std::vector<int>{e}));
  c.h.syllables.back().clear();
  NormalForm hx = c.h;
  hx.syllables.back() = parse(g, "b3");
  Dfa left = marked_induced_language(p, e, c.h);
  Dfa right = translate_marker(g, e, g.edge_group(e).find("x"), marked_induced_language(p, e, hx));
  EXPECT_TRUE(equivalent(left, right));
}

TEST(Deployment, ModgIsConstantPerVertexType) {
  auto g = fixture("modg");
  auto d = deployment_of(language_dfa(g, default_ygraph(g)));
  std::map<int, std::set<int>> ids;
  for (auto const& pos : tree_positions(g, 3)) ids[g.target(pos.edge)].insert(d.at(pos).language_id);
  for (auto const& [v, s] : ids) EXPECT_EQ(s.size(), 1u) << g.vertex(v).name;
}

TEST(FellowTravel, Examples) {
  auto g = fixture("modg");
  auto ab = parse(g, "a b"), abi = parse(g, "a b^-1");
  EXPECT_TRUE(async_fellow_travel(g, ab, ab, 0).ok);
  auto r = async_fellow_travel(g, ab, abi, 1);
  EXPECT_TRUE(r.ok);
  ASSERT_FALSE(r.path.empty());
  EXPECT_EQ(r.path.front(), std::make_pair(0, 0));
  EXPECT_EQ(r.path.back(), std::make_pair(2, 2));
  EXPECT_FALSE(async_fellow_travel(g, parse(g, "a"), parse(g, "b"), 1).ok);
  EXPECT_TRUE(sync_fellow_travel(g, ab, ab, 0));
  EXPECT_TRUE(sync_fellow_travel(g, ab, abi, 1));
  auto z = fixture("zhnn");
  EXPECT_FALSE(sync_fellow_travel(z, parse(z, "t t"), Word{}, 1));
  EXPECT_TRUE(sync_fellow_travel(z, parse(z, "t t"), Word{}, 2));
}

TEST(FellowTravel, GridMatchesNaiveSearch) {
  for (auto [name, len] : {std::pair{"zhnn", 5}, std::pair{"modg", 3}}) {
    auto g = fixture(name);
    auto words = words_over(generators(g), len);
    CayleyBall ball(g, 2);
    for (int K = 0; K <= 2; ++K)
      for (auto const& w1 : words)
        for (auto const& w2 : words) {
          bool grid = async_fellow_travel(g, w1, w2, K, &ball).ok;
          ASSERT_EQ(grid, async_fellow_travel_naive(g, w1, w2, K))
              << name << " " << g.alphabet().format(w1) << " / " << g.alphabet().format(w2);
          EXPECT_EQ(pair_constant(g, w1, w2, false, ball) <= K, grid);
        }
  }
}

TEST(FellowTravel, SyncImpliesAsync) {
  auto g = fixture("modg");
  auto words = words_over(generators(g), 3);
  for (auto const& w1 : words)
    for (auto const& w2 : words)
      if (sync_fellow_travel(g, w1, w2, 1)) EXPECT_TRUE(async_fellow_travel(g, w1, w2, 1).ok);
}

TEST(FtConstant, ZhnnIsOne) {
  auto g = fixture("zhnn");
  for (bool sync : {false, true}) {
    auto r = ft_constant(g, default_language(g), 6, sync);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.K, 1);
    EXPECT_GT(r.pairs, 0u);
  }
}

TEST(FtConstant, ModgStableInMaxlen) {
  auto g = fixture("modg");
  Dfa l = default_language(g);
  auto r5 = ft_constant(g, l, 5, false);
  auto r7 = ft_constant(g, l, 7, false);
  EXPECT_TRUE(r5.ok);
  EXPECT_EQ(r5.K, r7.K);
  EXPECT_GE(r7.pairs, r5.pairs);
}

TEST(FtConstant, SmallBoundFailsWithWitness) {
  auto g = fixture("zhnn");
  auto r = ft_constant(g, default_language(g), 4, false, 0);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.worst1.empty() && r.worst2.empty());
}

TEST(Equivalence, LanguageAndSynchronizedAgree) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  Dfa l = language_dfa(g, x).dfa, s = synchronize(g, x).dfa;
  auto k = ft_constant(g, l, 6, false).K;
  auto r = equivalent_upto(g, l, s, 8, k);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.maxlen, 8);
  EXPECT_TRUE(equivalent_upto(g, l, l, 6, k).ok);
}

TEST(Equivalence, ZeroConstantFailsWithWitness) {
  auto g = fixture("modg");
  auto x = default_ygraph(g);
  auto r = equivalent_upto(g, language_dfa(g, x).dfa, synchronize(g, x).dfa, 4, 0);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.witness1, r.witness2);
}

TEST(Tracker, AcceptsEverythingAndReportsSubsets) {
  for (auto [name, K, len] : {std::tuple{"zhnn", 1, 6}, std::tuple{"modg", 1, 5}}) {
    auto g = fixture(name);
    Dfa l = default_language(g);
    TrackerMachine m(g, l, K);
    auto const& p = m.automaton();
    for (auto const& w : words_over(generators(g), len)) {
      int s = m.run(w);
      NormalForm value = g.normal_form(w);
      for (auto const& [oe, states] : m.report(s)) {
        auto h = in_script_g(g, value, oe);
        ASSERT_TRUE(h) << name << " " << g.alphabet().format(w);
        auto exact = state_sets(p, oe, *h);
        for (int q : states)
          EXPECT_TRUE(std::find(exact.begin(), exact.end(), q) != exact.end())
              << name << " " << g.alphabet().format(w);
      }
    }
    EXPECT_GT(m.num_states(), 0u);
  }
}

TEST(Tracker, Examples) {
  auto z = fixture("zhnn");
  TrackerMachine mz(z, default_language(z), 1);
  auto rz = mz.report(mz.run(parse(z, "t")));
  EXPECT_TRUE(rz.contains(z.find_oriented_edge("E")));

  auto g = fixture("modg");
  Dfa l = default_language(g);
  TrackerMachine m(g, l, 1);
  auto r = m.report(m.run(Word{0}));
  ASSERT_TRUE(r.contains(g.base_edge()));
  EXPECT_TRUE(equivalent(syllable_language(m.automaton(), g.base_edge(), r[g.base_edge()]),
                         syllable_language(m.automaton(), g.base_edge(), {m.automaton().start()})));

  Word ab = parse(g, "a b");
  int back = g.find_oriented_edge("E^-1");
  auto rab = m.report(m.run(ab));
  ASSERT_TRUE(rab.contains(back));
  NormalForm h = *in_script_g(g, g.normal_form(ab), back);
  EXPECT_TRUE(equivalent(syllable_language(m.automaton(), back, rab[back]),
                         syllable_language(m.automaton(), back, state_sets(m.automaton(), back, h))));
}

TEST(Tracker, StateCapIsAnError) {
  auto g = fixture("modg");
  TrackerMachine m(g, default_language(g), 1, 2);
  EXPECT_THROW(
      {
        for (auto const& w : words_over(generators(g), 4)) m.run(w);
      },
      Error);
}

}  // namespace
}  // namespace autgog
