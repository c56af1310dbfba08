// Shared helpers for the test binaries.
#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "autgog/gog.hpp"
#include "autgog/ygraph.hpp"

namespace autgog::testing {

inline GraphOfGroups fixture(std::string const& name) {
  return load_spec(std::string(AUTGOG_FIXTURES) + "/" + name + ".gog");
}

// All words over the given letters of length <= maxlen, shortlex order.
inline std::vector<Word> words_over(std::vector<Letter> const& letters, int maxlen) {
  std::vector<Word> out{{}};
  std::vector<Word> level{{}};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (auto const& w : level)
      for (Letter a : letters) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

inline std::vector<Letter> generators(GraphOfGroups const& g) {
  std::vector<Letter> out;
  for (Letter a = 1; a < g.num_letters(); ++a) out.push_back(a);
  return out;
}

// Integer 2x2 matrices, for the SL(2,Z) oracle a -> S, b -> ST.
using Mat = std::array<long long, 4>;

inline Mat mat_mul(Mat const& x, Mat const& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// Matrix of each letter of the SL2Z fixture: the k-th listed element of the
// Z/4 (resp. Z/6) factor is S^k (resp. (ST)^k).
inline std::vector<Mat> sl2z_letter_matrices(GraphOfGroups const& g) {
  Mat const id{1, 0, 0, 1}, s{0, -1, 1, 0}, st{0, -1, 1, 1};
  std::vector<Mat> out(g.num_letters(), id);
  for (Letter a = 0; a < g.num_letters(); ++a) {
    int v = g.in_vertex(0, a) ? 0 : 1;
    auto const& grp = g.vertex(v).group;
    int k = grp.element_of(a == 0 ? Word{} : Word{g.to_local(v, a)});
    for (int i = 0; i < k; ++i) out[a] = mat_mul(out[a], v == 0 ? s : st);
  }
  return out;
}

inline Mat matrix_of(std::vector<Mat> const& letters, Word const& w) {
  Mat m{1, 0, 0, 1};
  for (Letter a : w) m = mat_mul(m, letters[a]);
  return m;
}

// Visible words of X up to maxlen, by walking syllable paths directly.
inline std::set<Word> brute_force_language(GraphOfGroups const& g, YGraph const& x, int maxlen) {
  std::set<Word> out;
  auto go = [&](auto&& self, int v, int ein, Word const& prefix) -> void {
    int room = maxlen - static_cast<int>(prefix.size());
    auto const& vx = x.vertices[v];
    for (auto const& w : enumerate_words(vx.lang, room)) {
      Word full = prefix;
      full.insert(full.end(), w.begin(), w.end());
      out.insert(full);
    }
    if (room < 1) return;
    for (int i : x.out_edges(v)) {
      auto const& e = x.edges[i];
      for (auto const& u : enumerate_words(vx.lang, room - 1)) {
        Word value = g.vertex_evaluate(vx.type, u);
        if (!e.values.accepts(value)) continue;
        if (ein != g.base_edge() && e.type == g.reverse(ein) &&
            terminal_image(g, ein).accepts(value))
          continue;
        Word next = prefix;
        next.insert(next.end(), u.begin(), u.end());
        next.push_back(visible_letter(g, e.type));
        self(self, e.to, e.type, next);
      }
    }
  };
  go(go, x.start, g.base_edge(), Word{});
  return out;
}

}  // namespace autgog::testing
