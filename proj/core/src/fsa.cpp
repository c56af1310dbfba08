#include "autgog/fsa.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <tuple>
#include <utility>

namespace autgog {

// ---------------------------------------------------------------- Alphabet

Letter Alphabet::add(std::string name, Letter inverse) {
  if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
    throw Error("bad letter name '" + name + "'");
  if (index_.count(name)) throw Error("duplicate letter '" + name + "'");
  Letter a = size();
  index_.emplace(name, a);
  names_.push_back(std::move(name));
  inverse_.push_back(kEpsilon);
  if (inverse != kEpsilon) set_inverse(a, inverse);
  return a;
}

void Alphabet::set_inverse(Letter a, Letter b) {
  inverse_.at(a) = b;
  inverse_.at(b) = a;
}

void Alphabet::add_alias(std::string name, Letter a) {
  if (a < 0 || a >= size()) throw Error("alias for unknown letter");
  auto it = index_.find(name);
  if (it != index_.end()) {
    if (it->second == a) return;
    throw Error("letter name '" + name + "' is ambiguous");
  }
  index_.emplace(std::move(name), a);
}

Letter Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? kEpsilon : it->second;
}

Letter Alphabet::at(std::string_view name) const {
  Letter a = find(name);
  if (a == kEpsilon) throw Error("unknown letter '" + std::string(name) + "'");
  return a;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(at(tok));
  return w;
}

std::string Alphabet::format(std::span<Letter const> w) const {
  std::string out;
  for (Letter a : w) {
    if (!out.empty()) out += ' ';
    out += name(a);
  }
  return out;
}

Word Alphabet::invert(std::span<Letter const> w) const {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Letter b = inverse(*it);
    if (b == kEpsilon) throw Error("letter '" + name(*it) + "' has no inverse");
    r.push_back(b);
  }
  return r;
}

bool shortlex_less(std::span<Letter const> u, std::span<Letter const> v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

// ---------------------------------------------------------------- Dfa / Nfa

Dfa::Dfa(int num_letters, int num_states) : num_letters_(num_letters) {
  if (num_letters < 0 || num_states < 1) throw Error("bad Dfa dimensions");
  accept_.assign(num_states, 0);
  delta_.assign(static_cast<std::size_t>(num_states) * num_letters, kNoState);
}

int Dfa::add_state(bool accept) {
  accept_.push_back(accept);
  delta_.resize(delta_.size() + num_letters_, kNoState);
  return num_states() - 1;
}

void Dfa::set_next(int s, Letter a, int t) {
  if (s < 0 || s >= num_states() || a < 0 || a >= num_letters_ || t < kNoState ||
      t >= num_states())
    throw Error("Dfa::set_next out of range");
  delta_[static_cast<std::size_t>(s) * num_letters_ + a] = t;
}

int Dfa::run(std::span<Letter const> w, int from) const {
  int s = from;
  for (Letter a : w) {
    if (s == kNoState) break;
    if (a < 0 || a >= num_letters_) return kNoState;
    s = next(s, a);
  }
  return s;
}

bool Dfa::accepts(std::span<Letter const> w) const {
  int s = run(w);
  return s != kNoState && is_accept(s);
}

Nfa Nfa::from_dfa(Dfa const& d) {
  Nfa n(d.num_letters());
  for (int s = 0; s < d.num_states(); ++s) n.add_state(d.is_accept(s));
  for (int s = 0; s < d.num_states(); ++s)
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int t = d.next(s, a); t != kNoState) n.add_edge(s, a, t);
  n.add_start(d.start());
  return n;
}

int Nfa::add_state(bool accept) {
  accept_.push_back(accept);
  edges_.emplace_back();
  return num_states() - 1;
}

void Nfa::add_edge(int from, Letter a, int to) {
  if (from < 0 || from >= num_states() || to < 0 || to >= num_states() ||
      a < kEpsilon || a >= num_letters_)
    throw Error("Nfa::add_edge out of range");
  edges_[from].push_back({a, to});
}

std::vector<int> Nfa::closure(std::vector<int> states) const {
  std::vector<char> seen(num_states(), 0);
  std::vector<int> stack;
  for (int s : states)
    if (!seen[s]) seen[s] = 1, stack.push_back(s);
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto const& e : edges_[s])
      if (e.letter == kEpsilon && !seen[e.target]) seen[e.target] = 1, stack.push_back(e.target);
  }
  std::vector<int> out;
  for (int s = 0; s < num_states(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

bool Nfa::accepts(std::span<Letter const> w) const {
  auto cur = closure(starts_);
  for (Letter a : w) {
    std::vector<int> nxt;
    for (int s : cur)
      for (auto const& e : edges_[s])
        if (e.letter == a) nxt.push_back(e.target);
    cur = closure(std::move(nxt));
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int s) { return is_accept(s); });
}

int Gfsa::add_state(bool is_accept) {
  accept.push_back(is_accept);
  return num_states++;
}

void Gfsa::add_edge(int from, int to, Dfa label) {
  if (label.num_letters() != num_letters) throw Error("Gfsa label alphabet mismatch");
  edges.push_back({from, to, std::make_shared<Dfa const>(std::move(label))});
}

TwoTapeDfa::TwoTapeDfa(int base_letters, Dfa dfa) : base_(base_letters), dfa_(std::move(dfa)) {
  if (dfa_.num_letters() != pair_letters(base_letters))
    throw Error("two-tape automaton has wrong alphabet size");
}

Word TwoTapeDfa::padded(std::span<Letter const> u, std::span<Letter const> v) const {
  Word w;
  std::size_t n = std::max(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i)
    w.push_back(pair(i < u.size() ? u[i] : pad(), i < v.size() ? v[i] : pad()));
  return w;
}

bool TwoTapeDfa::accepts(std::span<Letter const> u, std::span<Letter const> v) const {
  return dfa_.accepts(padded(u, v));
}

// ---------------------------------------------------------------- algorithms

namespace {

std::vector<char> coreachable(Dfa const& d) {
  int n = d.num_states();
  std::vector<std::vector<int>> rev(n);
  for (int s = 0; s < n; ++s)
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int t = d.next(s, a); t != kNoState) rev[t].push_back(s);
  std::vector<char> live(n, 0);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s)
    if (d.is_accept(s)) live[s] = 1, stack.push_back(s);
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : rev[t])
      if (!live[s]) live[s] = 1, stack.push_back(s);
  }
  return live;
}

void check_same_letters(Dfa const& x, Dfa const& y) {
  if (x.num_letters() != y.num_letters()) throw Error("automata over different alphabets");
}

}  // namespace

// Keeps live states and renumbers them in breadth-first order from the start,
// so two minimal automata for the same language compare equal.
Dfa trim(Dfa const& d) {
  auto live = coreachable(d);
  if (!live[d.start()]) return empty_language(d.num_letters());
  std::vector<int> id(d.num_states(), kNoState);
  std::vector<int> order{d.start()};
  id[d.start()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter a = 0; a < d.num_letters(); ++a) {
      int t = d.next(order[i], a);
      if (t != kNoState && live[t] && id[t] == kNoState) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  Dfa out(d.num_letters(), static_cast<int>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    int s = order[i];
    out.set_accept(static_cast<int>(i), d.is_accept(s));
    for (Letter a = 0; a < d.num_letters(); ++a) {
      int t = d.next(s, a);
      if (t != kNoState && id[t] != kNoState) out.set_next(static_cast<int>(i), a, id[t]);
    }
  }
  return out;
}

Dfa determinize(Nfa const& n) {
  int k = n.num_letters();
  std::vector<std::vector<int>> close(n.num_states());
  for (int s = 0; s < n.num_states(); ++s) close[s] = n.closure({s});

  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = index.emplace(set, static_cast<int>(sets.size()));
    if (fresh) sets.push_back(std::move(set));
    return it->second;
  };
  intern(n.closure(n.starts()));
  Dfa out(k, 1);
  std::vector<std::vector<int>> moves(k);
  std::vector<char> mark(n.num_states(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto const cur = sets[i];
    out.set_accept(static_cast<int>(i),
                   std::any_of(cur.begin(), cur.end(), [&](int s) { return n.is_accept(s); }));
    for (auto& m : moves) m.clear();
    for (int s : cur)
      for (auto const& e : n.edges(s))
        if (e.letter != kEpsilon) moves[e.letter].push_back(e.target);
    for (Letter a = 0; a < k; ++a) {
      if (moves[a].empty()) continue;
      std::vector<int> next;
      for (int t : moves[a])
        for (int u : close[t])
          if (!mark[u]) mark[u] = 1, next.push_back(u);
      for (int u : next) mark[u] = 0;
      std::sort(next.begin(), next.end());
      int before = static_cast<int>(sets.size());
      int j = intern(std::move(next));
      if (j == before) out.add_state();
      out.set_next(static_cast<int>(i), a, j);
    }
  }
  return trim(out);
}

Dfa product_boolean(Dfa const& x, Dfa const& y, BoolOp op) {
  check_same_letters(x, y);
  int k = x.num_letters();
  // kNoState on either side stands for the implicit dead state.
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, fresh] = index.emplace(p, static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back(p);
    return std::pair{it->second, fresh};
  };
  intern({x.start(), y.start()});
  Dfa out(k, 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    bool ax = p != kNoState && x.is_accept(p);
    bool ay = q != kNoState && y.is_accept(q);
    bool acc = op == BoolOp::kAnd ? (ax && ay) : op == BoolOp::kOr ? (ax || ay) : (ax && !ay);
    out.set_accept(static_cast<int>(i), acc);
    for (Letter a = 0; a < k; ++a) {
      int p2 = p == kNoState ? kNoState : x.next(p, a);
      int q2 = q == kNoState ? kNoState : y.next(q, a);
      if (p2 == kNoState && (op != BoolOp::kOr || q2 == kNoState)) continue;
      if (op == BoolOp::kAnd && q2 == kNoState) continue;
      auto [j, fresh] = intern({p2, q2});
      if (fresh) out.add_state();
      out.set_next(static_cast<int>(i), a, j);
    }
  }
  return trim(out);
}

// Moore partition refinement on a trimmed automaton. Missing transitions go
// to the dead class, which no live state belongs to.
Dfa minimize(Dfa const& d) {
  Dfa t = trim(d);
  int n = t.num_states(), k = t.num_letters();
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = t.is_accept(s) ? 1 : 0;
  int classes = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_index;
    std::vector<int> next_cls(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig{cls[s]};
      for (Letter a = 0; a < k; ++a) {
        int u = t.next(s, a);
        sig.push_back(u == kNoState ? -1 : cls[u]);
      }
      auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size()));
      next_cls[s] = it->second;
    }
    int count = static_cast<int>(sig_index.size());
    cls.swap(next_cls);
    if (count == classes) break;
    classes = count;
  }
  Dfa q(k, classes);
  q.set_start(cls[t.start()]);
  for (int s = 0; s < n; ++s) {
    q.set_accept(cls[s], t.is_accept(s));
    for (Letter a = 0; a < k; ++a)
      if (int u = t.next(s, a); u != kNoState) q.set_next(cls[s], a, cls[u]);
  }
  return trim(q);
}

Dfa prohibit_subwords(Dfa const& x, std::vector<Word> const& bad) {
  int k = x.num_letters();
  // Aho-Corasick automaton; `hit` marks nodes whose suffix is a forbidden word.
  std::vector<std::vector<int>> go(1, std::vector<int>(k, -1));
  std::vector<char> hit(1, 0);
  for (auto const& w : bad) {
    if (w.empty()) return empty_language(k);
    int s = 0;
    for (Letter a : w) {
      if (a < 0 || a >= k) throw Error("forbidden word uses unknown letter");
      if (go[s][a] < 0) {
        go[s][a] = static_cast<int>(go.size());
        go.emplace_back(k, -1);
        hit.push_back(0);
      }
      s = go[s][a];
    }
    hit[s] = 1;
  }
  std::vector<int> fail(go.size(), 0);
  std::deque<int> queue;
  for (Letter a = 0; a < k; ++a) {
    if (go[0][a] < 0) go[0][a] = 0;
    else queue.push_back(go[0][a]);
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    hit[s] = hit[s] || hit[fail[s]];
    for (Letter a = 0; a < k; ++a) {
      int t = go[s][a];
      if (t < 0) {
        go[s][a] = go[fail[s]][a];
      } else {
        fail[t] = go[fail[s]][a];
        queue.push_back(t);
      }
    }
  }
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs{{x.start(), 0}};
  index[{x.start(), 0}] = 0;
  Dfa out(k, 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, s] = pairs[i];
    out.set_accept(static_cast<int>(i), x.is_accept(p));
    for (Letter a = 0; a < k; ++a) {
      int p2 = x.next(p, a);
      int s2 = go[s][a];
      if (p2 == kNoState || hit[s2]) continue;
      auto [it, fresh] = index.emplace(std::pair{p2, s2}, static_cast<int>(pairs.size()));
      if (fresh) {
        pairs.emplace_back(p2, s2);
        out.add_state();
      }
      out.set_next(static_cast<int>(i), a, it->second);
    }
  }
  return trim(out);
}

Nfa expand_gfsa(Gfsa const& g) {
  Nfa n(g.num_letters);
  for (int s = 0; s < g.num_states; ++s) n.add_state(g.accept.at(s));
  for (int s : g.starts) n.add_start(s);
  for (auto const& e : g.edges) {
    Dfa const& d = *e.label;
    int base = n.num_states();
    for (int s = 0; s < d.num_states(); ++s) n.add_state();
    for (int s = 0; s < d.num_states(); ++s) {
      for (Letter a = 0; a < d.num_letters(); ++a)
        if (int t = d.next(s, a); t != kNoState) n.add_edge(base + s, a, base + t);
      if (d.is_accept(s)) n.add_edge(base + s, kEpsilon, e.to);
    }
    n.add_edge(e.from, kEpsilon, base + d.start());
  }
  return n;
}

std::vector<Word> enumerate_words(Dfa const& d, int maxlen) {
  Dfa t = trim(d);
  std::vector<Word> out;
  // Expanding each level in order keeps the next level shortlex sorted.
  std::vector<std::pair<Word, int>> level{{Word{}, t.start()}};
  for (int len = 0; len <= maxlen && !level.empty(); ++len) {
    std::vector<std::pair<Word, int>> next;
    for (auto& [w, s] : level) {
      if (t.is_accept(s)) out.push_back(w);
      if (len == maxlen) continue;
      for (Letter a = 0; a < t.num_letters(); ++a)
        if (int u = t.next(s, a); u != kNoState) {
          Word v = w;
          v.push_back(a);
          next.emplace_back(std::move(v), u);
        }
    }
    level.swap(next);
  }
  return out;
}

std::vector<Word> enumerate_words(Nfa const& n, int maxlen) {
  return enumerate_words(determinize(n), maxlen);
}

namespace {

// Pair-alphabet automaton accepting padded (u, v) with u in L(d).
Dfa lift_first_tape(Dfa const& d, int base) {
  int k = TwoTapeDfa::pair_letters(base);
  int n = d.num_states();
  int done = n;  // first tape exhausted in an accepting state
  Dfa out(k, n + 1);
  out.set_start(d.start());
  out.set_accept(done, true);
  auto pair = [&](Letter a, Letter b) { return a * (base + 1) + b; };
  for (int s = 0; s < n; ++s) {
    out.set_accept(s, d.is_accept(s));
    for (Letter a = 0; a < base; ++a) {
      int t = d.next(s, a);
      if (t == kNoState) continue;
      for (Letter b = 0; b <= base; ++b) out.set_next(s, pair(a, b), t);
    }
    if (d.is_accept(s))
      for (Letter b = 0; b < base; ++b) out.set_next(s, pair(base, b), done);
  }
  for (Letter b = 0; b < base; ++b) out.set_next(done, pair(base, b), done);
  return trim(out);
}

}  // namespace

Dfa shortlex_filter(Dfa const& lang, TwoTapeDfa const& relation) {
  int base = relation.base_letters();
  if (lang.num_letters() != base) throw Error("shortlex_filter alphabet mismatch");
  auto smaller = intersect(relation, shortlex_less_relation(base));
  Dfa pairs = product_boolean(smaller.dfa(), lift_first_tape(lang, base), BoolOp::kAnd);
  Dfa beaten = determinize(project_second(TwoTapeDfa(base, pairs)));
  return minimize(product_boolean(lang, beaten, BoolOp::kDiff));
}

// ---------------------------------------------------------------- helpers

Dfa empty_language(int num_letters) { return Dfa(num_letters, 1); }

Dfa all_words(int num_letters, std::vector<Letter> const& letters) {
  Dfa d(num_letters, 1);
  d.set_accept(0);
  for (Letter a : letters) d.set_next(0, a, 0);
  return d;
}

Dfa all_words(int num_letters) {
  std::vector<Letter> letters(num_letters);
  for (int a = 0; a < num_letters; ++a) letters[a] = a;
  return all_words(num_letters, letters);
}

Dfa finite_language(int num_letters, std::vector<Word> const& words) {
  Dfa trie(num_letters, 1);
  for (auto const& w : words) {
    int s = 0;
    for (Letter a : w) {
      int t = trie.next(s, a);
      if (t == kNoState) {
        t = trie.add_state();
        trie.set_next(s, a, t);
      }
      s = t;
    }
    trie.set_accept(s);
  }
  return minimize(trie);
}

Dfa complement(Dfa const& d) {
  Dfa c = d;
  int sink = c.add_state();
  for (int s = 0; s < c.num_states(); ++s) {
    c.set_accept(s, s == sink || !d.is_accept(s));
    for (Letter a = 0; a < c.num_letters(); ++a)
      if (c.next(s, a) == kNoState) c.set_next(s, a, sink);
  }
  return trim(c);
}

namespace {

int embed(Nfa& n, Dfa const& d) {
  int base = n.num_states();
  for (int s = 0; s < d.num_states(); ++s) n.add_state(d.is_accept(s));
  for (int s = 0; s < d.num_states(); ++s)
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int t = d.next(s, a); t != kNoState) n.add_edge(base + s, a, base + t);
  return base;
}

}  // namespace

Dfa concatenate(Dfa const& x, Dfa const& y) {
  check_same_letters(x, y);
  Nfa n(x.num_letters());
  int bx = embed(n, x);
  int by = embed(n, y);
  for (int s = 0; s < x.num_states(); ++s)
    if (x.is_accept(s)) {
      n.set_accept(bx + s, false);
      n.add_edge(bx + s, kEpsilon, by + y.start());
    }
  n.add_start(bx + x.start());
  return determinize(n);
}

Dfa union_of(std::vector<Dfa> const& parts, int num_letters) {
  Nfa n(num_letters);
  for (auto const& d : parts) {
    if (d.num_letters() != num_letters) throw Error("union_of alphabet mismatch");
    n.add_start(embed(n, d) + d.start());
  }
  return determinize(n);
}

Dfa map_letters(Dfa const& d, std::vector<Letter> const& image, int num_letters) {
  if (static_cast<int>(image.size()) != d.num_letters()) throw Error("map_letters size mismatch");
  Nfa n(num_letters);
  for (int s = 0; s < d.num_states(); ++s) n.add_state(d.is_accept(s));
  for (int s = 0; s < d.num_states(); ++s)
    for (Letter a = 0; a < d.num_letters(); ++a)
      if (int t = d.next(s, a); t != kNoState) n.add_edge(s, image[a], t);
  n.add_start(d.start());
  return determinize(n);
}

Dfa erase_letters(Dfa const& d, std::vector<Letter> const& erased) {
  std::vector<Letter> image(d.num_letters());
  for (Letter a = 0; a < d.num_letters(); ++a) image[a] = a;
  for (Letter a : erased) image.at(a) = kEpsilon;
  return map_letters(d, image, d.num_letters());
}

bool is_empty(Dfa const& d) {
  Dfa t = trim(d);
  for (int s = 0; s < t.num_states(); ++s)
    if (t.is_accept(s)) return false;
  return true;
}

bool is_finite(Dfa const& d) {
  Dfa t = trim(d);
  // Iterative three-colour DFS for a cycle among live states.
  std::vector<int> colour(t.num_states(), 0);
  std::vector<std::pair<int, Letter>> stack{{t.start(), 0}};
  colour[t.start()] = 1;
  while (!stack.empty()) {
    auto& [s, a] = stack.back();
    if (a == t.num_letters()) {
      colour[s] = 2;
      stack.pop_back();
      continue;
    }
    int u = t.next(s, a++);
    if (u == kNoState) continue;
    if (colour[u] == 1) return false;
    if (colour[u] == 0) {
      colour[u] = 1;
      stack.emplace_back(u, 0);
    }
  }
  return true;
}

bool equivalent(Dfa const& x, Dfa const& y) {
  check_same_letters(x, y);
  return minimize(x) == minimize(y);
}

bool subset_of(Dfa const& x, Dfa const& y) {
  return is_empty(product_boolean(x, y, BoolOp::kDiff));
}

std::optional<Word> difference_witness(Dfa const& x, Dfa const& y) {
  // States of a trimmed automaton are numbered in breadth-first order, so the
  // first accept state in that order carries the shortlex-least word.
  Dfa d = product_boolean(x, y, BoolOp::kDiff);
  int n = d.num_states();
  std::vector<int> parent(n, kNoState);
  std::vector<Letter> via(n, kEpsilon);
  std::vector<char> seen(n, 0);
  std::deque<int> queue{d.start()};
  seen[d.start()] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (d.is_accept(s)) {
      Word w;
      for (int c = s; c != d.start(); c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (Letter a = 0; a < d.num_letters(); ++a) {
      int t = d.next(s, a);
      if (t == kNoState || seen[t]) continue;
      seen[t] = 1;
      parent[t] = s;
      via[t] = a;
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

TwoTapeDfa shortlex_less_relation(int base) {
  // 0: equal so far, 1: u lex-smaller, 2: u lex-larger, 3: u ended first.
  Dfa d(TwoTapeDfa::pair_letters(base), 4);
  auto pair = [&](Letter a, Letter b) { return a * (base + 1) + b; };
  for (Letter a = 0; a < base; ++a)
    for (Letter b = 0; b < base; ++b) {
      d.set_next(0, pair(a, b), a < b ? 1 : a > b ? 2 : 0);
      d.set_next(1, pair(a, b), 1);
      d.set_next(2, pair(a, b), 2);
    }
  for (Letter b = 0; b < base; ++b)
    for (int s = 0; s < 4; ++s) d.set_next(s, pair(base, b), 3);
  d.set_accept(1);
  d.set_accept(3);
  return TwoTapeDfa(base, trim(d));
}

TwoTapeDfa intersect(TwoTapeDfa const& x, TwoTapeDfa const& y) {
  if (x.base_letters() != y.base_letters()) throw Error("two-tape alphabet mismatch");
  return TwoTapeDfa(x.base_letters(), product_boolean(x.dfa(), y.dfa(), BoolOp::kAnd));
}

Nfa project_second(TwoTapeDfa const& t) {
  Dfa const& d = t.dfa();
  Nfa n(t.base_letters());
  for (int s = 0; s < d.num_states(); ++s) n.add_state(d.is_accept(s));
  for (int s = 0; s < d.num_states(); ++s)
    for (Letter p = 0; p < d.num_letters(); ++p) {
      int u = d.next(s, p);
      if (u == kNoState) continue;
      Letter b = t.second(p);
      n.add_edge(s, b == t.pad() ? kEpsilon : b, u);
    }
  n.add_start(d.start());
  return n;
}

// ---------------------------------------------------------------- text I/O

namespace {

std::string join(std::vector<int> const& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

std::vector<int> split_list(std::string const& s, int bound) {
  std::vector<int> out;
  if (s == "-") return out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (std::exception const&) {
      used = 0;
    }
    if (used != tok.size() || v < 0 || v >= bound) throw Error("bad state list '" + s + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string to_text(Nfa const& n, Alphabet const& names) {
  if (names.size() != n.num_letters()) throw Error("alphabet size mismatch");
  std::vector<int> starts = n.starts(), accepts;
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  for (int s = 0; s < n.num_states(); ++s)
    if (n.is_accept(s)) accepts.push_back(s);
  std::vector<std::tuple<int, Letter, int>> lines;
  for (int s = 0; s < n.num_states(); ++s)
    for (auto const& e : n.edges(s)) lines.emplace_back(s, e.letter, e.target);
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::ostringstream out;
  out << "fsa " << n.num_states() << ' ' << join(starts) << ' ' << join(accepts) << '\n';
  for (auto const& [s, a, t] : lines)
    out << s << ' ' << (a == kEpsilon ? std::string("@eps") : names.name(a)) << ' ' << t << '\n';
  return out.str();
}

std::string to_text(Dfa const& d, Alphabet const& names) {
  return to_text(Nfa::from_dfa(d), names);
}

Nfa nfa_from_text(std::string_view text, Alphabet const& names) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream head(line);
  std::string tag, starts, accepts;
  int n = -1;
  if (!(head >> tag >> n >> starts >> accepts) || tag != "fsa" || n < 1)
    throw Error("bad automaton header '" + line + "'");
  Nfa out(names.size());
  for (int s = 0; s < n; ++s) out.add_state();
  for (int s : split_list(starts, n)) out.add_start(s);
  for (int s : split_list(accepts, n)) out.set_accept(s);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    int s = -1, t = -1;
    std::string letter, extra;
    if (!(row >> s >> letter >> t) || (row >> extra) || s < 0 || s >= n || t < 0 || t >= n)
      throw Error("bad transition line '" + line + "'");
    out.add_edge(s, letter == "@eps" ? kEpsilon : names.at(letter), t);
  }
  return out;
}

Dfa dfa_from_text(std::string_view text, Alphabet const& names) {
  Nfa n = nfa_from_text(text, names);
  if (n.starts().size() != 1) throw Error("deterministic automaton needs one start state");
  Dfa d(names.size(), n.num_states());
  d.set_start(n.starts()[0]);
  for (int s = 0; s < n.num_states(); ++s) {
    d.set_accept(s, n.is_accept(s));
    for (auto const& e : n.edges(s)) {
      if (e.letter == kEpsilon) throw Error("epsilon move in deterministic automaton");
      if (d.next(s, e.letter) != kNoState) throw Error("two transitions on one letter");
      d.set_next(s, e.letter, e.target);
    }
  }
  return d;
}

}  // namespace autgog
