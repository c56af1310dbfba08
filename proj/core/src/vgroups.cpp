#include "autgog/vgroups.hpp"

#include <set>

namespace autgog {

int FiniteGroupTable::identity() const {
  for (int x = 0; x < order(); ++x) {
    bool ok = true;
    for (int y = 0; y < order() && ok; ++y) ok = mul(x, y) == y && mul(y, x) == y;
    if (ok) return x;
  }
  throw Error("group table has no identity");
}

int FiniteGroupTable::inverse(int x) const {
  int one = identity();
  for (int y = 0; y < order(); ++y)
    if (mul(x, y) == one) return y;
  throw Error("element '" + names.at(x) + "' has no inverse");
}

int FiniteGroupTable::find(std::string const& name) const {
  for (int x = 0; x < order(); ++x)
    if (names[x] == name) return x;
  return -1;
}

void FiniteGroupTable::validate() const {
  int n = order();
  if (n == 0) throw Error("empty group table");
  if (static_cast<int>(table.size()) != n * n) throw Error("group table has wrong size");
  std::set<std::string> seen(names.begin(), names.end());
  if (static_cast<int>(seen.size()) != n) throw Error("duplicate element names");
  for (int v : table)
    if (v < 0 || v >= n) throw Error("group table entry out of range");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z)))
          throw Error("group table is not associative at (" + names[x] + "," + names[y] + "," +
                      names[z] + ")");
  identity();
  for (int x = 0; x < n; ++x) inverse(x);
}

FiniteGroupTable cyclic_table(std::vector<std::string> names) {
  FiniteGroupTable t;
  int n = static_cast<int>(names.size());
  t.names = std::move(names);
  t.table.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t.table[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  return t;
}

FiniteGroupTable trivial_table() { return cyclic_table({"1"}); }

// ---------------------------------------------------------------- VertexGroup

VertexGroup VertexGroup::finite(FiniteGroupTable table, std::string class_label) {
  table.validate();
  VertexGroup g;
  g.kind_ = Kind::kFinite;
  g.class_label_ = std::move(class_label);
  int one = table.identity();
  g.alphabet_.add("e", 0);
  g.letter_of_elem_.assign(table.order(), 0);
  g.elem_of_letter_.push_back(one);
  for (int x = 0; x < table.order(); ++x) {
    if (x == one) continue;
    g.letter_of_elem_[x] = g.alphabet_.add(table.names[x]);
    g.elem_of_letter_.push_back(x);
  }
  for (int x = 0; x < table.order(); ++x)
    if (x != one) g.alphabet_.set_inverse(g.letter_of_elem_[x], g.letter_of_elem_[table.inverse(x)]);
  g.acceptor_ = Dfa(g.alphabet_.size(), table.order() > 1 ? 2 : 1);
  g.acceptor_.set_accept(0);
  if (table.order() > 1) {
    g.acceptor_.set_accept(1);
    for (Letter a = 1; a < g.alphabet_.size(); ++a) g.acceptor_.set_next(0, a, 1);
  }
  g.table_ = std::move(table);
  return g;
}

VertexGroup VertexGroup::free(int rank, std::vector<std::string> generators,
                              std::string class_label) {
  if (rank < 1) throw Error("free group rank must be at least 1");
  if (generators.empty())
    for (int i = 1; i <= rank; ++i) generators.push_back("x" + std::to_string(i));
  if (static_cast<int>(generators.size()) != rank) throw Error("wrong number of generator names");
  VertexGroup g;
  g.kind_ = Kind::kFree;
  g.rank_ = rank;
  g.class_label_ = std::move(class_label);
  g.table_ = trivial_table();
  g.alphabet_.add("e", 0);
  for (auto const& name : generators) {
    Letter a = g.alphabet_.add(name);
    g.alphabet_.add(name + "^-1", a);
  }
  // State 0 is the start, state a is "last letter was a".
  int k = g.alphabet_.size();
  g.acceptor_ = Dfa(k, k);
  for (int s = 0; s < k; ++s) {
    g.acceptor_.set_accept(s);
    for (Letter a = 1; a < k; ++a)
      if (s == 0 || a != g.alphabet_.inverse(s)) g.acceptor_.set_next(s, a, a);
  }
  return g;
}

void VertexGroup::require_local(std::span<Letter const> w) const {
  for (Letter a : w)
    if (a < 0 || a >= alphabet_.size()) throw Error("letter outside the vertex alphabet");
}

Word VertexGroup::evaluate(std::span<Letter const> w) const {
  require_local(w);
  if (is_finite()) {
    int x = table_.identity();
    for (Letter a : w) x = table_.mul(x, elem_of_letter_[a]);
    return word_of(x);
  }
  Word out;
  for (Letter a : w) {
    if (a == 0) continue;
    if (!out.empty() && out.back() == alphabet_.inverse(a)) out.pop_back();
    else out.push_back(a);
  }
  return out;
}

bool VertexGroup::is_canonical(std::span<Letter const> w) const {
  for (Letter a : w)
    if (a < 0 || a >= alphabet_.size()) return false;
  return acceptor_.accepts(w);
}

Word VertexGroup::multiply(Word const& x, Word const& y) const {
  if (!is_canonical(x) || !is_canonical(y)) throw Error("multiply needs canonical words");
  Word w = x;
  w.insert(w.end(), y.begin(), y.end());
  return evaluate(w);
}

Word VertexGroup::invert(Word const& x) const {
  if (!is_canonical(x)) throw Error("invert needs a canonical word");
  return evaluate(alphabet_.invert(x));
}

int VertexGroup::element_of(Word const& canonical) const {
  if (!is_finite()) throw Error("element_of needs a finite group");
  if (!is_canonical(canonical)) throw Error("element_of needs a canonical word");
  return canonical.empty() ? table_.identity() : elem_of_letter_[canonical[0]];
}

Word VertexGroup::word_of(int element) const {
  if (!is_finite()) throw Error("word_of needs a finite group");
  Letter a = letter_of_elem_.at(element);
  return a == 0 ? Word{} : Word{a};
}

std::vector<Word> VertexGroup::elements() const {
  if (!is_finite()) throw Error("elements() needs a finite group");
  std::vector<Word> out{Word{}};
  for (Letter a = 1; a < alphabet_.size(); ++a) out.push_back(Word{a});
  return out;
}

TwoTapeDfa VertexGroup::multiplier(Letter g) const {
  int base = alphabet_.size();
  if (g < 0 || g >= base) throw Error("multiplier letter outside the alphabet");
  if (is_finite()) {
    TwoTapeDfa probe(base, Dfa(TwoTapeDfa::pair_letters(base)));
    std::vector<Word> pairs;
    for (auto const& u : elements()) {
      Word ug = u;
      ug.push_back(g);
      pairs.push_back(probe.padded(u, evaluate(ug)));
    }
    return TwoTapeDfa(base, finite_language(TwoTapeDfa::pair_letters(base), pairs));
  }
  // Free group: v = u g unless u ends in g^-1, in which case u = v g^-1.
  // States: 0 start, a = "common prefix ends in a", base = done.
  int done = base;
  Dfa d(TwoTapeDfa::pair_letters(base), base + 1);
  d.set_accept(done);
  auto pair = [&](Letter a, Letter b) { return a * (base + 1) + b; };
  Letter pad = base;
  for (int s = 0; s < base; ++s) {
    Letter last_inv = s == 0 ? kEpsilon : alphabet_.inverse(s);
    for (Letter x = 1; x < base; ++x)
      if (x != last_inv) d.set_next(s, pair(x, x), x);
    if (g == 0) {
      d.set_accept(s);
      continue;
    }
    if (g != last_inv) d.set_next(s, pair(pad, g), done);
    Letter gi = alphabet_.inverse(g);
    if (gi != last_inv) d.set_next(s, pair(gi, pad), done);
  }
  return TwoTapeDfa(base, trim(d));
}

Embedding finite_subgroup_embedding(VertexGroup const& target, FiniteGroupTable const& source,
                                    std::vector<Word> images) {
  source.validate();
  if (static_cast<int>(images.size()) != source.order())
    throw Error("embedding needs one image per element");
  for (auto& w : images) w = target.evaluate(w);
  for (int x = 0; x < source.order(); ++x)
    for (int y = 0; y < source.order(); ++y)
      if (target.multiply(images[x], images[y]) != images[source.mul(x, y)])
        throw Error("embedding is not a homomorphism at (" + source.names[x] + "," +
                    source.names[y] + ")");
  std::set<Word> distinct(images.begin(), images.end());
  if (static_cast<int>(distinct.size()) != source.order()) throw Error("embedding is not injective");
  return Embedding{std::move(images)};
}

}  // namespace autgog
