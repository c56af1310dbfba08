// Finite-state automata over small integer alphabets.
//
// Letters are dense indices [0, num_letters). A Dfa is partial: a missing
// transition means rejection. Every construction in this header returns a
// trimmed automaton (no unreachable or dead states) unless stated otherwise.
// The empty language is the one-state automaton with no accept state.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autgog {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Letter = int;
using Word = std::vector<Letter>;

inline constexpr Letter kEpsilon = -1;
inline constexpr int kNoState = -1;

// Names, a fixed total order (declaration order) and an involution.
class Alphabet {
 public:
  Alphabet() = default;

  Letter add(std::string name, Letter inverse = kEpsilon);
  void set_inverse(Letter a, Letter b);
  // Extra name that parses to an existing letter; formatting keeps the primary name.
  void add_alias(std::string name, Letter a);

  int size() const { return static_cast<int>(names_.size()); }
  std::string const& name(Letter a) const { return names_.at(a); }
  Letter inverse(Letter a) const { return inverse_.at(a); }
  Letter find(std::string_view name) const;  // kEpsilon when absent
  Letter at(std::string_view name) const;    // throws when absent
  std::vector<std::string> const& names() const { return names_; }

  Word parse(std::string_view text) const;  // whitespace separated names
  std::string format(std::span<Letter const> w) const;
  Word invert(std::span<Letter const> w) const;

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  std::map<std::string, Letter, std::less<>> index_;
};

// Total order on words: length first, then lexicographic by letter index.
bool shortlex_less(std::span<Letter const> u, std::span<Letter const> v);

class Dfa {
 public:
  explicit Dfa(int num_letters = 0, int num_states = 1);

  int num_letters() const { return num_letters_; }
  int num_states() const { return static_cast<int>(accept_.size()); }
  int start() const { return start_; }
  int next(int state, Letter a) const {
    return delta_[static_cast<std::size_t>(state) * num_letters_ + a];
  }
  bool is_accept(int state) const { return accept_[state] != 0; }

  int add_state(bool accept = false);
  void set_start(int s) { start_ = s; }
  void set_accept(int s, bool accept = true) { accept_.at(s) = accept; }
  void set_next(int s, Letter a, int t);

  // State reached by reading w from `from`, or kNoState.
  int run(std::span<Letter const> w, int from) const;
  int run(std::span<Letter const> w) const { return run(w, start_); }
  bool accepts(std::span<Letter const> w) const;

  bool operator==(Dfa const&) const = default;

 private:
  int num_letters_;
  int start_ = 0;
  std::vector<char> accept_;
  std::vector<int> delta_;
};

class Nfa {
 public:
  struct Edge {
    Letter letter;  // kEpsilon for an epsilon move
    int target;
  };

  explicit Nfa(int num_letters = 0) : num_letters_(num_letters) {}
  static Nfa from_dfa(Dfa const& d);

  int num_letters() const { return num_letters_; }
  int num_states() const { return static_cast<int>(edges_.size()); }
  int add_state(bool accept = false);
  void add_edge(int from, Letter a, int to);
  void add_start(int s) { starts_.push_back(s); }
  void set_accept(int s, bool accept = true) { accept_.at(s) = accept; }

  std::vector<int> const& starts() const { return starts_; }
  bool is_accept(int s) const { return accept_[s] != 0; }
  std::vector<Edge> const& edges(int s) const { return edges_[s]; }

  // Sorted epsilon closure of a state set.
  std::vector<int> closure(std::vector<int> states) const;
  bool accepts(std::span<Letter const> w) const;

 private:
  int num_letters_;
  std::vector<int> starts_;
  std::vector<char> accept_;
  std::vector<std::vector<Edge>> edges_;
};

// Generalized automaton: edges carry regular languages.
struct Gfsa {
  struct Edge {
    int from;
    int to;
    std::shared_ptr<Dfa const> label;
  };
  int num_letters = 0;
  int num_states = 0;
  std::vector<int> starts;
  std::vector<char> accept;
  std::vector<Edge> edges;

  int add_state(bool is_accept = false);
  void add_edge(int from, int to, Dfa label);
};

// Synchronous two-tape automaton over (A + pad)^2 minus (pad, pad).
class TwoTapeDfa {
 public:
  TwoTapeDfa(int base_letters, Dfa dfa);

  int base_letters() const { return base_; }
  Letter pad() const { return base_; }
  Letter pair(Letter a, Letter b) const { return a * (base_ + 1) + b; }
  Letter first(Letter p) const { return p / (base_ + 1); }
  Letter second(Letter p) const { return p % (base_ + 1); }
  Dfa const& dfa() const { return dfa_; }

  Word padded(std::span<Letter const> u, std::span<Letter const> v) const;
  bool accepts(std::span<Letter const> u, std::span<Letter const> v) const;

  static int pair_letters(int base) { return (base + 1) * (base + 1); }

 private:
  int base_;
  Dfa dfa_;
};

enum class BoolOp { kAnd, kOr, kDiff };

Dfa trim(Dfa const& d);
Dfa determinize(Nfa const& n);
Dfa product_boolean(Dfa const& x, Dfa const& y, BoolOp op);
Dfa minimize(Dfa const& d);
Dfa prohibit_subwords(Dfa const& x, std::vector<Word> const& bad);
Nfa expand_gfsa(Gfsa const& g);
std::vector<Word> enumerate_words(Dfa const& d, int maxlen);
std::vector<Word> enumerate_words(Nfa const& n, int maxlen);
Dfa shortlex_filter(Dfa const& lang, TwoTapeDfa const& relation);

// Small constructors and helpers.
Dfa empty_language(int num_letters);
Dfa all_words(int num_letters, std::vector<Letter> const& letters);
Dfa all_words(int num_letters);
Dfa finite_language(int num_letters, std::vector<Word> const& words);
Dfa complement(Dfa const& d);
Dfa concatenate(Dfa const& x, Dfa const& y);
Dfa union_of(std::vector<Dfa> const& parts, int num_letters);
Dfa erase_letters(Dfa const& d, std::vector<Letter> const& erased);
Dfa map_letters(Dfa const& d, std::vector<Letter> const& image, int num_letters);
bool is_empty(Dfa const& d);
bool is_finite(Dfa const& d);
bool equivalent(Dfa const& x, Dfa const& y);
bool subset_of(Dfa const& x, Dfa const& y);
// Shortlex-least word of L(x) \ L(y) when one exists.
std::optional<Word> difference_witness(Dfa const& x, Dfa const& y);

// Pairs related by u <_shortlex v.
TwoTapeDfa shortlex_less_relation(int base_letters);
TwoTapeDfa intersect(TwoTapeDfa const& x, TwoTapeDfa const& y);
// Words v with (u, v) accepted for some u.
Nfa project_second(TwoTapeDfa const& t);

// Line format: "fsa <n> <starts> <accepts>" then "src letter dst" lines.
// Lists are comma separated, "-" when empty; "@eps" names an epsilon move.
std::string to_text(Nfa const& n, Alphabet const& names);
std::string to_text(Dfa const& d, Alphabet const& names);
Nfa nfa_from_text(std::string_view text, Alphabet const& names);
Dfa dfa_from_text(std::string_view text, Alphabet const& names);

}  // namespace autgog
