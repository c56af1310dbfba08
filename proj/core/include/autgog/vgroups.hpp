// Vertex group structures: finite groups given by a multiplication table and
// free groups with the freely reduced (shortlex) structure.
//
// Each group works over a local alphabet whose letter 0 is the identity
// letter "e". Group elements are passed around as canonical words: the empty
// word for the identity, one letter per element for finite groups, and the
// freely reduced word for free groups.

#pragma once

#include <string>
#include <vector>

#include "autgog/fsa.hpp"

namespace autgog {

struct FiniteGroupTable {
  std::vector<std::string> names;
  std::vector<int> table;  // row-major, table[x * order + y] = x * y

  int order() const { return static_cast<int>(names.size()); }
  int mul(int x, int y) const { return table[static_cast<std::size_t>(x) * order() + y]; }
  int identity() const;  // throws if there is none
  int inverse(int x) const;
  int find(std::string const& name) const;  // -1 when absent

  // Checks closure, associativity, identity and inverses. Throws on failure.
  void validate() const;
};

FiniteGroupTable cyclic_table(std::vector<std::string> names);
FiniteGroupTable trivial_table();

class VertexGroup {
 public:
  enum class Kind { kFinite, kFree };

  static VertexGroup finite(FiniteGroupTable table, std::string class_label = "");
  static VertexGroup free(int rank, std::vector<std::string> generators = {},
                          std::string class_label = "");

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_trivial() const { return is_finite() && table_.order() == 1; }
  Alphabet const& alphabet() const { return alphabet_; }
  std::string const& class_label() const { return class_label_; }

  // Word problem on local words. Canonical words are the currency.
  Word evaluate(std::span<Letter const> w) const;
  Word multiply(Word const& x, Word const& y) const;
  Word invert(Word const& x) const;
  bool is_canonical(std::span<Letter const> w) const;
  bool is_identity(Word const& x) const { return x.empty(); }

  // Word acceptor over the local alphabet; its words are exactly the
  // canonical words, so the uniqueness flag is always set.
  Dfa const& acceptor() const { return acceptor_; }
  bool unique() const { return true; }

  // Pairs (u, v) of acceptor words with v = u * g for a local letter g.
  TwoTapeDfa multiplier(Letter g) const;

  // Finite groups only.
  int order() const { return table_.order(); }
  FiniteGroupTable const& table() const { return table_; }
  int element_of(Word const& canonical) const;
  Word word_of(int element) const;
  std::vector<Word> elements() const;

  int rank() const { return rank_; }

 private:
  VertexGroup() = default;
  void require_local(std::span<Letter const> w) const;

  Kind kind_ = Kind::kFinite;
  Alphabet alphabet_;
  std::string class_label_;
  Dfa acceptor_;
  FiniteGroupTable table_;
  std::vector<int> elem_of_letter_;  // finite: letter -> element
  std::vector<int> letter_of_elem_;  // finite: element -> letter (0 for identity)
  int rank_ = 0;
};

// Validated injective homomorphism from a finite group into a vertex group.
struct Embedding {
  std::vector<Word> images;  // indexed by element of the finite group
};

Embedding finite_subgroup_embedding(VertexGroup const& target, FiniteGroupTable const& source,
                                    std::vector<Word> images);

}  // namespace autgog
