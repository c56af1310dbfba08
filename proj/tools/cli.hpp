// Shared plumbing for the autgog command line tool: options, key=value
// reports and exit codes.

#pragma once

#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "autgog/gog.hpp"
#include "autgog/ygraph.hpp"

namespace autgog::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct Options {
  std::string spec;
  std::string ygraph = "default";  // default | biautomatic | path written by write_ygraph
  std::string ygraph2 = "biautomatic";
  std::string out;
  std::string format = "text";  // text | dot | fsa
  std::string word, word2;
  std::string edge, label, lang;
  std::string vertex, vertex2;
  std::string prefix, period;
  std::string kind = "default";
  std::string what = "ygraph";
  int maxlen = 6;
  int K = 2;
  bool K_given = false;
  int depth = 2;
  int bound = 6;
  int free_radius = 1;
  std::size_t node_cap = 200000;
  unsigned seed = 0;
  bool sync = false;
  bool visible = false;
};

// Line oriented key=value report.
class Report {
 public:
  template <class T>
  void add(std::string const& key, T const& value) {
    std::ostringstream s;
    s << std::boolalpha << value;
    lines_.emplace_back(key, s.str());
  }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

struct Result {
  int code = kOk;
  Report report;
  std::string artifact;  // written to --out when set, printed when it is the only output
};

GraphOfGroups load(Options const& o);
YGraph load_ygraph(GraphOfGroups const& g, std::string const& which);
Word parse_word(GraphOfGroups const& g, std::string const& text);
void write_file(std::string const& path, std::string const& text);
std::string join_words(GraphOfGroups const& g, std::vector<Word> const& words);

using Command = std::function<Result(Options const&)>;

// Group level verbs: validate, reduce, alphabet, nf, eq, dist, ball, tree, ends.
Result cmd_validate(Options const& o);
Result cmd_reduce(Options const& o);
Result cmd_alphabet(Options const& o);
Result cmd_nf(Options const& o);
Result cmd_eq(Options const& o);
Result cmd_dist(Options const& o);
Result cmd_ball(Options const& o);
Result cmd_tree(Options const& o);
Result cmd_ends(Options const& o);

// Structure verbs.
Result cmd_ygraph_validate(Options const& o);
Result cmd_ygraph_default(Options const& o);
Result cmd_language(Options const& o);
Result cmd_synchronize(Options const& o);
Result cmd_collapse(Options const& o);
Result cmd_split(Options const& o);
Result cmd_deploy(Options const& o);
Result cmd_check_ft(Options const& o);
Result cmd_ft_constant(Options const& o);
Result cmd_equiv(Options const& o);
Result cmd_tracker(Options const& o);
Result cmd_classify_ray(Options const& o);
Result cmd_boundary(Options const& o);
Result cmd_export_dot(Options const& o);
Result cmd_export_fsa(Options const& o);

}  // namespace autgog::cli
