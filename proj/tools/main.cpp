#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace autgog;
using namespace autgog::cli;

namespace {

enum Flag : unsigned {
  kYgraph = 1 << 0,
  kWord = 1 << 1,
  kWord2 = 1 << 2,
  kMaxlen = 1 << 3,
  kK = 1 << 4,
  kDepth = 1 << 5,
  kSync = 1 << 6,
  kFreeRadius = 1 << 7,
};

struct Verb {
  char const* name;
  char const* help;
  unsigned flags;
  Command run;
};

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Asynchronous automatic structures on graphs of groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::vector<Verb> verbs = {
      {"validate", "parse and check a spec file", 0, cmd_validate},
      {"reduce", "collapse edges whose group fills a vertex group", 0, cmd_reduce},
      {"alphabet", "list the convenient alphabet", 0, cmd_alphabet},
      {"nf", "normal form of --word", kWord, cmd_nf},
      {"eq", "decide whether --word and --word2 are equal", kWord | kWord2, cmd_eq},
      {"dist", "word distance between --word and --word2 within --depth", kWord | kWord2 | kDepth,
       cmd_dist},
      {"ball", "Cayley ball sphere sizes up to --depth", kDepth, cmd_ball},
      {"ygraph-validate", "check the Y-graph axioms", kYgraph, cmd_ygraph_validate},
      {"ygraph-default", "build the default or biautomatic Y-graph", 0, cmd_ygraph_default},
      {"language", "language Dfa of a Y-graph", kYgraph | kMaxlen, cmd_language},
      {"synchronize", "unique-representative sublanguage", kYgraph | kMaxlen, cmd_synchronize},
      {"collapse", "identify --vertex and --vertex2", kYgraph | kMaxlen | kK, cmd_collapse},
      {"split", "new structure on the conjugate of --word along --edge", kYgraph | kWord, cmd_split},
      {"deploy", "induced structures on tree positions", kYgraph | kDepth | kFreeRadius, cmd_deploy},
      {"check-ft", "fellow traveller check", kYgraph | kMaxlen | kK | kSync, cmd_check_ft},
      {"ft-constant", "least fellow traveller constant and its stability", kYgraph | kMaxlen | kSync,
       cmd_ft_constant},
      {"equiv", "compare two structures up to fellow travel", kYgraph | kMaxlen | kK, cmd_equiv},
      {"tracker", "run the lazy tracker machine on --word", kYgraph | kWord | kK, cmd_tracker},
      {"tree", "Bass-Serre tree ball", kDepth | kFreeRadius, cmd_tree},
      {"ends", "tree paths of length --depth", kDepth | kFreeRadius, cmd_ends},
      {"classify-ray", "end or boundary point of a lasso ray", kYgraph, cmd_classify_ray},
      {"boundary", "boundary decomposition over a tree ball", kYgraph | kDepth | kMaxlen | kFreeRadius,
       cmd_boundary},
      {"export-dot", "DOT of a Y-graph or a tree ball", kYgraph | kDepth | kFreeRadius, cmd_export_dot},
      {"export-fsa", "language automaton in fsa text", kYgraph, cmd_export_fsa},
  };

  std::map<CLI::App*, Command> commands;
  CLI::Option* k_option = nullptr;
  std::vector<CLI::Option*> k_options;
  for (auto const& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("spec", o.spec, "graph of groups spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--format", o.format, "text|dot|fsa")
        ->check(CLI::IsMember({"text", "dot", "fsa"}));
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_option("--node-cap", o.node_cap, "node cap for balls and automata")
        ->check(CLI::PositiveNumber);
    if (v.flags & kYgraph)
      sub->add_option("--ygraph", o.ygraph, "default, biautomatic or a Y-graph file");
    if (v.flags & kWord) sub->add_option("--word", o.word, "word over the convenient alphabet");
    if (v.flags & kWord2) sub->add_option("--word2", o.word2, "second word");
    if (v.flags & kMaxlen)
      sub->add_option("--maxlen", o.maxlen, "longest word enumerated")->check(CLI::PositiveNumber);
    if (v.flags & kK) {
      k_option = sub->add_option("--K", o.K, "fellow traveller constant")
                     ->check(CLI::NonNegativeNumber);
      k_options.push_back(k_option);
    }
    if (v.flags & kDepth)
      sub->add_option("--depth", o.depth, "radius or depth")->check(CLI::NonNegativeNumber);
    if (v.flags & kSync) sub->add_flag("--sync", o.sync, "synchronous fellow travel");
    if (v.flags & kFreeRadius)
      sub->add_option("--free-radius", o.free_radius, "coset representatives kept in free groups");
    commands[sub] = v.run;
  }
  auto* sub = app.get_subcommand("check-ft");
  sub->add_option("--bound", o.bound, "largest constant tried");
  app.get_subcommand("ft-constant")->add_option("--bound", o.bound, "largest constant tried");
  app.get_subcommand("ygraph-default")
      ->add_option("--kind", o.kind, "default|biautomatic")
      ->check(CLI::IsMember({"default", "biautomatic"}));
  app.get_subcommand("equiv")->add_option("--ygraph2", o.ygraph2, "second structure");
  auto* split = app.get_subcommand("split");
  split->add_option("--edge", o.edge, "edge E of Y")->required();
  split->add_option("--label", o.label, "class label of the new structure");
  split->add_option("--lang", o.lang, "fsa file with the new structure");
  auto* coll = app.get_subcommand("collapse");
  coll->add_option("--vertex", o.vertex, "first vertex name")->required();
  coll->add_option("--vertex2", o.vertex2, "second vertex name")->required();
  auto* ray = app.get_subcommand("classify-ray");
  ray->add_option("--prefix", o.prefix, "lasso prefix");
  ray->add_option("--period", o.period, "lasso period")->required();
  app.get_subcommand("export-fsa")->add_flag("--visible", o.visible, "visible alphabet");
  app.get_subcommand("export-dot")
      ->add_option("--what", o.what, "ygraph|tree")
      ->check(CLI::IsMember({"ygraph", "tree"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* opt : k_options) o.K_given = o.K_given || opt->count() > 0;

  try {
    for (auto& [cmd, run] : commands) {
      if (!cmd->parsed()) continue;
      Result r = run(o);
      std::string report = r.report.str();
      if (!r.artifact.empty()) {
        if (o.out.empty()) {
          std::cout << r.artifact;
        } else {
          write_file(o.out, r.artifact);
          std::cout << report << "written=" << o.out << "\n";
        }
      } else {
        std::cout << report;
        if (!o.out.empty() && report.find("written=") == std::string::npos)
          write_file(o.out, report);
      }
      return r.code;
    }
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
