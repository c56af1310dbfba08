#include <fstream>

#include "autgog/bstree.hpp"
#include "autgog/deploy.hpp"
#include "cli.hpp"

namespace autgog::cli {

std::string Report::str() const {
  std::string out;
  for (auto const& [k, v] : lines_) out += k + "=" + v + "\n";
  return out;
}

GraphOfGroups load(Options const& o) { return load_spec(o.spec); }

YGraph load_ygraph(GraphOfGroups const& g, std::string const& which) {
  if (which == "default") return default_ygraph(g);
  if (which == "biautomatic") return biautomatic_ygraph(g);
  return read_ygraph(g, which);
}

Word parse_word(GraphOfGroups const& g, std::string const& text) {
  return g.alphabet().parse(text);
}

void write_file(std::string const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string join_words(GraphOfGroups const& g, std::vector<Word> const& words) {
  std::string out;
  for (auto const& w : words) out += (out.empty() ? "" : " | ") + g.alphabet().format(w);
  return out;
}

Result cmd_validate(Options const& o) {
  Result r;
  try {
    auto g = load(o);
    r.report.add("spec", o.spec);
    r.report.add("valid", true);
    r.report.add("vertices", g.num_vertices());
    r.report.add("edges", g.num_edges());
    r.report.add("letters", g.num_letters());
    r.report.add("base", g.vertex(g.base()).name);
    r.report.add("reduced", is_reduced(g));
  } catch (Error const& e) {
    r.report.add("spec", o.spec);
    r.report.add("valid", false);
    r.report.add("error", e.what());
    r.code = kVerificationFailed;
  }
  return r;
}

Result cmd_reduce(Options const& o) {
  Result r;
  auto g = load(o);
  std::map<std::string, std::string> images;
  auto red = reduce(g, &images);
  r.report.add("reduced_before", is_reduced(g));
  r.report.add("vertices", red.num_vertices());
  r.report.add("edges", red.num_edges());
  for (auto const& [from, to] : images) r.report.add("letter." + from, to);
  r.artifact = format_spec(red);
  return r;
}

Result cmd_alphabet(Options const& o) {
  Result r;
  auto g = load(o);
  auto const& A = g.alphabet();
  r.report.add("letters", g.num_letters());
  for (Letter a = 0; a < g.num_letters(); ++a) {
    std::string key = "letter." + std::to_string(a);
    r.report.add(key + ".name", A.name(a));
    r.report.add(key + ".inverse", A.name(A.inverse(a)));
    if (int oe = g.stable_edge(a); oe >= 0) {
      r.report.add(key + ".stable", g.oriented_name(oe));
    } else {
      std::string vs;
      for (int v : g.letter_vertices(a)) vs += (vs.empty() ? "" : ",") + g.vertex(v).name;
      r.report.add(key + ".vertices", vs);
    }
  }
  return r;
}

Result cmd_nf(Options const& o) {
  Result r;
  auto g = load(o);
  NormalForm x = g.normal_form(parse_word(g, o.word));
  r.report.add("word", o.word);
  r.report.add("normal_form", g.format(x));
  r.report.add("length", x.length());
  r.report.add("end_vertex", g.vertex(g.end_vertex(x)).name);
  r.report.add("identity", x.is_identity());
  return r;
}

Result cmd_eq(Options const& o) {
  Result r;
  auto g = load(o);
  bool eq = g.equals(parse_word(g, o.word), parse_word(g, o.word2));
  r.report.add("equal", eq);
  return r;
}

Result cmd_dist(Options const& o) {
  Result r;
  auto g = load(o);
  CayleyBall ball(g, o.depth, o.node_cap);
  int d = ball.distance(parse_word(g, o.word), parse_word(g, o.word2));
  r.report.add("radius", o.depth);
  r.report.add("within", d <= o.depth);
  r.report.add("distance", d <= o.depth ? std::to_string(d) : ">" + std::to_string(o.depth));
  return r;
}

Result cmd_ball(Options const& o) {
  Result r;
  auto g = load(o);
  CayleyBall ball(g, o.depth, o.node_cap);
  r.report.add("radius", o.depth);
  r.report.add("size", ball.size());
  auto spheres = ball.sphere_sizes();
  for (std::size_t i = 0; i < spheres.size(); ++i)
    r.report.add("sphere." + std::to_string(i), spheres[i]);
  return r;
}

Result cmd_tree(Options const& o) {
  Result r;
  auto g = load(o);
  auto b = tree_ball(g, o.depth, o.free_radius, o.node_cap);
  r.report.add("depth", o.depth);
  r.report.add("vertices", b.vertices.size());
  r.report.add("truncated", b.truncated);
  auto levels = b.level_sizes();
  for (std::size_t i = 0; i < levels.size(); ++i)
    r.report.add("level." + std::to_string(i), levels[i]);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    std::string key = "vertex." + std::to_string(i);
    r.report.add(key + ".id", "(" + g.oriented_name(b.vertices[i].edge) + "," +
                                  g.format(b.vertices[i].h) + ")");
    r.report.add(key + ".stabilizer", stabilizer_descriptor(g, b.vertices[i]));
    r.report.add(key + ".degree", b.degree[i] < 0 ? std::string("inf") : std::to_string(b.degree[i]));
  }
  if (o.format == "dot") r.artifact = tree_ball_to_dot(g, b);
  return r;
}

Result cmd_ends(Options const& o) {
  Result r;
  auto g = load(o);
  auto paths = ends(g, o.depth, o.free_radius);
  r.report.add("depth", o.depth);
  r.report.add("ends", paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i)
    r.report.add("path." + std::to_string(i), format_path(g, paths[i]));
  return r;
}

}  // namespace autgog::cli
