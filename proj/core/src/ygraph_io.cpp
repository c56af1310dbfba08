// Text format for Y-graphs, one record per line, '#' comments:
//   yvertex <name> type=<V> class=<label> lang=<fsa file>|std
//   yedge <name> <from> <to> type=<E> set=<fsa file>|all
//   ystart <name>
//   yaction vertex=<name> edge-type=<E> f=<element> perm=(u,v,...)(...)
// Automaton files use the fsa text format over the convenient alphabet and
// are resolved relative to the Y-graph file.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "autgog/ygraph.hpp"

namespace autgog {

namespace {

std::string read_file(std::filesystem::path const& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(std::filesystem::path const& p, std::string const& text) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

std::string format_perm(YGraph const& x, std::vector<int> const& perm) {
  std::string out;
  std::vector<char> done(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i] || perm[i] == static_cast<int>(i)) continue;
    out += "(";
    for (int j = static_cast<int>(i); !done[j]; j = perm[j]) {
      if (j != static_cast<int>(i)) out += ",";
      out += x.vertices[j].name;
      done[j] = 1;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<int> parse_perm(YGraph const& x, std::string const& text) {
  std::vector<int> perm(x.vertices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') throw Error("bad permutation " + text);
    auto close = text.find(')', pos);
    if (close == std::string::npos) throw Error("bad permutation " + text);
    std::vector<int> cycle;
    std::stringstream ss(text.substr(pos + 1, close - pos - 1));
    for (std::string name; std::getline(ss, name, ',');) {
      int v = x.find_vertex(name);
      if (v < 0) throw Error("unknown vertex " + name + " in permutation");
      cycle.push_back(v);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
    pos = close + 1;
  }
  return perm;
}

}  // namespace

void write_ygraph(GraphOfGroups const& g, YGraph const& x, std::string const& path) {
  std::filesystem::path p(path);
  std::string stem = p.filename().string();
  std::ostringstream out;
  out << "# Y-graph over " << g.num_vertices() << " vertex groups\n";
  for (int i = 0; i < x.num_vertices(); ++i) {
    auto const& v = x.vertices[i];
    std::string file = stem + ".v" + std::to_string(i) + ".fsa";
    write_file(p.parent_path() / file, to_text(v.lang, g.alphabet()));
    out << "yvertex " << v.name << " type=" << g.vertex(v.type).name << " class=" << v.label
        << " lang=" << file << "\n";
  }
  for (int i = 0; i < static_cast<int>(x.edges.size()); ++i) {
    auto const& e = x.edges[i];
    std::string file = stem + ".e" + std::to_string(i) + ".fsa";
    write_file(p.parent_path() / file, to_text(e.values, g.alphabet()));
    out << "yedge " << e.name << " " << x.vertices[e.from].name << " " << x.vertices[e.to].name
        << " type=" << g.oriented_name(e.type) << " set=" << file << "\n";
  }
  out << "ystart " << x.vertices[x.start].name << "\n";
  for (auto const& [key, perm] : x.actions)
    out << "yaction vertex=" << x.vertices[key.vertex].name
        << " edge-type=" << g.oriented_name(key.edge_type)
        << " f=" << g.edge_group(key.edge_type).names[key.f] << " perm=" << format_perm(x, perm)
        << "\n";
  write_file(p, out.str());
}

YGraph read_ygraph(GraphOfGroups const& g, std::string const& path) {
  std::filesystem::path p(path);
  std::istringstream in(read_file(p));
  YGraph x;
  std::string start;
  struct PendingAction {
    std::string vertex, edge, f, perm;
    int line;
  };
  std::vector<PendingAction> pending;
  int lineno = 0;
  auto load = [&](std::string const& ref, auto fallback) {
    if (ref == "std" || ref == "all") return fallback();
    return dfa_from_text(read_file(p.parent_path() / ref), g.alphabet());
  };
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> positional;
    std::map<std::string, std::string> kv;
    for (std::string tok; ls >> tok;) {
      if (auto eq = tok.find('='); eq != std::string::npos)
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      else
        positional.push_back(tok);
    }
    if (positional.empty()) continue;
    auto fail = [&](std::string const& msg) -> Error {
      return Error("line " + std::to_string(lineno) + ": " + msg);
    };
    auto need = [&](std::string const& key) {
      auto it = kv.find(key);
      if (it == kv.end()) throw fail("missing " + key + "=");
      return it->second;
    };
    std::string const& kind = positional[0];
    try {
      if (kind == "yvertex" && positional.size() == 2) {
        int type = g.find_vertex(need("type"));
        if (type < 0) throw fail("unknown vertex type " + kv["type"]);
        if (x.find_vertex(positional[1]) >= 0) throw fail("duplicate vertex " + positional[1]);
        std::string label = kv.contains("class") ? kv["class"] : g.vertex(type).group_name;
        x.vertices.push_back(
            {positional[1], type, label, load(need("lang"), [&] { return all_values(g, type); })});
      } else if (kind == "yedge" && positional.size() == 4) {
        int from = x.find_vertex(positional[2]), to = x.find_vertex(positional[3]);
        if (from < 0 || to < 0) throw fail("unknown endpoint");
        int type = g.find_oriented_edge(need("type"));
        if (type < 0 || type == g.base_edge()) throw fail("unknown edge type " + kv["type"]);
        int vt = x.vertices[from].type;
        x.edges.push_back({positional[1], from, to, type,
                           load(need("set"), [&] { return all_values(g, vt); })});
      } else if (kind == "ystart" && positional.size() == 2) {
        start = positional[1];
      } else if (kind == "yaction" && positional.size() == 1) {
        pending.push_back({need("vertex"), need("edge-type"), need("f"), need("perm"), lineno});
      } else {
        throw fail("unrecognised record " + kind);
      }
    } catch (Error const& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw fail(msg);
    }
  }
  if (x.vertices.empty()) throw Error("Y-graph has no vertices");
  x.start = start.empty() ? 0 : x.find_vertex(start);
  if (x.start < 0) throw Error("unknown start vertex " + start);
  for (auto const& a : pending) {
    auto where = "line " + std::to_string(a.line) + ": ";
    int v = x.find_vertex(a.vertex);
    int oe = g.find_oriented_edge(a.edge);
    if (v < 0 || oe < 0 || oe == g.base_edge()) throw Error(where + "bad action key");
    int f = g.edge_group(oe).find(a.f);
    if (f < 0) throw Error(where + "unknown edge group element " + a.f);
    x.actions[{v, oe, f}] = parse_perm(x, a.perm == "()" ? "" : a.perm);
  }
  return x;
}

std::string ygraph_to_dot(GraphOfGroups const& g, YGraph const& x) {
  std::ostringstream out;
  out << "digraph X {\n  rankdir=LR;\n";
  for (int i = 0; i < x.num_vertices(); ++i) {
    auto const& v = x.vertices[i];
    out << "  v" << i << " [label=\"" << v.name << "\\n" << g.vertex(v.type).name << " / "
        << v.label << "\"" << (i == x.start ? ", shape=doublecircle" : "") << "];\n";
  }
  for (auto const& e : x.edges) {
    std::string values = "<infinite>";
    if (is_finite(e.values)) {
      values.clear();
      for (auto const& w : enumerate_words(e.values, trim(e.values).num_states()))
        values += (values.empty() ? "" : ",") + (w.empty() ? std::string("1") : g.alphabet().format(w));
    }
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << g.oriented_name(e.type) << ": {"
        << values << "}\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace autgog
