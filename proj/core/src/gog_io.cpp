#include <fstream>
#include <set>
#include <sstream>

#include "autgog/gog.hpp"

namespace autgog {

namespace {

std::string trim_copy(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string_view::npos) {
      if (!trim_copy(cur).empty()) out.push_back(trim_copy(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim_copy(cur).empty()) out.push_back(trim_copy(cur));
  return out;
}

// Splits a line into whitespace-separated tokens, keeping {...} groups whole.
std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '{') ++depth;
    if (c == '}') {
      if (--depth < 0) throw Error("unbalanced '}'");
    }
    if (depth == 0 && (c == ' ' || c == '\t')) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw Error("unbalanced '{'");
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string unbrace(std::string const& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw Error("expected {...}");
  return s.substr(1, s.size() - 2);
}

// key=value entries of a ';'-separated block.
std::map<std::string, std::string> block_entries(std::string const& body) {
  std::map<std::string, std::string> out;
  for (auto const& item : split(body, ";")) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("expected key=value in '" + item + "'");
    std::string key = trim_copy(item.substr(0, eq));
    if (!out.emplace(key, trim_copy(item.substr(eq + 1))).second)
      throw Error("duplicate key '" + key + "'");
  }
  return out;
}

struct GroupDef {
  bool finite = true;
  FiniteGroupTable table;
  int rank = 0;
  std::vector<std::string> gens;
};

GroupDef parse_group(std::vector<std::string> const& tok) {
  if (tok.size() != 4) throw Error("expected: group <name> finite|free {...}");
  auto entries = block_entries(unbrace(tok[3]));
  GroupDef def;
  if (tok[2] == "finite") {
    if (!entries.count("elements")) throw Error("finite group needs elements=");
    def.table.names = split(entries["elements"], ", ");
    std::string table = entries.count("table") ? entries["table"] : "cyclic";
    if (table == "cyclic") {
      def.table = cyclic_table(def.table.names);
    } else {
      for (auto const& name : split(table, ", /")) {
        int x = def.table.find(name);
        if (x < 0) throw Error("unknown element '" + name + "' in table");
        def.table.table.push_back(x);
      }
    }
    def.table.validate();
    for (auto const& [k, v] : entries)
      if (k != "elements" && k != "table") throw Error("unknown group key '" + k + "'");
  } else if (tok[2] == "free") {
    def.finite = false;
    if (entries.count("gens")) def.gens = split(entries["gens"], ", ");
    def.rank = entries.count("rank") ? std::stoi(entries["rank"]) : static_cast<int>(def.gens.size());
    for (auto const& [k, v] : entries)
      if (k != "rank" && k != "gens") throw Error("unknown group key '" + k + "'");
  } else {
    throw Error("group kind must be finite or free");
  }
  return def;
}

std::map<std::string, std::string> attributes(std::vector<std::string> const& tok,
                                              std::size_t from) {
  std::map<std::string, std::string> out;
  for (std::size_t i = from; i < tok.size(); ++i) {
    auto eq = tok[i].find('=');
    if (eq == std::string::npos) throw Error("expected key=value, got '" + tok[i] + "'");
    if (!out.emplace(tok[i].substr(0, eq), tok[i].substr(eq + 1)).second)
      throw Error("duplicate attribute '" + tok[i].substr(0, eq) + "'");
  }
  return out;
}

// Local word of a vertex group; the identity element's name stands for e.
Word parse_local(VertexGroup const& g, std::string const& text) {
  Word w;
  std::istringstream in(text);
  std::string name;
  while (in >> name) {
    if (g.is_finite() && name == g.table().names[g.table().identity()]) continue;
    Letter a = g.alphabet().find(name);
    if (a == kEpsilon) throw Error("unknown letter '" + name + "'");
    if (a != 0) w.push_back(a);
  }
  return w;
}

std::vector<Word> parse_images(VertexGroup const& g, FiniteGroupTable const& f,
                               std::string const& block) {
  std::vector<Word> images(f.order());
  std::vector<bool> seen(f.order(), false);
  for (auto const& [elt, word] : block_entries(unbrace(block))) {
    int x = f.find(elt);
    if (x < 0) throw Error("unknown edge-group element '" + elt + "'");
    images[x] = parse_local(g, word);
    seen[x] = true;
  }
  for (int x = 0; x < f.order(); ++x)
    if (!seen[x] && x != f.identity()) throw Error("no image for element '" + f.names[x] + "'");
  return images;
}

}  // namespace

GraphOfGroups parse_spec(std::string_view text) {
  std::map<std::string, GroupDef> groups;
  std::vector<GraphOfGroups::Vertex> vertices;
  std::vector<GraphOfGroups::Edge> edges;
  std::string base;
  auto vertex_index = [&](std::string const& name) {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].name == name) return static_cast<int>(v);
    throw Error("unknown vertex '" + name + "'");
  };
  auto group_def = [&](std::string const& name) -> GroupDef const& {
    auto it = groups.find(name);
    if (it == groups.end()) throw Error("unknown group '" + name + "'");
    return it->second;
  };
  auto require = [](std::map<std::string, std::string> const& a, char const* key) {
    auto it = a.find(key);
    if (it == a.end()) throw Error(std::string("missing ") + key + "=");
    return it->second;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    try {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      auto tok = tokenize(line);
      if (tok.empty()) continue;
      if (tok[0] == "group") {
        if (tok.size() < 2) throw Error("group needs a name");
        if (groups.count(tok[1])) throw Error("duplicate group '" + tok[1] + "'");
        groups.emplace(tok[1], parse_group(tok));
      } else if (tok[0] == "vertex") {
        if (tok.size() < 2) throw Error("vertex needs a name");
        auto a = attributes(tok, 2);
        std::string gname = require(a, "group");
        auto const& def = group_def(gname);
        std::string label = a.count("class") ? a["class"] : gname;
        for (auto const& [k, v] : a)
          if (k != "group" && k != "class") throw Error("unknown vertex attribute '" + k + "'");
        vertices.push_back({tok[1], gname,
                            def.finite ? VertexGroup::finite(def.table, label)
                                       : VertexGroup::free(def.rank, def.gens, label)});
      } else if (tok[0] == "edge") {
        if (tok.size() < 2) throw Error("edge needs a name");
        auto a = attributes(tok, 2);
        GraphOfGroups::Edge e;
        e.name = tok[1];
        e.from = vertex_index(require(a, "from"));
        e.to = vertex_index(require(a, "to"));
        e.group_name = require(a, "group");
        auto const& def = group_def(e.group_name);
        if (!def.finite) throw Error("edge groups must be finite");
        e.group = def.table;
        e.d0 = a.count("d0") ? parse_images(vertices[e.from].group, e.group, a["d0"])
                             : std::vector<Word>(e.group.order());
        e.d1 = a.count("d1") ? parse_images(vertices[e.to].group, e.group, a["d1"])
                             : std::vector<Word>(e.group.order());
        std::string tree = a.count("tree") ? a["tree"] : "yes";
        if (tree != "yes" && tree != "no") throw Error("tree= must be yes or no");
        e.tree = tree == "yes";
        if (a.count("letter")) e.letter = a["letter"];
        for (auto const& [k, v] : a)
          if (k != "from" && k != "to" && k != "group" && k != "d0" && k != "d1" &&
              k != "tree" && k != "letter")
            throw Error("unknown edge attribute '" + k + "'");
        edges.push_back(std::move(e));
      } else if (tok[0] == "base") {
        if (tok.size() != 2) throw Error("expected: base <vertex>");
        if (!base.empty()) throw Error("duplicate base line");
        base = tok[1];
        vertex_index(base);
      } else {
        throw Error("unknown keyword '" + tok[0] + "'");
      }
    } catch (Error const& err) {
      throw Error("line " + std::to_string(lineno) + ": " + err.what());
    } catch (std::exception const& err) {
      throw Error("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  int b = base.empty() ? 0 : vertex_index(base);
  return GraphOfGroups(std::move(vertices), std::move(edges), b);
}

GraphOfGroups load_spec(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

namespace {

std::string join(std::vector<std::string> const& items, char const* sep) {
  std::string out;
  for (auto const& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string format_images(VertexGroup const& target, FiniteGroupTable const& f,
                          std::vector<Word> const& images) {
  std::vector<std::string> items;
  for (int x = 0; x < f.order(); ++x)
    if (x != f.identity()) items.push_back(f.names[x] + "=" + target.alphabet().format(images[x]));
  return "{" + join(items, ";") + "}";
}

}  // namespace

std::string format_spec(GraphOfGroups const& g) {
  std::ostringstream out;
  std::set<std::string> emitted;
  auto finite = [&](std::string const& name, FiniteGroupTable const& t) {
    if (!emitted.insert(name).second) return;
    std::vector<std::string> cells;
    for (int x : t.table) cells.push_back(t.names[x]);
    out << "group " << name << " finite {elements=" << join(t.names, ",")
        << "; table=" << join(cells, ",") << "}\n";
  };
  for (auto const& v : g.vertices()) {
    if (v.group.is_finite()) {
      finite(v.group_name, v.group.table());
    } else if (emitted.insert(v.group_name).second) {
      std::vector<std::string> gens;
      for (Letter a = 1; a < v.group.alphabet().size(); a += 2) gens.push_back(v.group.alphabet().name(a));
      out << "group " << v.group_name << " free {rank=" << v.group.rank()
          << "; gens=" << join(gens, ",") << "}\n";
    }
  }
  for (auto const& e : g.edges()) finite(e.group_name, e.group);
  for (auto const& v : g.vertices()) {
    out << "vertex " << v.name << " group=" << v.group_name;
    if (v.group.class_label() != v.group_name) out << " class=" << v.group.class_label();
    out << "\n";
  }
  for (auto const& e : g.edges()) {
    out << "edge " << e.name << " from=" << g.vertex(e.from).name << " to=" << g.vertex(e.to).name
        << " group=" << e.group_name;
    if (e.group.order() > 1)
      out << " d0=" << format_images(g.vertex(e.from).group, e.group, e.d0)
          << " d1=" << format_images(g.vertex(e.to).group, e.group, e.d1);
    out << " tree=" << (e.tree ? "yes" : "no");
    if (!e.tree && !e.letter.empty()) out << " letter=" << e.letter;
    out << "\n";
  }
  out << "base " << g.vertex(g.base()).name << "\n";
  return out.str();
}

// ---------------------------------------------------------------- reduce

namespace {

// Oriented edge whose edge group fills its terminal vertex group, or -1.
int surjective_edge(GraphOfGroups const& g) {
  for (int oe = 0; oe < 2 * g.num_edges(); ++oe) {
    int w = g.target(oe);
    if (g.vertex_finite(w) && g.edge_order(oe) == g.vertex(w).group.order()) return oe;
  }
  return -1;
}

}  // namespace

bool is_reduced(GraphOfGroups const& g) { return surjective_edge(g) < 0; }

GraphOfGroups reduce(GraphOfGroups const& g, std::map<std::string, std::string>* letter_images) {
  // where[v][a] tracks original vertex letters through the collapses.
  std::vector<std::vector<std::pair<int, Letter>>> where(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v)
    for (Letter a = 0; a < g.vertex(v).group.alphabet().size(); ++a) where[v].push_back({v, a});
  GraphOfGroups cur = g;
  for (int oe; (oe = surjective_edge(cur)) >= 0;) {
    auto const& edge = cur.edge(oe / 2);
    if (edge.from == edge.to)
      throw Error("loop edge '" + edge.name +
                  "' has an edge group filling its vertex group; not supported");
    if (!edge.tree)
      throw Error("non-tree edge '" + edge.name + "' has an edge group filling a vertex group");
    int r = cur.target(oe), s = cur.source(oe);
    bool forward = oe % 2 == 0;
    auto const& dr = forward ? edge.d1 : edge.d0;
    auto const& ds = forward ? edge.d0 : edge.d1;
    // phi: local letter of r -> local letter of s.
    std::vector<Letter> phi(cur.vertex(r).group.alphabet().size(), 0);
    for (std::size_t f = 0; f < dr.size(); ++f)
      if (!dr[f].empty()) phi[dr[f][0]] = ds[f].empty() ? 0 : ds[f][0];
    auto map_word = [&](Word const& w) {
      Word out;
      for (Letter a : w)
        if (phi[a] != 0) out.push_back(phi[a]);
      return out;
    };
    std::vector<GraphOfGroups::Vertex> vertices;
    std::vector<int> index(cur.num_vertices(), -1);
    for (int v = 0; v < cur.num_vertices(); ++v) {
      if (v == r) continue;
      index[v] = static_cast<int>(vertices.size());
      vertices.push_back(cur.vertex(v));
    }
    index[r] = index[s];
    std::vector<GraphOfGroups::Edge> edges;
    for (int k = 0; k < cur.num_edges(); ++k) {
      if (k == oe / 2) continue;
      auto e = cur.edge(k);
      if (e.from == r)
        for (auto& w : e.d0) w = map_word(w);
      if (e.to == r)
        for (auto& w : e.d1) w = map_word(w);
      e.from = index[e.from];
      e.to = index[e.to];
      edges.push_back(std::move(e));
    }
    for (auto& row : where)
      for (auto& [v, a] : row) {
        if (v == r) a = phi[a];
        v = index[v];
      }
    cur = GraphOfGroups(std::move(vertices), std::move(edges), index[cur.base()]);
  }
  if (letter_images) {
    letter_images->clear();
    for (Letter a = 0; a < g.num_letters(); ++a) {
      if (g.stable_edge(a) >= 0) {
        (*letter_images)[g.alphabet().name(a)] = g.alphabet().name(a);
        continue;
      }
      int v = g.letter_vertices(a).front();
      auto [nv, na] = where[v][g.to_local(v, a)];
      (*letter_images)[g.alphabet().name(a)] = cur.alphabet().name(cur.to_global(nv, na));
    }
  }
  return cur;
}

}  // namespace autgog
