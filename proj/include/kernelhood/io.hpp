#ifndef KERNELHOOD_IO_HPP
#define KERNELHOOD_IO_HPP

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kernelhood/digraph.hpp"
#include "kernelhood/error.hpp"
#include "kernelhood/formula.hpp"
#include "kernelhood/structure.hpp"

namespace kernelhood {

namespace detail {

// Strips a trailing comment and splits on whitespace.
inline std::vector<std::string> line_tokens(const std::string& line) {
  std::string body = line;
  auto hash = body.find('#');
  if (hash != std::string::npos) body.erase(hash);
  std::vector<std::string> tokens;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = line_tokens(line);
    if (!tokens.empty()) fn(lineno, tokens, line);
  }
}

inline std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open file '" + path + "'");
  return in;
}

}  // namespace detail

// Edge-list format: one record per line; "V <id>" declares a vertex,
// "E <a> <b>" an edge; '#' starts a comment; ids are nonempty tokens
// without whitespace. Records may appear in any order.
inline Digraph read_edge_list(std::istream& in) {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> edge_lines;
  detail::for_each_record(in, [&](std::size_t lineno, const std::vector<std::string>& tok,
                                  const std::string&) {
    if (tok[0] == "V" && tok.size() == 2) {
      vertices.push_back(tok[1]);
    } else if (tok[0] == "E" && tok.size() == 3) {
      edge_lines.push_back({lineno, {tok[1], tok[2]}});
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                           ": expected 'V <id>' or 'E <id> <id>', got '" + tok[0] + "'",
                       lineno);
    }
  });
  std::set<std::string> declared(vertices.begin(), vertices.end());
  for (const auto& [lineno, edge] : edge_lines) {
    for (const auto& id : {edge.first, edge.second}) {
      if (!declared.count(id))
        throw ParseError("line " + std::to_string(lineno) + ": edge endpoint '" + id +
                             "' was never declared with 'V " + id + "'",
                         lineno);
    }
    edges.push_back(edge);
  }
  return Digraph(vertices, edges);
}

inline Digraph read_edge_list_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  return read_edge_list(in);
}

inline std::string render_edge_list(const Digraph& g) {
  std::string out;
  for (const auto& id : g.vertex_ids()) out += "V " + id + "\n";
  for (const auto& [a, b] : g.edge_list()) out += "E " + a + " " + b + "\n";
  return out;
}

// Sorted, space-separated ids.
inline std::string render_set(const VertexSet& s) {
  std::string out;
  for (const auto& id : s) {
    if (!out.empty()) out += ' ';
    out += id;
  }
  return out;
}

// A single vertex set: ids separated by whitespace, '#' comments.
inline VertexSet read_vertex_set(std::istream& in) {
  VertexSet out;
  detail::for_each_record(in, [&](std::size_t, const std::vector<std::string>& tok,
                                  const std::string&) {
    out.insert(tok.begin(), tok.end());
  });
  return out;
}

inline VertexSet read_vertex_set_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  return read_vertex_set(in);
}

// Frontier list: each line "F <id> <id> ..." is one frontier (bare "F" is
// the empty frontier), in file order.
inline std::vector<VertexSet> read_frontiers(std::istream& in) {
  std::vector<VertexSet> out;
  detail::for_each_record(in, [&](std::size_t lineno, const std::vector<std::string>& tok,
                                  const std::string&) {
    if (tok[0] != "F")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'F <ids...>', got '" +
                           tok[0] + "'",
                       lineno);
    out.emplace_back(tok.begin() + 1, tok.end());
  });
  return out;
}

inline std::vector<VertexSet> read_frontiers_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  return read_frontiers(in);
}

// Structure file: "STRUCT n=<size>" header, then "ADD a b c" / "MUL a b c"
// triple lines; '#' comments.
inline FiniteStructure read_structure(std::istream& in) {
  bool have_header = false;
  std::size_t size = 0;
  std::set<Triple> add, mul;
  auto parse_element = [](const std::string& tok, std::size_t lineno) -> unsigned {
    bool ok = !tok.empty() && tok.size() <= 9;
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
    if (!ok)
      throw ParseError("line " + std::to_string(lineno) + ": expected a number, got '" + tok +
                           "'",
                       lineno);
    return static_cast<unsigned>(std::stoul(tok));
  };
  detail::for_each_record(in, [&](std::size_t lineno, const std::vector<std::string>& tok,
                                  const std::string&) {
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "STRUCT" || tok[1].rfind("n=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) +
                             ": expected header 'STRUCT n=<size>'",
                         lineno);
      size = parse_element(tok[1].substr(2), lineno);
      have_header = true;
      return;
    }
    if ((tok[0] != "ADD" && tok[0] != "MUL") || tok.size() != 4)
      throw ParseError("line " + std::to_string(lineno) +
                           ": expected 'ADD a b c' or 'MUL a b c'",
                       lineno);
    Triple t{parse_element(tok[1], lineno), parse_element(tok[2], lineno),
             parse_element(tok[3], lineno)};
    (tok[0] == "ADD" ? add : mul).insert(t);
  });
  if (!have_header) throw ParseError("missing 'STRUCT n=<size>' header");
  return FiniteStructure(size, std::move(add), std::move(mul));
}

inline FiniteStructure read_structure_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  return read_structure(in);
}

inline std::string render_structure(const FiniteStructure& m) {
  std::string out = "STRUCT n=" + std::to_string(m.size()) + "\n";
  for (Rel r : {Rel::Add, Rel::Mul}) {
    const char* name = r == Rel::Add ? "ADD" : "MUL";
    for (const Triple& t : m.relation(r))
      out += std::string(name) + " " + std::to_string(t[0]) + " " + std::to_string(t[1]) +
             " " + std::to_string(t[2]) + "\n";
  }
  return out;
}

// Sentence file: one sentence per line in the formula grammar; '#' comments.
inline std::vector<Sentence> read_sentences(std::istream& in) {
  std::vector<Sentence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    try {
      out.push_back(parse_sentence(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), lineno,
                       e.column());
    } catch (const DomainError& e) {
      throw DomainError(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<Sentence> read_sentences_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  return read_sentences(in);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// DOT export; members of `kernel` (when given) are drawn with a double
// border (peripheries=2).
inline std::string to_dot(const Digraph& g, const VertexSet& kernel = {}) {
  std::string out = "digraph kernelhood {\n";
  for (const auto& id : g.vertex_ids()) {
    out += "  " + detail::dot_quote(id);
    if (kernel.count(id)) out += " [peripheries=2]";
    out += ";\n";
  }
  for (const auto& [a, b] : g.edge_list())
    out += "  " + detail::dot_quote(a) + " -> " + detail::dot_quote(b) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace kernelhood

#endif  // KERNELHOOD_IO_HPP
