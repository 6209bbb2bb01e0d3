// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "cgm/error.hpp"
#include "json_util.hpp"

namespace cgm {
namespace {

using detail::JsonField;
using detail::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Variant read_variant(const JsonField& field) {
  field.expect_object();
  Variant v;
  v.framework = field.at("framework").as_string();
  v.algorithm = field.at("algorithm").as_string();
  if (field.has("config")) {
    for (auto& flag : field.at("config").as_string_list()) v.config.insert(std::move(flag));
  }
  return v;
}

ordered_json variant_json(const Variant& v) {
  ordered_json out = ordered_json::object();
  out["framework"] = v.framework;
  out["algorithm"] = v.algorithm;
  out["config"] = ordered_json::array();
  for (const auto& flag : v.config) out["config"].push_back(flag);
  return out;
}

// ---- DOT subset -------------------------------------------------------------

enum class Tok { id, quoted, lbrace, rbrace, lbracket, rbracket, semi, comma, equals, arrow,
                 undirected, colon, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_trivia();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    auto single = [&](Tok kind) {
      advance();
      t.kind = kind;
      t.text = std::string(1, c);
      return t;
    };
    switch (c) {
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case ';': return single(Tok::semi);
      case ',': return single(Tok::comma);
      case '=': return single(Tok::equals);
      case ':': return single(Tok::colon);
      case '"': return quoted(t);
      case '<': throw DotSyntaxError(line_, column_, "HTML-like labels are not supported");
      default: break;
    }
    if (c == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
      t.kind = text_[pos_ + 1] == '>' ? Tok::arrow : Tok::undirected;
      t.text = std::string(text_.substr(pos_, 2));
      advance();
      advance();
      return t;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' ||
        static_cast<unsigned char>(c) >= 0x80) {
      t.kind = Tok::id;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        bool ok = std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.' ||
                  static_cast<unsigned char>(d) >= 0x80 ||
                  (d == '-' && !(pos_ + 1 < text_.size() &&
                                 (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')));
        if (!ok) break;
        t.text += d;
        advance();
      }
      return t;
    }
    throw DotSyntaxError(line_, column_, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && column_ == 1) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "/*") {
        auto line = line_, col = column_;
        advance();
        advance();
        while (pos_ < text_.size() && text_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= text_.size()) throw DotSyntaxError(line, col, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token quoted(Token t) {
    t.kind = Tok::quoted;
    advance();
    while (true) {
      if (pos_ >= text_.size()) throw DotSyntaxError(t.line, t.column, "unterminated string");
      char c = text_[pos_];
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\' && pos_ + 1 < text_.size()) {
        char n = text_[pos_ + 1];
        if (n == '"' || n == '\\') {
          t.text += n;
          advance();
          advance();
          continue;
        }
        if (n == '\n') {  // line continuation
          advance();
          advance();
          continue;
        }
      }
      t.text += c;
      advance();
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class DotParser {
 public:
  explicit DotParser(std::string_view text) : lexer_(text) { shift(); }

  RawGraph parse(Flavor flavor) {
    if (keyword("strict")) shift();
    if (keyword("graph")) fail("undirected graphs are not supported");
    if (!keyword("digraph")) fail("expected 'digraph'");
    shift();
    if (is_id()) shift();
    expect(Tok::lbrace, "'{'");
    while (cur_.kind != Tok::rbrace) {
      if (cur_.kind == Tok::end) fail("missing '}'");
      statement();
      if (cur_.kind == Tok::semi) shift();
    }
    shift();
    if (cur_.kind != Tok::end) fail("content after the closing '}'");

    RawGraph g;
    g.format = GraphFormat::dot;
    g.flavor = flavor;
    for (const auto& id : order_) g.nodes.emplace(id, labels_.at(id).value_or(id));
    g.edges = std::move(edges_);
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DotSyntaxError(cur_.line, cur_.column, why);
  }

  void shift() { cur_ = lexer_.next(); }

  bool is_id() const { return cur_.kind == Tok::id || cur_.kind == Tok::quoted; }

  bool keyword(std::string_view word) const {
    if (cur_.kind != Tok::id || cur_.text.size() != word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(cur_.text[i])) != word[i]) return false;
    }
    return true;
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  void declare(const std::string& id) {
    if (labels_.emplace(id, std::nullopt).second) order_.push_back(id);
  }

  std::string node_id() {
    if (!is_id()) fail("expected a node id");
    std::string id = cur_.text;
    shift();
    if (cur_.kind == Tok::colon) {  // port, ignored
      shift();
      if (!is_id()) fail("expected a port name");
      shift();
      if (cur_.kind == Tok::colon) {
        shift();
        if (!is_id()) fail("expected a compass point");
        shift();
      }
    }
    return id;
  }

  /// Parses zero or more `[a=b, ...]` lists; returns the last label seen.
  std::optional<std::string> attributes() {
    std::optional<std::string> label;
    while (cur_.kind == Tok::lbracket) {
      shift();
      while (cur_.kind != Tok::rbracket) {
        if (!is_id()) fail("expected an attribute name");
        std::string name = cur_.text;
        shift();
        expect(Tok::equals, "'='");
        if (!is_id()) fail("expected an attribute value");
        if (name == "label") label = cur_.text;
        shift();
        if (cur_.kind == Tok::comma || cur_.kind == Tok::semi) shift();
      }
      shift();
    }
    return label;
  }

  void statement() {
    if (keyword("subgraph") || cur_.kind == Tok::lbrace) fail("subgraphs are not supported");
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      shift();
      if (cur_.kind != Tok::lbracket) fail("expected '[' after attribute statement keyword");
      attributes();
      return;
    }
    std::string first = node_id();
    if (cur_.kind == Tok::equals) {  // graph attribute `a = b`
      shift();
      if (!is_id()) fail("expected an attribute value");
      shift();
      return;
    }
    if (cur_.kind == Tok::undirected) fail("undirected edge '--' in a digraph");
    std::vector<std::string> chain{first};
    while (cur_.kind == Tok::arrow) {
      shift();
      if (cur_.kind == Tok::lbrace || keyword("subgraph")) fail("subgraphs are not supported");
      chain.push_back(node_id());
      if (cur_.kind == Tok::undirected) fail("undirected edge '--' in a digraph");
    }
    auto label = attributes();
    for (const auto& id : chain) declare(id);
    if (chain.size() == 1) {
      if (label) labels_[first] = *label;
      return;
    }
    // A label on an edge statement labels the edge, not the nodes.
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) edges_.emplace(chain[i], chain[i + 1]);
  }

  DotLexer lexer_;
  Token cur_;
  std::vector<std::string> order_;
  std::map<std::string, std::optional<std::string>> labels_;
  std::set<std::pair<std::string, std::string>> edges_;
};

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RawGraph read_canonical_json(std::string_view text, Flavor flavor) {
  auto doc = detail::parse_located(text);
  auto root = JsonField::root(doc);
  root.expect_object();

  RawGraph g;
  g.format = GraphFormat::canonical_json;
  g.flavor = flavor;

  auto nodes_field = root.at("nodes");
  auto labels = nodes_field.as_string_list();
  for (const auto& label : labels) g.nodes.emplace(label, label);

  auto edges_field = root.at("edges");
  edges_field.expect_array();
  for (std::size_t i = 0; i < edges_field.size(); ++i) {
    auto pair = edges_field.at(i);
    pair.expect_array();
    if (pair.size() != 2) pair.fail("an edge is a [srcIndex, dstIndex] pair");
    auto src = pair.at(std::size_t{0}).as_index();
    auto dst = pair.at(std::size_t{1}).as_index();
    if (src >= labels.size()) pair.at(std::size_t{0}).fail("node index out of range");
    if (dst >= labels.size()) pair.at(std::size_t{1}).fail("node index out of range");
    g.edges.emplace(labels[src], labels[dst]);
  }

  if (root.has("program")) g.header.program = root.at("program").as_string();
  if (root.has("variant")) g.header.variant = read_variant(root.at("variant"));
  if (root.has("status")) {
    auto field = root.at("status");
    auto status = status_from_string(field.as_string());
    if (!status) field.fail("status must be ok, failed or timeout");
    g.header.status = *status;
  }
  return g;
}

RawGraph read_edge_list(std::string_view text, Flavor flavor) {
  RawGraph g;
  g.format = GraphFormat::edge_list;
  g.flavor = flavor;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto arrow = content.find("->");
    if (arrow == std::string_view::npos) throw LineError(line_no, "expected 'SRC -> DST'");
    auto src = trim(content.substr(0, arrow));
    auto dst = trim(content.substr(arrow + 2));
    if (src.empty()) throw LineError(line_no, "missing source");
    if (dst.empty()) throw LineError(line_no, "missing destination");
    if (dst.find("->") != std::string_view::npos) throw LineError(line_no, "more than one '->'");
    g.add_edge(std::string(src), std::string(dst));
  }
  return g;
}

RawGraph read_dot_subset(std::string_view text, Flavor flavor) {
  return DotParser(text).parse(flavor);
}

RawGraph read_graph(std::string_view text, GraphFormat format, Flavor flavor) {
  switch (format) {
    case GraphFormat::canonical_json: return read_canonical_json(text, flavor);
    case GraphFormat::edge_list: return read_edge_list(text, flavor);
    case GraphFormat::dot: return read_dot_subset(text, flavor);
  }
  return read_canonical_json(text, flavor);
}

GraphFormat sniff_format(const std::filesystem::path& path, std::string_view text) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".json") return GraphFormat::canonical_json;
  if (ext == ".dot" || ext == ".gv") return GraphFormat::dot;
  if (ext == ".edges" || ext == ".el" || ext == ".txt") return GraphFormat::edge_list;
  auto body = trim(text);
  if (!body.empty() && body.front() == '{') return GraphFormat::canonical_json;
  if (body.find("digraph") != std::string_view::npos) return GraphFormat::dot;
  return GraphFormat::edge_list;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("short write to '" + path.string() + "'");
}

std::string write_canonical_json(const RawGraph& graph) {
  std::vector<std::string> labels;
  labels.reserve(graph.nodes.size());
  for (const auto& [id, label] : graph.nodes) labels.push_back(label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto index_of = [&](const std::string& id) {
    auto it = graph.nodes.find(id);
    const std::string& label = it == graph.nodes.end() ? id : it->second;
    return static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label) -
                                    labels.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [from, to] : graph.edges) edges.emplace_back(index_of(from), index_of(to));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  ordered_json out = ordered_json::object();
  if (graph.header.program) out["program"] = *graph.header.program;
  if (graph.header.variant) out["variant"] = variant_json(*graph.header.variant);
  if (graph.header.status) out["status"] = std::string(to_string(*graph.header.status));
  out["nodes"] = labels;
  out["edges"] = ordered_json::array();
  for (const auto& [a, b] : edges) out["edges"].push_back({a, b});
  return detail::dump(out) + "\n";
}

std::string write_canonical_json(const CallGraph& graph) {
  RawGraph raw;
  for (const auto& node : graph.nodes) {
    auto label = node.to_string();
    raw.nodes.emplace(label, label);
  }
  for (const auto& [from, to] : graph.edges) raw.edges.emplace(from.to_string(), to.to_string());
  raw.header.program = graph.program;
  raw.header.variant = graph.variant;
  raw.header.status = graph.status;
  return write_canonical_json(raw);
}

std::string write_edge_list(const RawGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.edges.size());
  auto label = [&](const std::string& id) {
    auto it = graph.nodes.find(id);
    return it == graph.nodes.end() ? id : it->second;
  };
  for (const auto& [from, to] : graph.edges) lines.push_back(label(from) + " -> " + label(to));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string write_dot(const RawGraph& graph, std::string_view name) {
  std::string out = "digraph " + std::string(name) + " {\n";
  for (const auto& [id, label] : graph.nodes) {
    out += "  " + dot_quote(id);
    if (label != id) out += " [label=" + dot_quote(label) + "]";
    out += ";\n";
  }
  for (const auto& [from, to] : graph.edges) {
    out += "  " + dot_quote(from) + " -> " + dot_quote(to) + ";\n";
  }
  return out + "}\n";
}

}  // namespace cgm
