// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "cgm/normalize.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "cgm/error.hpp"

namespace cgm {
namespace {

bool is_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '$';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Thrown inside the parsers; converted to UnparseableSignature at the API
/// boundary so that every error names the full label.
struct SyntaxFault {
  std::string why;
};

[[noreturn]] void fault(std::string why) { throw SyntaxFault{std::move(why)}; }

/// Removes `<...>` type-argument lists. A '<' only opens one when it follows
/// an identifier character, which keeps `<init>` and `<clinit>` intact.
std::string erase_generics(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '<' && !out.empty() && is_ident_char(out.back())) {
      int depth = 1;
      std::size_t j = i + 1;
      for (; j < s.size() && depth > 0; ++j) {
        if (s[j] == '<') ++depth;
        if (s[j] == '>') --depth;
      }
      if (depth != 0) fault("unbalanced type arguments");
      i = j - 1;
      continue;
    }
    out += c;
  }
  return out;
}

bool valid_dotted_name(std::string_view s) {
  if (s.empty()) return false;
  bool segment_start = true;
  for (char c : s) {
    if (c == '.') {
      if (segment_start) return false;
      segment_start = true;
      continue;
    }
    if (!is_ident_char(c)) return false;
    if (segment_start && c >= '0' && c <= '9') return false;
    segment_start = false;
  }
  return !segment_start;
}

/// Source-type name: whitespace removed, varargs as one more array level.
std::string source_type(std::string_view raw) {
  std::string t;
  for (char c : raw) {
    if (!is_space(c)) t += c;
  }
  if (t.size() > 3 && t.ends_with("...")) {
    t.resize(t.size() - 3);
    t += "[]";
  }
  std::string_view base = t;
  while (base.ends_with("[]")) base.remove_suffix(2);
  if (!valid_dotted_name(base)) fault("'" + std::string(raw) + "' is not a source type name");
  return t;
}

std::vector<std::string> source_params(std::string_view inner) {
  std::vector<std::string> out;
  std::string erased = erase_generics(inner);
  std::string_view rest = trim(erased);
  if (rest.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = rest.find(',', start);
    auto piece = trim(rest.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (piece.empty()) fault("empty parameter type");
    out.push_back(source_type(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_method_name(std::string_view name) {
  if (name == "<init>" || name == "<clinit>") return;
  if (name.empty()) fault("empty method name");
  for (char c : name) {
    if (!is_ident_char(c)) fault("bad character in method name '" + std::string(name) + "'");
  }
}

/// Splits `pkg.sub.Cls` (dots or slashes) into package and class.
void split_class(std::string_view qualified, MethodRef& ref) {
  std::string q(qualified);
  std::replace(q.begin(), q.end(), '/', '.');
  auto dot = q.rfind('.');
  if (dot == std::string::npos) {
    ref.package.clear();
    ref.class_name = q;
  } else {
    ref.package = q.substr(0, dot);
    ref.class_name = q.substr(dot + 1);
    if (!valid_dotted_name(ref.package)) fault("bad package '" + ref.package + "'");
  }
  if (ref.class_name.empty()) fault("empty class name");
  for (char c : ref.class_name) {
    if (!is_ident_char(c)) fault("bad character in class name '" + ref.class_name + "'");
  }
}

MethodRef parse_canonical(std::string_view label) {
  auto paren = label.find('(');
  if (paren == std::string_view::npos) fault("missing '('");
  if (label.back() != ')') fault("missing ')'");
  auto head = erase_generics(trim(label.substr(0, paren)));
  auto dot = head.rfind('.');
  if (dot == std::string::npos) fault("missing class");
  MethodRef ref;
  split_class(std::string_view(head).substr(0, dot), ref);
  ref.method = head.substr(dot + 1);
  check_method_name(ref.method);
  auto inner = label.substr(paren + 1, label.size() - paren - 2);
  if (inner.find_first_of("()") != std::string_view::npos) fault("nested parentheses");
  ref.params = source_params(inner);
  return ref;
}

/// `<pkg.Cls: ret name(t1,t2)>` (Soot and Doop).
MethodRef parse_bracketed(std::string_view label) {
  if (label.size() < 2 || label.front() != '<' || label.back() != '>') {
    fault("expected <Class: ret name(args)>");
  }
  auto inner = label.substr(1, label.size() - 2);
  auto colon = inner.find(':');
  if (colon == std::string_view::npos) fault("missing ':'");
  MethodRef ref;
  split_class(erase_generics(trim(inner.substr(0, colon))), ref);
  auto rest = trim(inner.substr(colon + 1));
  auto paren = rest.find('(');
  if (paren == std::string_view::npos) fault("missing '('");
  if (rest.empty() || rest.back() != ')') fault("missing ')'");
  auto head = erase_generics(rest.substr(0, paren));
  auto head_view = trim(head);
  auto space = head_view.find_last_of(" \t");
  if (space == std::string_view::npos) fault("missing return type");
  ref.method = std::string(trim(head_view.substr(space + 1)));
  check_method_name(ref.method);
  auto inner_params = rest.substr(paren + 1, rest.size() - paren - 2);
  if (inner_params.find_first_of("()") != std::string_view::npos) fault("nested parentheses");
  ref.params = source_params(inner_params);
  return ref;
}

std::optional<std::string_view> primitive_for(char code) {
  switch (code) {
    case 'B': return "byte";
    case 'C': return "char";
    case 'D': return "double";
    case 'F': return "float";
    case 'I': return "int";
    case 'J': return "long";
    case 'S': return "short";
    case 'Z': return "boolean";
    default: return std::nullopt;
  }
}

/// Parses one field descriptor starting at `pos`, advancing it.
std::string field_descriptor(std::string_view desc, std::size_t& pos) {
  std::size_t dims = 0;
  while (pos < desc.size() && desc[pos] == '[') {
    ++dims;
    ++pos;
  }
  if (pos >= desc.size()) fault("truncated descriptor");
  std::string base;
  char code = desc[pos];
  if (auto prim = primitive_for(code)) {
    base = *prim;
    ++pos;
  } else if (code == 'L') {
    auto semi = desc.find(';', pos);
    if (semi == std::string_view::npos) fault("unterminated class descriptor");
    base = std::string(desc.substr(pos + 1, semi - pos - 1));
    std::replace(base.begin(), base.end(), '/', '.');
    base = erase_generics(base);
    if (!valid_dotted_name(base)) fault("bad class descriptor '" + base + "'");
    pos = semi + 1;
  } else {
    fault(std::string("bad descriptor character '") + code + "'");
  }
  for (std::size_t i = 0; i < dims; ++i) base += "[]";
  return base;
}

/// `pkg/Cls.name(Desc)Ret` with JVM descriptors (WALA).
MethodRef parse_wala(std::string_view label) {
  auto paren = label.find('(');
  if (paren == std::string_view::npos) fault("missing '('");
  auto close = label.find(')', paren);
  if (close == std::string_view::npos) fault("missing ')'");
  auto head = trim(label.substr(0, paren));
  auto dot = head.rfind('.');
  if (dot == std::string_view::npos) fault("missing class");
  MethodRef ref;
  split_class(head.substr(0, dot), ref);
  ref.method = std::string(head.substr(dot + 1));
  check_method_name(ref.method);
  auto desc = label.substr(paren + 1, close - paren - 1);
  std::size_t pos = 0;
  while (pos < desc.size()) ref.params.push_back(field_descriptor(desc, pos));
  auto ret = label.substr(close + 1);
  if (ret.empty()) fault("missing return descriptor");
  if (ret != "V") {
    std::size_t rpos = 0;
    field_descriptor(ret, rpos);
    if (rpos != ret.size()) fault("trailing characters after return descriptor");
  }
  return ref;
}

std::string descriptor_for(std::string_view type) {
  std::string out;
  while (type.ends_with("[]")) {
    out += '[';
    type.remove_suffix(2);
  }
  static const std::map<std::string_view, char> prims = {
      {"byte", 'B'}, {"char", 'C'}, {"double", 'D'}, {"float", 'F'}, {"int", 'I'},
      {"long", 'J'}, {"short", 'S'}, {"boolean", 'Z'}, {"void", 'V'}};
  if (auto it = prims.find(type); it != prims.end()) {
    out += it->second;
    return out;
  }
  std::string cls(type);
  std::replace(cls.begin(), cls.end(), '.', '/');
  out += 'L';
  out += cls;
  out += ';';
  return out;
}

}  // namespace

std::string strip_artifacts(std::string_view label) {
  std::string_view s = label;
  while (true) {
    auto us = s.rfind('_');
    if (us == std::string_view::npos) break;
    auto tail = s.substr(us + 1);
    if (tail.size() < 6 || !std::all_of(tail.begin(), tail.end(), is_hex)) break;
    s = s.substr(0, us);
  }
  return std::string(s);
}

RawGraph resolve_nodes(const RawGraph& raw, std::size_t* merged_ids) {
  RawGraph out;
  out.format = raw.format;
  out.flavor = raw.flavor;
  out.header = raw.header;
  std::map<std::string, std::string> resolved;
  for (const auto& [id, label] : raw.nodes) {
    auto clean = strip_artifacts(label);
    if (clean.empty()) continue;
    resolved.emplace(id, clean);
    out.nodes.emplace(clean, clean);
  }
  auto lookup = [&](const std::string& id) -> const std::string& {
    auto it = resolved.find(id);
    if (it == resolved.end()) throw MissingLabel(id);
    return it->second;
  };
  for (const auto& [from, to] : raw.edges) out.edges.emplace(lookup(from), lookup(to));
  if (merged_ids) *merged_ids = resolved.size() - out.nodes.size();
  return out;
}

std::vector<std::string> default_denylist() { return {"Cluster"}; }

RawGraph filter_metadata(const RawGraph& graph, const std::vector<std::string>& denylist) {
  auto denied = [&](const std::string& label) {
    return std::any_of(denylist.begin(), denylist.end(), [&](const std::string& pattern) {
      return !pattern.empty() && label.starts_with(pattern);
    });
  };
  RawGraph out;
  out.format = graph.format;
  out.flavor = graph.flavor;
  out.header = graph.header;
  for (const auto& [id, label] : graph.nodes) {
    if (!denied(label)) out.nodes.emplace(id, label);
  }
  for (const auto& edge : graph.edges) {
    if (out.nodes.contains(edge.first) && out.nodes.contains(edge.second)) out.edges.insert(edge);
  }
  return out;
}

MethodRef canonicalize_signature(std::string_view label, Flavor flavor) {
  auto text = trim(label);
  try {
    if (text.empty()) fault("empty label");
    switch (flavor) {
      case Flavor::canonical: return parse_canonical(text);
      case Flavor::soot:
      case Flavor::doop: return parse_bracketed(text);
      case Flavor::wala: return parse_wala(text);
    }
    fault("unknown flavor");
  } catch (const SyntaxFault& f) {
    throw UnparseableSignature(std::string(label), std::string(to_string(flavor)), f.why);
  }
}

std::string render_signature(const MethodRef& ref, Flavor flavor, std::string_view return_type) {
  switch (flavor) {
    case Flavor::canonical: return ref.to_string();
    case Flavor::soot:
    case Flavor::doop: {
      std::string out = "<" + ref.qualified_class() + ": " + std::string(return_type) + " " +
                        ref.method + "(";
      for (std::size_t i = 0; i < ref.params.size(); ++i) {
        if (i != 0) out += ',';
        out += ref.params[i];
      }
      return out + ")>";
    }
    case Flavor::wala: {
      std::string cls = ref.qualified_class();
      std::replace(cls.begin(), cls.end(), '.', '/');
      std::string out = cls + "." + ref.method + "(";
      for (const auto& p : ref.params) out += descriptor_for(p);
      return out + ")" + descriptor_for(return_type);
    }
  }
  return ref.to_string();
}

Normalized normalize_detailed(const RawGraph& raw, std::string program, Variant variant,
                              const NormalizeOptions& options) {
  Normalized result;
  auto& stats = result.stats;

  RawGraph stripped = raw;
  for (auto& [id, label] : stripped.nodes) label = strip_artifacts(label);

  RawGraph resolved = resolve_nodes(stripped, &stats.merged_ids);
  RawGraph filtered = filter_metadata(resolved, options.denylist);
  stats.filtered_nodes = resolved.nodes.size() - filtered.nodes.size();
  stats.filtered_edges = resolved.edges.size() - filtered.edges.size();

  CallGraph& g = result.graph;
  g.program = std::move(program);
  g.variant = std::move(variant);
  g.status = GraphStatus::ok;

  std::map<std::string, MethodRef> refs;
  for (const auto& [label, unused] : filtered.nodes) {
    auto ref = canonicalize_signature(label, filtered.flavor);
    if (!g.nodes.insert(ref).second) ++stats.canonical_collisions;
    refs.emplace(label, std::move(ref));
  }
  for (const auto& [from, to] : filtered.edges) g.edges.emplace(refs.at(from), refs.at(to));
  return result;
}

}  // namespace cgm
