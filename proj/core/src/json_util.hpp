// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

// JSON parsing that remembers where each value ended in the input, so that
// schema errors can point at a byte offset.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cgm/error.hpp"

namespace cgm::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct LocatedJson {
  json value;
  std::map<std::string, std::size_t> offsets;  // field path -> byte offset

  std::size_t offset_of(const std::string& path) const {
    auto it = offsets.find(path);
    return it == offsets.end() ? 0 : it->second;
  }
};

/// Throws SchemaError on malformed JSON.
LocatedJson parse_located(std::string_view text);

/// Typed access into a LocatedJson; every failure is a SchemaError naming
/// the field path.
class JsonField {
 public:
  JsonField(const LocatedJson& doc, const json& value, std::string path)
      : doc_(&doc), value_(&value), path_(std::move(path)) {}

  static JsonField root(const LocatedJson& doc) { return {doc, doc.value, ""}; }

  const json& value() const { return *value_; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const { return value_->is_object() && value_->contains(key); }
  JsonField at(const char* key) const;
  JsonField at(std::size_t index) const;
  std::size_t size() const { return value_->size(); }

  const JsonField& expect_object() const;
  const JsonField& expect_array() const;
  std::string as_string() const;
  std::uint64_t as_index() const;
  std::vector<std::string> as_string_list() const;

  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError(doc_->offset_of(path_), path_, why);
  }

 private:
  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const LocatedJson* doc_;
  const json* value_;
  std::string path_;
};

/// Compact, deterministic, invalid UTF-8 replaced.
std::string dump(const ordered_json& value);

}  // namespace cgm::detail
