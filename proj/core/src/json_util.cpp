// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_util.hpp"

#include <iterator>

namespace cgm::detail {
namespace {

/// Input iterator that publishes how many bytes the parser has consumed.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* begin, std::size_t* consumed)
      : p_(p), begin_(begin), consumed_(consumed) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (consumed_) *consumed_ = static_cast<std::size_t>(p_ - begin_);
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
  bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

 private:
  const char* p_ = nullptr;
  const char* begin_ = nullptr;
  std::size_t* consumed_ = nullptr;
};

class LocatingBuilder {
 public:
  LocatingBuilder(LocatedJson& out, std::string_view text, const std::size_t& consumed)
      : out_(out), text_(text), consumed_(consumed) {}

  bool null() { return put(json(nullptr)); }
  bool boolean(bool v) { return put(json(v)); }
  bool number_integer(json::number_integer_t v) { return put(json(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return put(json(v)); }
  bool number_float(json::number_float_t v, const std::string&) { return put(json(v)); }
  bool string(std::string& v) { return put(json(std::move(v))); }
  bool binary(json::binary_t& v) { return put(json(std::move(v))); }

  bool start_object(std::size_t) { return open(json::object()); }
  bool key(std::string& k) {
    stack_.back().key = k;
    prev_end_ = consumed_;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    prev_end_ = consumed_;
    return true;
  }
  bool start_array(std::size_t) { return open(json::array()); }
  bool end_array() {
    stack_.pop_back();
    prev_end_ = consumed_;
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const json::exception& ex) {
    std::string path = stack_.empty() ? std::string() : stack_.back().path;
    std::string what = ex.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (auto close = what.find("] "); close != std::string::npos) what = what.substr(close + 2);
    throw SchemaError(position == 0 ? 0 : position - 1, path, "malformed JSON: " + what);
  }

 private:
  struct Frame {
    json* container;
    std::string path;
    std::string key;
    std::size_t index = 0;
  };

  std::string next_path() {
    if (stack_.empty()) return "";
    auto& top = stack_.back();
    if (top.container->is_object()) {
      return top.path.empty() ? top.key : top.path + "." + top.key;
    }
    return top.path + "[" + std::to_string(top.index) + "]";
  }

  json* insert(json value) {
    if (stack_.empty()) {
      out_.value = std::move(value);
      return &out_.value;
    }
    auto& top = stack_.back();
    if (top.container->is_object()) {
      auto& slot = (*top.container)[top.key];
      slot = std::move(value);
      return &slot;
    }
    ++top.index;
    top.container->push_back(std::move(value));
    return &top.container->back();
  }

  // The lexer reads one byte past numbers before reporting them, so the
  // current count overshoots; scan forward from the previous event instead.
  std::size_t token_start() {
    std::size_t i = prev_end_;
    while (i < text_.size() && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\n' || text_[i] == '\r' ||
                                text_[i] == ',' || text_[i] == ':')) {
      ++i;
    }
    prev_end_ = consumed_;
    return i;
  }

  bool put(json value) {
    out_.offsets[next_path()] = token_start();
    insert(std::move(value));
    return true;
  }

  bool open(json value) {
    auto path = next_path();
    out_.offsets[path] = token_start();
    json* slot = insert(std::move(value));
    stack_.push_back(Frame{slot, path, {}, 0});
    return true;
  }

  LocatedJson& out_;
  std::string_view text_;
  const std::size_t& consumed_;
  std::size_t prev_end_ = 0;
  std::vector<Frame> stack_;
};

}  // namespace

LocatedJson parse_located(std::string_view text) {
  LocatedJson doc;
  std::size_t consumed = 0;
  LocatingBuilder builder(doc, text, consumed);
  CountingIterator first(text.data(), text.data(), &consumed);
  CountingIterator last(text.data() + text.size(), text.data(), nullptr);
  json::sax_parse(first, last, &builder);
  return doc;
}

JsonField JsonField::at(const char* key) const {
  expect_object();
  auto it = value_->find(key);
  if (it == value_->end()) fail(std::string("missing required field '") + key + "'");
  return JsonField(*doc_, *it, child_path(key));
}

JsonField JsonField::at(std::size_t index) const {
  expect_array();
  if (index >= value_->size()) fail("index " + std::to_string(index) + " out of range");
  return JsonField(*doc_, (*value_)[index], path_ + "[" + std::to_string(index) + "]");
}

const JsonField& JsonField::expect_object() const {
  if (!value_->is_object()) fail("expected an object");
  return *this;
}

const JsonField& JsonField::expect_array() const {
  if (!value_->is_array()) fail("expected an array");
  return *this;
}

std::string JsonField::as_string() const {
  if (!value_->is_string()) fail("expected a string");
  return value_->get<std::string>();
}

std::uint64_t JsonField::as_index() const {
  if (!value_->is_number_unsigned()) fail("expected a non-negative integer");
  return value_->get<std::uint64_t>();
}

std::vector<std::string> JsonField::as_string_list() const {
  expect_array();
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).as_string());
  return out;
}

std::string dump(const ordered_json& value) {
  return value.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

}  // namespace cgm::detail
