// Copyright 2026 The cgmorph Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgm {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- graph-model -----------------------------------------------------------

class MissingLabel : public Error {
 public:
  explicit MissingLabel(std::string node_id)
      : Error("edge references node '" + node_id + "' with no label"),
        node_id_(std::move(node_id)) {}
  const std::string& node_id() const noexcept { return node_id_; }

 private:
  std::string node_id_;
};

class UnparseableSignature : public Error {
 public:
  UnparseableSignature(std::string label, std::string flavor, const std::string& why)
      : Error("cannot parse '" + label + "' as " + flavor + " signature: " + why),
        label_(std::move(label)),
        flavor_(std::move(flavor)) {}
  const std::string& label() const noexcept { return label_; }
  const std::string& flavor() const noexcept { return flavor_; }

 private:
  std::string label_;
  std::string flavor_;
};

// ---- ingest ----------------------------------------------------------------

/// Base for reader errors; every reader error carries a position.
class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public ParseError {
 public:
  SchemaError(std::size_t byte_offset, std::string field_path, const std::string& why)
      : ParseError("schema error at byte " + std::to_string(byte_offset) + " (" +
                   (field_path.empty() ? std::string("<root>") : field_path) + "): " + why),
        byte_offset_(byte_offset),
        field_path_(std::move(field_path)) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::size_t byte_offset_;
  std::string field_path_;
};

class LineError : public ParseError {
 public:
  LineError(std::size_t line, const std::string& why)
      : ParseError("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DotSyntaxError : public ParseError {
 public:
  DotSyntaxError(std::size_t line, std::size_t column, const std::string& why)
      : ParseError("dot:" + std::to_string(line) + ":" + std::to_string(column) + ": " + why),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// ---- order-spec ------------------------------------------------------------

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error("precision order has a cycle: " + join(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += " >= ";
      out += p;
    }
    return out;
  }
  std::vector<std::string> cycle_;
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(std::string symbol, const std::string& where)
      : Error("unknown symbol '" + symbol + "' in " + where), symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

// ---- detector --------------------------------------------------------------

class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class ProgramMismatch : public Error {
 public:
  using Error::Error;
};

class InputFailed : public Error {
 public:
  using Error::Error;
};

// ---- campaign / synth ------------------------------------------------------

class ManifestError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

}  // namespace cgm
