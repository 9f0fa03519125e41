#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ccd/model.hpp"

namespace ccd {

struct ParseResult {
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value() && !has_errors(diagnostics); }
};

/// Parses the line-oriented model format. Never throws on malformed input;
/// every failure is a positioned diagnostic.
ParseResult parse(std::string_view text);

ParseResult parse_file(const std::string& path);

/// Bundled example models, compiled into the library.
std::string_view bundled_model(const std::string& name);  // "mcc" | "ieee39"

}  // namespace ccd
