#pragma once

#include <string>
#include <vector>

namespace ccd {

enum class Severity { notice, warning, error };

const char* to_string(Severity severity);

/// A non-fatal finding from a validator or the model parser.
/// Errors block evaluation; warnings and notices do not.
struct Diagnostic {
  Severity severity = Severity::notice;
  int line = 0;  // 1-based; 0 when no source location applies
  int col = 0;
  std::string code;
  std::string message;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

std::string format(const Diagnostic& diagnostic);

}  // namespace ccd
