#include "ccd/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace ccd {

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::notice: return "notice";
    case Severity::warning: return "warning";
    case Severity::error: return "error";
  }
  return "notice";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format(const Diagnostic& diagnostic) {
  std::ostringstream out;
  out << to_string(diagnostic.severity);
  if (diagnostic.line > 0) {
    out << " " << diagnostic.line << ":" << diagnostic.col;
  }
  out << " [" << diagnostic.code << "] " << diagnostic.message;
  return out.str();
}

}  // namespace ccd
