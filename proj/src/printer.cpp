#include <charconv>
#include <sstream>

#include "ccd/model.hpp"

namespace ccd {

namespace {

// Shortest representation that round-trips through from_chars.
std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void print_expr(std::ostringstream& out, const FtExpr& expr) {
  switch (expr.kind()) {
    case FtExpr::Kind::atomic:
      out << expr.event();
      return;
    case FtExpr::Kind::and_gate:
    case FtExpr::Kind::or_gate: {
      out << (expr.kind() == FtExpr::Kind::and_gate ? "AND(" : "OR(");
      bool first = true;
      for (const FtExpr& child : expr.children()) {
        if (!first) out << ", ";
        first = false;
        print_expr(out, child);
      }
      out << ")";
      return;
    }
    case FtExpr::Kind::not_gate:
      out << "NOT(";
      print_expr(out, expr.children()[0]);
      out << ")";
      return;
  }
}

}  // namespace

std::string pretty_print(const Model& model) {
  std::ostringstream out;
  out << "model \"" << model.name << "\"\n";
  out << "\nmission t=" << format_double(model.mission_t_years)
      << " unit=years\n";

  if (!model.events.empty()) out << "\n";
  for (const BasicEvent& event : model.events) {
    if (const auto* constant = std::get_if<ConstantProb>(&event.model)) {
      out << "event " << event.id << " prob=" << format_double(constant->p)
          << "\n";
    } else {
      out << "event " << event.id << " rate="
          << format_double(std::get<ExponentialRate>(event.model).lambda)
          << "\n";
    }
  }

  if (!model.fts.empty()) out << "\n";
  for (const NamedFt& ft : model.fts) {
    out << "ft " << ft.id << " = ";
    print_expr(out, ft.expr);
    out << "\n";
  }

  if (!model.boxes.empty()) out << "\n";
  for (const BoxTemplate& box : model.boxes) {
    out << "box " << box.id << " = dec(" << box.ft << ")\n";
  }

  if (!model.paths.empty()) out << "\n";
  for (const NamedPath& path : model.paths) {
    out << "path " << path.id << " = [";
    bool first = true;
    for (const PathStep& step : path.steps) {
      if (!first) out << ", ";
      first = false;
      out << step.box << ":" << to_string(step.selector);
    }
    out << "]\n";
  }

  if (!model.consequences.empty()) out << "\n";
  for (const NamedConsequence& cons : model.consequences) {
    out << "consequence " << cons.id << " = { ";
    bool first = true;
    for (const std::string& path : cons.paths) {
      if (!first) out << ", ";
      first = false;
      out << path;
    }
    out << (cons.paths.empty() ? "}" : " }") << "\n";
  }

  if (!model.loads.empty()) out << "\n";
  for (const LoadSpec& load : model.loads) {
    out << "load " << load.label << " consequence=" << load.consequence
        << " mttr=" << format_double(load.mttr_hours)
        << " customers=" << load.customers << "\n";
  }
  return out.str();
}

}  // namespace ccd
