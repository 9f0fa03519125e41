#include "ccd/parser.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ccd {

namespace {

constexpr double kHoursPerYear = 8760.0;

struct Cursor {
  std::string_view line;
  std::size_t pos = 0;
  int line_no = 0;

  int col() const { return static_cast<int>(pos) + 1; }

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos < line.size() && line[pos] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
};

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_number_char(char c) {
  return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' ||
         c == 'e' || c == 'E';
}

class LineParser {
 public:
  LineParser(Cursor& cur, std::vector<Diagnostic>& diags)
      : cur_(cur), diags_(diags) {}

  bool failed() const { return failed_; }

  void error(const std::string& code, const std::string& message) {
    diags_.push_back({Severity::error, cur_.line_no, cur_.col(), code, message});
    failed_ = true;
  }

  std::string ident() {
    cur_.skip_ws();
    if (cur_.pos >= cur_.line.size() || !is_ident_start(cur_.line[cur_.pos])) {
      error("ParseError", "expected an identifier");
      return {};
    }
    const std::size_t start = cur_.pos;
    while (cur_.pos < cur_.line.size() && is_ident_char(cur_.line[cur_.pos])) {
      ++cur_.pos;
    }
    return std::string(cur_.line.substr(start, cur_.pos - start));
  }

  bool expect(char c) {
    if (!cur_.accept(c)) {
      error("ParseError", std::string("expected '") + c + "'");
      return false;
    }
    return true;
  }

  bool expect_key(const std::string& key) {
    cur_.skip_ws();
    if (cur_.line.substr(cur_.pos, key.size()) != key) {
      error("ParseError", "expected '" + key + "'");
      return false;
    }
    cur_.pos += key.size();
    return true;
  }

  double number() {
    cur_.skip_ws();
    const std::size_t start = cur_.pos;
    while (cur_.pos < cur_.line.size() && is_number_char(cur_.line[cur_.pos])) {
      ++cur_.pos;
    }
    double value = 0.0;
    const char* first = cur_.line.data() + start;
    const char* last = cur_.line.data() + cur_.pos;
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last || start == cur_.pos) {
      error("ParseError", "expected a number");
      return 0.0;
    }
    return value;
  }

  long integer() {
    cur_.skip_ws();
    const std::size_t start = cur_.pos;
    while (cur_.pos < cur_.line.size() &&
           ((cur_.line[cur_.pos] >= '0' && cur_.line[cur_.pos] <= '9') ||
            cur_.line[cur_.pos] == '-')) {
      ++cur_.pos;
    }
    long value = 0;
    const char* first = cur_.line.data() + start;
    const char* last = cur_.line.data() + cur_.pos;
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last || start == cur_.pos) {
      error("ParseError", "expected an integer");
      return 0;
    }
    return value;
  }

  std::string quoted_string() {
    if (!expect('"')) return {};
    const std::size_t start = cur_.pos;
    while (cur_.pos < cur_.line.size() && cur_.line[cur_.pos] != '"') {
      ++cur_.pos;
    }
    if (cur_.pos >= cur_.line.size()) {
      error("ParseError", "unterminated string");
      return {};
    }
    std::string value(cur_.line.substr(start, cur_.pos - start));
    ++cur_.pos;  // closing quote
    return value;
  }

  void expect_line_end() {
    if (!cur_.at_end() && !failed_) {
      error("ParseError", "unexpected trailing input");
    }
  }

  // expr := AND(list) | OR(list) | NOT(expr) | ID
  FtExpr expr(int depth = 0) {
    if (depth > 64) {
      error("ParseError", "expression nests too deeply");
      return FtExpr::atomic("_");
    }
    std::string head = ident();
    if (failed_) return FtExpr::atomic("_");
    if ((head == "AND" || head == "OR" || head == "NOT") && cur_.peek('(')) {
      cur_.accept('(');
      std::vector<FtExpr> children;
      if (!cur_.peek(')')) {
        children.push_back(expr(depth + 1));
        while (!failed_ && cur_.accept(',')) {
          children.push_back(expr(depth + 1));
        }
      }
      if (failed_ || !expect(')')) return FtExpr::atomic("_");
      if (head == "NOT") {
        if (children.size() != 1) {
          error("ParseError", "NOT takes exactly one operand");
          return FtExpr::atomic("_");
        }
        return FtExpr::not_of(std::move(children[0]));
      }
      return head == "AND" ? FtExpr::and_of(std::move(children))
                           : FtExpr::or_of(std::move(children));
    }
    return FtExpr::atomic(std::move(head));
  }

 private:
  Cursor& cur_;
  std::vector<Diagnostic>& diags_;
  bool failed_ = false;
};

class ModelParser {
 public:
  ParseResult run(std::string_view text) {
    std::size_t offset = 0;
    int line_no = 0;
    while (offset <= text.size()) {
      std::size_t eol = text.find('\n', offset);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view raw = text.substr(offset, eol - offset);
      offset = eol + 1;
      ++line_no;

      if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' ||
                              raw.back() == '\t')) {
        raw.remove_suffix(1);
      }
      Cursor cur{raw, 0, line_no};
      if (cur.at_end()) {
        if (eol == text.size()) break;
        continue;
      }
      parse_line(cur);
      if (eol == text.size()) break;
    }
    resolve_references();

    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) {
      result.model = std::move(model_);
    }
    return result;
  }

 private:
  void parse_line(Cursor& cur) {
    LineParser lp(cur, diags_);
    const std::string keyword = lp.ident();
    if (lp.failed()) return;

    if (keyword == "model") {
      model_.name = lp.quoted_string();
    } else if (keyword == "mission") {
      parse_mission(lp, cur);
    } else if (keyword == "event") {
      parse_event(lp, cur);
    } else if (keyword == "ft") {
      parse_ft(lp, cur);
    } else if (keyword == "box") {
      parse_box(lp, cur);
    } else if (keyword == "path") {
      parse_path(lp, cur);
    } else if (keyword == "consequence") {
      parse_consequence(lp, cur);
    } else if (keyword == "load") {
      parse_load(lp, cur);
    } else {
      lp.error("ParseError", "unknown declaration '" + keyword + "'");
      return;
    }
    lp.expect_line_end();
  }

  void parse_mission(LineParser& lp, Cursor& cur) {
    if (mission_seen_) {
      lp.error("DuplicateName", "mission time declared twice");
      return;
    }
    if (!lp.expect_key("t") || !lp.expect('=')) return;
    double t = lp.number();
    if (!lp.expect_key("unit") || !lp.expect('=')) return;
    const std::string unit = lp.ident();
    if (lp.failed()) return;
    if (unit == "hours") {
      t /= kHoursPerYear;
    } else if (unit != "years") {
      lp.error("ParseError", "unit must be 'years' or 'hours'");
      return;
    }
    if (t < 0.0) {
      diags_.push_back({Severity::error, cur.line_no, 1, "NegativeTime",
                        "mission time must be nonnegative"});
      return;
    }
    model_.mission_t_years = t;
    model_.mission_declared = true;
    mission_seen_ = true;
  }

  void parse_event(LineParser& lp, Cursor& cur) {
    const std::string id = lp.ident();
    const std::string key = lp.ident();
    if (lp.failed() || !lp.expect('=')) return;
    const double value = lp.number();
    if (lp.failed()) return;
    if (model_.find_event(id) != nullptr) {
      lp.error("DuplicateName", "event '" + id + "' already declared");
      return;
    }
    if (key == "rate") {
      if (value < 0.0) {
        diags_.push_back({Severity::error, cur.line_no, 1, "NegativeRate",
                          "rate of event '" + id + "' must be nonnegative"});
        return;
      }
      model_.events.push_back({id, ExponentialRate{value}});
    } else if (key == "prob") {
      if (!(value >= 0.0 && value <= 1.0)) {
        diags_.push_back({Severity::error, cur.line_no, 1, "InvalidProbability",
                          "probability of event '" + id + "' must be in [0,1]"});
        return;
      }
      model_.events.push_back({id, ConstantProb{value}});
    } else {
      lp.error("ParseError", "expected 'rate=' or 'prob='");
    }
  }

  void parse_ft(LineParser& lp, Cursor& cur) {
    const std::string id = lp.ident();
    if (lp.failed() || !lp.expect('=')) return;
    FtExpr expr = lp.expr();
    if (lp.failed()) return;
    if (model_.find_ft(id) != nullptr) {
      lp.error("DuplicateName", "fault tree '" + id + "' already declared");
      return;
    }
    decl_lines_["ft:" + id] = cur.line_no;
    model_.fts.push_back({id, std::move(expr)});
  }

  void parse_box(LineParser& lp, Cursor& cur) {
    const std::string id = lp.ident();
    if (lp.failed() || !lp.expect('=')) return;
    if (!lp.expect_key("dec") || !lp.expect('(')) return;
    const std::string ft = lp.ident();
    if (lp.failed() || !lp.expect(')')) return;
    if (model_.find_box(id) != nullptr) {
      diags_.push_back({Severity::error, cur.line_no, 1, "DuplicateName",
                        "box '" + id + "' already declared"});
      return;
    }
    decl_lines_["box:" + id] = cur.line_no;
    model_.boxes.push_back({id, ft});
  }

  void parse_path(LineParser& lp, Cursor& cur) {
    const std::string id = lp.ident();
    if (lp.failed() || !lp.expect('=') || !lp.expect('[')) return;
    NamedPath path;
    path.id = id;
    if (!cur.peek(']')) {
      do {
        const std::string box = lp.ident();
        if (lp.failed() || !lp.expect(':')) return;
        const std::string sel = lp.ident();
        if (lp.failed()) return;
        Selector selector;
        if (sel == "yes") {
          selector = Selector::yes;
        } else if (sel == "no") {
          selector = Selector::no;
        } else if (sel == "skip") {
          selector = Selector::irrelevant;
        } else {
          lp.error("ParseError", "selector must be yes, no, or skip");
          return;
        }
        path.steps.push_back({box, selector});
      } while (cur.accept(','));
    }
    if (!lp.expect(']')) return;
    if (model_.find_path(id) != nullptr) {
      lp.error("DuplicateName", "path '" + id + "' already declared");
      return;
    }
    decl_lines_["path:" + id] = cur.line_no;
    model_.paths.push_back(std::move(path));
  }

  void parse_consequence(LineParser& lp, Cursor& cur) {
    const std::string id = lp.ident();
    if (lp.failed() || !lp.expect('=') || !lp.expect('{')) return;
    NamedConsequence cons;
    cons.id = id;
    if (!cur.peek('}')) {
      do {
        cons.paths.push_back(lp.ident());
        if (lp.failed()) return;
      } while (cur.accept(','));
    }
    if (!lp.expect('}')) return;
    if (model_.find_consequence(id) != nullptr) {
      lp.error("DuplicateName", "consequence '" + id + "' already declared");
      return;
    }
    decl_lines_["cons:" + id] = cur.line_no;
    model_.consequences.push_back(std::move(cons));
  }

  void parse_load(LineParser& lp, Cursor& cur) {
    const std::string label = lp.ident();
    if (lp.failed()) return;
    if (!lp.expect_key("consequence") || !lp.expect('=')) return;
    const std::string consequence = lp.ident();
    if (lp.failed()) return;
    if (!lp.expect_key("mttr") || !lp.expect('=')) return;
    const double mttr = lp.number();
    if (lp.failed()) return;
    if (!lp.expect_key("customers") || !lp.expect('=')) return;
    const long customers = lp.integer();
    if (lp.failed()) return;
    if (model_.find_load(label) != nullptr) {
      lp.error("DuplicateName", "load '" + label + "' already declared");
      return;
    }
    if (mttr <= 0.0) {
      diags_.push_back({Severity::error, cur.line_no, 1, "ParseError",
                        "mttr of load '" + label + "' must be positive"});
      return;
    }
    if (customers <= 0) {
      diags_.push_back({Severity::error, cur.line_no, 1, "ZeroCustomers",
                        "load '" + label + "' must serve at least one customer"});
      return;
    }
    decl_lines_["load:" + label] = cur.line_no;
    model_.loads.push_back({label, consequence, mttr, customers});
  }

  int decl_line(const std::string& key) const {
    auto it = decl_lines_.find(key);
    return it == decl_lines_.end() ? 0 : it->second;
  }

  void unresolved(const std::string& key, const std::string& what,
                  const std::string& id) {
    diags_.push_back({Severity::error, decl_line(key), 1,
                      "UnresolvedReference",
                      what + " references undeclared '" + id + "'"});
  }

  // Leaf ids resolve to events first, then to named trees; tree references
  // must be acyclic.
  void check_ft_refs(const std::string& owner, const FtExpr& expr,
                     std::set<std::string>& stack) {
    if (expr.kind() == FtExpr::Kind::atomic) {
      const std::string& id = expr.event();
      if (model_.find_event(id) != nullptr) return;
      const NamedFt* named = model_.find_ft(id);
      if (named == nullptr) {
        unresolved("ft:" + owner, "fault tree '" + owner + "'", id);
        return;
      }
      if (stack.count(id)) {
        diags_.push_back({Severity::error, decl_line("ft:" + id), 1,
                          "CyclicReference",
                          "fault tree '" + id + "' is defined in terms of itself"});
        return;
      }
      stack.insert(id);
      check_ft_refs(id, named->expr, stack);
      stack.erase(id);
      return;
    }
    for (const FtExpr& child : expr.children()) {
      check_ft_refs(owner, child, stack);
    }
  }

  void resolve_references() {
    for (const NamedFt& ft : model_.fts) {
      std::set<std::string> stack{ft.id};
      check_ft_refs(ft.id, ft.expr, stack);
    }
    for (const BoxTemplate& box : model_.boxes) {
      if (model_.find_ft(box.ft) == nullptr) {
        unresolved("box:" + box.id, "box '" + box.id + "'", box.ft);
      }
    }
    for (const NamedPath& path : model_.paths) {
      for (const PathStep& step : path.steps) {
        if (model_.find_box(step.box) == nullptr) {
          unresolved("path:" + path.id, "path '" + path.id + "'", step.box);
        }
      }
    }
    for (const NamedConsequence& cons : model_.consequences) {
      for (const std::string& path_id : cons.paths) {
        if (model_.find_path(path_id) == nullptr) {
          unresolved("cons:" + cons.id, "consequence '" + cons.id + "'",
                     path_id);
        }
      }
    }
    for (const LoadSpec& load : model_.loads) {
      if (model_.find_consequence(load.consequence) == nullptr) {
        unresolved("load:" + load.label, "load '" + load.label + "'",
                   load.consequence);
      }
    }
  }

  Model model_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, int> decl_lines_;
  bool mission_seen_ = false;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ModelParser parser;
  return parser.run(text);
}

ParseResult parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult result;
    result.diagnostics.push_back({Severity::error, 0, 0, "ParseError",
                                  "cannot open '" + path + "'"});
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace ccd
