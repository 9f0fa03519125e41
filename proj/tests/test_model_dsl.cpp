#include <algorithm>
#include <cmath>

#include "ccd/parser.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace ccd;

TEST_CASE("single declarations parse") {
  ParseResult r = parse("event LF1 rate=0.96\n");
  REQUIRE(r.ok());
  REQUIRE(r.model->events.size() == 1);
  CHECK(r.model->events[0].id == "LF1");
  CHECK(std::get<ExponentialRate>(r.model->events[0].model).lambda == 0.96);

  r = parse("event K prob=0.2");
  REQUIRE(r.ok());
  CHECK(std::get<ConstantProb>(r.model->events[0].model).p == 0.2);

  r = parse(
      "event a prob=0.1\n"
      "event b prob=0.2\n"
      "ft F = OR(a, NOT(b))\n");
  REQUIRE(r.ok());
  REQUIRE(r.model->fts.size() == 1);
  const FtExpr& f = r.model->fts[0].expr;
  REQUIRE(f.kind() == FtExpr::Kind::or_gate);
  REQUIRE(f.children().size() == 2);
  CHECK(f.children()[0].kind() == FtExpr::Kind::atomic);
  CHECK(f.children()[1].kind() == FtExpr::Kind::not_gate);

  r = parse(
      "event a prob=0.1\n"
      "ft F1 = a\nft F2 = a\n"
      "box B1 = dec(F1)\nbox B2 = dec(F2)\n"
      "path P = [B1:yes, B2:skip]\n");
  REQUIRE(r.ok());
  REQUIRE(r.model->paths.size() == 1);
  CHECK(r.model->paths[0].steps[0].selector == Selector::yes);
  CHECK(r.model->paths[0].steps[1].selector == Selector::irrelevant);
}

TEST_CASE("mission units convert at the boundary") {
  ParseResult r = parse("mission t=8760 unit=hours\n");
  REQUIRE(r.ok());
  CHECK(r.model->mission_t_years == doctest::Approx(1.0).epsilon(1e-12));
  r = parse("mission t=2 unit=years\n");
  REQUIRE(r.ok());
  CHECK(r.model->mission_t_years == 2.0);
}

TEST_CASE("errors carry positions and codes") {
  ParseResult r = parse("event X prob=1.5\n");
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == "InvalidProbability");
  CHECK(r.diagnostics[0].line == 1);

  r = parse("banana\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics[0].code == "ParseError");

  r = parse("event a prob=0.1\nevent a prob=0.2\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics[0].code == "DuplicateName");
  CHECK(r.diagnostics[0].line == 2);

  r = parse("ft F = missing\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics[0].code == "UnresolvedReference");

  r = parse("ft F = G\nft G = F\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics[0].code == "CyclicReference");

  r = parse("load L consequence=C mttr=12 customers=10\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics[0].code == "UnresolvedReference");
}

TEST_CASE("validate reports hypothesis violations") {
  // Same event in two boxes of one path.
  ParseResult r = parse(
      "event a prob=0.1\n"
      "ft F = a\n"
      "box B1 = dec(F)\nbox B2 = dec(F)\n"
      "path P = [B1:yes, B2:no]\n"
      "consequence C = { P }\n");
  REQUIRE(r.ok());
  auto diags = validate(*r.model);
  CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.code == "SharedLeafAcrossBoxes" && d.severity == Severity::error;
  }));

  // Duplicate path listing.
  r = parse(
      "event a prob=0.1\n"
      "ft F = a\nbox B = dec(F)\n"
      "path P = [B:yes]\n"
      "consequence C = { P, P }\n");
  REQUIRE(r.ok());
  diags = validate(*r.model);
  CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.code == "DuplicatePath";
  }));

  // Partial expansion notice.
  r = parse(
      "event a prob=0.1\nevent b prob=0.2\n"
      "ft FA = a\nft FB = b\n"
      "box BA = dec(FA)\nbox BB = dec(FB)\n"
      "path P1 = [BA:yes, BB:yes]\npath P2 = [BA:no, BB:no]\n"
      "consequence C = { P1, P2 }\n");
  REQUIRE(r.ok());
  diags = validate(*r.model);
  CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.code == "NotFullExpansion" && d.severity == Severity::notice;
  }));
}

TEST_CASE("bundled corpus round-trips") {
  for (const char* name : {"mcc", "ieee39"}) {
    ParseResult first = parse(bundled_model(name));
    REQUIRE(first.ok());
    const std::string text = pretty_print(*first.model);
    ParseResult second = parse(text);
    REQUIRE(second.ok());
    CHECK(first.model->structurally_equal(*second.model));
    // Printing is canonical: a second round trip is byte-identical.
    CHECK(pretty_print(*second.model) == text);
  }
}

TEST_CASE("empty model prints a skeleton") {
  ParseResult r = parse("");
  REQUIRE(r.ok());
  const std::string text = pretty_print(*r.model);
  CHECK(text.find("model \"unnamed\"") == 0);
  ParseResult again = parse(text);
  REQUIRE(again.ok());
  CHECK(r.model->structurally_equal(*again.model));
}

namespace {

Model random_model(ccdtest::Gen& gen) {
  Model model;
  model.name = "gen" + std::to_string(gen.int_in(0, 999));
  model.mission_t_years = gen.real01() * 4.0;
  model.mission_declared = true;
  const int n_events = gen.int_in(1, 10);
  std::vector<std::string> pool;
  for (int i = 0; i < n_events; ++i) {
    const std::string id = "e" + std::to_string(i);
    pool.push_back(id);
    if (gen.chance(0.5)) {
      model.events.push_back({id, ConstantProb{gen.prob()}});
    } else {
      model.events.push_back({id, ExponentialRate{gen.real01() * 3.0}});
    }
  }
  const int n_fts = gen.int_in(1, 4);
  for (int i = 0; i < n_fts; ++i) {
    const int lo = gen.int_in(0, n_events - 1);
    const int hi = gen.int_in(lo, n_events - 1);
    model.fts.push_back({"f" + std::to_string(i),
                         ccdtest::random_ft(gen, pool, static_cast<std::size_t>(lo),
                                            static_cast<std::size_t>(hi) + 1)});
  }
  for (int i = 0; i < gen.int_in(0, 3); ++i) {
    model.boxes.push_back(
        {"bx" + std::to_string(i), "f" + std::to_string(gen.int_in(0, n_fts - 1))});
  }
  for (int i = 0; i < static_cast<int>(model.boxes.size()); ++i) {
    NamedPath path;
    path.id = "p" + std::to_string(i);
    for (int b = 0; b <= i; ++b) {
      const Selector sel = gen.chance(0.2)   ? Selector::irrelevant
                           : gen.chance(0.5) ? Selector::yes
                                             : Selector::no;
      path.steps.push_back({model.boxes[static_cast<std::size_t>(b)].id, sel});
    }
    model.paths.push_back(std::move(path));
  }
  if (!model.paths.empty()) {
    NamedConsequence cons;
    cons.id = "outcome";
    for (const NamedPath& p : model.paths) cons.paths.push_back(p.id);
    model.consequences.push_back(cons);
    model.loads.push_back({"load0", "outcome", 1.0 + gen.real01() * 20.0,
                           gen.int_in(1, 5000)});
  }
  return model;
}

}  // namespace

TEST_CASE("generated models round-trip structurally") {
  ccdtest::Gen gen(90210);
  for (int iter = 0; iter < 50; ++iter) {
    const Model model = random_model(gen);
    const std::string text = pretty_print(model);
    CAPTURE(text);
    ParseResult parsed = parse(text);
    REQUIRE(parsed.ok());
    CHECK(model.structurally_equal(*parsed.model));
  }
}

TEST_CASE("parser survives malformed bytes without throwing") {
  ccdtest::Gen gen(666);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
      " \t\n\r#=(),[]{}:.\"_-+eE";
  for (int iter = 0; iter < 20000; ++iter) {
    std::string input;
    const int len = gen.int_in(0, 120);
    for (int i = 0; i < len; ++i) {
      if (gen.chance(0.05)) {
        input.push_back(static_cast<char>(gen.int_in(0, 255)));
      } else {
        input.push_back(
            alphabet[static_cast<std::size_t>(gen.int_in(0, static_cast<int>(alphabet.size()) - 1))]);
      }
    }
    const ParseResult r = parse(input);  // must not crash
    if (!r.ok()) {
      CHECK_FALSE(r.diagnostics.empty());
    }
  }
}

TEST_CASE("reduce_model mirrors semantic reduction") {
  ParseResult parsed = parse(bundled_model("mcc"));
  REQUIRE(parsed.ok());
  ModelReduceSummary summary;
  const Model reduced = reduce_model(*parsed.model, &summary);
  CHECK(summary.steps_dropped == 3);  // two skips in MS1, one in MS2
  CHECK(summary.paths_dropped.empty());
  REQUIRE(reduced.find_path("MS1") != nullptr);
  CHECK(reduced.find_path("MS1")->steps.size() == 1);
  CHECK(reduced.find_path("MS2")->steps.size() == 2);
  CHECK(reduced.find_path("MS3")->steps.size() == 3);
  CHECK(reduced.find_path("MR1")->steps.size() == 3);

  // Reducing an already reduced model is the identity, byte for byte.
  const std::string text = pretty_print(reduced);
  ParseResult again = parse(text);
  REQUIRE(again.ok());
  const Model twice = reduce_model(*again.model);
  CHECK(pretty_print(twice) == text);
}
