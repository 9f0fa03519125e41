#include "ccd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ccd {

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over base + golden-ratio stride; stream 0 is not
  // the identity, so the base seed itself never leaks into the stream.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  // Top 53 bits; [0, 1). Avoids distribution objects, whose output is not
  // pinned by the standard across implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

// Expression mirror with integer leaf slots, so the per-sample evaluation
// never touches strings.
struct CompiledExpr {
  FtExpr::Kind kind = FtExpr::Kind::atomic;
  int leaf = -1;
  std::vector<CompiledExpr> children;
};

struct CompiledBoxStep {
  CompiledExpr failure;
  Selector selector = Selector::no;
};

struct CompiledPath {
  std::vector<CompiledBoxStep> boxes;
};

struct CompiledTarget {
  std::vector<CompiledPath> paths;  // single path for FT/path targets
};

CompiledExpr compile_expr(const FtExpr& ft,
                          const std::map<std::string, int>& index) {
  CompiledExpr out;
  out.kind = ft.kind();
  if (ft.kind() == FtExpr::Kind::atomic) {
    auto it = index.find(ft.event());
    if (it == index.end()) {
      fail(ErrorCode::unknown_event, "event '" + ft.event() + "' not covered");
    }
    out.leaf = it->second;
    return out;
  }
  out.children.reserve(ft.children().size());
  for (const FtExpr& child : ft.children()) {
    out.children.push_back(compile_expr(child, index));
  }
  return out;
}

bool eval_expr(const CompiledExpr& e, const std::vector<char>& state) {
  switch (e.kind) {
    case FtExpr::Kind::atomic:
      return state[static_cast<std::size_t>(e.leaf)] != 0;
    case FtExpr::Kind::and_gate:
      for (const CompiledExpr& c : e.children) {
        if (!eval_expr(c, state)) return false;
      }
      return true;
    case FtExpr::Kind::or_gate:
      for (const CompiledExpr& c : e.children) {
        if (eval_expr(c, state)) return true;
      }
      return false;
    case FtExpr::Kind::not_gate:
      return !eval_expr(e.children[0], state);
  }
  return false;
}

bool eval_target(const CompiledTarget& target, const std::vector<char>& state) {
  for (const CompiledPath& path : target.paths) {
    bool all = true;
    for (const CompiledBoxStep& box : path.boxes) {
      bool truth = true;
      switch (box.selector) {
        case Selector::no: truth = eval_expr(box.failure, state); break;
        case Selector::yes: truth = !eval_expr(box.failure, state); break;
        case Selector::irrelevant: truth = true; break;
      }
      if (!truth) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

struct Universe {
  std::vector<std::string> ids;      // sorted
  std::vector<double> probs;         // aligned with ids
  std::map<std::string, int> index;
};

Universe make_universe(std::vector<std::string> ids, const Assignment& assign) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Universe u;
  u.ids = std::move(ids);
  u.probs.reserve(u.ids.size());
  for (std::size_t i = 0; i < u.ids.size(); ++i) {
    u.probs.push_back(assign.at(u.ids[i]));
    u.index.emplace(u.ids[i], static_cast<int>(i));
  }
  return u;
}

constexpr std::uint64_t kBlockSamples = 4096;

McsEstimate finish_estimate(std::uint64_t hits, std::uint64_t n,
                            std::uint64_t seed) {
  McsEstimate est;
  est.n = n;
  est.seed = seed;
  est.mean = static_cast<double>(hits) / static_cast<double>(n);
  est.stderr_ = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(n));
  est.ci_low = std::max(0.0, est.mean - 1.96 * est.stderr_);
  est.ci_high = std::min(1.0, est.mean + 1.96 * est.stderr_);
  return est;
}

/// Block kernel shared by all single-target estimators. Integer hit counts
/// per fixed 4096-sample block, merged in block order: the result does not
/// depend on how many threads ran the blocks.
std::vector<std::uint64_t> run_blocks(
    std::span<const CompiledTarget> targets, const Universe& universe,
    std::uint64_t n, std::uint64_t seed) {
  if (n < 1) {
    fail(ErrorCode::invalid_probability, "sample count must be at least 1");
  }
  const std::uint64_t n_blocks = (n + kBlockSamples - 1) / kBlockSamples;
  std::vector<std::uint64_t> hits(n_blocks * targets.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    std::mt19937_64 rng(derive_stream_seed(seed, b));
    const std::uint64_t begin = b * kBlockSamples;
    const std::uint64_t count = std::min(kBlockSamples, n - begin);
    std::vector<char> state(universe.probs.size(), 0);
    std::vector<std::uint64_t> local(targets.size(), 0);
    for (std::uint64_t s = 0; s < count; ++s) {
      for (std::size_t i = 0; i < universe.probs.size(); ++i) {
        state[i] = uniform01(rng) < universe.probs[i] ? 1 : 0;
      }
      for (std::size_t t = 0; t < targets.size(); ++t) {
        local[t] += eval_target(targets[t], state) ? 1 : 0;
      }
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      hits[b * targets.size() + t] = local[t];
    }
  }
  std::vector<std::uint64_t> totals(targets.size(), 0);
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    for (std::size_t t = 0; t < targets.size(); ++t) {
      totals[t] += hits[b * targets.size() + t];
    }
  }
  return totals;
}

CompiledTarget compile_ft_target(const FtExpr& ft, const Universe& u) {
  CompiledTarget target;
  CompiledPath path;
  path.boxes.push_back({compile_expr(ft, u.index), Selector::no});
  target.paths.push_back(std::move(path));
  return target;
}

CompiledTarget compile_path_target(const ConsequencePath& path,
                                   const Universe& u) {
  CompiledTarget target;
  CompiledPath compiled;
  for (const DecisionBox& box : path.boxes) {
    compiled.boxes.push_back({compile_expr(box.failure, u.index), box.selector});
  }
  target.paths.push_back(std::move(compiled));
  return target;
}

CompiledTarget compile_box_target(const ConsequenceBox& cbox,
                                  const Universe& u) {
  CompiledTarget target;
  for (const ConsequencePath& path : cbox.paths) {
    CompiledPath compiled;
    for (const DecisionBox& box : path.boxes) {
      compiled.boxes.push_back(
          {compile_expr(box.failure, u.index), box.selector});
    }
    target.paths.push_back(std::move(compiled));
  }
  return target;
}

McsEstimate estimate_one(const CompiledTarget& target, const Universe& universe,
                         std::uint64_t n, std::uint64_t seed) {
  const std::uint64_t hits =
      run_blocks(std::span(&target, 1), universe, n, seed)[0];
  return finish_estimate(hits, n, seed);
}

}  // namespace

McsEstimate mcs_estimate(const FtExpr& target, const Assignment& assign,
                         std::uint64_t n, std::uint64_t seed) {
  Universe u = make_universe(leaves(target), assign);
  return estimate_one(compile_ft_target(target, u), u, n, seed);
}

McsEstimate mcs_estimate(const ConsequencePath& target,
                         const Assignment& assign, std::uint64_t n,
                         std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const DecisionBox& box : target.boxes) collect_leaves(box.failure, ids);
  Universe u = make_universe(std::move(ids), assign);
  return estimate_one(compile_path_target(target, u), u, n, seed);
}

McsEstimate mcs_estimate(const ConsequenceBox& target, const Assignment& assign,
                         std::uint64_t n, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const ConsequencePath& path : target.paths) {
    for (const DecisionBox& box : path.boxes) collect_leaves(box.failure, ids);
  }
  Universe u = make_universe(std::move(ids), assign);
  return estimate_one(compile_box_target(target, u), u, n, seed);
}

std::vector<McsEstimate> mcs_estimate_many(
    std::span<const ConsequenceBox> targets, const Assignment& assign,
    std::uint64_t n, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const ConsequenceBox& cbox : targets) {
    for (const ConsequencePath& path : cbox.paths) {
      for (const DecisionBox& box : path.boxes) collect_leaves(box.failure, ids);
    }
  }
  Universe u = make_universe(std::move(ids), assign);
  std::vector<CompiledTarget> compiled;
  compiled.reserve(targets.size());
  for (const ConsequenceBox& cbox : targets) {
    compiled.push_back(compile_box_target(cbox, u));
  }
  const std::vector<std::uint64_t> totals = run_blocks(compiled, u, n, seed);
  std::vector<McsEstimate> out;
  out.reserve(totals.size());
  for (std::uint64_t hits : totals) out.push_back(finish_estimate(hits, n, seed));
  return out;
}

double draw_ttf(double u, double lambda) {
  if (lambda <= 0.0) {
    fail(ErrorCode::non_positive_rate, "failure rate " + std::to_string(lambda));
  }
  if (u <= 0.0) u = std::numeric_limits<double>::min();
  return -std::log(u) / lambda;
}

double draw_ttr(double u, double r, bool corrected) {
  if (r <= 0.0) {
    fail(ErrorCode::non_positive_rate, "repair parameter " + std::to_string(r));
  }
  if (u <= 0.0) u = std::numeric_limits<double>::min();
  return corrected ? -r * std::log(u) : -std::log(u) / r;
}

TtfTtrResult ttf_ttr_study(double lambda_per_hour, double repair_hours,
                           double horizon_hours, std::uint64_t seed,
                           bool corrected_ttr) {
  if (lambda_per_hour <= 0.0) {
    fail(ErrorCode::non_positive_rate,
         "failure rate " + std::to_string(lambda_per_hour));
  }
  if (repair_hours <= 0.0) {
    fail(ErrorCode::non_positive_rate,
         "repair parameter " + std::to_string(repair_hours));
  }
  if (horizon_hours <= 0.0) {
    fail(ErrorCode::negative_time, "horizon " + std::to_string(horizon_hours));
  }
  std::mt19937_64 rng(derive_stream_seed(seed, 0));
  TtfTtrResult result;
  result.horizon_hours = horizon_hours;
  result.seed = seed;
  result.corrected_ttr = corrected_ttr;
  double now = 0.0;
  double down = 0.0;
  while (now < horizon_hours) {
    const double ttf = draw_ttf(uniform01(rng), lambda_per_hour);
    if (now + ttf >= horizon_hours) break;  // up until the horizon
    now += ttf;
    const double ttr = draw_ttr(uniform01(rng), repair_hours, corrected_ttr);
    if (now + ttr >= horizon_hours) {
      down += horizon_hours - now;
      break;
    }
    down += ttr;
    now += ttr;
    ++result.cycles;
  }
  result.unavailability = down / horizon_hours;
  return result;
}

namespace reference {

namespace {

McsEstimate single_stream(const CompiledTarget& target, const Universe& u,
                          std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<char> state(u.probs.size(), 0);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < u.probs.size(); ++i) {
      state[i] = uniform01(rng) < u.probs[i] ? 1 : 0;
    }
    hits += eval_target(target, state) ? 1 : 0;
  }
  return finish_estimate(hits, n, seed);
}

}  // namespace

McsEstimate mcs_single_stream(const ConsequenceBox& target,
                              const Assignment& assign, std::uint64_t n,
                              std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const ConsequencePath& path : target.paths) {
    for (const DecisionBox& box : path.boxes) collect_leaves(box.failure, ids);
  }
  Universe u = make_universe(std::move(ids), assign);
  return single_stream(compile_box_target(target, u), u, n, seed);
}

McsEstimate mcs_single_stream(const FtExpr& target, const Assignment& assign,
                              std::uint64_t n, std::uint64_t seed) {
  Universe u = make_universe(leaves(target), assign);
  return single_stream(compile_ft_target(target, u), u, n, seed);
}

}  // namespace reference

}  // namespace ccd
