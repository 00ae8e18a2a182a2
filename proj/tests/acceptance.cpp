// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dynpartix/bench.hpp"
#include "dynpartix/cli.hpp"
#include "dynpartix/solver.hpp"
#include "support.hpp"

using namespace dynpartix;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::istringstream in(testing::kInputAF);
  cli::main(args, out, err, in);
  return out.str();
}

Outcome golden_example() {
  Outcome o;
  auto timed = [&](const std::vector<std::string>& args, const std::string& expected) {
    const auto t = Clock::now();
    const auto got = cli_out(args);
    const double s = seconds_since(t);
    o.expect(got == expected, "dynpartix " + args.back() + " printed '" + got + "'");
    o.expect(s < 1.0, "check took " + std::to_string(s) + " s");
  };
  timed({"-s", "admissible", "--enum"}, "{}\n{a}\n{a,c}\n{a,d}\n{a,d,g}\n{c}\n{d}\n{d,g}\n");
  timed({"-s", "preferred", "--enum"}, "{a,c}\n{a,d,g}\n");
  timed({"-s", "preferred", "--cred", "d"}, "YES\n");
  timed({"-s", "preferred", "--skept", "d"}, "NO\n");
  timed({"-s", "preferred", "--count"}, "2\n");
  timed({"-s", "admissible", "--count"}, "8\n");
  return o;
}

Outcome example_width() {
  Outcome o;
  const auto t = Clock::now();
  const auto g = primal_graph(testing::example1());
  int best = 1 << 30;
  for (Heuristic h : kAllHeuristics) best = std::min(best, decompose(g, elimination_order(g, h, 0)).width());
  o.expect(best == 2, "best width " + std::to_string(best));
  o.expect(seconds_since(t) < 1.0, "too slow");
  return o;
}

Outcome oracle_sweep() {
  Outcome o;
  const auto t = Clock::now();
  std::mt19937_64 rng(20100705);
  const double densities[] = {0.05, 0.15, 0.3, 0.5};
  constexpr int kInstances = 520;
  for (int i = 0; i < kInstances && o.ok; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const auto af = testing::random_af(rng, n, densities[i % 4]);
    const auto adm = enumerate_admissible_oracle(af);
    const auto pref = enumerate_preferred_oracle(af);
    for (Heuristic h : kAllHeuristics) {
      const auto p = prepare(af, h, 0);
      const std::string where = "instance " + std::to_string(i) + " " + std::string(to_string(h));
      o.expect(enumerate_extensions(af, p.normalized, Semantics::admissible) == adm, where + ": admissible enum");
      o.expect(enumerate_extensions(af, p.normalized, Semantics::preferred) == pref, where + ": preferred enum");
      o.expect(count_extensions(af, p.normalized, Semantics::admissible) == adm.size(), where + ": admissible count");
      o.expect(count_extensions(af, p.normalized, Semantics::preferred) == pref.size(), where + ": preferred count");
      for (const auto& x : af.arguments()) {
        o.expect(decide_credulous(af, p.normalized, x) == credulous_oracle(af, x), where + ": cred " + x);
        o.expect(decide_skeptical(af, p.normalized, x) == skeptical_oracle(af, x), where + ": skept " + x);
      }
    }
  }
  const double s = seconds_since(t);
  o.expect(s < 300.0, "sweep took " + std::to_string(s) + " s");
  if (o.ok) o.detail = std::to_string(kInstances) + " frameworks in " + std::to_string(s) + " s";
  return o;
}

Outcome decomposition_validity() {
  Outcome o;
  const auto t = Clock::now();
  std::mt19937_64 rng(1729);
  const double densities[] = {0.03, 0.08, 0.15, 0.3};
  for (int i = 0; i < 200 && o.ok; ++i) {
    const auto g = testing::random_graph(rng, 1 + rng() % 50, densities[i % 4]);
    for (Heuristic h : kAllHeuristics) {
      for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const auto td = decompose(g, elimination_order(g, h, seed));
        const auto v = validate(td, g);
        o.expect(v.empty(), "graph " + std::to_string(i) + ": " + (v.empty() ? "" : v.front()));
        const auto nd = normalize(td);
        o.expect(nd.width() == td.width(), "graph " + std::to_string(i) + ": normalization changed the width");
        const auto nv = validate_normalized(nd, g);
        o.expect(nv.empty(), "graph " + std::to_string(i) + ": " + (nv.empty() ? "" : nv.front()));
      }
    }
  }
  o.expect(seconds_since(t) < 60.0, "too slow");
  return o;
}

Outcome big_count() {
  Outcome o;
  const auto t = Clock::now();
  const ArgumentationFramework af(testing::numbered_names(64, "i"), {});
  const auto p = prepare(af);
  const auto adm = count_extensions(af, p.normalized, Semantics::admissible);
  const auto pref = count_extensions(af, p.normalized, Semantics::preferred);
  o.expect(adm.str() == "18446744073709551616", "admissible count " + adm.str());
  o.expect(pref == 1, "preferred count " + pref.str());
  o.expect(seconds_since(t) < 1.0, "too slow");
  return o;
}

double skeptical_runtime(std::size_t cols) {
  BenchConfig cfg;
  cfg.modes = {BenchMode::skeptical};
  cfg.semantics = {Semantics::preferred};
  double best = 1e300;
  // best of three keeps scheduler noise out of the small instances
  for (int rep = 0; rep < 3; ++rep) {
    const auto r = run_benchmark(std::vector<GridSpec>{{3, cols, 1.0, 0}}, cfg).front();
    if (r.timed_out || r.answer.rfind("error", 0) == 0) return -1.0;
    best = std::min(best, r.runtime_millis);
  }
  return best;
}

Outcome grid_scaling() {
  Outcome o;
  std::ostringstream d;
  double per_arg_10 = 0, per_arg_200 = 0;
  for (std::size_t cols : {10U, 50U, 100U, 200U}) {
    const double ms = skeptical_runtime(cols);
    o.expect(ms >= 0.0 && ms < 300'000.0, "3x" + std::to_string(cols) + " did not finish");
    d << "3x" << cols << "=" << ms << "ms ";
    if (cols == 10) per_arg_10 = ms / 30.0;
    if (cols == 200) per_arg_200 = ms / 600.0;
  }
  const double ratio = per_arg_200 / per_arg_10;
  d << "ratio=" << ratio;
  o.expect(ratio <= 3.0, d.str());
  if (o.ok) o.detail = d.str();
  return o;
}

Outcome timeout_protocol() {
  Outcome o;
  BenchConfig cfg;
  cfg.modes = {BenchMode::skeptical};
  cfg.semantics = {Semantics::preferred};
  cfg.timeout_millis = 100;
  const auto r = run_benchmark(std::vector<GridSpec>{{8, 8, 1.0, 0}}, cfg).front();
  o.expect(r.timed_out, "timedOut=false");
  o.expect(r.runtime_millis == 100.0, "runtimeMillis=" + std::to_string(r.runtime_millis));
  return o;
}

Outcome generator_statistics() {
  Outcome o;
  const auto t = Clock::now();
  double total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    total += static_cast<double>(generate_grid_af({5, 5, 0.5, seed}).attacks().size());
  }
  const double mean = total / 100.0;
  const double expected = 0.5 * static_cast<double>(moore_pair_count(5, 5));
  o.expect(std::abs(mean - expected) <= 0.05 * expected,
           "mean " + std::to_string(mean) + " vs " + std::to_string(expected));
  o.expect(seconds_since(t) < 10.0, "too slow");
  if (o.ok) o.detail = "mean " + std::to_string(mean) + " vs " + std::to_string(expected);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 golden example", golden_example},
      {"AC2 example tree-width", example_width},
      {"AC3 oracle equivalence sweep", oracle_sweep},
      {"AC4 decomposition validity", decomposition_validity},
      {"AC5 counting without enumeration", big_count},
      {"AC6 width-parameterized scaling", grid_scaling},
      {"AC7 timeout protocol", timeout_protocol},
      {"AC8 generator statistics", generator_statistics},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << std::endl;
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
