#pragma once

// Random grid-structured frameworks and a timeout-driven benchmark harness.

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ios>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <utility>
#include <vector>

#include "dynpartix/af.hpp"
#include "dynpartix/aspartix.hpp"
#include "dynpartix/solver.hpp"

namespace dynpartix {

/// A rows x cols grid; every ordered pair of 8-neighbours becomes an attack
/// independently with probability `attack_probability`.
struct GridSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  double attack_probability = 0.5;
  std::uint64_t seed = 0;
};

inline std::string grid_argument(std::size_t r, std::size_t c) {
  return "a_" + std::to_string(r) + "_" + std::to_string(c);
}

/// `grid_<rows>x<cols>_p<pct>_s<seed>`, the fixture name without extension.
inline std::string instance_id(const GridSpec& spec) {
  const auto pct = static_cast<long>(std::lround(spec.attack_probability * 100.0));
  return "grid_" + std::to_string(spec.rows) + "x" + std::to_string(spec.cols) + "_p" + std::to_string(pct) + "_s" +
         std::to_string(spec.seed);
}

inline ArgumentationFramework generate_grid_af(const GridSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(spec.attack_probability >= 0.0 && spec.attack_probability <= 1.0)) {
    throw std::invalid_argument("attack probability must lie in [0,1]");
  }
  std::vector<std::string> names;
  names.reserve(spec.rows * spec.cols);
  for (std::size_t r = 1; r <= spec.rows; ++r) {
    for (std::size_t c = 1; c <= spec.cols; ++c) names.push_back(grid_argument(r, c));
  }

  // Draws happen in a fixed order (cells row-major, neighbours by offset) so
  // a grid spec always produces the same framework.
  std::mt19937_64 rng(spec.seed);
  auto draw = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<std::pair<std::string, std::string>> attacks;
  const auto rows = static_cast<long>(spec.rows);
  const auto cols = static_cast<long>(spec.cols);
  for (long r = 1; r <= rows; ++r) {
    for (long c = 1; c <= cols; ++c) {
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const long nr = r + dr;
          const long nc = c + dc;
          if (nr < 1 || nr > rows || nc < 1 || nc > cols) continue;
          if (draw() < spec.attack_probability) {
            attacks.emplace_back(grid_argument(static_cast<std::size_t>(r), static_cast<std::size_t>(c)),
                                 grid_argument(static_cast<std::size_t>(nr), static_cast<std::size_t>(nc)));
          }
        }
      }
    }
  }
  return ArgumentationFramework(std::move(names), attacks);
}

/// Ordered pairs of distinct cells at Chebyshev distance 1.
inline std::size_t moore_pair_count(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return 0;
  const std::size_t horizontal = rows * (cols - 1);
  const std::size_t vertical = (rows - 1) * cols;
  const std::size_t diagonal = 2 * (rows - 1) * (cols - 1);
  return 2 * (horizontal + vertical + diagonal);
}

/// Writes `<dir>/<instance_id>.af` and returns its path.
inline std::filesystem::path write_fixture(const GridSpec& spec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (instance_id(spec) + ".af");
  std::ofstream out(path, std::ios::binary);
  serialize_aspartix(generate_grid_af(spec), out);
  if (!out) throw std::ios_base::failure("cannot write fixture " + path.string());
  return path;
}

enum class BenchMode { enumerate, count, credulous, skeptical };

inline std::string_view to_string(BenchMode m) {
  switch (m) {
    case BenchMode::enumerate: return "enum";
    case BenchMode::count: return "count";
    case BenchMode::credulous: return "cred";
    case BenchMode::skeptical: return "skept";
  }
  return "?";
}

inline BenchMode parse_bench_mode(std::string_view s) {
  for (auto m : {BenchMode::enumerate, BenchMode::count, BenchMode::credulous, BenchMode::skeptical}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected enum, count, cred or skept)");
}

struct BenchRecord {
  std::string instance_id;
  std::size_t n_args = 0;
  std::size_t n_attacks = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double probability = 0.0;
  std::uint64_t seed = 0;
  Heuristic heuristic = Heuristic::min_fill;
  int decomposition_width = -1;
  Semantics semantics = Semantics::preferred;
  BenchMode mode = BenchMode::count;
  double runtime_millis = 0.0;
  bool timed_out = false;
  std::string answer;
};

/// A benchmark input: a grid spec, or a fixed framework under some id.
struct BenchInstance {
  std::string id;
  ArgumentationFramework af;
  std::optional<GridSpec> grid;

  static BenchInstance from_grid(const GridSpec& spec) { return {instance_id(spec), generate_grid_af(spec), spec}; }
  static BenchInstance fixture(std::string id, ArgumentationFramework af) { return {std::move(id), std::move(af), {}}; }
};

struct BenchConfig {
  std::vector<BenchMode> modes{BenchMode::count};
  std::vector<Semantics> semantics{Semantics::preferred};
  Heuristic heuristic = Heuristic::min_fill;
  std::uint64_t heuristic_seed = 0;
  double timeout_millis = 300'000.0;
  unsigned workers = 1;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "YES" : "NO"; }

inline BenchRecord run_one(const BenchInstance& inst, Semantics sem, BenchMode mode, const BenchConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  BenchRecord rec;
  rec.instance_id = inst.id;
  rec.n_args = inst.af.size();
  rec.n_attacks = inst.af.attacks().size();
  if (inst.grid) {
    rec.rows = inst.grid->rows;
    rec.cols = inst.grid->cols;
    rec.probability = inst.grid->attack_probability;
    rec.seed = inst.grid->seed;
  }
  rec.heuristic = cfg.heuristic;
  rec.semantics = sem;
  rec.mode = mode;

  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(cfg.timeout_millis));
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };
  try {
    const Pipeline p = prepare(inst.af, cfg.heuristic, cfg.heuristic_seed);
    rec.decomposition_width = p.width();
    switch (mode) {
      case BenchMode::enumerate:
        rec.answer = std::to_string(enumerate_extensions(inst.af, p.normalized, sem, deadline).size());
        break;
      case BenchMode::count:
        rec.answer = count_extensions(inst.af, p.normalized, sem, deadline).str();
        break;
      case BenchMode::credulous:
      case BenchMode::skeptical: {
        if (inst.af.empty()) throw std::invalid_argument("no argument to query in an empty framework");
        const std::string& query = inst.af.arguments().front();
        const bool yes = mode == BenchMode::credulous ? decide_credulous(inst.af, p.normalized, query, deadline)
                                                      : decide_skeptical(inst.af, p.normalized, query, sem, deadline);
        rec.answer = query + ":" + yes_no(yes);
        break;
      }
    }
    rec.runtime_millis = elapsed_ms();
    if (rec.runtime_millis > cfg.timeout_millis) {
      rec.timed_out = true;
      rec.answer.clear();
    }
  } catch (const DeadlineExceeded&) {
    rec.timed_out = true;
  } catch (const std::exception& e) {
    rec.runtime_millis = elapsed_ms();
    rec.answer = std::string("error: ") + e.what();
  }
  if (rec.timed_out) rec.runtime_millis = cfg.timeout_millis;
  return rec;
}

}  // namespace detail

/// Runs every (instance, semantics, mode) combination. Records come back in
/// submission order regardless of the number of workers; failures are
/// recorded in `answer` rather than thrown.
inline std::vector<BenchRecord> run_benchmark(const std::vector<BenchInstance>& instances, const BenchConfig& cfg) {
  if (!(cfg.timeout_millis > 0.0)) throw std::invalid_argument("timeout must be positive");
  struct Job {
    const BenchInstance* inst;
    Semantics sem;
    BenchMode mode;
  };
  std::vector<Job> jobs;
  for (const auto& inst : instances) {
    for (Semantics s : cfg.semantics) {
      for (BenchMode m : cfg.modes) jobs.push_back({&inst, s, m});
    }
  }
  std::vector<BenchRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = detail::run_one(*jobs[i].inst, jobs[i].sem, jobs[i].mode, cfg);
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(jobs.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  return records;
}

inline std::vector<BenchRecord> run_benchmark(const std::vector<GridSpec>& grids, const BenchConfig& cfg) {
  std::vector<BenchInstance> instances;
  instances.reserve(grids.size());
  for (const auto& g : grids) instances.push_back(BenchInstance::from_grid(g));
  return run_benchmark(instances, cfg);
}

inline constexpr std::string_view kCsvHeader =
    "instanceId,nArgs,nAttacks,rows,cols,probability,seed,heuristic,decompositionWidth,semantics,mode,"
    "runtimeMillis,timedOut,answer";

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

}  // namespace detail

inline void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << detail::csv_field(r.instance_id) << ',' << r.n_args << ',' << r.n_attacks << ',' << r.rows << ',' << r.cols
        << ',' << detail::format_double(r.probability) << ',' << r.seed << ',' << to_string(r.heuristic) << ','
        << r.decomposition_width << ',' << to_string(r.semantics) << ',' << to_string(r.mode) << ','
        << detail::format_double(r.runtime_millis) << ',' << (r.timed_out ? "true" : "false") << ','
        << detail::csv_field(r.answer) << '\n';
  }
  out.flush();
  if (!out) throw std::ios_base::failure("failed to write benchmark CSV");
}

}  // namespace dynpartix
