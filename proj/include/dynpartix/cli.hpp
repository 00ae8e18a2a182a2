#pragma once

// Command-line front end:
//
//   dynpartix [-f <file>] [-s <semantics>]
//             [--enum | --count | --cred <arg> | --skept <arg>]
//             [--heuristic <min-fill|min-degree|mcs>] [--seed <n>] [--stats]

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynpartix/af.hpp"
#include "dynpartix/aspartix.hpp"
#include "dynpartix/dp.hpp"
#include "dynpartix/solver.hpp"

namespace dynpartix::cli {

enum class Mode { enumerate, count, credulous, skeptical };

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitInternal = 3 };

struct CliConfig {
  std::string input_path;  // empty reads standard input
  Semantics semantics = Semantics::preferred;
  Mode mode = Mode::enumerate;
  std::string query;  // argument for credulous/skeptical
  Heuristic heuristic = Heuristic::min_fill;
  std::uint64_t seed = 0;
  bool stats = false;
  bool help = false;
};

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::runtime_error(message), usage_(std::move(usage)) {}
  [[nodiscard]] const std::string& usage() const noexcept { return usage_; }

 private:
  std::string usage_;
};

inline constexpr const char* kUsage =
    "usage: dynpartix [-f <file>] [-s <semantics>] [--enum | --count | --cred <arg> | --skept <arg>]\n"
    "                 [--heuristic <min-fill|min-degree|mcs>] [--seed <n>] [--stats]\n";

namespace detail {

struct Parsed {
  CliConfig config;
  std::string semantics = "preferred";
  std::string heuristic = "min-fill";
  bool enumerate = false;
  bool count = false;
  std::optional<std::string> cred;
  std::optional<std::string> skept;
};

inline void define(CLI::App& app, Parsed& p) {
  app.add_option("-f", p.config.input_path, "Input file in ASPARTIX format (default: standard input)");
  app.add_option("-s", p.semantics, "Semantics: admissible or preferred (default: preferred)");
  auto* en = app.add_flag("--enum", p.enumerate, "Enumerate all extensions (default mode)");
  auto* co = app.add_flag("--count", p.count, "Count extensions");
  auto* cr = app.add_option("--cred", p.cred, "Decide credulous acceptance of an argument");
  auto* sk = app.add_option("--skept", p.skept, "Decide skeptical acceptance of an argument");
  en->excludes(co)->excludes(cr)->excludes(sk);
  co->excludes(cr)->excludes(sk);
  cr->excludes(sk);
  app.add_option("--heuristic", p.heuristic, "Elimination heuristic: min-fill, min-degree or mcs");
  app.add_option("--seed", p.config.seed, "Tie-break seed for the heuristic (0 = lexicographic)");
  app.add_flag("--stats", p.config.stats, "Print instance and decomposition statistics to stderr");
}

}  // namespace detail

/// Parses arguments (without the program name). Throws UsageError.
inline CliConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Dynamic-programming reasoner for abstract argumentation", "dynpartix"};
  detail::Parsed p;
  detail::define(app, p);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    p.config.help = true;
    return p.config;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), kUsage);
  }

  try {
    p.config.semantics = parse_semantics(p.semantics);
    p.config.heuristic = parse_heuristic(p.heuristic);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what(), kUsage);
  }
  if (p.count) p.config.mode = Mode::count;
  if (p.cred) {
    p.config.mode = Mode::credulous;
    p.config.query = *p.cred;
  }
  if (p.skept) {
    p.config.mode = Mode::skeptical;
    p.config.query = *p.skept;
  }
  return p.config;
}

inline void print_extension(std::ostream& out, const Extension& e) {
  out << '{';
  bool first = true;
  for (const auto& m : e) {
    if (!first) out << ',';
    out << m;
    first = false;
  }
  out << "}\n";
}

/// Runs the pipeline for one configuration and returns the exit code.
inline int run(const CliConfig& config, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
  if (config.help) {
    out << kUsage;
    return kExitOk;
  }
  ArgumentationFramework af;
  try {
    af = config.input_path.empty() ? parse_aspartix(in) : parse_aspartix_file(config.input_path);
  } catch (const ParseError& e) {
    err << (config.input_path.empty() ? "<stdin>" : config.input_path) << ':' << e.diagnostic().to_string() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  if ((config.mode == Mode::credulous || config.mode == Mode::skeptical) && !af.find(config.query)) {
    err << "error: argument '" << config.query << "' does not occur in the framework\n" << kUsage;
    return kExitUsage;
  }

  try {
    const Pipeline p = prepare(af, config.heuristic, config.seed);
    if (config.stats) {
      err << "arguments: " << af.size() << '\n'
          << "attacks: " << af.attacks().size() << '\n'
          << "width: " << p.width() << '\n'
          << "normalized nodes: " << p.normalized.nodes.size() << '\n';
    }
    switch (config.mode) {
      case Mode::enumerate:
        for (const auto& e : enumerate_extensions(af, p.normalized, config.semantics)) print_extension(out, e);
        break;
      case Mode::count:
        out << count_extensions(af, p.normalized, config.semantics) << '\n';
        break;
      case Mode::credulous:
        // Credulous acceptance coincides for both semantics and is decided
        // over admissible sets.
        out << (decide_credulous(af, p.normalized, config.query) ? "YES" : "NO") << '\n';
        break;
      case Mode::skeptical:
        out << (decide_skeptical(af, p.normalized, config.query, config.semantics) ? "YES" : "NO") << '\n';
        break;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  out.flush();
  return kExitOk;
}

/// parse_args + run, mapping usage errors to exit code 1.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                std::istream& in = std::cin) {
  CliConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << e.usage();
    return kExitUsage;
  }
  return run(config, out, err, in);
}

}  // namespace dynpartix::cli
