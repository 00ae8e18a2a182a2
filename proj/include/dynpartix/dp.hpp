#pragma once

// Dynamic programming over normalized tree decompositions for admissible
// sets and preferred extensions.
//
// A row describes a class of partial solutions S over the arguments seen so
// far in the subtree. Its coloring records, for each bag argument,
//
//   in  - member of S
//   def - attacked by S
//   att - attacks S and is not attacked by S (an open threat)
//   out - no attack either way
//
// `def` wins over `att`. An argument may only be forgotten while it is not an
// open threat, so every surviving row at the (empty) root is an admissible
// set. In preferred mode each row also carries the colorings of all strictly
// larger partial solutions that contain S ("certificates"); a root row with
// no certificate is a preferred extension.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynpartix/af.hpp"
#include "dynpartix/normalize.hpp"

namespace dynpartix {

using BigCount = boost::multiprecision::cpp_int;

enum class Semantics { admissible, preferred };

inline std::string_view to_string(Semantics s) {
  return s == Semantics::admissible ? "admissible" : "preferred";
}

inline Semantics parse_semantics(std::string_view s) {
  if (s == "admissible") return Semantics::admissible;
  if (s == "preferred") return Semantics::preferred;
  throw std::invalid_argument("unknown semantics '" + std::string(s) + "' (expected admissible or preferred)");
}

// Two bits per lane. The encoding makes the join of two compatible
// colorings a bitwise OR: def|att = def, x|out = x, in|in = in.
enum class Color : std::uint8_t { out = 0b00, att = 0b01, in = 0b10, def = 0b11 };

inline std::string_view to_string(Color c) {
  switch (c) {
    case Color::out: return "out";
    case Color::att: return "att";
    case Color::in: return "in";
    case Color::def: return "def";
  }
  return "?";
}

inline constexpr std::size_t kMaxBagSize = 32;

/// Colors of the arguments of one bag, by position in the sorted bag.
class Coloring {
 public:
  static constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;

  constexpr Coloring() = default;
  constexpr explicit Coloring(std::uint64_t lanes) : lanes_(lanes) {}

  [[nodiscard]] constexpr std::uint64_t raw() const noexcept { return lanes_; }

  [[nodiscard]] constexpr Color at(std::size_t pos) const noexcept {
    return static_cast<Color>((lanes_ >> (2 * pos)) & 3U);
  }

  [[nodiscard]] constexpr Coloring with(std::size_t pos, Color c) const noexcept {
    const std::uint64_t shift = 2 * pos;
    return Coloring((lanes_ & ~(std::uint64_t{3} << shift)) | (static_cast<std::uint64_t>(c) << shift));
  }

  /// Opens a new lane at `pos`, shifting later lanes up.
  [[nodiscard]] constexpr Coloring inserted(std::size_t pos, Color c) const noexcept {
    const std::uint64_t low = lanes_ & below(pos);
    const std::uint64_t high = 2 * pos + 2 >= 64 ? 0 : (lanes_ >> (2 * pos)) << (2 * pos + 2);
    return Coloring(low | (static_cast<std::uint64_t>(c) << (2 * pos)) | high);
  }

  /// Removes the lane at `pos`, shifting later lanes down.
  [[nodiscard]] constexpr Coloring erased(std::size_t pos) const noexcept {
    const std::uint64_t low = lanes_ & below(pos);
    const std::uint64_t high = 2 * pos + 2 >= 64 ? 0 : (lanes_ >> (2 * pos + 2)) << (2 * pos);
    return Coloring(low | high);
  }

  /// Low bit of every lane colored `in`.
  [[nodiscard]] constexpr std::uint64_t in_lanes() const noexcept {
    return (lanes_ >> 1) & ~lanes_ & kLowBits;
  }

  friend constexpr Coloring operator|(Coloring l, Coloring r) noexcept { return Coloring(l.lanes_ | r.lanes_); }
  friend constexpr auto operator<=>(const Coloring&, const Coloring&) = default;

 private:
  static constexpr std::uint64_t below(std::size_t pos) noexcept {
    return 2 * pos >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * pos)) - 1;
  }

  std::uint64_t lanes_ = 0;
};

inline constexpr std::uint32_t kNoRow = std::numeric_limits<std::uint32_t>::max();

/// Child rows a row was derived from; `second` is set for Join nodes only.
struct TracebackLink {
  std::uint32_t first = kNoRow;
  std::uint32_t second = kNoRow;
};

struct Row {
  Coloring coloring;
  bool contains_target = false;          // meaningful only with a target
  std::vector<Coloring> certificates;    // sorted and unique; preferred only
  BigCount count = 1;
  std::vector<TracebackLink> traceback;  // enumeration only
};

struct Table {
  Bag bag;
  std::vector<Row> rows;

  [[nodiscard]] std::size_t position(Vertex v) const {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw InternalError("vertex " + std::to_string(v) + " is not in the bag");
    return static_cast<std::size_t>(it - bag.begin());
  }
};

class DeadlineExceeded : public std::runtime_error {
 public:
  DeadlineExceeded() : std::runtime_error("deadline exceeded") {}
};

struct DpOptions {
  Semantics semantics = Semantics::admissible;
  std::optional<ArgId> target;
  bool traceback = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void check_deadline() const {
    if (deadline && std::chrono::steady_clock::now() > *deadline) throw DeadlineExceeded();
  }
};

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  return h ^ v;
}

// Collects rows, merging rows equal on (coloring, flag, certificates).
class TableBuilder {
 public:
  TableBuilder(Bag bag, const DpOptions& opt)
      : traceback_(opt.traceback), index_(16, Hash{&rows_}, Equal{&rows_}) {
    bag_ = std::move(bag);
  }
  TableBuilder(const TableBuilder&) = delete;
  TableBuilder& operator=(const TableBuilder&) = delete;

  void add(Row&& row) {
    rows_.push_back(std::move(row));
    const auto idx = static_cast<std::uint32_t>(rows_.size() - 1);
    auto [it, inserted] = index_.insert(idx);
    if (inserted) return;
    Row& into = rows_[*it];
    Row& from = rows_.back();
    into.count += from.count;
    if (traceback_) into.traceback.insert(into.traceback.end(), from.traceback.begin(), from.traceback.end());
    rows_.pop_back();
  }

  Table take() {
    index_.clear();
    return Table{std::move(bag_), std::move(rows_)};
  }

 private:
  struct Hash {
    const std::vector<Row>* rows;
    std::size_t operator()(std::uint32_t i) const {
      const Row& r = (*rows)[i];
      std::uint64_t h = mix(r.coloring.raw(), r.contains_target ? 1 : 2);
      for (const auto& c : r.certificates) h = mix(h, c.raw());
      return static_cast<std::size_t>(h);
    }
  };
  struct Equal {
    const std::vector<Row>* rows;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      const Row& l = (*rows)[a];
      const Row& r = (*rows)[b];
      return l.coloring == r.coloring && l.contains_target == r.contains_target && l.certificates == r.certificates;
    }
  };

  bool traceback_;
  Bag bag_;
  std::vector<Row> rows_;
  std::unordered_set<std::uint32_t, Hash, Equal> index_;
};

class Ticker {
 public:
  explicit Ticker(const DpOptions& opt) : opt_(opt) {}
  void tick() {
    if ((++n_ & 0xFFU) == 0) opt_.check_deadline();
  }

 private:
  const DpOptions& opt_;
  std::uint32_t n_ = 0;
};

inline void canonicalize(std::vector<Coloring>& certs) {
  std::sort(certs.begin(), certs.end());
  certs.erase(std::unique(certs.begin(), certs.end()), certs.end());
}

}  // namespace detail

/// The table of an empty-bag Leaf: the empty partial solution, once.
inline Table leaf_table(const DpOptions& /*opt*/ = {}) {
  Table t;
  t.rows.push_back(Row{});
  return t;
}

/// Adds argument `v` to the bag. Each row splits into "v not in S" and, when
/// conflict free, "v in S".
inline Table introduce_step(const Table& child, Vertex v, const ArgumentationFramework& af, const DpOptions& opt) {
  if (v >= af.size()) throw InternalError("introduced vertex is not an argument");
  if (std::binary_search(child.bag.begin(), child.bag.end(), v)) {
    throw InternalError("argument " + af.name(v) + " introduced twice into the same bag");
  }
  if (child.bag.size() + 1 > kMaxBagSize) {
    throw CapacityError("bag size exceeds " + std::to_string(kMaxBagSize) + " arguments");
  }

  Bag bag = child.bag;
  const auto slot = std::upper_bound(bag.begin(), bag.end(), v);
  const auto pos = static_cast<std::size_t>(slot - bag.begin());
  bag.insert(slot, v);

  std::uint64_t v_attacks = 0;   // lanes of bag arguments attacked by v
  std::uint64_t v_attacked = 0;  // lanes of bag arguments attacking v
  for (std::size_t i = 0; i < bag.size(); ++i) {
    if (i == pos) continue;
    if (af.has_attack(v, bag[i])) v_attacks |= std::uint64_t{1} << (2 * i);
    if (af.has_attack(bag[i], v)) v_attacked |= std::uint64_t{1} << (2 * i);
  }
  const bool self_attack = af.self_attacking(v);
  const bool is_target = opt.target && *opt.target == v;
  const bool preferred = opt.semantics == Semantics::preferred;

  auto excluded = [&](Coloring c) {
    const std::uint64_t in = c.in_lanes();
    const Color vc = (in & v_attacked) != 0 ? Color::def : (in & v_attacks) != 0 ? Color::att : Color::out;
    return c.with(pos, vc);
  };
  auto can_include = [&](Coloring c) {
    return !self_attack && (c.in_lanes() & (v_attacks | v_attacked)) == 0;
  };
  auto included = [&](Coloring c) {
    return Coloring(c.raw() | (v_attacks * 3) | v_attacked).with(pos, Color::in);
  };

  detail::TableBuilder out(std::move(bag), opt);
  detail::Ticker ticker(opt);
  for (std::uint32_t r = 0; r < child.rows.size(); ++r) {
    ticker.tick();
    const Row& row = child.rows[r];
    const Coloring base = row.coloring.inserted(pos, Color::out);
    const bool include_ok = can_include(base);

    Row skip;
    skip.coloring = excluded(base);
    skip.contains_target = row.contains_target;
    skip.count = row.count;
    if (opt.traceback) skip.traceback.push_back({r, kNoRow});

    Row take;
    if (include_ok) {
      take.coloring = included(base);
      take.contains_target = row.contains_target || is_target;
      take.count = row.count;
      if (opt.traceback) take.traceback.push_back({r, kNoRow});
    }

    if (preferred) {
      skip.certificates.reserve(2 * row.certificates.size() + 1);
      for (Coloring cert : row.certificates) {
        const Coloring k = cert.inserted(pos, Color::out);
        skip.certificates.push_back(excluded(k));
        if (can_include(k)) {
          skip.certificates.push_back(included(k));
          if (include_ok) take.certificates.push_back(included(k));
        }
      }
      // S + v is itself a strictly larger partial solution.
      if (include_ok) skip.certificates.push_back(included(base));
      detail::canonicalize(skip.certificates);
      detail::canonicalize(take.certificates);
    }

    out.add(std::move(skip));
    if (include_ok) out.add(std::move(take));
  }
  return out.take();
}

/// Drops argument `v` from the bag. Rows (and certificates) in which v is
/// still an open threat cannot be repaired any more and are discarded.
inline Table forget_step(const Table& child, Vertex v, const DpOptions& opt) {
  const std::size_t pos = child.position(v);
  Bag bag = child.bag;
  bag.erase(bag.begin() + static_cast<std::ptrdiff_t>(pos));
  const bool preferred = opt.semantics == Semantics::preferred;

  detail::TableBuilder out(std::move(bag), opt);
  detail::Ticker ticker(opt);
  for (std::uint32_t r = 0; r < child.rows.size(); ++r) {
    ticker.tick();
    const Row& row = child.rows[r];
    if (row.coloring.at(pos) == Color::att) continue;
    Row next;
    next.coloring = row.coloring.erased(pos);
    next.contains_target = row.contains_target;
    next.count = row.count;
    if (opt.traceback) next.traceback.push_back({r, kNoRow});
    if (preferred) {
      next.certificates.reserve(row.certificates.size());
      for (Coloring cert : row.certificates) {
        if (cert.at(pos) != Color::att) next.certificates.push_back(cert.erased(pos));
      }
      detail::canonicalize(next.certificates);
    }
    out.add(std::move(next));
  }
  return out.take();
}

/// Combines two tables over the same bag. Rows pair up when they agree on
/// which bag arguments are in S.
inline Table join_step(const Table& left, const Table& right, const DpOptions& opt) {
  if (left.bag != right.bag) throw InternalError("join over differing bags");
  const bool preferred = opt.semantics == Semantics::preferred;

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_in;
  for (std::uint32_t r = 0; r < right.rows.size(); ++r) {
    by_in[right.rows[r].coloring.in_lanes()].push_back(r);
  }

  // Certificates of the right side grouped by in-lanes, so pairing is a
  // lookup rather than a scan.
  using Keyed = std::pair<std::uint64_t, Coloring>;
  std::vector<std::vector<Keyed>> right_certs;
  if (preferred) {
    right_certs.resize(right.rows.size());
    for (std::size_t r = 0; r < right.rows.size(); ++r) {
      auto& keyed = right_certs[r];
      for (Coloring c : right.rows[r].certificates) keyed.emplace_back(c.in_lanes(), c);
      std::sort(keyed.begin(), keyed.end());
    }
  }

  detail::TableBuilder out(Bag(left.bag), opt);
  detail::Ticker ticker(opt);
  for (std::uint32_t l = 0; l < left.rows.size(); ++l) {
    const Row& lr = left.rows[l];
    const auto match = by_in.find(lr.coloring.in_lanes());
    if (match == by_in.end()) continue;
    for (std::uint32_t r : match->second) {
      ticker.tick();
      const Row& rr = right.rows[r];
      Row next;
      next.coloring = lr.coloring | rr.coloring;
      next.contains_target = lr.contains_target || rr.contains_target;
      next.count = lr.count * rr.count;
      if (opt.traceback) next.traceback.push_back({l, r});
      if (preferred) {
        const auto& keyed = right_certs[r];
        // Candidates per side are the row itself plus its certificates; the
        // pairing of both rows themselves is S, not a strict superset.
        auto pair_with = [&](Coloring a, bool a_is_self) {
          const std::uint64_t in = a.in_lanes();
          if (!a_is_self && in == rr.coloring.in_lanes()) next.certificates.push_back(a | rr.coloring);
          auto range = std::equal_range(keyed.begin(), keyed.end(), Keyed{in, Coloring{}},
                                        [](const Keyed& x, const Keyed& y) { return x.first < y.first; });
          for (auto it = range.first; it != range.second; ++it) next.certificates.push_back(a | it->second);
        };
        pair_with(lr.coloring, true);
        for (Coloring c : lr.certificates) pair_with(c, false);
        detail::canonicalize(next.certificates);
      }
      out.add(std::move(next));
    }
  }
  return out.take();
}

namespace detail {

inline void check_covers(const ArgumentationFramework& af, const NormalizedDecomposition& nd) {
  if (nd.nodes.empty()) throw InternalError("normalized decomposition has no nodes");
  if (!nd.nodes.back().bag.empty()) throw InternalError("normalized decomposition root bag is not empty");
  std::vector<bool> seen(af.size(), false);
  for (const auto& n : nd.nodes) {
    if (n.kind == NodeKind::introduce) {
      if (n.vertex >= af.size()) throw InternalError("decomposition mentions an unknown argument");
      seen[n.vertex] = true;
    }
  }
  for (ArgId a = 0; a < af.size(); ++a) {
    if (!seen[a]) throw InternalError("decomposition does not cover argument " + af.name(a));
  }
}

inline Table step(const ArgumentationFramework& af, const NormalizedDecomposition& nd, std::size_t i,
                  const std::vector<Table>& tables, const DpOptions& opt) {
  const auto& node = nd.nodes[i];
  switch (node.kind) {
    case NodeKind::leaf: return leaf_table(opt);
    case NodeKind::introduce: return introduce_step(tables[node.children.at(0)], node.vertex, af, opt);
    case NodeKind::forget: return forget_step(tables[node.children.at(0)], node.vertex, opt);
    case NodeKind::join: return join_step(tables[node.children.at(0)], tables[node.children.at(1)], opt);
  }
  throw InternalError("unknown node kind");
}

}  // namespace detail

/// Bottom-up pass keeping every node's table (needed for traceback).
inline std::vector<Table> traverse_retaining(const ArgumentationFramework& af, const NormalizedDecomposition& nd,
                                             const DpOptions& opt) {
  detail::check_covers(af, nd);
  std::vector<Table> tables(nd.nodes.size());
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    opt.check_deadline();
    tables[i] = detail::step(af, nd, i, tables, opt);
  }
  return tables;
}

/// Bottom-up pass returning only the root table. Child tables are released
/// as soon as their parent is computed.
inline Table traverse(const ArgumentationFramework& af, const NormalizedDecomposition& nd, const DpOptions& opt) {
  detail::check_covers(af, nd);
  std::vector<Table> tables(nd.nodes.size());
  for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
    opt.check_deadline();
    tables[i] = detail::step(af, nd, i, tables, opt);
    for (std::size_t c : nd.nodes[i].children) tables[c] = Table{};
  }
  return std::move(tables.back());
}

/// Root rows that stand for extensions of the requested semantics.
inline bool qualifies(const Row& root_row, Semantics s) {
  return s == Semantics::admissible || root_row.certificates.empty();
}

/// Number of admissible sets or preferred extensions, from root counts only.
inline BigCount count_extensions(const ArgumentationFramework& af, const NormalizedDecomposition& nd, Semantics s,
                                 std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
  DpOptions opt;
  opt.semantics = s;
  opt.deadline = deadline;
  const Table root = traverse(af, nd, opt);
  BigCount total = 0;
  for (const Row& r : root.rows) {
    if (qualifies(r, s)) total += r.count;
  }
  return total;
}

/// Every extension, recovered by following traceback links from the root.
inline std::set<Extension> enumerate_extensions(
    const ArgumentationFramework& af, const NormalizedDecomposition& nd, Semantics s,
    std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
  DpOptions opt;
  opt.semantics = s;
  opt.traceback = true;
  opt.deadline = deadline;
  const auto tables = traverse_retaining(af, nd, opt);

  std::set<Extension> result;
  std::vector<std::pair<std::size_t, std::uint32_t>> frontier;
  std::vector<Vertex> members;
  detail::Ticker ticker(opt);

  // Each call settles one (node, row) pair from the frontier; a complete
  // path through the tree yields one extension.
  std::function<void()> expand = [&]() {
    ticker.tick();
    if (frontier.empty()) {
      Extension e;
      for (Vertex v : members) e.insert(af.name(v));
      result.insert(std::move(e));
      return;
    }
    const auto [node_id, row_id] = frontier.back();
    frontier.pop_back();
    const auto& node = nd.nodes[node_id];
    const Row& row = tables[node_id].rows[row_id];

    const bool adds = node.kind == NodeKind::introduce &&
                      row.coloring.at(tables[node_id].position(node.vertex)) == Color::in;
    if (adds) members.push_back(node.vertex);

    if (node.kind == NodeKind::leaf) {
      expand();
    } else {
      for (const auto& link : row.traceback) {
        frontier.emplace_back(node.children[0], link.first);
        if (node.kind == NodeKind::join) frontier.emplace_back(node.children[1], link.second);
        expand();
        frontier.pop_back();
        if (node.kind == NodeKind::join) frontier.pop_back();
      }
    }

    if (adds) members.pop_back();
    frontier.emplace_back(node_id, row_id);
  };

  const Table& root = tables.back();
  for (std::uint32_t r = 0; r < root.rows.size(); ++r) {
    if (!qualifies(root.rows[r], s)) continue;
    frontier.emplace_back(nd.root(), r);
    expand();
    frontier.pop_back();
  }
  return result;
}

/// Is `x` in some admissible set? Equivalent to credulous acceptance under
/// preferred semantics, and cheaper to decide.
inline bool decide_credulous(const ArgumentationFramework& af, const NormalizedDecomposition& nd, std::string_view x,
                             std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
  DpOptions opt;
  opt.semantics = Semantics::admissible;
  opt.target = af.id(x);
  opt.deadline = deadline;
  const Table root = traverse(af, nd, opt);
  return std::any_of(root.rows.begin(), root.rows.end(), [](const Row& r) { return r.contains_target; });
}

/// Is `x` in every extension of the given semantics? Under admissible
/// semantics the answer is always NO because the empty set is admissible.
inline bool decide_skeptical(const ArgumentationFramework& af, const NormalizedDecomposition& nd, std::string_view x,
                             Semantics s = Semantics::preferred,
                             std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) {
  DpOptions opt;
  opt.semantics = s;
  opt.target = af.id(x);
  opt.deadline = deadline;
  const Table root = traverse(af, nd, opt);
  return std::none_of(root.rows.begin(), root.rows.end(),
                      [s](const Row& r) { return qualifies(r, s) && !r.contains_target; });
}

}  // namespace dynpartix
