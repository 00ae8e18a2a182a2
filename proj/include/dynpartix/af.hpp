#pragma once

// Argumentation frameworks, the admissible/preferred semantics and a
// brute-force reference solver.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dynpartix {

using ArgId = std::uint32_t;

/// Raised when an input exceeds a hard size limit (oracle, bag width).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a structural precondition between pipeline stages is broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A set of argument names. Ordered lexicographically by byte value.
using Extension = std::set<std::string>;

/// An argumentation framework F = (A, R).
///
/// Arguments are kept sorted by name, so argument ids follow lexicographic
/// order. Duplicate arguments and duplicate attacks are collapsed; self
/// attacks are kept.
class ArgumentationFramework {
 public:
  ArgumentationFramework() = default;

  ArgumentationFramework(std::vector<std::string> arguments,
                         const std::vector<std::pair<std::string, std::string>>& attacks)
      : names_(std::move(arguments)) {
    for (const auto& n : names_) {
      if (n.empty()) throw std::invalid_argument("argument identifiers must be non-empty");
    }
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());

    attacks_.reserve(attacks.size());
    for (const auto& [from, to] : attacks) {
      attacks_.emplace_back(id(from), id(to));
    }
    std::sort(attacks_.begin(), attacks_.end());
    attacks_.erase(std::unique(attacks_.begin(), attacks_.end()), attacks_.end());

    targets_.assign(names_.size(), {});
    attackers_.assign(names_.size(), {});
    for (const auto& [a, b] : attacks_) {
      targets_[a].push_back(b);
      attackers_[b].push_back(a);
    }
    for (auto& v : attackers_) std::sort(v.begin(), v.end());
  }

  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] bool empty() const noexcept { return names_.empty(); }

  [[nodiscard]] const std::vector<std::string>& arguments() const noexcept { return names_; }
  [[nodiscard]] const std::vector<std::pair<ArgId, ArgId>>& attacks() const noexcept { return attacks_; }

  [[nodiscard]] const std::string& name(ArgId a) const { return names_.at(a); }

  [[nodiscard]] std::optional<ArgId> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<ArgId>(it - names_.begin());
  }

  /// Id of a named argument; throws std::invalid_argument if unknown.
  [[nodiscard]] ArgId id(std::string_view name) const {
    if (auto a = find(name)) return *a;
    throw std::invalid_argument("unknown argument '" + std::string(name) + "'");
  }

  [[nodiscard]] bool has_attack(ArgId from, ArgId to) const {
    const auto& t = targets_[from];
    return std::binary_search(t.begin(), t.end(), to);
  }

  [[nodiscard]] bool self_attacking(ArgId a) const { return has_attack(a, a); }

  [[nodiscard]] std::span<const ArgId> targets(ArgId a) const { return targets_[a]; }
  [[nodiscard]] std::span<const ArgId> attackers(ArgId a) const { return attackers_[a]; }

  [[nodiscard]] std::vector<std::pair<std::string, std::string>> named_attacks() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(attacks_.size());
    for (const auto& [a, b] : attacks_) out.emplace_back(names_[a], names_[b]);
    return out;
  }

  friend bool operator==(const ArgumentationFramework& l, const ArgumentationFramework& r) {
    return l.names_ == r.names_ && l.attacks_ == r.attacks_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<ArgId, ArgId>> attacks_;
  std::vector<std::vector<ArgId>> targets_;
  std::vector<std::vector<ArgId>> attackers_;
};

namespace detail {

inline std::vector<ArgId> resolve(const ArgumentationFramework& af, const Extension& s) {
  std::vector<ArgId> ids;
  ids.reserve(s.size());
  for (const auto& n : s) ids.push_back(af.id(n));
  return ids;
}

inline bool defended_by(const ArgumentationFramework& af, const std::vector<bool>& member, ArgId a) {
  for (ArgId b : af.attackers(a)) {
    bool countered = false;
    for (ArgId c : af.attackers(b)) {
      if (member[c]) {
        countered = true;
        break;
      }
    }
    if (!countered) return false;
  }
  return true;
}

inline std::vector<bool> membership(const ArgumentationFramework& af, const std::vector<ArgId>& ids) {
  std::vector<bool> member(af.size(), false);
  for (ArgId a : ids) member[a] = true;
  return member;
}

}  // namespace detail

inline bool is_conflict_free(const ArgumentationFramework& af, const Extension& s) {
  const auto ids = detail::resolve(af, s);
  const auto member = detail::membership(af, ids);
  for (ArgId a : ids) {
    for (ArgId b : af.targets(a)) {
      if (member[b]) return false;
    }
  }
  return true;
}

/// True iff every attacker of `a` is attacked by some member of `s`.
inline bool is_defended(const ArgumentationFramework& af, const Extension& s, std::string_view a) {
  const ArgId target = af.id(a);
  const auto member = detail::membership(af, detail::resolve(af, s));
  return detail::defended_by(af, member, target);
}

inline bool is_admissible(const ArgumentationFramework& af, const Extension& s) {
  if (!is_conflict_free(af, s)) return false;
  const auto ids = detail::resolve(af, s);
  const auto member = detail::membership(af, ids);
  return std::all_of(ids.begin(), ids.end(),
                     [&](ArgId a) { return detail::defended_by(af, member, a); });
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Exhaustive over all 2^n subsets; test fixture only.

inline constexpr std::size_t kOracleMaxArguments = 25;

namespace detail {

struct OracleMasks {
  std::vector<std::uint32_t> targets;
  std::vector<std::uint32_t> attackers;
};

inline OracleMasks oracle_masks(const ArgumentationFramework& af) {
  if (af.size() > kOracleMaxArguments) {
    throw CapacityError("brute-force oracle limited to " + std::to_string(kOracleMaxArguments) +
                        " arguments, got " + std::to_string(af.size()));
  }
  OracleMasks m{std::vector<std::uint32_t>(af.size(), 0), std::vector<std::uint32_t>(af.size(), 0)};
  for (const auto& [a, b] : af.attacks()) {
    m.targets[a] |= 1u << b;
    m.attackers[b] |= 1u << a;
  }
  return m;
}

inline bool admissible_mask(const OracleMasks& m, std::uint32_t s) {
  std::uint32_t attacked = 0;
  for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
    attacked |= m.targets[static_cast<std::size_t>(__builtin_ctz(rest))];
  }
  if ((attacked & s) != 0) return false;
  for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
    const auto a = static_cast<std::size_t>(__builtin_ctz(rest));
    if ((m.attackers[a] & ~attacked) != 0) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> admissible_masks(const ArgumentationFramework& af) {
  const auto m = oracle_masks(af);
  const std::uint64_t limit = std::uint64_t{1} << af.size();
  std::vector<std::uint32_t> out;
  for (std::uint64_t s = 0; s < limit; ++s) {
    if (admissible_mask(m, static_cast<std::uint32_t>(s))) out.push_back(static_cast<std::uint32_t>(s));
  }
  return out;
}

inline std::vector<std::uint32_t> preferred_masks(const ArgumentationFramework& af) {
  auto adm = admissible_masks(af);
  // Largest first: an admissible set is maximal iff no maximal set found so
  // far contains it.
  std::stable_sort(adm.begin(), adm.end(), [](std::uint32_t l, std::uint32_t r) {
    return __builtin_popcount(l) > __builtin_popcount(r);
  });
  std::vector<std::uint32_t> out;
  for (std::uint32_t s : adm) {
    const bool covered = std::any_of(out.begin(), out.end(), [s](std::uint32_t m) { return (m & s) == s; });
    if (!covered) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Extension to_extension(const ArgumentationFramework& af, std::uint32_t s) {
  Extension e;
  for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
    e.insert(af.name(static_cast<ArgId>(__builtin_ctz(rest))));
  }
  return e;
}

}  // namespace detail

inline std::set<Extension> enumerate_admissible_oracle(const ArgumentationFramework& af) {
  std::set<Extension> out;
  for (auto s : detail::admissible_masks(af)) out.insert(detail::to_extension(af, s));
  return out;
}

inline std::set<Extension> enumerate_preferred_oracle(const ArgumentationFramework& af) {
  std::set<Extension> out;
  for (auto s : detail::preferred_masks(af)) out.insert(detail::to_extension(af, s));
  return out;
}

/// Credulous acceptance under preferred semantics, by checking preferred
/// extensions directly.
inline bool credulous_oracle(const ArgumentationFramework& af, std::string_view x) {
  const std::uint32_t bit = 1u << af.id(x);
  const auto pref = detail::preferred_masks(af);
  return std::any_of(pref.begin(), pref.end(), [bit](std::uint32_t s) { return (s & bit) != 0; });
}

/// Credulous acceptance decided over admissible sets only. Must agree with
/// credulous_oracle since every admissible set extends to a preferred one.
inline bool credulous_admissible_oracle(const ArgumentationFramework& af, std::string_view x) {
  const std::uint32_t bit = 1u << af.id(x);
  const auto adm = detail::admissible_masks(af);
  return std::any_of(adm.begin(), adm.end(), [bit](std::uint32_t s) { return (s & bit) != 0; });
}

inline bool skeptical_oracle(const ArgumentationFramework& af, std::string_view x) {
  const std::uint32_t bit = 1u << af.id(x);
  const auto pref = detail::preferred_masks(af);
  return std::all_of(pref.begin(), pref.end(), [bit](std::uint32_t s) { return (s & bit) != 0; });
}

}  // namespace dynpartix
