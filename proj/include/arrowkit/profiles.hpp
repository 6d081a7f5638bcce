#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arrowkit/orders.hpp"

namespace arrowkit {

inline constexpr std::size_t kMaxVoters = 16;
inline constexpr std::size_t kMaxDomainProfiles = std::size_t{1} << 22;
inline constexpr std::size_t kMaxFamilyUniverse = 4;

/// A set of voters as a bitmask; voter i is bit i.
struct Coalition {
  std::uint32_t mask = 0;

  static Coalition of(std::initializer_list<std::size_t> voters);
  static Coalition everyone(std::size_t voters) { return {(std::uint32_t{1} << voters) - 1}; }

  bool contains(std::size_t voter) const noexcept { return (mask >> voter) & 1U; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return mask == 0; }
  Coalition complement(std::size_t voters) const noexcept { return {everyone(voters).mask & ~mask}; }

  friend bool operator==(Coalition, Coalition) = default;
  friend auto operator<=>(Coalition, Coalition) = default;
};

/// `{0,2}`; the empty coalition is `{}`.
std::string to_string(Coalition coalition);

/// One weak order per voter over a shared carrier.
class Profile {
 public:
  Profile(AlternativeSet carrier, const std::vector<Relation>& entries);
  /// Throws InvalidArgument unless every ballot is a weak order on `carrier`.
  static Profile from_ballots(AlternativeSet carrier, std::vector<Relation::Bits> ballots);

  const AlternativeSet& carrier() const noexcept { return carrier_; }
  std::size_t voters() const noexcept { return ballots_.size(); }
  Relation entry(std::size_t voter) const { return Relation::from_bits(carrier_, ballots_.at(voter)); }
  Relation::Bits ballot(std::size_t voter) const { return ballots_.at(voter); }
  std::span<const Relation::Bits> ballots() const noexcept { return ballots_; }

  /// Throw CarrierMismatch across carriers.
  bool operator==(const Profile& other) const;
  std::strong_ordering operator<=>(const Profile& other) const;

 private:
  Profile(AlternativeSet carrier, std::vector<Relation::Bits> ballots, bool);

  AlternativeSet carrier_;
  std::vector<Relation::Bits> ballots_;
};

/// (p | A)_i := p_i | A
Profile restrict_profile(const Profile& p, const AlternativeSet& subset);
/// Pointwise pushforward along an injection into p's carrier.
Profile pushforward(const Profile& p, const Injection& f);

/// Every voter of U strictly prefers a to b. Vacuously true for U = ∅.
/// Throws InvalidArgument when a == b.
bool coalition_strict(const Profile& p, Coalition coalition, std::size_t a, std::size_t b);

/// {i : a p_i^> b}
Coalition strict_supporters(std::span<const Relation::Bits> ballots, std::size_t n, std::size_t a, std::size_t b);
inline Coalition strict_supporters(const Profile& p, std::size_t a, std::size_t b) {
  return strict_supporters(p.ballots(), p.carrier().size(), a, b);
}

enum class DomainKind { full_weak, full_linear, explicit_set };

/// A finite set of admissible profiles, stored extensionally and iterated in
/// lexicographic order of the ballot matrices (voter 0 most significant).
class Domain {
 public:
  static Domain full_weak(AlternativeSet carrier, std::size_t voters);
  static Domain full_linear(AlternativeSet carrier, std::size_t voters);
  /// Non-empty, duplicate-free set of weak-order profiles.
  static Domain from_profiles(AlternativeSet carrier, std::size_t voters, std::vector<Profile> profiles);

  const AlternativeSet& carrier() const noexcept { return carrier_; }
  std::size_t voters() const noexcept { return voters_; }
  DomainKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return ballots_.size() / voters_; }
  /// Every profile consists of linear orders.
  bool all_linear() const noexcept { return all_linear_; }

  std::span<const Relation::Bits> ballots(std::size_t index) const noexcept {
    return std::span<const Relation::Bits>(ballots_).subspan(index * voters_, voters_);
  }
  Profile profile(std::size_t index) const;

  std::optional<std::size_t> find(std::span<const Relation::Bits> ballots) const noexcept;
  std::optional<std::size_t> find(const Profile& p) const;
  bool contains(const Profile& p) const { return find(p).has_value(); }

  /// Same carrier, voters and profile set; the kind tag is not compared.
  bool operator==(const Domain& other) const noexcept;

 private:
  Domain(AlternativeSet carrier, std::size_t voters, DomainKind kind, std::vector<Relation::Bits> ballots);
  static Domain product(AlternativeSet carrier, std::size_t voters, DomainKind kind,
                        const std::vector<Relation>& orders);

  AlternativeSet carrier_;
  std::size_t voters_;
  DomainKind kind_;
  std::vector<Relation::Bits> ballots_;
  bool all_linear_ = true;
};

using DomainPtr = std::shared_ptr<const Domain>;

inline DomainPtr share(Domain domain) { return std::make_shared<const Domain>(std::move(domain)); }

struct UdReport {
  bool holds = true;
  /// First 3-subset and target profile on it that no domain profile restricts to.
  std::optional<AlternativeSet> subset;
  std::optional<Profile> missing;
};

/// Every weak-order profile on every 3-subset is the restriction of some
/// profile in the domain. Throws InvalidArgument for carriers smaller than 3.
UdReport check_UD(const Domain& domain);
/// The linear-ballot analogue: every linear profile on every 3-subset is realized.
UdReport check_UD_linear(const Domain& domain);
/// check_UD_linear for all-linear domains, check_UD otherwise. False (not an
/// error) for carriers smaller than 3.
bool unrestricted(const Domain& domain);

/// Domains indexed by the non-empty subsets of a universe of at most four
/// alternatives.
class DomainFamily {
 public:
  DomainFamily(AlternativeSet universe, std::size_t voters);
  /// 𝒟(A) := { q|A : q ∈ top } for every non-empty A.
  static DomainFamily from_top(const Domain& top);

  const AlternativeSet& universe() const noexcept { return universe_; }
  const AlternativeSet& subset(SubsetMask mask) const { return subsets_.at(mask).value(); }
  std::size_t voters() const noexcept { return voters_; }

  void set(SubsetMask mask, DomainPtr domain);
  bool has(SubsetMask mask) const { return mask < slots_.size() && slots_[mask] != nullptr; }
  /// Throws InvalidArgument when the subset has no domain.
  const DomainPtr& at(SubsetMask mask) const;

 private:
  AlternativeSet universe_;
  std::size_t voters_;
  std::vector<std::optional<AlternativeSet>> subsets_;
  std::vector<DomainPtr> slots_;
};

struct CudReport {
  /// 𝒟(A) = ℙ(A)^ℐ for |A| ≤ 3.
  bool small_sets_full = false;
  /// 𝒟(A) = 𝕃(A)^ℐ for |A| ≤ 3.
  bool small_sets_full_linear = false;
  /// Every restriction 𝒟(B) → 𝒟(A) is onto.
  bool epis_preserved = false;
  /// Every restriction 𝒟(B) → 𝒟(A) lands in 𝒟(A).
  bool restrictions_closed = false;

  bool holds() const noexcept { return small_sets_full && epis_preserved && restrictions_closed; }
  bool holds_linear() const noexcept { return small_sets_full_linear && epis_preserved && restrictions_closed; }
};

CudReport check_CUD(const DomainFamily& family);

}  // namespace arrowkit
