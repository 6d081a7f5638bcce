#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arrowkit {

inline constexpr std::size_t kMaxAlternatives = 8;
inline constexpr std::size_t kMaxWeakEnumeration = 4;
inline constexpr std::size_t kMaxLinearEnumeration = 6;

/// Bitmask over the indices of an AlternativeSet.
using SubsetMask = std::uint32_t;

/// An ordered list of distinct labels. Alternatives are addressed by index;
/// labels are surface syntax. Copies share storage.
class AlternativeSet {
 public:
  explicit AlternativeSet(std::vector<std::string> labels);

  /// {a, b, c, ...} of the given size.
  static AlternativeSet standard(std::size_t n);

  std::size_t size() const noexcept { return labels_->size(); }
  const std::string& label(std::size_t index) const { return (*labels_)[index]; }
  std::span<const std::string> labels() const noexcept { return *labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// The alternatives whose index bit is set in `mask`, in carrier order.
  AlternativeSet subset(SubsetMask mask) const;
  SubsetMask full_mask() const noexcept { return (SubsetMask{1} << size()) - 1; }

  /// Same labels in the same order.
  bool operator==(const AlternativeSet& other) const noexcept;

  /// `{a,b,c}`
  std::string to_string() const;

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A binary relation on a carrier, stored as an n×n bit matrix packed
/// row-major with the (0,0) entry in the most significant used bit, so
/// that integer order on `bits()` is lexicographic order on the matrix.
class Relation {
 public:
  using Bits = std::uint64_t;

  /// The empty relation.
  explicit Relation(AlternativeSet carrier);

  static Relation from_bits(AlternativeSet carrier, Bits bits);
  static Relation identity(AlternativeSet carrier);
  static Relation full(AlternativeSet carrier);
  static Relation from_pairs(AlternativeSet carrier,
                             std::initializer_list<std::pair<std::size_t, std::size_t>> pairs);
  /// The reflexive linear order listing `ranking` from top to bottom.
  static Relation linear(AlternativeSet carrier, std::span<const std::size_t> ranking);

  template <class Pred>
  static Relation from_predicate(AlternativeSet carrier, Pred&& pred) {
    Relation out(std::move(carrier));
    const std::size_t n = out.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (pred(a, b)) out.bits_ |= mask(n, a, b);
    return out;
  }

  const AlternativeSet& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  Bits bits() const noexcept { return bits_; }
  bool holds(std::size_t a, std::size_t b) const noexcept { return (bits_ & mask(size(), a, b)) != 0; }

  /// Throws CarrierMismatch when the carriers differ.
  bool operator==(const Relation& other) const;
  std::strong_ordering operator<=>(const Relation& other) const;

  static constexpr Bits mask(std::size_t n, std::size_t a, std::size_t b) noexcept {
    return Bits{1} << (n * n - 1 - (a * n + b));
  }
  static constexpr bool test(Bits bits, std::size_t n, std::size_t a, std::size_t b) noexcept {
    return (bits & mask(n, a, b)) != 0;
  }

 private:
  AlternativeSet carrier_;
  Bits bits_ = 0;
};

enum class Property { reflexive, irreflexive, symmetric, antisymmetric, transitive, connected };

/// Connectedness quantifies over all ordered pairs including a = b.
bool check_property(const Relation& rel, Property prop);
bool is_weak_order(const Relation& rel);
bool is_linear_order(const Relation& rel);

// Raw-bit versions used by the scanning code paths.
bool is_transitive_bits(Relation::Bits bits, std::size_t n) noexcept;
bool is_connected_bits(Relation::Bits bits, std::size_t n) noexcept;
bool is_weak_order_bits(Relation::Bits bits, std::size_t n) noexcept;
bool is_linear_order_bits(Relation::Bits bits, std::size_t n) noexcept;
Relation::Bits strict_bits(Relation::Bits bits, std::size_t n) noexcept;
Relation::Bits converse_bits(Relation::Bits bits, std::size_t n) noexcept;

/// a P b := aRb ∧ ¬bRa
Relation strict_part(const Relation& rel);
/// a I b := aRb ∧ bRa
Relation indifference_part(const Relation& rel);
/// a R' b := b R a
Relation converse(const Relation& rel);

/// An injective map between alternative sets, as an index array.
class Injection {
 public:
  Injection(AlternativeSet source, AlternativeSet target, std::vector<std::size_t> map);

  /// Label-preserving inclusion; throws InvalidArgument when a source label
  /// is missing from the target.
  static Injection inclusion(const AlternativeSet& subset, const AlternativeSet& superset);
  static Injection identity(const AlternativeSet& set);

  const AlternativeSet& source() const noexcept { return source_; }
  const AlternativeSet& target() const noexcept { return target_; }
  std::span<const std::size_t> map() const noexcept { return map_; }
  std::size_t operator()(std::size_t index) const { return map_[index]; }

 private:
  AlternativeSet source_;
  AlternativeSet target_;
  std::vector<std::size_t> map_;
};

/// g ∘ f; requires f.target() == g.source().
Injection compose(const Injection& g, const Injection& f);

/// Every injective index map from `source` into `target`, in lexicographic
/// order of the image arrays.
std::vector<Injection> all_injections(const AlternativeSet& source, const AlternativeSet& target);

/// x R' x' ⟺ f(x) R f(x'). Throws CarrierMismatch unless rel is over f.target().
Relation pushforward(const Relation& rel, const Injection& f);
Relation::Bits pushforward_bits(Relation::Bits bits, std::size_t target_size,
                                std::span<const std::size_t> map) noexcept;

/// R | A := R ∩ A². Throws InvalidArgument for labels outside the carrier.
Relation restrict(const Relation& rel, const AlternativeSet& subset);

/// All weak orders, sorted by bit matrix. Requires 1 ≤ n ≤ 4.
std::vector<Relation> enumerate_weak_orders(const AlternativeSet& carrier);
std::vector<Relation> enumerate_weak_orders(std::size_t n);
/// All n! linear orders, sorted by bit matrix. Requires 1 ≤ n ≤ 6.
std::vector<Relation> enumerate_linear_orders(const AlternativeSet& carrier);
std::vector<Relation> enumerate_linear_orders(std::size_t n);

}  // namespace arrowkit
