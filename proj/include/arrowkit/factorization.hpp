#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arrowkit/decisive.hpp"
#include "arrowkit/orders.hpp"
#include "arrowkit/profiles.hpp"
#include "arrowkit/swf.hpp"

namespace arrowkit {

/// A function h : 2^ℐ → 2 stored as a truth table indexed by coalition mask.
class BoolFn {
 public:
  /// Throws InvalidArgument unless 1 ≤ voters ≤ 4 and the table fits.
  BoolFn(std::size_t voters, std::uint32_t table);

  static BoolFn projection(std::size_t voters, std::size_t voter);
  /// Inverse of to_hex; throws ParseError on malformed text.
  static BoolFn from_hex(std::size_t voters, std::string_view hex);

  std::size_t voters() const noexcept { return voters_; }
  std::uint32_t table() const noexcept { return table_; }
  bool operator()(Coalition u) const noexcept { return (table_ >> u.mask) & 1U; }
  /// Hex digits, most significant bit first (bit 2^m - 1 leads).
  std::string to_hex() const;
  /// The voter i with h(U) = [i ∈ U], if any.
  std::optional<std::size_t> projection_index() const;

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

 private:
  std::size_t voters_;
  std::uint32_t table_;
};

BoolFn family_to_boolfn(const CoalitionFamily& family);
CoalitionFamily boolfn_to_family(const BoolFn& h);

struct HomomorphismReport {
  bool holds = true;
  /// "top", "bottom", "meet", "join" or "complement".
  std::string law;
  Coalition u{};
  Coalition v{};

  std::string to_text() const;
};

/// Laws are checked in the order top, bottom, meet, join, complement; the
/// witness is the least coalition pair violating the first failing law.
HomomorphismReport is_bool_homomorphism(const BoolFn& h);

/// All homomorphisms 2^m → 2 in table order. Brute force for m ≤ 3; for
/// m = 4 the projections are returned after checking each of them.
std::vector<BoolFn> enumerate_homomorphisms(std::size_t voters);

/// Bit (a,b) set iff a r^> b, laid out like Relation::Bits.
Relation::Bits phi(const Relation& weak_order);
/// Entry a*n+b is the coalition strictly preferring a to b.
std::vector<Coalition> psi(const Profile& p);
/// h applied pointwise to a ψ vector, laid out like phi.
Relation::Bits apply_pointwise(const BoolFn& h, const std::vector<Coalition>& coalitions, std::size_t n);

struct FactorizationWitness {
  SubsetMask subset;
  /// The linear profile on the subset.
  Profile p;
  Relation::Bits lhs;
  Relation::Bits rhs;
};

struct FactorizationReport {
  BoolFn h;
  bool homomorphism = false;
  std::optional<std::size_t> projection;
  bool square_commutes = true;
  std::optional<FactorizationWitness> witness;

  /// `h: a` / `homomorphism: yes` / `projection: 0` / `square: OK`
  std::string to_text() const;
};

/// Checks φ∘σ_A = h^{A²}∘ψ for every non-empty A and every linear profile.
/// Requires |A| ≥ 3, UD, IIA, P and weak-order outputs.
FactorizationReport check_factorization(const Swf& swf);

}  // namespace arrowkit
