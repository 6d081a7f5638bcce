#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrowkit/orders.hpp"
#include "arrowkit/profiles.hpp"
#include "arrowkit/swf.hpp"

namespace arrowkit {

/// σ as a family of components σ_A, one per non-empty subset A of a universe
/// of at most four alternatives. Components are stored independently so the
/// naturality checks compare separate tables.
class SwfFamily {
 public:
  SwfFamily(AlternativeSet universe, std::size_t voters);

  const AlternativeSet& universe() const noexcept { return universe_; }
  std::size_t voters() const noexcept { return voters_; }
  SubsetMask full_mask() const noexcept { return universe_.full_mask(); }

  /// Throws CarrierMismatch unless the component lives on the subset `mask`.
  void set(SubsetMask mask, Swf component);
  bool has(SubsetMask mask) const noexcept;
  /// Throws InvalidArgument for missing components.
  const Swf& at(SubsetMask mask) const;
  const Swf& top() const { return at(full_mask()); }

 private:
  AlternativeSet universe_;
  std::size_t voters_;
  std::vector<std::optional<Swf>> components_;
};

/// σ_A(p) := σ_top(q)|A for any lift q of p. Every lift is compared, so an
/// IIA failure of the top SWF surfaces as IllDefined; a profile of 𝒟(A)
/// without a lift raises NoLift.
SwfFamily extend_from_top(const Swf& top, const DomainFamily& domains);
/// Uses DomainFamily::from_top(top.domain()).
SwfFamily extend_from_top(const Swf& top);

/// One non-commuting square σ_A ∘ 𝒟(α) vs ℙ(α) ∘ σ_B for α : A ↣ B.
struct SquareFailure {
  AlternativeSet source;
  AlternativeSet target;
  /// alpha[x] is the index in `target` of the image of source element x.
  std::vector<std::size_t> alpha;
  /// Profile over the target.
  Profile p;
  /// σ_A of the pulled-back profile; empty when that profile is missing
  /// from the component's domain.
  std::optional<Relation> lhs;
  Relation rhs;

  /// `A={a,b} B={a,b,c} alpha=[b,a] p=<profile> lhs=<chain> rhs=<chain>`
  std::string to_text() const;
};

struct NaturalityReport {
  std::vector<SquareFailure> failures;

  bool holds() const noexcept { return failures.empty(); }
  std::string to_text() const;
};

/// σ_A(p|A) = σ_B(p)|A for all A ⊊ B and p ∈ 𝒟(B).
NaturalityReport check_naturality_inclusions(const SwfFamily& family);

/// σ_A(α^* p) = α^* σ_B(p) for every injection α between non-empty subsets
/// and every linear profile p over the target. Requires UD, IIA and P of the
/// top component.
NaturalityReport check_naturality_injections(const SwfFamily& family);

/// σ_{a,b}(r, ..., r) = r for every two-element subset and linear order r.
bool check_CP(const SwfFamily& family);

struct CpEquivalence {
  bool cp = false;
  /// Every component satisfies P.
  bool pareto = false;

  bool holds() const noexcept { return cp == pareto; }
};

/// Extends the top SWF (requires CUD of the induced domain family and IIA)
/// and compares CP of the family with P of every component.
CpEquivalence check_CP_equiv_P(const Swf& top);

/// A candidate natural transformation t : X^k → X restricted to the sets
/// {0, ..., j-1} with 1 ≤ j ≤ max_size.
struct NatCandidate {
  std::size_t arity = 0;
  std::size_t max_size = 0;
  /// components[j-1][x] = t_j(x); the tuple x is coded in base j with
  /// coordinate 0 most significant.
  std::vector<std::vector<std::uint8_t>> components;

  std::optional<std::size_t> projection_index() const;
  /// t(c, ..., c) = c on every set.
  bool fixes_diagonal() const;
};

struct NatTransResult {
  /// Product over sizes j of j^(j^k), saturated at UINT64_MAX.
  std::uint64_t candidates = 0;
  std::vector<NatCandidate> survivors;

  std::string to_text() const;
};

inline constexpr std::size_t kMaxNatArity = 3;
inline constexpr std::size_t kMaxNatSize = 3;

/// Keeps the candidates natural under every function between the sets (not
/// only injections). Requires 1 ≤ k ≤ 3 and 1 ≤ s ≤ 3.
NatTransResult enumerate_natural_transformations(std::size_t arity, std::size_t max_size);

}  // namespace arrowkit
