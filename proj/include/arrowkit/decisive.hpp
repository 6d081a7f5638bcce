#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrowkit/profiles.hpp"
#include "arrowkit/swf.hpp"

namespace arrowkit {

inline constexpr std::size_t kMaxFamilyVoters = 4;

/// A set of coalitions over a fixed voter set; member U is bit U.mask.
class CoalitionFamily {
 public:
  explicit CoalitionFamily(std::size_t voters, std::uint64_t members = 0);

  /// All supersets of {voter}.
  static CoalitionFamily principal(std::size_t voters, std::size_t voter);

  std::size_t voters() const noexcept { return voters_; }
  std::uint64_t members() const noexcept { return members_; }
  std::size_t coalition_count() const noexcept { return std::size_t{1} << voters_; }
  bool contains(Coalition coalition) const noexcept { return (members_ >> coalition.mask) & 1U; }
  CoalitionFamily with(Coalition coalition) const;
  std::vector<Coalition> list() const;
  bool empty() const noexcept { return members_ == 0; }

  friend bool operator==(const CoalitionFamily&, const CoalitionFamily&) = default;

 private:
  std::size_t voters_;
  std::uint64_t members_;
};

/// `{{0},{0,1}}`
std::string to_string(const CoalitionFamily& family);

/// U_ab: profiles where every member of U strictly prefers a to b and every
/// non-member strictly prefers b to a.
std::vector<Profile> profiles_Uab(const Domain& domain, Coalition coalition, std::size_t a, std::size_t b);

struct DecisivenessResult {
  bool holds = true;
  /// The quantified profile class was empty.
  bool vacuous = false;
  std::optional<Profile> witness;
};

/// a D_U b
DecisivenessResult is_decisive(const Swf& swf, Coalition coalition, std::size_t a, std::size_t b);
/// a E_U b: a p_U^> b ⇒ a σ(p)^> b for every profile.
DecisivenessResult is_strongly_decisive(const Swf& swf, Coalition coalition, std::size_t a, std::size_t b);

/// D_U and E_U for every coalition and ordered pair, computed in one pass.
class DecisivenessTable {
 public:
  explicit DecisivenessTable(const Swf& swf);

  std::size_t voters() const noexcept { return voters_; }
  std::size_t alternatives() const noexcept { return n_; }
  bool decisive(Coalition u, std::size_t a, std::size_t b) const { return d_holds_[slot(u, a, b)]; }
  bool vacuous(Coalition u, std::size_t a, std::size_t b) const { return !d_nonempty_[slot(u, a, b)]; }
  bool strongly_decisive(Coalition u, std::size_t a, std::size_t b) const { return e_holds_[slot(u, a, b)]; }

 private:
  std::size_t slot(Coalition u, std::size_t a, std::size_t b) const { return (u.mask * n_ + a) * n_ + b; }

  std::size_t voters_;
  std::size_t n_;
  std::vector<bool> d_holds_;
  std::vector<bool> d_nonempty_;
  std::vector<bool> e_holds_;
};

struct RelationalLemmaReport {
  /// a R b ⇒ a R x for x ≠ a.
  bool first_hypothesis = true;
  /// a R b ⇒ x R b for x ≠ b.
  bool second_hypothesis = true;
  /// a R b ⇒ x R y for all distinct x, y.
  bool conclusion = true;
};

/// Throws InvalidArgument for carriers smaller than 3 or reflexive pairs.
RelationalLemmaReport check_relational_lemma(const Relation& rel);

struct NeutralityWitness {
  Coalition coalition;
  std::size_t a, b;
  std::size_t x, y;
};

struct NeutralityReport {
  bool holds = true;
  std::optional<NeutralityWitness> witness;
};

/// a D_U b ⇒ x D_U y. Requires |A| ≥ 3, UD, IIA, WP.
NeutralityReport check_local_neutrality(const Swf& swf);

struct MonotonicityWitness {
  Coalition coalition;
  std::size_t a, b;
};

struct MonotonicityReport {
  bool holds = true;
  std::optional<MonotonicityWitness> witness;
};

/// D_U = E_U for every U. Requires |A| ≥ 3, UD, IIA, WP.
MonotonicityReport check_monotonicity(const Swf& swf);

/// Coalitions non-vacuously decisive for at least one ordered pair.
CoalitionFamily decisive_family(const Swf& swf);

struct AxiomCheck {
  bool holds = true;
  std::string witness;
};

struct UltrafilterReport {
  /// F1 ℐ ∈ 𝒰, F2 upward closure, F3 no disjoint members, F4 splitting,
  /// F5 ∅ ∉ 𝒰, F6 intersection closure, F7 U or its complement.
  std::array<AxiomCheck, 7> axioms;
  /// The principal generator when every axiom holds.
  std::optional<std::size_t> generator;

  bool holds() const noexcept;
  /// One line per axiom (`F6: FAIL witness={0,1}&{0,2}`) then the generator.
  std::string to_text() const;
};

UltrafilterReport check_ultrafilter(const CoalitionFamily& family);

struct LinearWitness {
  std::size_t a, b;
  Profile p;
};

struct LinearReport {
  bool holds = true;
  std::optional<LinearWitness> witness;
};

/// On profiles linear on {a,b}: a σ(p)^> b ⟺ {i : a p_i^> b} ∈ 𝒰.
/// Requires |A| ≥ 3, UD, IIA, P and an ultrafilter of decisive sets.
LinearReport check_linear_determination(const Swf& swf);
/// On profiles linear on {a,b}: exactly one of a σ(p)^> b, b σ(p)^> a.
LinearReport check_linear_strictness(const Swf& swf);

/// The dictator forced by |A| ≥ 3, UD, IIA, P and weak-order outputs.
/// Throws HypothesesNotMet, or InternalContradiction if the decisive family
/// is not a principal ultrafilter.
std::size_t arrow_conclusion(const Swf& swf);

}  // namespace arrowkit
