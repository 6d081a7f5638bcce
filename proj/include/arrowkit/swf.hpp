#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "arrowkit/orders.hpp"
#include "arrowkit/profiles.hpp"

namespace arrowkit {

/// What a social welfare function table may contain.
enum class OutputPolicy {
  /// Every output is a weak order (the normal case).
  weak_orders,
  /// Any relation; used for instrument rules such as pairwise majority,
  /// whose outcomes can cycle.
  any_relation,
};

/// A social welfare function σ : 𝒟 → ℙ(A), stored as an explicit table in
/// domain order.
class Swf {
 public:
  /// Throws InvalidArgument when the table size differs from the domain size
  /// or, under OutputPolicy::weak_orders, when an output is not a weak order.
  static Swf from_table(DomainPtr domain, std::vector<Relation::Bits> table,
                        OutputPolicy policy = OutputPolicy::weak_orders);
  static Swf tabulate(DomainPtr domain, const std::function<Relation(const Profile&)>& rule,
                      OutputPolicy policy = OutputPolicy::weak_orders);

  const Domain& domain() const noexcept { return *domain_; }
  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  const AlternativeSet& carrier() const noexcept { return domain_->carrier(); }
  std::size_t voters() const noexcept { return domain_->voters(); }

  std::span<const Relation::Bits> table() const noexcept { return table_; }
  Relation::Bits output_bits(std::size_t index) const { return table_.at(index); }
  Relation output(std::size_t index) const { return Relation::from_bits(carrier(), output_bits(index)); }
  /// Throws InvalidArgument for profiles outside the domain.
  Relation operator()(const Profile& p) const;

  /// Every output is a weak order.
  bool well_formed() const noexcept { return well_formed_; }

  bool operator==(const Swf& other) const noexcept;

 private:
  Swf(DomainPtr domain, std::vector<Relation::Bits> table);

  DomainPtr domain_;
  std::vector<Relation::Bits> table_;
  bool well_formed_ = true;
};

// Reference rules. Dictatorship realizes the projections; the others are
// instruments for negative tests.

/// σ(p) = p_i
Swf dictatorship(std::size_t voter, DomainPtr domain);
/// Scores count alternatives strictly below; x σ y iff score(x) ≥ score(y).
Swf borda(DomainPtr domain);
/// x σ y iff #{i : x p_i^> y} ≥ #{i : y p_i^> x}. May cycle.
Swf pairwise_majority(DomainPtr domain);
Swf constant(DomainPtr domain, const Relation& outcome);
/// Always total indifference.
Swf indifference(DomainPtr domain);
/// σ(p) = converse of p_i.
Swf reversal(DomainPtr domain, std::size_t voter = 0);
/// The pair {a,b} (a < b, pairs in lexicographic order) copies the voter
/// `dictators[pair_index]`. IIA and Pareto, but may produce cycles.
Swf pairwise_dictators(DomainPtr domain, std::span<const std::size_t> dictators);

struct IiaWitness {
  std::size_t a;
  std::size_t b;
  Profile p;
  Profile q;
};

struct IiaReport {
  bool holds = true;
  std::optional<IiaWitness> witness;
};

/// Least witness in the order (pair, p, q) with p < q in domain order.
IiaReport check_IIA(const Swf& swf);

struct ParetoWitness {
  std::size_t a;
  std::size_t b;
  Profile p;
};

struct ParetoReport {
  bool holds = true;
  std::optional<ParetoWitness> witness;
};

ParetoReport check_pareto(const Swf& swf);
ParetoReport check_weak_pareto(const Swf& swf);

/// Least voter whose strict preferences the SWF always copies.
std::optional<std::size_t> find_dictator(const Swf& swf);

/// Social outcome on an unordered pair {a, b} with a < b.
enum class PairOutcome : std::uint8_t { above, below, tied };

/// The IIA normal form: per unordered pair, a map from restricted profiles to
/// the pair outcome. A restricted profile is encoded with one digit per voter
/// (voter 0 most significant): 0 for a>b, 1 for b>a and, on weak tables, 2
/// for a~b.
class PairwiseTables {
 public:
  PairwiseTables(AlternativeSet carrier, std::size_t voters, bool linear);

  const AlternativeSet& carrier() const noexcept { return carrier_; }
  std::size_t voters() const noexcept { return voters_; }
  bool linear() const noexcept { return linear_; }
  std::size_t pair_count() const noexcept { return tables_.size(); }
  std::size_t code_count() const noexcept { return code_count_; }

  static std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b);
  static std::pair<std::size_t, std::size_t> pair_at(std::size_t n, std::size_t index);

  /// Code of the restriction of `ballots` to {a, b}; nullopt when a tie
  /// meets a linear table.
  std::optional<std::size_t> code_of(std::span<const Relation::Bits> ballots, std::size_t a, std::size_t b) const;

  PairOutcome get(std::size_t pair, std::size_t code) const { return tables_.at(pair).at(code); }
  void set(std::size_t pair, std::size_t code, PairOutcome outcome) { tables_.at(pair).at(code) = outcome; }

  bool operator==(const PairwiseTables& other) const;

 private:
  AlternativeSet carrier_;
  std::size_t voters_;
  bool linear_;
  std::size_t code_count_;
  std::vector<std::vector<PairOutcome>> tables_;
};

/// Requires IIA (IiaViolation otherwise) and a full weak or full linear domain.
PairwiseTables to_pairwise(const Swf& swf);
/// Throws NonTransitiveOutcome at the first profile whose assembled outcome
/// is not a weak order.
Swf from_pairwise(const PairwiseTables& tables, DomainPtr domain);

/// Standing assumptions a theorem checker may demand.
enum class Axiom { three_alternatives, UD, IIA, P, WP, weak_order_outputs };

/// Throws HypothesesNotMet naming every failed axiom. UD is checked in its
/// linear form for all-linear domains.
void require_hypotheses(const Swf& swf, std::initializer_list<Axiom> axioms);

}  // namespace arrowkit
