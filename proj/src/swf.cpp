#include "arrowkit/swf.hpp"

#include <string>
#include <unordered_map>

#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"

namespace arrowkit {

namespace {

using Bits = Relation::Bits;

// (aRb, bRa) as two bits.
unsigned pair_bits(Bits rel, std::size_t n, std::size_t a, std::size_t b) {
  return (Relation::test(rel, n, a, b) ? 2U : 0U) | (Relation::test(rel, n, b, a) ? 1U : 0U);
}

bool strictly(Bits rel, std::size_t n, std::size_t a, std::size_t b) {
  return Relation::test(rel, n, a, b) && !Relation::test(rel, n, b, a);
}

void require_voter(std::size_t voter, const Domain& domain) {
  if (voter >= domain.voters())
    throw InvalidArgument("voter " + std::to_string(voter) + " outside 0.." + std::to_string(domain.voters() - 1));
}

ParetoReport check_pareto_impl(const Swf& swf, bool strict_conclusion) {
  const Domain& d = swf.domain();
  const std::size_t n = d.carrier().size();
  const auto everyone = Coalition::everyone(d.voters());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (strict_supporters(d.ballots(k), n, a, b) != everyone) continue;
        const Bits out = swf.output_bits(k);
        const bool ok = strict_conclusion ? strictly(out, n, a, b) : Relation::test(out, n, a, b);
        if (!ok) return {false, ParetoWitness{a, b, d.profile(k)}};
      }
    }
  return {};
}

}  // namespace

Swf::Swf(DomainPtr domain, std::vector<Bits> table) : domain_(std::move(domain)), table_(std::move(table)) {}

Swf Swf::from_table(DomainPtr domain, std::vector<Bits> table, OutputPolicy policy) {
  if (!domain) throw InvalidArgument("null domain");
  if (table.size() != domain->size())
    throw InvalidArgument("SWF table has " + std::to_string(table.size()) + " entries for a domain of " +
                          std::to_string(domain->size()) + " profiles");
  const std::size_t n = domain->carrier().size();
  bool well_formed = true;
  for (std::size_t k = 0; k < table.size(); ++k) {
    Relation::from_bits(domain->carrier(), table[k]);
    if (!is_weak_order_bits(table[k], n)) {
      if (policy == OutputPolicy::weak_orders)
        throw InvalidArgument("SWF output for profile " + format_profile(domain->profile(k)) +
                              " is not a weak order");
      well_formed = false;
    }
  }
  Swf out(std::move(domain), std::move(table));
  out.well_formed_ = well_formed;
  return out;
}

Swf Swf::tabulate(DomainPtr domain, const std::function<Relation(const Profile&)>& rule, OutputPolicy policy) {
  if (!domain) throw InvalidArgument("null domain");
  std::vector<Bits> table;
  table.reserve(domain->size());
  for (std::size_t k = 0; k < domain->size(); ++k) {
    Relation out = rule(domain->profile(k));
    if (!(out.carrier() == domain->carrier())) throw CarrierMismatch("rule output over the wrong carrier");
    table.push_back(out.bits());
  }
  return from_table(std::move(domain), std::move(table), policy);
}

Relation Swf::operator()(const Profile& p) const {
  auto index = domain_->find(p);
  if (!index) throw InvalidArgument("profile " + format_profile(p) + " is outside the SWF domain");
  return output(*index);
}

bool Swf::operator==(const Swf& other) const noexcept {
  return (domain_ == other.domain_ || *domain_ == *other.domain_) && table_ == other.table_;
}

Swf dictatorship(std::size_t voter, DomainPtr domain) {
  if (!domain) throw InvalidArgument("null domain");
  require_voter(voter, *domain);
  std::vector<Bits> table;
  for (std::size_t k = 0; k < domain->size(); ++k) table.push_back(domain->ballots(k)[voter]);
  return Swf::from_table(std::move(domain), std::move(table));
}

Swf borda(DomainPtr domain) {
  return Swf::tabulate(std::move(domain), [](const Profile& p) {
    const std::size_t n = p.carrier().size();
    std::vector<std::size_t> score(n, 0);
    for (auto ballot : p.ballots())
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (strictly(ballot, n, x, y)) ++score[x];
    return Relation::from_predicate(p.carrier(), [&](std::size_t x, std::size_t y) { return score[x] >= score[y]; });
  });
}

Swf pairwise_majority(DomainPtr domain) {
  return Swf::tabulate(
      std::move(domain),
      [](const Profile& p) {
        return Relation::from_predicate(p.carrier(), [&](std::size_t x, std::size_t y) {
          return strict_supporters(p, x, y).size() >= strict_supporters(p, y, x).size();
        });
      },
      OutputPolicy::any_relation);
}

Swf constant(DomainPtr domain, const Relation& outcome) {
  if (!domain) throw InvalidArgument("null domain");
  if (!(outcome.carrier() == domain->carrier())) throw CarrierMismatch("constant outcome over the wrong carrier");
  std::vector<Bits> table(domain->size(), outcome.bits());
  return Swf::from_table(std::move(domain), std::move(table));
}

Swf indifference(DomainPtr domain) {
  if (!domain) throw InvalidArgument("null domain");
  auto full = Relation::full(domain->carrier());
  return constant(std::move(domain), full);
}

Swf reversal(DomainPtr domain, std::size_t voter) {
  if (!domain) throw InvalidArgument("null domain");
  require_voter(voter, *domain);
  const std::size_t n = domain->carrier().size();
  std::vector<Bits> table;
  for (std::size_t k = 0; k < domain->size(); ++k) table.push_back(converse_bits(domain->ballots(k)[voter], n));
  return Swf::from_table(std::move(domain), std::move(table));
}

Swf pairwise_dictators(DomainPtr domain, std::span<const std::size_t> dictators) {
  if (!domain) throw InvalidArgument("null domain");
  const std::size_t n = domain->carrier().size();
  if (dictators.size() != n * (n - 1) / 2) throw InvalidArgument("need one dictator per unordered pair");
  for (auto v : dictators) require_voter(v, *domain);
  std::vector<Bits> table;
  for (std::size_t k = 0; k < domain->size(); ++k) {
    auto ballots = domain->ballots(k);
    Bits out = 0;
    for (std::size_t a = 0; a < n; ++a) {
      out |= Relation::mask(n, a, a);
      for (std::size_t b = a + 1; b < n; ++b) {
        const Bits ballot = ballots[dictators[PairwiseTables::pair_index(n, a, b)]];
        if (Relation::test(ballot, n, a, b)) out |= Relation::mask(n, a, b);
        if (Relation::test(ballot, n, b, a)) out |= Relation::mask(n, b, a);
      }
    }
    table.push_back(out);
  }
  return Swf::from_table(std::move(domain), std::move(table), OutputPolicy::any_relation);
}

IiaReport check_IIA(const Swf& swf) {
  const Domain& d = swf.domain();
  const std::size_t n = d.carrier().size();
  struct ClassState {
    std::size_t representative;
    unsigned outcome;
    std::optional<std::size_t> differing;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::unordered_map<std::uint64_t, ClassState> classes;
      for (std::size_t k = 0; k < d.size(); ++k) {
        std::uint64_t key = 0;
        for (auto ballot : d.ballots(k)) key = (key << 2) | pair_bits(ballot, n, a, b);
        const unsigned outcome = pair_bits(swf.output_bits(k), n, a, b);
        auto [it, fresh] = classes.try_emplace(key, ClassState{k, outcome, std::nullopt});
        if (!fresh && !it->second.differing && it->second.outcome != outcome) it->second.differing = k;
      }
      const ClassState* best = nullptr;
      for (const auto& [key, state] : classes)
        if (state.differing && (!best || state.representative < best->representative)) best = &state;
      if (best) return {false, IiaWitness{a, b, d.profile(best->representative), d.profile(*best->differing)}};
    }
  return {};
}

ParetoReport check_pareto(const Swf& swf) { return check_pareto_impl(swf, true); }

ParetoReport check_weak_pareto(const Swf& swf) { return check_pareto_impl(swf, false); }

std::optional<std::size_t> find_dictator(const Swf& swf) {
  const Domain& d = swf.domain();
  const std::size_t n = d.carrier().size();
  for (std::size_t i = 0; i < d.voters(); ++i) {
    bool dictator = true;
    for (std::size_t k = 0; k < d.size() && dictator; ++k) {
      const Bits mine = strict_bits(d.ballots(k)[i], n);
      const Bits social = strict_bits(swf.output_bits(k), n);
      dictator = (mine & ~social) == 0;
    }
    if (dictator) return i;
  }
  return std::nullopt;
}

PairwiseTables::PairwiseTables(AlternativeSet carrier, std::size_t voters, bool linear)
    : carrier_(std::move(carrier)), voters_(voters), linear_(linear), code_count_(1) {
  if (voters_ == 0 || voters_ > kMaxVoters) throw InvalidArgument("bad voter count");
  for (std::size_t i = 0; i < voters_; ++i) {
    code_count_ *= linear_ ? 2 : 3;
    if (code_count_ > (std::size_t{1} << 24)) throw InvalidArgument("pairwise tables too large");
  }
  const std::size_t n = carrier_.size();
  tables_.assign(n * (n - 1) / 2, std::vector<PairOutcome>(code_count_, PairOutcome::tied));
}

std::size_t PairwiseTables::pair_index(std::size_t n, std::size_t a, std::size_t b) {
  if (a >= b || b >= n) throw InvalidArgument("pair index needs a < b < n");
  std::size_t index = 0;
  for (std::size_t x = 0; x < a; ++x) index += n - 1 - x;
  return index + (b - a - 1);
}

std::pair<std::size_t, std::size_t> PairwiseTables::pair_at(std::size_t n, std::size_t index) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (index-- == 0) return {a, b};
  throw InvalidArgument("pair index out of range");
}

std::optional<std::size_t> PairwiseTables::code_of(std::span<const Relation::Bits> ballots, std::size_t a,
                                                   std::size_t b) const {
  const std::size_t n = carrier_.size();
  std::size_t code = 0;
  for (auto ballot : ballots) {
    std::size_t digit;
    switch (pair_bits(ballot, n, a, b)) {
      case 2U: digit = 0; break;
      case 1U: digit = 1; break;
      case 3U:
        if (linear_) return std::nullopt;
        digit = 2;
        break;
      default: return std::nullopt;
    }
    code = code * (linear_ ? 2 : 3) + digit;
  }
  return code;
}

bool PairwiseTables::operator==(const PairwiseTables& other) const {
  return carrier_ == other.carrier_ && voters_ == other.voters_ && linear_ == other.linear_ &&
         tables_ == other.tables_;
}

PairwiseTables to_pairwise(const Swf& swf) {
  const Domain& d = swf.domain();
  if (d.kind() == DomainKind::explicit_set)
    throw InvalidArgument("pairwise decomposition needs a full weak or full linear domain");
  if (auto iia = check_IIA(swf); !iia.holds) {
    const auto& w = *iia.witness;
    throw IiaViolation("IIA fails on {" + d.carrier().label(w.a) + "," + d.carrier().label(w.b) +
                       "}: p=" + format_profile(w.p) + " q=" + format_profile(w.q));
  }
  const std::size_t n = d.carrier().size();
  PairwiseTables tables(d.carrier(), d.voters(), d.kind() == DomainKind::full_linear);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Bits out = swf.output_bits(k);
    for (std::size_t pair = 0; pair < tables.pair_count(); ++pair) {
      auto [a, b] = PairwiseTables::pair_at(n, pair);
      const std::size_t code = *tables.code_of(d.ballots(k), a, b);
      PairOutcome outcome;
      switch (pair_bits(out, n, a, b)) {
        case 2U: outcome = PairOutcome::above; break;
        case 1U: outcome = PairOutcome::below; break;
        case 3U: outcome = PairOutcome::tied; break;
        default:
          throw InvalidArgument("SWF output leaves {" + d.carrier().label(a) + "," + d.carrier().label(b) +
                                "} incomparable");
      }
      tables.set(pair, code, outcome);
    }
  }
  return tables;
}

Swf from_pairwise(const PairwiseTables& tables, DomainPtr domain) {
  if (!domain) throw InvalidArgument("null domain");
  if (!(domain->carrier() == tables.carrier())) throw CarrierMismatch("pairwise tables over a different carrier");
  if (domain->voters() != tables.voters()) throw InvalidArgument("pairwise tables for a different voter count");
  const std::size_t n = domain->carrier().size();
  std::vector<Bits> table;
  table.reserve(domain->size());
  for (std::size_t k = 0; k < domain->size(); ++k) {
    Bits out = 0;
    for (std::size_t a = 0; a < n; ++a) out |= Relation::mask(n, a, a);
    for (std::size_t pair = 0; pair < tables.pair_count(); ++pair) {
      auto [a, b] = PairwiseTables::pair_at(n, pair);
      auto code = tables.code_of(domain->ballots(k), a, b);
      if (!code) throw InvalidArgument("linear pairwise tables cannot evaluate a tied ballot");
      switch (tables.get(pair, *code)) {
        case PairOutcome::above: out |= Relation::mask(n, a, b); break;
        case PairOutcome::below: out |= Relation::mask(n, b, a); break;
        case PairOutcome::tied: out |= Relation::mask(n, a, b) | Relation::mask(n, b, a); break;
      }
    }
    if (!is_weak_order_bits(out, n)) {
      const std::string profile = format_profile(domain->profile(k));
      throw NonTransitiveOutcome(profile, "pairwise outcomes are not transitive at profile " + profile + ": " +
                                              format_relation(Relation::from_bits(domain->carrier(), out)));
    }
    table.push_back(out);
  }
  return Swf::from_table(std::move(domain), std::move(table));
}

void require_hypotheses(const Swf& swf, std::initializer_list<Axiom> axioms) {
  std::vector<std::string> failed;
  for (Axiom axiom : axioms) {
    switch (axiom) {
      case Axiom::three_alternatives:
        if (swf.carrier().size() < 3) failed.emplace_back("|A|>=3");
        break;
      case Axiom::UD:
        if (!unrestricted(swf.domain())) failed.emplace_back("UD");
        break;
      case Axiom::IIA:
        if (!check_IIA(swf).holds) failed.emplace_back("IIA");
        break;
      case Axiom::P:
        if (!check_pareto(swf).holds) failed.emplace_back("P");
        break;
      case Axiom::WP:
        if (!check_weak_pareto(swf).holds) failed.emplace_back("WP");
        break;
      case Axiom::weak_order_outputs:
        if (!swf.well_formed()) failed.emplace_back("weak-order outputs");
        break;
    }
  }
  if (!failed.empty()) throw HypothesesNotMet(std::move(failed));
}

}  // namespace arrowkit
