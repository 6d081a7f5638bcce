#include "arrowkit/decisive.hpp"

#include <bit>

#include "arrowkit/error.hpp"

namespace arrowkit {

namespace {

using Bits = Relation::Bits;

bool strictly(Bits rel, std::size_t n, std::size_t a, std::size_t b) {
  return Relation::test(rel, n, a, b) && !Relation::test(rel, n, b, a);
}

void require_pair(const Domain& d, Coalition u, std::size_t a, std::size_t b) {
  const std::size_t n = d.carrier().size();
  if (a >= n || b >= n) throw InvalidArgument("alternative index outside the carrier");
  if (a == b) throw InvalidArgument("decisiveness needs distinct alternatives");
  if (u.mask & ~Coalition::everyone(d.voters()).mask) throw InvalidArgument("coalition outside the voter set");
}

std::string split(Coalition u, Coalition v, const char* op) { return to_string(u) + op + to_string(v); }

// Iterates every ordered pair of distinct alternatives.
template <class Fn>
bool all_pairs(std::size_t n, Fn&& fn) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && !fn(a, b)) return false;
  return true;
}

void require_ultrafilter(const Swf& swf) {
  if (!check_ultrafilter(decisive_family(swf)).holds())
    throw HypothesesNotMet({"decisive sets form an ultrafilter"});
}

}  // namespace

CoalitionFamily::CoalitionFamily(std::size_t voters, std::uint64_t members) : voters_(voters), members_(members) {
  if (voters == 0 || voters > kMaxFamilyVoters)
    throw InvalidArgument("coalition families support 1.." + std::to_string(kMaxFamilyVoters) + " voters");
  const std::uint64_t used = (std::uint64_t{1} << coalition_count()) - 1;
  if (members & ~used) throw InvalidArgument("family member outside the voter set");
}

CoalitionFamily CoalitionFamily::principal(std::size_t voters, std::size_t voter) {
  if (voter >= voters) throw InvalidArgument("generator outside the voter set");
  CoalitionFamily out(voters);
  for (std::uint32_t mask = 0; mask < out.coalition_count(); ++mask)
    if ((mask >> voter) & 1U) out.members_ |= std::uint64_t{1} << mask;
  return out;
}

CoalitionFamily CoalitionFamily::with(Coalition coalition) const {
  if (coalition.mask >= coalition_count()) throw InvalidArgument("coalition outside the voter set");
  return CoalitionFamily(voters_, members_ | (std::uint64_t{1} << coalition.mask));
}

std::vector<Coalition> CoalitionFamily::list() const {
  std::vector<Coalition> out;
  for (std::uint32_t mask = 0; mask < coalition_count(); ++mask)
    if (contains({mask})) out.push_back({mask});
  return out;
}

std::string to_string(const CoalitionFamily& family) {
  std::string out = "{";
  bool first = true;
  for (auto u : family.list()) {
    if (!first) out += ',';
    out += to_string(u);
    first = false;
  }
  return out + "}";
}

std::vector<Profile> profiles_Uab(const Domain& domain, Coalition coalition, std::size_t a, std::size_t b) {
  require_pair(domain, coalition, a, b);
  const std::size_t n = domain.carrier().size();
  const Coalition rest = coalition.complement(domain.voters());
  std::vector<Profile> out;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    auto ballots = domain.ballots(k);
    if (strict_supporters(ballots, n, a, b) == coalition && strict_supporters(ballots, n, b, a) == rest)
      out.push_back(domain.profile(k));
  }
  return out;
}

DecisivenessResult is_decisive(const Swf& swf, Coalition coalition, std::size_t a, std::size_t b) {
  const Domain& d = swf.domain();
  require_pair(d, coalition, a, b);
  const std::size_t n = d.carrier().size();
  const Coalition rest = coalition.complement(d.voters());
  DecisivenessResult result;
  result.vacuous = true;
  for (std::size_t k = 0; k < d.size(); ++k) {
    auto ballots = d.ballots(k);
    if (strict_supporters(ballots, n, a, b) != coalition || strict_supporters(ballots, n, b, a) != rest) continue;
    result.vacuous = false;
    if (!strictly(swf.output_bits(k), n, a, b)) {
      result.holds = false;
      result.witness = d.profile(k);
      return result;
    }
  }
  return result;
}

DecisivenessResult is_strongly_decisive(const Swf& swf, Coalition coalition, std::size_t a, std::size_t b) {
  const Domain& d = swf.domain();
  require_pair(d, coalition, a, b);
  const std::size_t n = d.carrier().size();
  DecisivenessResult result;
  result.vacuous = true;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if ((strict_supporters(d.ballots(k), n, a, b).mask & coalition.mask) != coalition.mask) continue;
    result.vacuous = false;
    if (!strictly(swf.output_bits(k), n, a, b)) {
      result.holds = false;
      result.witness = d.profile(k);
      return result;
    }
  }
  return result;
}

DecisivenessTable::DecisivenessTable(const Swf& swf) : voters_(swf.voters()), n_(swf.carrier().size()) {
  if (voters_ > kMaxFamilyVoters)
    throw InvalidArgument("decisiveness tables support at most " + std::to_string(kMaxFamilyVoters) + " voters");
  const Domain& d = swf.domain();
  const std::size_t slots = (std::size_t{1} << voters_) * n_ * n_;
  d_holds_.assign(slots, true);
  d_nonempty_.assign(slots, false);
  e_holds_.assign(slots, true);
  const std::uint32_t everyone = Coalition::everyone(voters_).mask;
  for (std::size_t k = 0; k < d.size(); ++k) {
    auto ballots = d.ballots(k);
    const Bits out = swf.output_bits(k);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        if (a == b) continue;
        const Coalition s = strict_supporters(ballots, n_, a, b);
        const Coalition t = strict_supporters(ballots, n_, b, a);
        const bool social = strictly(out, n_, a, b);
        if ((s.mask | t.mask) == everyone) {
          d_nonempty_[slot(s, a, b)] = true;
          if (!social) d_holds_[slot(s, a, b)] = false;
        }
        if (!social) {
          // Every U ⊆ S has a p_U^> b here without the social echo.
          for (std::uint32_t u = s.mask;; u = (u - 1) & s.mask) {
            e_holds_[slot({u}, a, b)] = false;
            if (u == 0) break;
          }
        }
      }
  }
  for (std::uint32_t u = 0; u <= everyone; ++u)
    for (std::size_t a = 0; a < n_; ++a) {
      d_holds_[slot({u}, a, a)] = false;
      e_holds_[slot({u}, a, a)] = false;
    }
}

RelationalLemmaReport check_relational_lemma(const Relation& rel) {
  const std::size_t n = rel.size();
  if (n < 3) throw InvalidArgument("the relational lemma needs at least three elements");
  if (!check_property(rel, Property::irreflexive)) throw InvalidArgument("the relational lemma needs an irreflexive relation");
  RelationalLemmaReport report;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!rel.holds(a, b)) continue;
      for (std::size_t x = 0; x < n; ++x) {
        if (x != a && !rel.holds(a, x)) report.first_hypothesis = false;
        if (x != b && !rel.holds(x, b)) report.second_hypothesis = false;
        for (std::size_t y = 0; y < n; ++y)
          if (x != y && !rel.holds(x, y)) report.conclusion = false;
      }
    }
  return report;
}

NeutralityReport check_local_neutrality(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::WP});
  const DecisivenessTable table(swf);
  const std::size_t n = table.alternatives();
  for (std::uint32_t u = 0; u < (std::uint32_t{1} << table.voters()); ++u)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !table.decisive({u}, a, b)) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (x != y && !table.decisive({u}, x, y)) return {false, NeutralityWitness{{u}, a, b, x, y}};
      }
  return {};
}

MonotonicityReport check_monotonicity(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::WP});
  const DecisivenessTable table(swf);
  const std::size_t n = table.alternatives();
  for (std::uint32_t u = 0; u < (std::uint32_t{1} << table.voters()); ++u)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && table.decisive({u}, a, b) != table.strongly_decisive({u}, a, b))
          return {false, MonotonicityWitness{{u}, a, b}};
  return {};
}

CoalitionFamily decisive_family(const Swf& swf) {
  const DecisivenessTable table(swf);
  const std::size_t n = table.alternatives();
  CoalitionFamily family(table.voters());
  for (std::uint32_t u = 0; u < family.coalition_count(); ++u) {
    const bool member = !all_pairs(n, [&](std::size_t a, std::size_t b) {
      return !(table.decisive({u}, a, b) && !table.vacuous({u}, a, b));
    });
    if (member) family = family.with({u});
  }
  return family;
}

bool UltrafilterReport::holds() const noexcept {
  for (const auto& axiom : axioms)
    if (!axiom.holds) return false;
  return true;
}

std::string UltrafilterReport::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    out += "F" + std::to_string(i + 1) + ": ";
    out += axioms[i].holds ? "ok" : "FAIL witness=" + axioms[i].witness;
    out += '\n';
  }
  out += "generator: " + (generator ? std::to_string(*generator) : std::string("none")) + '\n';
  return out;
}

UltrafilterReport check_ultrafilter(const CoalitionFamily& family) {
  const std::size_t m = family.voters();
  const std::uint32_t everyone = Coalition::everyone(m).mask;
  const std::uint32_t count = everyone + 1;
  auto in = [&](std::uint32_t u) { return family.contains({u}); };
  UltrafilterReport report;
  auto fail = [&](std::size_t axiom, std::string witness) {
    if (report.axioms[axiom].holds) report.axioms[axiom] = {false, std::move(witness)};
  };

  if (!in(everyone)) fail(0, to_string(Coalition{everyone}));
  for (std::uint32_t u = 0; u < count; ++u) {
    if (in(u)) {
      for (std::uint32_t v = 0; v < count; ++v) {
        if ((u & v) == u && !in(v)) fail(1, split({u}, {v}, "<"));
        if ((u & v) == 0 && in(v)) fail(2, split({u}, {v}, "&"));
        if (in(v) && !in(u & v)) fail(5, split({u}, {v}, "&"));
      }
      for (std::uint32_t v = 0; v < count; ++v) {
        if ((v & u) != v) continue;
        const std::uint32_t w = u & ~v;
        if (!in(v) && !in(w)) fail(3, to_string(Coalition{u}) + "=" + split({v}, {w}, "+"));
      }
    }
    if (!in(u) && !in(everyone & ~u)) fail(6, to_string(Coalition{u}));
  }
  if (in(0)) fail(4, "{}");

  if (report.holds()) {
    std::uint32_t meet = everyone;
    for (auto u : family.list()) meet &= u.mask;
    if (std::popcount(meet) != 1)
      throw InternalContradiction("family satisfies F1-F7 but its meet " + to_string(Coalition{meet}) +
                                  " is not a singleton");
    report.generator = static_cast<std::size_t>(std::countr_zero(meet));
  }
  return report;
}

LinearReport check_linear_determination(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::P});
  require_ultrafilter(swf);
  const CoalitionFamily family = decisive_family(swf);
  const Domain& d = swf.domain();
  const std::size_t n = d.carrier().size();
  const std::uint32_t everyone = Coalition::everyone(d.voters()).mask;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (std::size_t k = 0; k < d.size(); ++k) {
        const Coalition s = strict_supporters(d.ballots(k), n, a, b);
        const Coalition t = strict_supporters(d.ballots(k), n, b, a);
        if ((s.mask | t.mask) != everyone) continue;
        if (strictly(swf.output_bits(k), n, a, b) != family.contains(s)) return {false, LinearWitness{a, b, d.profile(k)}};
      }
    }
  return {};
}

LinearReport check_linear_strictness(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::P});
  require_ultrafilter(swf);
  const Domain& d = swf.domain();
  const std::size_t n = d.carrier().size();
  const std::uint32_t everyone = Coalition::everyone(d.voters()).mask;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t k = 0; k < d.size(); ++k) {
        const Coalition s = strict_supporters(d.ballots(k), n, a, b);
        const Coalition t = strict_supporters(d.ballots(k), n, b, a);
        if ((s.mask | t.mask) != everyone) continue;
        const Bits out = swf.output_bits(k);
        if (strictly(out, n, a, b) == strictly(out, n, b, a)) return {false, LinearWitness{a, b, d.profile(k)}};
      }
  return {};
}

std::size_t arrow_conclusion(const Swf& swf) {
  require_hypotheses(swf, {Axiom::three_alternatives, Axiom::UD, Axiom::IIA, Axiom::P, Axiom::weak_order_outputs});
  const auto report = check_ultrafilter(decisive_family(swf));
  if (!report.holds() || !report.generator)
    throw InternalContradiction("decisive sets of an Arrow SWF do not form a principal ultrafilter:\n" +
                                report.to_text());
  const auto dictator = find_dictator(swf);
  if (dictator != report.generator)
    throw InternalContradiction("ultrafilter generator " + std::to_string(*report.generator) +
                                " is not the dictator found by direct scan");
  return *report.generator;
}

}  // namespace arrowkit
