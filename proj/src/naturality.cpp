#include "arrowkit/naturality.hpp"

#include <bit>
#include <limits>

#include "arrowkit/csp.hpp"
#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"

namespace arrowkit {

namespace {

using Bits = Relation::Bits;

std::vector<Bits> pull_back(std::span<const Bits> ballots, std::size_t target_size, std::span<const std::size_t> map) {
  std::vector<Bits> out;
  out.reserve(ballots.size());
  for (auto b : ballots) out.push_back(pushforward_bits(b, target_size, map));
  return out;
}

bool linear_ballots(std::span<const Bits> ballots, std::size_t n) {
  for (auto b : ballots)
    if (!is_linear_order_bits(b, n)) return false;
  return true;
}

std::vector<std::size_t> to_vector(std::span<const std::size_t> map) { return {map.begin(), map.end()}; }

// Compares σ_A ∘ α^* with α^* ∘ σ_B on every profile of σ_B's domain that
// passes `filter`, appending failures in domain order.
template <class Filter>
void check_square(const Swf& sigma_a, const Swf& sigma_b, std::span<const std::size_t> alpha, Filter&& filter,
                  std::vector<SquareFailure>& failures) {
  const Domain& da = sigma_a.domain();
  const Domain& db = sigma_b.domain();
  const std::size_t nb = db.carrier().size();
  for (std::size_t k = 0; k < db.size(); ++k) {
    if (!filter(db.ballots(k))) continue;
    const auto pulled = pull_back(db.ballots(k), nb, alpha);
    const Bits rhs = pushforward_bits(sigma_b.output_bits(k), nb, alpha);
    const auto index = da.find(pulled);
    if (index && sigma_a.output_bits(*index) == rhs) continue;
    std::optional<Relation> lhs;
    if (index) lhs = sigma_a.output(*index);
    failures.push_back({da.carrier(), db.carrier(), to_vector(alpha), db.profile(k), lhs,
                        Relation::from_bits(da.carrier(), rhs)});
  }
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

std::size_t ipow(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

SwfFamily::SwfFamily(AlternativeSet universe, std::size_t voters)
    : universe_(std::move(universe)), voters_(voters), components_(std::size_t{1} << universe_.size()) {
  if (universe_.size() > kMaxFamilyUniverse)
    throw InvalidArgument("SWF families support at most " + std::to_string(kMaxFamilyUniverse) + " alternatives");
}

void SwfFamily::set(SubsetMask mask, Swf component) {
  if (mask == 0 || mask > full_mask()) throw InvalidArgument("invalid subset mask");
  if (!(component.carrier() == universe_.subset(mask)))
    throw CarrierMismatch("component over " + component.carrier().to_string() + " stored at " +
                          universe_.subset(mask).to_string());
  if (component.voters() != voters_) throw InvalidArgument("component has the wrong number of voters");
  components_[mask] = std::move(component);
}

bool SwfFamily::has(SubsetMask mask) const noexcept {
  return mask < components_.size() && components_[mask].has_value();
}

const Swf& SwfFamily::at(SubsetMask mask) const {
  if (!has(mask)) throw InvalidArgument("SWF family has no component at subset mask " + std::to_string(mask));
  return *components_[mask];
}

SwfFamily extend_from_top(const Swf& top, const DomainFamily& domains) {
  const AlternativeSet& universe = top.carrier();
  if (!(domains.universe() == universe)) throw CarrierMismatch("domain family and SWF use different universes");
  if (domains.voters() != top.voters()) throw InvalidArgument("domain family and SWF disagree on the voters");
  const std::size_t n = universe.size();
  const Domain& d = top.domain();
  const OutputPolicy policy = top.well_formed() ? OutputPolicy::weak_orders : OutputPolicy::any_relation;

  SwfFamily family(universe, top.voters());
  family.set(universe.full_mask(), top);
  for (SubsetMask mask = 1; mask < universe.full_mask(); ++mask) {
    const DomainPtr& target = domains.at(mask);
    const AlternativeSet& sub = target->carrier();
    const auto inclusion = Injection::inclusion(sub, universe);
    std::vector<Bits> table(target->size(), 0);
    std::vector<std::optional<std::size_t>> lift(target->size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      const auto index = target->find(pull_back(d.ballots(k), n, inclusion.map()));
      if (!index) continue;
      const Bits out = pushforward_bits(top.output_bits(k), n, inclusion.map());
      if (!lift[*index]) {
        lift[*index] = k;
        table[*index] = out;
      } else if (table[*index] != out) {
        const std::string first = format_profile(d.profile(*lift[*index]));
        const std::string second = format_profile(d.profile(k));
        throw IllDefined(first, second,
                         "lifts " + first + " and " + second + " of " + format_profile(target->profile(*index)) +
                             " restrict to different outcomes on " + sub.to_string());
      }
    }
    for (std::size_t j = 0; j < lift.size(); ++j)
      if (!lift[j])
        throw NoLift("profile " + format_profile(target->profile(j)) + " on " + sub.to_string() +
                     " has no lift in the top domain");
    family.set(mask, Swf::from_table(target, std::move(table), policy));
  }
  return family;
}

SwfFamily extend_from_top(const Swf& top) { return extend_from_top(top, DomainFamily::from_top(top.domain())); }

std::string SquareFailure::to_text() const {
  std::string out = "A=" + source.to_string() + " B=" + target.to_string() + " alpha=[";
  for (std::size_t x = 0; x < alpha.size(); ++x) {
    if (x) out += ',';
    out += target.label(alpha[x]);
  }
  out += "] p=" + format_profile(p);
  out += " lhs=" + (lhs ? format_relation(*lhs) : std::string("undefined"));
  out += " rhs=" + format_relation(rhs);
  return out;
}

std::string NaturalityReport::to_text() const {
  std::string out;
  for (const auto& f : failures) out += f.to_text() + '\n';
  return out;
}

NaturalityReport check_naturality_inclusions(const SwfFamily& family) {
  NaturalityReport report;
  const SubsetMask full = family.full_mask();
  auto any = [](std::span<const Bits>) { return true; };
  for (SubsetMask a = 1; a <= full; ++a)
    for (SubsetMask b = 1; b <= full; ++b) {
      if (a == b || (a & b) != a) continue;
      const Swf& sigma_a = family.at(a);
      const Swf& sigma_b = family.at(b);
      const auto alpha = Injection::inclusion(sigma_a.carrier(), sigma_b.carrier());
      check_square(sigma_a, sigma_b, alpha.map(), any, report.failures);
    }
  return report;
}

NaturalityReport check_naturality_injections(const SwfFamily& family) {
  require_hypotheses(family.top(), {Axiom::UD, Axiom::IIA, Axiom::P});
  NaturalityReport report;
  const SubsetMask full = family.full_mask();
  for (SubsetMask a = 1; a <= full; ++a)
    for (SubsetMask b = 1; b <= full; ++b) {
      if (std::popcount(a) > std::popcount(b)) continue;
      const Swf& sigma_a = family.at(a);
      const Swf& sigma_b = family.at(b);
      const std::size_t nb = sigma_b.carrier().size();
      auto linear = [nb](std::span<const Bits> ballots) { return linear_ballots(ballots, nb); };
      for (const auto& alpha : all_injections(sigma_a.carrier(), sigma_b.carrier()))
        check_square(sigma_a, sigma_b, alpha.map(), linear, report.failures);
    }
  return report;
}

bool check_CP(const SwfFamily& family) {
  for (SubsetMask mask = 1; mask <= family.full_mask(); ++mask) {
    if (std::popcount(mask) != 2) continue;
    const Swf& sigma = family.at(mask);
    for (const auto& r : enumerate_linear_orders(sigma.carrier())) {
      const std::vector<Bits> diagonal(family.voters(), r.bits());
      const auto index = sigma.domain().find(diagonal);
      if (!index || sigma.output_bits(*index) != r.bits()) return false;
    }
  }
  return true;
}

CpEquivalence check_CP_equiv_P(const Swf& top) {
  const DomainFamily domains = DomainFamily::from_top(top.domain());
  const CudReport cud = check_CUD(domains);
  if (!cud.holds() && !cud.holds_linear()) throw HypothesesNotMet({"CUD"});
  const SwfFamily family = extend_from_top(top, domains);
  CpEquivalence out;
  out.cp = check_CP(family);
  out.pareto = true;
  for (SubsetMask mask = 1; mask <= family.full_mask(); ++mask)
    if (!check_pareto(family.at(mask)).holds) out.pareto = false;
  return out;
}

std::optional<std::size_t> NatCandidate::projection_index() const {
  for (std::size_t i = 0; i < arity; ++i) {
    bool match = true;
    for (std::size_t j = 1; j <= max_size && match; ++j) {
      const auto& t = components[j - 1];
      for (std::size_t code = 0; code < t.size() && match; ++code) {
        const std::size_t coordinate = (code / ipow(j, arity - 1 - i)) % j;
        match = t[code] == coordinate;
      }
    }
    if (match) return i;
  }
  return std::nullopt;
}

bool NatCandidate::fixes_diagonal() const {
  for (std::size_t j = 1; j <= max_size; ++j)
    for (std::size_t c = 0; c < j; ++c) {
      std::size_t code = 0;
      for (std::size_t i = 0; i < arity; ++i) code = code * j + c;
      if (components[j - 1][code] != c) return false;
    }
  return true;
}

std::string NatTransResult::to_text() const {
  std::string out = "candidates=" + std::to_string(candidates) + " survivors=" + std::to_string(survivors.size()) + '\n';
  for (std::size_t s = 0; s < survivors.size(); ++s) {
    const auto projection = survivors[s].projection_index();
    out += "survivor " + std::to_string(s) +
           ": projection=" + (projection ? std::to_string(*projection) : std::string("none")) +
           " diagonal=" + (survivors[s].fixes_diagonal() ? "ok" : "FAIL") + '\n';
  }
  return out;
}

NatTransResult enumerate_natural_transformations(std::size_t arity, std::size_t max_size) {
  if (arity == 0 || arity > kMaxNatArity) throw InvalidArgument("arity must be 1.." + std::to_string(kMaxNatArity));
  if (max_size == 0 || max_size > kMaxNatSize)
    throw InvalidArgument("maximum set size must be 1.." + std::to_string(kMaxNatSize));

  NatTransResult result;
  result.candidates = 1;
  Csp csp;
  std::vector<std::size_t> offset(max_size + 1, 0);
  for (std::size_t j = 1; j <= max_size; ++j) {
    const std::size_t tuples = ipow(j, arity);
    offset[j] = csp.variables();
    for (std::size_t x = 0; x < tuples; ++x) csp.add_variable(j);
    const std::uint64_t here = saturating_pow(j, tuples);
    result.candidates = result.candidates > std::numeric_limits<std::uint64_t>::max() / here
                            ? std::numeric_limits<std::uint64_t>::max()
                            : result.candidates * here;
  }

  // t_j(f ∘ x) = f(t_i(x)) for every function f : i → j and tuple x ∈ i^k.
  for (std::size_t i = 1; i <= max_size; ++i)
    for (std::size_t j = 1; j <= max_size; ++j) {
      const std::size_t functions = ipow(j, i);
      const std::size_t tuples = ipow(i, arity);
      for (std::size_t fcode = 0; fcode < functions; ++fcode) {
        std::vector<Csp::Value> f(i);
        for (std::size_t e = 0, rest = fcode; e < i; ++e, rest /= j) f[i - 1 - e] = static_cast<Csp::Value>(rest % j);
        for (std::size_t x = 0; x < tuples; ++x) {
          std::size_t image = 0;
          for (std::size_t c = 0; c < arity; ++c) image = image * j + f[(x / ipow(i, arity - 1 - c)) % i];
          csp.add_constraint({offset[j] + image, offset[i] + x},
                             [f](std::span<const Csp::Value> v) { return v[0] == f[v[1]]; });
        }
      }
    }

  csp.solve([&](std::span<const Csp::Value> values) {
    NatCandidate candidate{arity, max_size, {}};
    for (std::size_t j = 1; j <= max_size; ++j) {
      const auto first = values.begin() + static_cast<std::ptrdiff_t>(offset[j]);
      candidate.components.emplace_back(first, first + static_cast<std::ptrdiff_t>(ipow(j, arity)));
    }
    result.survivors.push_back(std::move(candidate));
    return true;
  });
  return result;
}

}  // namespace arrowkit
