#include "arrowkit/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>
#include <thread>

#include "arrowkit/csp.hpp"
#include "arrowkit/error.hpp"

namespace arrowkit {

namespace {

using Table = std::uint32_t;  // pair truth table indexed by coalition mask

struct Triple {
  std::size_t xy, xz, yz;  // pair indices
  std::vector<std::array<std::uint32_t, 3>> realized;
};

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::uint64_t power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Realized (xy, xz, yz) restricted-profile keys per triple of alternatives.
// `key` maps ballots and a pair to the restricted-profile key.
template <class Key>
std::vector<Triple> realized_triples(const Domain& d, Key&& key) {
  const std::size_t n = d.carrier().size();
  std::vector<Triple> out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        Triple t{PairwiseTables::pair_index(n, x, y), PairwiseTables::pair_index(n, x, z),
                 PairwiseTables::pair_index(n, y, z), {}};
        std::set<std::array<std::uint32_t, 3>> seen;
        for (std::size_t k = 0; k < d.size(); ++k) {
          auto ballots = d.ballots(k);
          seen.insert({key(ballots, x, y), key(ballots, x, z), key(ballots, y, z)});
        }
        t.realized.assign(seen.begin(), seen.end());
        out.push_back(std::move(t));
      }
  return out;
}

// x: a above b on xy, y: on xz, z: on yz. A cycle is x>y>z>x or its reverse.
bool cyclic(bool xy, bool xz, bool yz) { return (xy && yz && !xz) || (!xy && !yz && xz); }

bool transitive(const std::vector<Triple>& triples, const Table* f) {
  for (const auto& t : triples)
    for (const auto& r : t.realized)
      if (cyclic((f[t.xy] >> r[0]) & 1U, (f[t.xz] >> r[1]) & 1U, (f[t.yz] >> r[2]) & 1U)) return false;
  return true;
}

std::vector<std::vector<Table>> flat_search(std::size_t pairs, const std::vector<Table>& valid,
                                            const std::vector<Triple>& triples, std::size_t jobs) {
  std::vector<std::vector<std::vector<Table>>> found(jobs);
  auto worker = [&](std::size_t w) {
    std::vector<std::size_t> index(pairs, 0);
    std::vector<Table> f(pairs);
    for (std::size_t first = w; first < valid.size(); first += jobs) {
      index.assign(pairs, 0);
      index[0] = first;
      for (;;) {
        for (std::size_t p = 0; p < pairs; ++p) f[p] = valid[index[p]];
        if (transitive(triples, f.data())) found[w].push_back(f);
        bool done = true;
        for (std::size_t p = pairs; p > 1;) {
          --p;
          if (++index[p] < valid.size()) {
            done = false;
            break;
          }
          index[p] = 0;
        }
        if (done) break;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }
  std::vector<std::vector<Table>> out;
  for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Table>> constraint_search(std::size_t pairs, std::size_t voters,
                                                  const std::vector<Triple>& triples) {
  const std::size_t codes = std::size_t{1} << voters;
  const std::uint32_t everyone = Coalition::everyone(voters).mask;
  Csp csp;
  for (std::size_t v = 0; v < pairs * codes; ++v) csp.add_variable(2);
  for (std::size_t p = 0; p < pairs; ++p) {
    csp.restrict_domain(p * codes + everyone, 0b10);
    csp.restrict_domain(p * codes, 0b01);
  }
  for (const auto& t : triples)
    for (const auto& r : t.realized)
      csp.add_constraint({t.xy * codes + r[0], t.xz * codes + r[1], t.yz * codes + r[2]},
                         [](std::span<const Csp::Value> v) { return !cyclic(v[0], v[1], v[2]); });
  std::vector<std::vector<Table>> out;
  csp.solve([&](std::span<const Csp::Value> values) {
    std::vector<Table> f(pairs, 0);
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t s = 0; s < codes; ++s)
        if (values[p * codes + s]) f[p] |= Table{1} << s;
    out.push_back(std::move(f));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Linear pair code: one binary digit per voter, voter 0 most significant,
// 0 meaning a above b.
std::uint32_t coalition_of_code(std::size_t code, std::size_t voters) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < voters; ++i)
    if (((code >> (voters - 1 - i)) & 1U) == 0) mask |= std::uint32_t{1} << i;
  return mask;
}

std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs != 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

void validate(const SearchConfig& config) {
  if (config.kind == BallotKind::weak) {
    if (config.alternatives != 3 || config.voters != 2)
      throw InvalidArgument("the weak-ballot search supports exactly 3 alternatives and 2 voters");
    return;
  }
  if (config.alternatives < 2 || config.alternatives > 3)
    throw InvalidArgument("the search supports 2 or 3 alternatives");
  if (config.voters < 1 || config.voters > 4) throw InvalidArgument("the search supports 1 to 4 voters");
  if (config.engine == SearchEngine::flat && config.voters > 3)
    throw InvalidArgument("flat enumeration supports at most 3 voters");
}

ArrowSearchResult enumerate_arrow_swfs(const SearchConfig& config) {
  validate(config);
  if (config.kind != BallotKind::linear) throw InvalidArgument("enumerate_arrow_swfs needs linear ballots");
  const std::size_t n = config.alternatives;
  const std::size_t m = config.voters;
  const std::size_t pairs = pair_count(n);
  const std::size_t codes = std::size_t{1} << m;
  const AlternativeSet carrier = AlternativeSet::standard(n);
  const DomainPtr domain = share(Domain::full_linear(carrier, m));
  const auto triples = realized_triples(
      *domain, [n](std::span<const Relation::Bits> ballots, std::size_t a, std::size_t b) {
        return strict_supporters(ballots, n, a, b).mask;
      });

  ArrowSearchResult result;
  result.candidates = power(std::uint64_t{1} << codes, pairs);

  const bool flat = config.engine == SearchEngine::flat || (config.engine == SearchEngine::automatic && m <= 3);
  std::vector<std::vector<Table>> found;
  if (flat) {
    const std::uint32_t everyone = Coalition::everyone(m).mask;
    std::vector<Table> valid;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << codes); ++t)
      if (((t >> everyone) & 1U) && !(t & 1U)) valid.push_back(static_cast<Table>(t));
    const std::size_t jobs = std::min(resolve_jobs(config.jobs), valid.size());
    found = flat_search(pairs, valid, triples, jobs);
  } else {
    found = constraint_search(pairs, m, triples);
  }

  for (const auto& f : found) {
    PairwiseTables tables(carrier, m, true);
    std::vector<std::vector<PairOutcome>> outcome(pairs, std::vector<PairOutcome>(codes));
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t code = 0; code < codes; ++code) {
        const bool above = (f[p] >> coalition_of_code(code, m)) & 1U;
        outcome[p][code] = above ? PairOutcome::above : PairOutcome::below;
        tables.set(p, code, outcome[p][code]);
      }
    result.survivors.push_back(from_pairwise(tables, domain));
    result.pair_tables.push_back(std::move(outcome));
  }
  return result;
}

ArrowSearchResult enumerate_arrow_swfs_weak(const SearchConfig& config) {
  validate(config);
  if (config.kind != BallotKind::weak) throw InvalidArgument("enumerate_arrow_swfs_weak needs weak ballots");
  const std::size_t n = config.alternatives;
  const std::size_t m = config.voters;
  const std::size_t pairs = pair_count(n);
  const AlternativeSet carrier = AlternativeSet::standard(n);
  const DomainPtr domain = share(Domain::full_weak(carrier, m));
  const PairwiseTables shape(carrier, m, false);
  const std::size_t codes = shape.code_count();
  const auto triples = realized_triples(
      *domain, [&shape](std::span<const Relation::Bits> ballots, std::size_t a, std::size_t b) {
        return static_cast<std::uint32_t>(*shape.code_of(ballots, a, b));
      });

  // Which pair-outcome triples assemble into a weak order on three elements.
  std::array<bool, 27> weak_ok{};
  for (std::size_t o = 0; o < 27; ++o) {
    const std::array<std::size_t, 3> outcome{o / 9, (o / 3) % 3, o % 3};
    const std::array<std::pair<std::size_t, std::size_t>, 3> pair{{{0, 1}, {0, 2}, {1, 2}}};
    Relation::Bits bits = 0;
    for (std::size_t x = 0; x < 3; ++x) bits |= Relation::mask(3, x, x);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto [u, v] = pair[i];
      if (outcome[i] != static_cast<std::size_t>(PairOutcome::below)) bits |= Relation::mask(3, u, v);
      if (outcome[i] != static_cast<std::size_t>(PairOutcome::above)) bits |= Relation::mask(3, v, u);
    }
    weak_ok[o] = is_weak_order_bits(bits, 3);
  }

  Csp csp;
  for (std::size_t v = 0; v < pairs * codes; ++v) csp.add_variable(3);
  // Unanimous a>b is code 0; unanimous b>a has every digit equal to 1.
  std::size_t all_below = 0;
  for (std::size_t i = 0; i < m; ++i) all_below = all_below * 3 + 1;
  for (std::size_t p = 0; p < pairs; ++p) {
    csp.restrict_domain(p * codes, std::uint64_t{1} << static_cast<int>(PairOutcome::above));
    csp.restrict_domain(p * codes + all_below, std::uint64_t{1} << static_cast<int>(PairOutcome::below));
  }
  for (const auto& t : triples)
    for (const auto& r : t.realized)
      csp.add_constraint({t.xy * codes + r[0], t.xz * codes + r[1], t.yz * codes + r[2]},
                         [&weak_ok](std::span<const Csp::Value> v) { return weak_ok[v[0] * 9 + v[1] * 3 + v[2]]; });

  ArrowSearchResult result;
  result.candidates = power(power(3, codes), pairs);
  csp.solve([&](std::span<const Csp::Value> values) {
    PairwiseTables tables(carrier, m, false);
    std::vector<std::vector<PairOutcome>> outcome(pairs, std::vector<PairOutcome>(codes));
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t code = 0; code < codes; ++code) {
        outcome[p][code] = static_cast<PairOutcome>(values[p * codes + code]);
        tables.set(p, code, outcome[p][code]);
      }
    result.survivors.push_back(from_pairwise(tables, domain));
    result.pair_tables.push_back(std::move(outcome));
    return true;
  });
  return result;
}

std::string SearchReport::to_text() const {
  std::set<std::size_t> dictators;
  std::size_t without = 0;
  for (const auto& s : survivors) {
    if (s.dictator)
      dictators.insert(*s.dictator);
    else
      ++without;
  }
  std::string out = "candidates=" + std::to_string(candidates) + " valid=" + std::to_string(valid) + " dictators=[";
  bool first = true;
  for (auto d : dictators) {
    if (!first) out += ',';
    out += std::to_string(d);
    first = false;
  }
  out += "]";
  if (without) out += " non-dictatorial=" + std::to_string(without);
  out += '\n';
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const auto& s = survivors[i];
    out += "survivor " + std::to_string(i) + ": dictator=" + (s.dictator ? std::to_string(*s.dictator) : "none") +
           " family=" + to_string(s.family) +
           " ultrafilter=" + (s.generator ? "principal(" + std::to_string(*s.generator) + ")" : std::string("no"));
    if (s.factorization) {
      const auto& f = *s.factorization;
      out += " h=" + f.h.to_hex() + " projection=" + (f.projection ? std::to_string(*f.projection) : "none") +
             " square=" + (f.square_commutes ? "OK" : "FAIL");
    } else {
      const BoolFn h = family_to_boolfn(s.family);
      out += " h=" + h.to_hex() + " square=n/a";
    }
    out += '\n';
  }
  return out;
}

SearchReport verify_arrow(const SearchConfig& config, ArrowSearchResult* result_out) {
  const auto start = std::chrono::steady_clock::now();
  ArrowSearchResult result =
      config.kind == BallotKind::weak ? enumerate_arrow_swfs_weak(config) : enumerate_arrow_swfs(config);
  const std::size_t n = config.alternatives;
  const std::size_t m = config.voters;

  SearchReport report;
  report.candidates = result.candidates;
  report.valid = result.survivors.size();

  auto fail = [](const std::string& what) { throw AssertionFailed(what); };
  std::set<std::size_t> seen;
  const DomainPtr linear = share(Domain::full_linear(AlternativeSet::standard(n), m));

  for (std::size_t s = 0; s < result.survivors.size(); ++s) {
    const Swf& swf = result.survivors[s];
    const std::string who = "survivor " + std::to_string(s);
    SurvivorReport entry;
    entry.dictator = find_dictator(swf);
    entry.family = decisive_family(swf);
    entry.generator = check_ultrafilter(entry.family).generator;
    if (n >= 3) entry.factorization = check_factorization(swf);
    report.survivors.push_back(entry);

    if (n < 3) continue;
    if (!entry.dictator) fail(who + " has no dictator");
    const std::size_t i = *entry.dictator;
    if (entry.generator != i) fail(who + ": decisive sets are not the principal ultrafilter of voter " + std::to_string(i));
    if (!(entry.family == CoalitionFamily::principal(m, i))) fail(who + ": decisive family differs from principal");
    const auto& f = *entry.factorization;
    if (!f.homomorphism || f.projection != i) fail(who + ": h is not the projection onto " + std::to_string(i));
    if (!f.square_commutes) fail(who + ": factorization square does not commute");

    // On linear profiles the survivor must coincide with dictatorship(i).
    const Swf dictator = dictatorship(i, linear);
    for (std::size_t k = 0; k < linear->size(); ++k)
      if (!(swf(linear->profile(k)) == dictator.output(k)))
        fail(who + " differs from dictatorship(" + std::to_string(i) + ") on a linear profile");

    if (config.kind == BallotKind::linear && !seen.insert(i).second)
      fail("two survivors share dictator " + std::to_string(i));
  }

  if (n >= 3) {
    if (config.kind == BallotKind::linear) {
      if (report.valid != m)
        fail("expected " + std::to_string(m) + " survivors, found " + std::to_string(report.valid));
      std::set<std::size_t> projections;
      for (const auto& h : enumerate_homomorphisms(m)) projections.insert(*h.projection_index());
      if (projections != seen) fail("survivors do not match the homomorphisms one-to-one");
    } else {
      const DomainPtr weak = share(Domain::full_weak(AlternativeSet::standard(n), m));
      for (std::size_t i = 0; i < m; ++i) {
        const Swf dictator = dictatorship(i, weak);
        if (std::find(result.survivors.begin(), result.survivors.end(), dictator) == result.survivors.end())
          fail("dictatorship(" + std::to_string(i) + ") is missing from the survivors");
      }
    }
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result_out) *result_out = std::move(result);
  return report;
}

}  // namespace arrowkit
