// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arrowkit/cli.hpp"
#include "arrowkit/decisive.hpp"
#include "arrowkit/error.hpp"
#include "arrowkit/factorization.hpp"
#include "arrowkit/format.hpp"
#include "arrowkit/naturality.hpp"
#include "arrowkit/search.hpp"
#include "oracles.hpp"

using namespace arrowkit;

namespace {

// Wall-clock limits.
constexpr double kEnumerateSeconds = 1.0;
constexpr double kArrowTwoVotersSeconds = 1.0;
constexpr double kArrowThreeVotersSeconds = 60.0;

const AlternativeSet abc = AlternativeSet::standard(3);

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

SearchConfig arrow_config(std::size_t n, std::size_t m, std::size_t jobs = 1) {
  SearchConfig c;
  c.alternatives = n;
  c.voters = m;
  c.jobs = jobs;
  return c;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Instrument rules over one domain.
std::vector<std::pair<std::string, Swf>> instruments(const DomainPtr& d) {
  std::vector<std::pair<std::string, Swf>> out;
  for (std::size_t i = 0; i < d->voters(); ++i) out.emplace_back("dictatorship(" + std::to_string(i) + ")", dictatorship(i, d));
  out.emplace_back("borda", borda(d));
  out.emplace_back("majority", pairwise_majority(d));
  out.emplace_back("indifference", indifference(d));
  out.emplace_back("constant", constant(d, parse_chain(d->carrier(), "c>a~b")));
  out.emplace_back("reversal", reversal(d));
  const std::size_t split[] = {0, 1, 0};
  out.emplace_back("pairwise-dictators", pairwise_dictators(d, split));
  return out;
}

Outcome order_combinatorics() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> weak_out, linear_out;
  for (std::size_t n = 1; n <= 4; ++n) {
    weak_out.push_back(invoke({"enumerate", "--n", std::to_string(n), "--kind", "weak"}).out);
    linear_out.push_back(invoke({"enumerate", "--n", std::to_string(n), "--kind", "linear"}).out);
  }
  const double elapsed = seconds_since(start);
  const std::size_t fubini[] = {1, 3, 13, 75};
  std::string counts;
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t brute = oracle::weak_orders(n).size();
    o.expect(brute == fubini[n - 1], "oracle count n=" + std::to_string(n));
    o.expect(weak_out[n - 1] == std::to_string(brute) + "\n", "weak n=" + std::to_string(n));
    o.expect(linear_out[n - 1] == std::to_string(factorial(n)) + "\n", "linear n=" + std::to_string(n));
    o.expect(oracle::linear_orders(n).size() == factorial(n), "oracle linear n=" + std::to_string(n));
    counts += (counts.empty() ? "" : ",") + first_line(weak_out[n - 1]);
  }
  o.expect(elapsed < kEnumerateSeconds, "took " + fixed(elapsed) + "s");
  if (o.pass) o.detail = "weak=" + counts + " time=" + fixed(elapsed) + "s";
  return o;
}

Outcome arrow_exhaustive() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  const CliRun two = invoke({"verify-arrow", "--alternatives", "3", "--voters", "2", "--domain", "linear"});
  const double t2 = seconds_since(start);
  start = std::chrono::steady_clock::now();
  const CliRun three = invoke({"verify-arrow", "--alternatives", "3", "--voters", "3", "--jobs", "1"});
  const double t3 = seconds_since(start);
  o.expect(two.code == 0, "m=2 exit " + std::to_string(two.code));
  o.expect(first_line(two.out) == "candidates=4096 valid=2 dictators=[0,1]", "m=2 got '" + first_line(two.out) + "'");
  o.expect(three.code == 0, "m=3 exit " + std::to_string(three.code));
  o.expect(first_line(three.out) == "candidates=16777216 valid=3 dictators=[0,1,2]",
           "m=3 got '" + first_line(three.out) + "'");
  o.expect(t2 < kArrowTwoVotersSeconds, "m=2 took " + fixed(t2) + "s");
  o.expect(t3 < kArrowThreeVotersSeconds, "m=3 took " + fixed(t3) + "s");

  // Independent search over explicit tables: only the two projections survive.
  const auto survivors = oracle::arrow_survivors(3, 2);
  o.expect(survivors.size() == 2, "oracle found " + std::to_string(survivors.size()));
  const std::vector<std::vector<std::uint32_t>> projections{{0b1010, 0b1010, 0b1010}, {0b1100, 0b1100, 0b1100}};
  o.expect(survivors == projections, "oracle survivors are not the projections");
  if (o.pass) o.detail = "m=2 valid=2/4096 (" + fixed(t2) + "s), m=3 valid=3/16777216 (" + fixed(t3) + "s)";
  return o;
}

Outcome two_alternative_control() {
  Outcome o;
  const CliRun r = invoke({"verify-arrow", "--alternatives", "2", "--voters", "2"});
  o.expect(r.code == 0, "exit " + std::to_string(r.code));
  o.expect(first_line(r.out) == "candidates=16 valid=4 dictators=[0,1] non-dictatorial=2", "got '" + first_line(r.out) + "'");
  o.expect(oracle::arrow_survivors(2, 2).size() == 4, "oracle survivor count");
  const ArrowSearchResult result = enumerate_arrow_swfs(arrow_config(2, 2));
  std::size_t dictatorial = 0;
  for (const Swf& s : result.survivors) dictatorial += oracle::dictator(oracle::table_of(s)).has_value();
  o.expect(result.survivors.size() == 4 && dictatorial == 2, "oracle dictator count " + std::to_string(dictatorial));
  if (o.pass) o.detail = "4 valid, 2 dictatorial";
  return o;
}

Outcome ultrafilter_pipeline() {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t m = 2; m <= 3; ++m) {
    for (const Swf& s : enumerate_arrow_swfs(arrow_config(3, m)).survivors) {
      const CoalitionFamily family = decisive_family(s);
      const UltrafilterReport report = check_ultrafilter(family);
      const auto dictator = find_dictator(s);
      o.expect(report.holds(), "F1-F7 failed for a survivor");
      o.expect(report.generator.has_value() && report.generator == dictator, "generator differs from dictator");
      o.expect(family == CoalitionFamily::principal(m, dictator.value_or(0)), "family not principal");
      const oracle::Table table = oracle::table_of(s);
      std::uint64_t members = 0;
      for (auto u : oracle::decisive_family(table)) members |= std::uint64_t{1} << u;
      o.expect(members == family.members(), "oracle decisive family differs");
      o.expect(oracle::ultrafilter(oracle::decisive_family(table), m), "oracle rejects the ultrafilter");
      ++checked;
    }
  }
  std::size_t families = 0;
  for (std::size_t m = 2; m <= 3; ++m)
    for (std::uint64_t members = 0; members < (std::uint64_t{1} << (1U << m)); ++members) {
      const CoalitionFamily f(m, members);
      const bool ultra = check_ultrafilter(f).holds();
      const bool hom = is_bool_homomorphism(family_to_boolfn(f)).holds;
      std::set<std::uint32_t> set;
      for (auto u : f.list()) set.insert(u.mask);
      o.expect(ultra == hom, "biconditional fails at m=" + std::to_string(m) + " family " + to_string(f));
      o.expect(ultra == oracle::ultrafilter(set, m), "oracle disagrees at " + to_string(f));
      ++families;
    }
  o.expect(checked == 5 && families == 16 + 256, "unexpected coverage");
  if (o.pass) o.detail = std::to_string(checked) + " survivors principal, " + std::to_string(families) + " families";
  return o;
}

Outcome homomorphism_enumeration() {
  Outcome o;
  std::string counts;
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto homs = enumerate_homomorphisms(m);
    std::set<std::size_t> indices;
    for (const auto& h : homs)
      if (auto i = h.projection_index()) indices.insert(*i);
    o.expect(homs.size() == m && indices.size() == m, "m=" + std::to_string(m) + " not the projections");
    std::size_t brute = 0;
    for (std::uint32_t t = 0; t < (1U << (1U << m)); ++t)
      brute += oracle::homomorphism([&](std::uint32_t u) { return bool((t >> u) & 1U); }, m);
    o.expect(brute == m, "oracle count m=" + std::to_string(m));
    counts += (counts.empty() ? "" : ",") + std::to_string(homs.size());
  }
  if (o.pass) o.detail = "counts=" + counts;
  return o;
}

Outcome factorization_square() {
  Outcome o;
  std::size_t squares = 0;
  for (std::size_t m = 2; m <= 3; ++m)
    for (const Swf& s : enumerate_arrow_swfs(arrow_config(3, m)).survivors) {
      const FactorizationReport report = check_factorization(s);
      o.expect(report.homomorphism && report.square_commutes, "library square fails");
      o.expect(report.projection == find_dictator(s), "projection differs from dictator");
      // Recompute both sides with matrices.
      const BoolFn h = family_to_boolfn(decisive_family(s));
      const Domain& d = s.domain();
      for (SubsetMask mask = 1; mask < 8; ++mask)
        for (std::size_t k = 0; k < d.size(); ++k) {
          const auto ballots = oracle::table_of(s).rows[k];
          const oracle::Matrix out = oracle::matrix_of(s.output(k));
          for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
              if (!((mask >> a) & 1U) || !((mask >> b) & 1U)) continue;
              std::uint32_t u = 0;
              for (std::size_t i = 0; i < m; ++i)
                if (oracle::strictly(ballots[i], a, b)) u |= 1U << i;
              const bool lhs = oracle::strictly(out, a, b);
              const bool rhs = a != b && h({u});
              if (lhs != rhs) o.expect(false, "square differs at A=" + abc.subset(mask).to_string());
            }
          ++squares;
        }
    }
  if (o.pass) o.detail = std::to_string(squares) + " (subset, profile) squares";
  return o;
}

Outcome naturality_suite() {
  Outcome o;
  for (const auto& d : {share(Domain::full_linear(abc, 2)), share(Domain::full_weak(abc, 2))})
    for (std::size_t i = 0; i < 2; ++i) {
      const SwfFamily f = extend_from_top(dictatorship(i, d));
      o.expect(check_naturality_inclusions(f).holds(), "dictatorship inclusions");
      o.expect(check_naturality_injections(f).holds(), "dictatorship injections");
    }

  std::size_t iia_cases = 0, cp_cases = 0;
  for (const auto& d : {share(Domain::full_linear(abc, 2)), share(Domain::full_weak(abc, 2))}) {
    std::vector<std::pair<std::string, Swf>> rules = instruments(d);
    if (d->kind() == DomainKind::full_linear)
      for (const Swf& s : enumerate_arrow_swfs(arrow_config(3, 2)).survivors) rules.emplace_back("survivor", s);
    for (const auto& [name, s] : rules) {
      const bool iia = check_IIA(s).holds;
      bool natural = false;
      std::optional<SwfFamily> family;
      try {
        family = extend_from_top(s);
        natural = check_naturality_inclusions(*family).holds();
      } catch (const IllDefined&) {
      }
      o.expect(iia == natural, name + ": IIA and naturality disagree");
      if (family && natural) {
        for (SubsetMask mask = 1; mask < 8; ++mask)
          o.expect(check_IIA(family->at(mask)).holds, name + ": natural family with a non-IIA component");
      }
      ++iia_cases;
      if (!iia) continue;
      const CpEquivalence eq = check_CP_equiv_P(s);
      o.expect(eq.holds(), name + ": CP and P disagree");
      ++cp_cases;
    }
  }

  const IiaReport borda_iia = check_IIA(borda(share(Domain::full_linear(abc, 2))));
  std::string witness;
  if (borda_iia.witness) {
    const auto& w = *borda_iia.witness;
    witness = "pair=(" + abc.label(w.a) + "," + abc.label(w.b) + ") p=" + format_profile(w.p) + " q=" + format_profile(w.q);
  }
  o.expect(!borda_iia.holds && !witness.empty(), "Borda passes IIA");
  if (o.pass)
    o.detail = std::to_string(iia_cases) + " IIA cases, " + std::to_string(cp_cases) + " CP cases; Borda witness " + witness;
  return o;
}

Outcome projection_theorem() {
  Outcome o;
  const CliRun two = invoke({"nat-trans", "--arity", "2", "--max-size", "3"});
  const CliRun three = invoke({"nat-trans", "--arity", "3", "--max-size", "3"});
  o.expect(two.code == 0 && three.code == 0, "non-zero exit");
  o.expect(first_line(two.out) == "candidates=314928 survivors=2", "arity 2 got '" + first_line(two.out) + "'");
  o.expect(first_line(three.out).find(" survivors=3") != std::string::npos, "arity 3 got '" + first_line(three.out) + "'");
  o.expect(oracle::natural_transformations(2, 3).size() == 2, "oracle arity 2");
  o.expect(oracle::natural_transformations(3, 3).size() == 3, "oracle arity 3");
  for (std::size_t k = 2; k <= 3; ++k) {
    const NatTransResult r = enumerate_natural_transformations(k, 3);
    for (std::size_t i = 0; i < r.survivors.size(); ++i)
      o.expect(r.survivors[i].projection_index() == i && r.survivors[i].fixes_diagonal(), "survivor is not a projection");
  }
  if (o.pass) o.detail = "arity 2 -> 2, arity 3 -> 3";
  return o;
}

Outcome axiom_micro_suites() {
  Outcome o;
  const auto weak = enumerate_weak_orders(abc);
  o.expect(weak.size() == 13, "13 weak orders");
  for (const auto& r : weak) {
    const Relation p = strict_part(r);
    const Relation i = indifference_part(r);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        o.expect(int(p.holds(a, b)) + int(p.holds(b, a)) + int(i.holds(a, b)) == 1, "trichotomy");
        for (std::size_t c = 0; c < 3; ++c)
          for (std::size_t d = 0; d < 3; ++d)
            if (i.holds(a, b) && p.holds(b, c) && i.holds(c, d)) o.expect(p.holds(a, d), "absorption");
      }
  }

  std::size_t irreflexive = 0, satisfying = 0;
  for (const auto& m : oracle::all_relations(3)) {
    if (!oracle::irreflexive(m)) continue;
    ++irreflexive;
    const RelationalLemmaReport r = check_relational_lemma(oracle::relation_of(abc, m));
    if (r.first_hypothesis && r.second_hypothesis) {
      ++satisfying;
      o.expect(r.conclusion, "relational lemma conclusion");
    }
  }
  o.expect(irreflexive == 64, "64 irreflexive relations");

  std::size_t restrictions = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const AlternativeSet carrier = AlternativeSet::standard(n);
    for (SubsetMask mask = 1; mask <= carrier.full_mask(); ++mask)
      for (const auto& r : enumerate_weak_orders(carrier)) {
        const Relation sub = restrict(r, carrier.subset(mask));
        o.expect(is_weak_order(sub), "restriction of a weak order");
        if (is_linear_order(r)) o.expect(is_linear_order(sub), "restriction of a linear order");
        ++restrictions;
      }
  }
  if (o.pass)
    o.detail = "13 weak orders, " + std::to_string(satisfying) + "/64 relations meet the lemma's hypotheses, " +
               std::to_string(restrictions) + " restrictions";
  return o;
}

// Deterministic report text of the checks above, for one job count.
std::string transcript(std::size_t jobs) {
  std::string out;
  const std::string j = std::to_string(jobs);
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify-arrow", "--alternatives", "3", "--voters", "2", "--jobs", j},
           {"verify-arrow", "--alternatives", "3", "--voters", "3", "--jobs", j},
           {"verify-arrow", "--alternatives", "2", "--voters", "2", "--jobs", j},
           {"verify-arrow", "--alternatives", "3", "--voters", "4", "--jobs", j},
           {"nat-trans", "--arity", "2", "--max-size", "3"},
           {"nat-trans", "--arity", "3", "--max-size", "3"}}) {
    const CliRun r = invoke(args);
    out += std::to_string(r.code) + "\n" + r.out;
  }
  SearchConfig c = arrow_config(3, 3, jobs);
  c.engine = SearchEngine::flat;
  for (const Swf& s : enumerate_arrow_swfs(c).survivors) {
    out += check_ultrafilter(decisive_family(s)).to_text();
    out += check_factorization(s).to_text();
    out += check_naturality_injections(extend_from_top(s)).to_text();
  }
  for (std::size_t m = 1; m <= 3; ++m)
    for (const auto& h : enumerate_homomorphisms(m)) out += h.to_hex() + "\n";
  const NaturalityReport swap = check_naturality_injections(
      extend_from_top(instruments(share(Domain::full_linear(abc, 2))).back().second));
  out += swap.to_text();
  out += format_profile(check_IIA(borda(share(Domain::full_linear(abc, 2)))).witness->p) + "\n";
  return out;
}

Outcome determinism() {
  Outcome o;
  const std::string base = transcript(1);
  o.expect(transcript(1) == base, "two runs with --jobs 1 differ");
  o.expect(transcript(4) == base, "--jobs 4 differs from --jobs 1");
  o.expect(transcript(0) == base, "--jobs 0 differs from --jobs 1");
  if (o.pass) o.detail = std::to_string(base.size()) + " bytes identical across 4 runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"order combinatorics", order_combinatorics},
      {"Arrow exhaustive verification", arrow_exhaustive},
      {"two-alternative control", two_alternative_control},
      {"ultrafilter pipeline", ultrafilter_pipeline},
      {"homomorphism enumeration", homomorphism_enumeration},
      {"factorization square", factorization_square},
      {"naturality suite", naturality_suite},
      {"projection theorem", projection_theorem},
      {"axiom micro-suites", axiom_micro_suites},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << (i + 1) << " " << criteria[i].first << ": " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
