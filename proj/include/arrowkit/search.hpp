#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arrowkit/decisive.hpp"
#include "arrowkit/factorization.hpp"
#include "arrowkit/swf.hpp"

namespace arrowkit {

enum class BallotKind { linear, weak };

enum class SearchEngine {
  /// Flat enumeration when the candidate space allows it, else constraints.
  automatic,
  /// Odometer over Pareto-respecting pair functions (linear, m ≤ 3).
  flat,
  /// Backtracking with forward checking.
  constraint,
};

struct SearchConfig {
  std::size_t alternatives = 3;
  std::size_t voters = 2;
  BallotKind kind = BallotKind::linear;
  /// Worker threads for the flat engine; 0 means one per hardware thread.
  std::size_t jobs = 1;
  SearchEngine engine = SearchEngine::automatic;
};

/// Throws InvalidArgument for configurations outside the supported range:
/// linear ballots with 2 ≤ n ≤ 3 and 1 ≤ m ≤ 4; weak ballots only at n = 3,
/// m = 2.
void validate(const SearchConfig& config);

struct ArrowSearchResult {
  /// Size of the IIA candidate space before any filtering.
  std::uint64_t candidates = 0;
  /// Per survivor and unordered pair {a,b} (lexicographic pair order): the
  /// social outcome for each restricted-profile code.
  std::vector<std::vector<std::vector<PairOutcome>>> pair_tables;
  std::vector<Swf> survivors;
};

/// Every IIA SWF on the full linear domain that satisfies P and has
/// transitive outcomes, in canonical order (lexicographic in the pair truth
/// tables). Identical for every job count.
ArrowSearchResult enumerate_arrow_swfs(const SearchConfig& config);

/// The weak-ballot counterpart: pair outcomes range over {>, <, ~} and
/// outcomes must be weak orders. Solved by constraint search.
ArrowSearchResult enumerate_arrow_swfs_weak(const SearchConfig& config);

struct SurvivorReport {
  std::optional<std::size_t> dictator;
  CoalitionFamily family{1};
  std::optional<std::size_t> generator;
  /// Present when the factorization check applies (n ≥ 3).
  std::optional<FactorizationReport> factorization;
};

struct SearchReport {
  std::uint64_t candidates = 0;
  std::size_t valid = 0;
  std::vector<SurvivorReport> survivors;
  double seconds = 0.0;

  /// Deterministic text: the summary line
  /// `candidates=4096 valid=2 dictators=[0,1]` then one line per survivor.
  /// Timing is not included.
  std::string to_text() const;
};

/// Runs the search and the downstream pipeline on every survivor. For n ≥ 3
/// asserts the theorem's conclusion and throws AssertionFailed at the first
/// discrepancy.
SearchReport verify_arrow(const SearchConfig& config, ArrowSearchResult* result = nullptr);

}  // namespace arrowkit
