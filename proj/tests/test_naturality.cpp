#include <doctest.h>

#include "arrowkit/error.hpp"
#include "arrowkit/format.hpp"
#include "arrowkit/naturality.hpp"
#include "oracles.hpp"

using namespace arrowkit;

namespace {

const AlternativeSet abc = AlternativeSet::standard(3);

DomainPtr weak(std::size_t m) { return share(Domain::full_weak(abc, m)); }
DomainPtr linear(std::size_t m) { return share(Domain::full_linear(abc, m)); }

// Replace one output of a component.
Swf edited(const Swf& s, std::size_t index, Relation::Bits bits) {
  std::vector<Relation::Bits> table(s.table().begin(), s.table().end());
  table[index] = bits;
  return Swf::from_table(s.domain_ptr(), std::move(table));
}

}  // namespace

TEST_SUITE("naturality") {
  TEST_CASE("extension of a dictatorship") {
    const Swf top = dictatorship(0, weak(2));
    const SwfFamily f = extend_from_top(top);
    CHECK(f.top() == top);
    const Swf& ab = f.at(0b011);
    CHECK(ab == dictatorship(0, ab.domain_ptr()));
    CHECK(check_naturality_inclusions(f).holds());
    CHECK(check_naturality_injections(f).holds());
    CHECK(check_CP(f));
  }

  TEST_CASE("Borda cannot be extended") {
    try {
      extend_from_top(borda(weak(2)));
      FAIL("expected IllDefined");
    } catch (const IllDefined& e) {
      CHECK(e.first_lift() != e.second_lift());
      const Profile p = parse_profile(abc, e.first_lift());
      const Profile q = parse_profile(abc, e.second_lift());
      CHECK(p != q);
    }
  }

  TEST_CASE("missing lifts are reported") {
    const Swf top = dictatorship(0, linear(2));
    DomainFamily domains = DomainFamily::from_top(top.domain());
    domains.set(0b011, share(Domain::full_weak(domains.subset(0b011), 2)));
    CHECK_THROWS_AS(extend_from_top(top, domains), NoLift);
  }

  TEST_CASE("an edited component breaks an inclusion square") {
    SwfFamily f = extend_from_top(dictatorship(0, weak(2)));
    const Swf& ab = f.at(0b011);
    const Relation::Bits flipped = converse_bits(ab.output_bits(0), 2);
    REQUIRE(flipped != ab.output_bits(0));
    f.set(0b011, edited(ab, 0, flipped));
    const NaturalityReport r = check_naturality_inclusions(f);
    REQUIRE_FALSE(r.holds());
    CHECK(r.failures.front().source.to_string() == "{a,b}");
    CHECK(r.failures.front().target.to_string() == "{a,b,c}");
    CHECK(restrict_profile(r.failures.front().p, f.at(0b011).carrier()) == ab.domain().profile(0));
  }

  TEST_CASE("a swap square can fail while inclusions hold") {
    // pairwise_dictators lets voter 0 decide {a,b} and voter 1 the other
    // pairs: natural for inclusions, not for the swap of a and c.
    const std::size_t split[] = {0, 1, 1};
    const Swf top = pairwise_dictators(linear(2), split);
    const SwfFamily f = extend_from_top(top);
    CHECK(check_naturality_inclusions(f).holds());
    const NaturalityReport r = check_naturality_injections(f);
    REQUIRE_FALSE(r.holds());
    const SquareFailure& w = r.failures.front();
    CHECK(w.source.size() == 2);
    CHECK(w.lhs.has_value());
    CHECK(*w.lhs != w.rhs);
  }

  TEST_CASE("injection naturality needs the top hypotheses") {
    CHECK_THROWS_AS(check_naturality_injections(extend_from_top(indifference(weak(2)))), HypothesesNotMet);
  }

  TEST_CASE("injection naturality of every dictatorship family") {
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t i = 0; i < m; ++i)
        for (const auto& d : {linear(m), weak(m)}) {
          const SwfFamily f = extend_from_top(dictatorship(i, d));
          CHECK(check_naturality_inclusions(f).holds());
          CHECK(check_naturality_injections(f).holds());
        }
  }

  TEST_CASE("IIA of the top is equivalent to a natural extension") {
    for (const auto& d : {weak(2), linear(2)}) {
      const std::size_t split[] = {0, 1, 0};
      for (const Swf& s : {dictatorship(0, d), dictatorship(1, d), borda(d), pairwise_majority(d), indifference(d),
                           reversal(d), constant(d, parse_chain(abc, "c>a~b")), pairwise_dictators(d, split)}) {
        bool natural = false;
        try {
          natural = check_naturality_inclusions(extend_from_top(s)).holds();
        } catch (const IllDefined&) {
        }
        CHECK(check_IIA(s).holds == natural);
      }
    }
  }

  TEST_CASE("natural families have IIA components") {
    const SwfFamily f = extend_from_top(pairwise_majority(weak(2)));
    REQUIRE(check_naturality_inclusions(f).holds());
    for (SubsetMask mask = 1; mask < 8; ++mask) CHECK(check_IIA(f.at(mask)).holds);
  }

  TEST_CASE("diagonal preservation") {
    CHECK(check_CP(extend_from_top(dictatorship(1, linear(2)))));
    CHECK_FALSE(check_CP(extend_from_top(indifference(weak(2)))));
    CHECK_FALSE(check_CP(extend_from_top(reversal(linear(2)))));
    const CpEquivalence d0 = check_CP_equiv_P(dictatorship(0, weak(2)));
    CHECK(d0.cp);
    CHECK(d0.pareto);
    const CpEquivalence c = check_CP_equiv_P(constant(weak(2), parse_chain(abc, "a>b>c")));
    CHECK_FALSE(c.cp);
    CHECK_FALSE(c.pareto);
    CHECK(c.holds());
    CHECK_THROWS_AS(check_CP_equiv_P(borda(weak(2))), IllDefined);
  }

  TEST_CASE("natural transformations agree with direct search") {
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t s = 1; s <= 3; ++s) {
        const NatTransResult r = enumerate_natural_transformations(k, s);
        const auto expected = oracle::natural_transformations(k, s);
        REQUIRE(r.survivors.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
          for (std::size_t j = 0; j < s; ++j)
            CHECK(std::vector<std::size_t>(r.survivors[i].components[j].begin(), r.survivors[i].components[j].end()) ==
                  expected[i][j]);
      }
    const NatTransResult two = enumerate_natural_transformations(2, 2);
    CHECK(two.candidates == 16);
    CHECK(two.survivors.size() == 2);
    CHECK(enumerate_natural_transformations(2, 3).candidates == 16ULL * 19683ULL);
    CHECK_THROWS_AS(enumerate_natural_transformations(4, 2), InvalidArgument);
    CHECK_THROWS_AS(enumerate_natural_transformations(2, 4), InvalidArgument);
  }

  TEST_CASE("two-element sets alone admit majority and parity") {
    // On {0,1} naturality only forces idempotence and self-duality, which
    // leaves the values at 001, 010 and 011 free.
    const NatTransResult r = enumerate_natural_transformations(3, 2);
    REQUIRE(r.survivors.size() == 8);
    std::size_t projections = 0;
    for (const auto& c : r.survivors) projections += c.projection_index().has_value();
    CHECK(projections == 3);
    // Tuples over {0,1} coded with coordinate 0 most significant.
    const std::vector<std::uint8_t> majority{0, 0, 0, 1, 0, 1, 1, 1};
    const std::vector<std::uint8_t> parity{0, 1, 1, 0, 1, 0, 0, 1};
    std::size_t found = 0;
    for (const auto& c : r.survivors) found += c.components[1] == majority || c.components[1] == parity;
    CHECK(found == 2);
  }

  TEST_CASE("survivors are projections fixing the diagonal") {
    for (std::size_t k = 1; k <= 3; ++k) {
      const NatTransResult r = enumerate_natural_transformations(k, 3);
      CHECK(r.survivors.size() == k);
      for (std::size_t i = 0; i < r.survivors.size(); ++i) {
        CHECK(r.survivors[i].projection_index() == i);
        CHECK(r.survivors[i].fixes_diagonal());
      }
    }
  }
}
