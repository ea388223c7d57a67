// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "subshift/language.hpp"
#include "subshift/skeleton.hpp"
#include "subshift/spec_parse.hpp"
#include "subshift/zeta.hpp"

using namespace subshift;

namespace {

constexpr auto Z = ZetaVariant::full;
constexpr auto Zlow = ZetaVariant::low;
constexpr auto Zpb = ZetaVariant::pb;

const AbscissaBracket& bracket(const std::vector<AbscissaBracket>& all, ZetaVariant v) {
  return all[static_cast<std::size_t>(v)];
}

}  // namespace

TEST_CASE("zeta partial sums") {
  SUBCASE("full binary shift, geometric delta") {
    const auto p = zeta_partials(BranchingSkeleton::full_shift(2, 3), DeltaSequence::geometric(0.5), {2.0}, {3});
    CHECK(static_cast<double>(p.at(Z, 0, 0)) == doctest::Approx(3.5).epsilon(1e-15));
  }
  SUBCASE("direct sum over an explicit tree") {
    const auto table = LanguageTable::build(parse_spec("full:3"), 6);
    const auto tree = MichonTree::build(table);
    const auto h = DeltaSequence::harmonic();
    const auto p = zeta_partials(BranchingSkeleton::from_tree(tree), h, {0.5, 1.5}, {3, 6});
    for (std::size_t i = 0; i < 2; ++i) {
      long double expect = 0;
      for (NodeId v = 0; v < tree.size(); ++v) {
        const auto a = tree.branching(v);
        if (tree.level(v) < 6) expect += a * (a + 1) * std::pow(h[tree.level(v)], p.s[i]);
      }
      CHECK(static_cast<double>(p.at(Z, i, 1)) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
    }
  }
  SUBCASE("ordering, monotonicity and binary equality") {
    for (const auto* spec : {"full:2", "full:3", "sturmian:cf=1", "sturmian:mu=linear:1:0", "subst:a=ab,b=ba",
                             "subst:a=abc,b=ac,c=b"}) {
      CAPTURE(spec);
      const auto skel = skeleton_for(parse_spec(spec), 256);
      const auto p = zeta_partials(skel, DeltaSequence::harmonic(), uniform_grid(0.2, 3.0, 0.05),
                                   doubling_schedule(4, 256));
      bool binary = true;
      for (std::uint32_t v = 0; v < skel.size(); ++v) binary = binary && skel.node(v).branching <= 1;
      for (std::size_t i = 0; i < p.s.size(); ++i) {
        for (std::size_t k = 0; k < p.depths.size(); ++k) {
          CHECK(p.at(Zpb, i, k) <= p.at(Zlow, i, k));
          CHECK(p.at(Zlow, i, k) <= p.at(Z, i, k));
          if (k > 0) CHECK(p.at(Z, i, k) >= p.at(Z, i, k - 1));
          if (i > 0) CHECK(p.at(Z, i, k) <= p.at(Z, i - 1, k));
          if (binary) CHECK(p.at(Z, i, k) == p.at(Zlow, i, k));
        }
      }
    }
  }
  CHECK_THROWS_AS(zeta_partials(BranchingSkeleton::full_shift(2, 8), DeltaSequence::harmonic(), {1.0}, {16}),
                  std::invalid_argument);
}

TEST_CASE("abscissa brackets") {
  const auto grid = uniform_grid(0.2, 3.0, 0.05);
  SUBCASE("geometric data recovers ln k / ln(1/q)") {
    for (auto [k, q] : {std::pair{2, 0.5}, std::pair{3, 0.5}, std::pair{2, 0.25}, std::pair{4, 0.3}}) {
      CAPTURE(k);
      CAPTURE(q);
      const double s0 = std::log(k) / std::log(1 / q);
      const auto p = zeta_partials(BranchingSkeleton::full_shift(k, 1024), DeltaSequence::geometric(q), grid,
                                   doubling_schedule(16, 1024));
      const auto b = bracket(abscissa_estimate(p), Z);
      REQUIRE(b.estimate());
      CHECK(*b.divergent <= s0 + 1e-9);
      CHECK(*b.convergent >= s0 - 1e-9);
      CHECK(std::abs(*b.estimate() - s0) <= 0.05 + 1e-9);
    }
  }
  SUBCASE("p-series on fibonacci") {
    const auto skel = skeleton_for(parse_spec("sturmian:cf=1"), 4096);
    const auto p = zeta_partials(skel, DeltaSequence::harmonic(), grid, doubling_schedule(64, 4096));
    for (const auto& b : abscissa_estimate(p)) {
      REQUIRE(b.estimate());
      CHECK(std::abs(*b.estimate() - 1.0) <= 0.1);
    }
  }
  SUBCASE("single letter is not applicable") {
    const auto skel = BranchingSkeleton::from_table(LanguageTable::build(WindowSpec{std::string(64, 'a')}, 32));
    const auto p = zeta_partials(skel, DeltaSequence::harmonic(), grid, doubling_schedule(2, 32));
    for (const auto& b : abscissa_estimate(p)) {
      CHECK_FALSE(b.applicable);
      CHECK_FALSE(b.estimate());
    }
  }
  SUBCASE("block classification") {
    CHECK(classify_blocks({5, 1, 0.5, 0.2}, {}) == SeriesClass::convergent);
    CHECK(classify_blocks({5, 1, 1, 1}, {}) == SeriesClass::divergent);
    CHECK(classify_blocks({5, 1, 0.9, 0.8}, {}) == SeriesClass::undecided);
    CHECK(classify_blocks({1, 1}, {}) == SeriesClass::undecided);
  }
}

TEST_CASE("exponent estimates") {
  SUBCASE("fibonacci") {
    const auto [P, g] = complexity_from_skeleton(skeleton_for(parse_spec("sturmian:cf=1"), 2048));
    for (std::size_t n = 0; n < P.size(); ++n) CHECK(P[n] == n + 1);
    const auto r = exponent_estimates(P, g, 2048);
    CHECK(r.beta_lower == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.beta_upper == doctest::Approx(1.0).epsilon(0.01));
    CHECK_FALSE(r.super_polynomial);
    REQUIRE(r.eta_upper);
    CHECK(*r.eta_upper == doctest::Approx(1.0));
    CHECK(*r.eta_lower == doctest::Approx(1.0));
    CHECK(exponent_chain_holds(r, 1.05, 0.1));
  }
  SUBCASE("full binary shift is super-polynomial") {
    const auto [P, g] = complexity_from_skeleton(BranchingSkeleton::full_shift(2, 1024));
    const auto r = exponent_estimates(P, g, 1024);
    CHECK(r.super_polynomial);
    CHECK(r.beta_lower > 50);
  }
  SUBCASE("quadratic complexity") {
    // g(n) = 2n + 1 gives P(n) = (n + 1)^2 - n, an exact exponent 2 model
    std::vector<long double> P{1}, g;
    for (std::size_t n = 0; n < 4096; ++n) {
      g.push_back(2.0L * n + 1);
      P.push_back(P.back() + g.back());
    }
    const auto r = exponent_estimates(P, g, 4096);
    REQUIRE(r.eta_upper);
    CHECK(*r.eta_upper == doctest::Approx(2.0));
    CHECK(r.beta_lower <= *r.eta_upper + 0.1);
    CHECK(r.beta_upper == doctest::Approx(2.0).epsilon(0.05));
  }
  const std::vector<long double> P(10, 1), g(9, 1);
  CHECK_THROWS_AS(exponent_estimates(P, g, 9), InsufficientData);
}
