#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "paw/constraints.hpp"
#include "paw/error.hpp"

using namespace paw;

namespace {

using PairList = std::vector<std::pair<std::int64_t, std::int64_t>>;

PairList as_list(const PairFamily& f) {
  PairList out;
  for (const auto& p : f.pairs) out.emplace_back(p.m_plus_J, p.n);
  return out;
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected paw::Error");
  return ErrorCode::InvalidArgument;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

}  // namespace

TEST_CASE("reduce_ratio") {
  CHECK(reduce_ratio(parse_rational("3/4")) == ReducedRatio{1, 2});
  CHECK(reduce_ratio(parse_rational("1/2")) == ReducedRatio{0, 1});
  CHECK(reduce_ratio(parse_rational("6/8")) == ReducedRatio{1, 2});
  CHECK(code_of([] { reduce_ratio(parse_rational("2/3")); }) == ErrorCode::NoOddOverEvenForm);
  CHECK(code_of([] { reduce_ratio(parse_rational("3/5")); }) == ErrorCode::NoOddOverEvenForm);
  CHECK(code_of([] { reduce_ratio(parse_rational("0/5")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { reduce_ratio(parse_rational("-1/2")); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("2/3 has no odd/even solutions: brute-force oracle") {
  // 3(2 i_n + 1) = 4 i_m has no solution with i_n, i_m <= 1000.
  bool found = false;
  for (int i_n = 0; i_n <= 1000 && !found; ++i_n) {
    for (int i_m = 1; i_m <= 1000; ++i_m) {
      if (Rational(2 * i_n + 1, 2 * i_m) == Rational(2, 3)) found = true;
    }
  }
  CHECK_FALSE(found);
}

TEST_CASE("reduce_ratio round-trips odd/even fractions") {
  for (std::int64_t i_n = 0; i_n < 20; ++i_n) {
    for (std::int64_t i_m = 1; i_m < 20; ++i_m) {
      if (std::gcd(2 * i_n + 1, 2 * i_m) != 1) continue;
      const ReducedRatio r{i_n, i_m};
      CHECK(reduce_ratio(r.kappa_r()) == r);
    }
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  for (const char* bad : {"", "3/", "/4", "a/b", "3/0", "3/-4", "1.5", "3//4"}) {
    CHECK_MESSAGE(code_of([&] { parse_rational(bad); }) == ErrorCode::MalformedRational, bad);
  }
}

TEST_CASE("enumerate_pairs worked examples") {
  const auto r34 = reduce_ratio(parse_rational("3/4"));
  // J = 3: (m=-1, n=1), (m=3, n=4)
  const auto f = enumerate_pairs(r34, 6);
  REQUIRE(f.pairs.size() == 2);
  CHECK(f.pairs[0] == AllowedPair{2, 1, 0});
  CHECK(f.pairs[1] == AllowedPair{6, 4, 1});
  CHECK(f.pairs[0].m(6) == -1.0);
  CHECK(f.pairs[1].two_m(6) == 6);
  CHECK(enumerate_pairs(r34, 1).pairs.empty());

  // κr = 1/2, J = 2: scan of n + 1/2 = (m + J)/2 gives (m=-1, n=0), (m=1, n=1)
  PairList scan;
  for (std::int64_t k = 0; k <= 4; ++k) {
    for (std::int64_t n = 0; n <= 10; ++n) {
      if (2 * (2 * n + 1) == 2 * k) scan.emplace_back(k, n);
    }
  }
  CHECK(scan == PairList{{1, 0}, {3, 1}});
  CHECK(as_list(enumerate_pairs(reduce_ratio(parse_rational("1/2")), 4)) == scan);
}

TEST_CASE("brute_force_pairs worked examples") {
  const auto k = parse_rational("3/4");
  CHECK(brute_force_pairs(k, 6, 10) == PairList{{2, 1}, {6, 4}});
  CHECK(brute_force_pairs(k, 2, 10) == PairList{{2, 1}});   // J = 1: (m=1, n=1)
  CHECK(brute_force_pairs(k, 5, 10) == PairList{{2, 1}});   // J = 5/2: (m=-1/2, n=1)
  CHECK(brute_force_pairs(k, 1, 10).empty());
}

TEST_CASE("entanglement admissibility") {
  const auto r34 = reduce_ratio(parse_rational("3/4"));
  CHECK(is_entanglement_admissible(enumerate_pairs(r34, 6)));
  CHECK_FALSE(is_entanglement_admissible(enumerate_pairs(r34, 4)));
  const auto r12 = reduce_ratio(parse_rational("1/2"));
  const auto f = enumerate_pairs(r12, 3);
  CHECK(is_entanglement_admissible(f));
  CHECK(as_list(f) == brute_force_pairs(parse_rational("1/2"), 3, 10));
  CHECK(as_list(f) == PairList{{1, 0}, {3, 1}});  // (m=-1/2, n=0), (m=3/2, n=1)
}

TEST_CASE("closed form agrees with brute force, count formula and threshold") {
  for (std::int64_t den = 2; den <= 12; den += 2) {
    for (std::int64_t num = 1; num <= 11; num += 2) {
      if (std::gcd(num, den) != 1) continue;
      const Rational kr(num, den);
      const auto ratio = reduce_ratio(kr);
      for (int two_J = 1; two_J <= 40; ++two_J) {
        const auto family = enumerate_pairs(ratio, two_J);
        const std::int64_t n_max = floor_div(num * two_J, den) + 2;
        REQUIRE(as_list(family) == brute_force_pairs(kr, two_J, n_max));

        // |pairs| = floor(J/i_m − 1/2) + 1 when >= 0, else 0, evaluated exactly
        // J/i_m − 1/2 = (2J − i_m) / (2 i_m)
        const std::int64_t fl = floor_div(two_J - ratio.i_m, 2 * ratio.i_m);
        CHECK(family.pairs.size() == static_cast<std::size_t>(std::max<std::int64_t>(fl + 1, 0)));
        CHECK(is_entanglement_admissible(family) == entanglement_threshold_met(ratio, two_J));
        for (const auto& p : family.pairs) {
          CHECK(satisfies_constraint(kr, p.m_plus_J, p.n));
          CHECK(p.m_plus_J == ratio.i_m * (2 * p.l + 1));
          CHECK(p.n == ratio.i_n * (2 * p.l + 1) + p.l);
          CHECK(p.m_plus_J <= two_J);
        }
      }
    }
  }
}

TEST_CASE("coupling ratios") {
  // κ = 3/4, r = 2/3 at M = 170 means J = 255 and ε/ω = 1/2
  const auto c = CouplingRatios::from(parse_rational("1/2"), 510, 170);
  CHECK(c.kappa == Rational(3, 4));
  CHECK(c.r == Rational(2, 3));
  CHECK(c.kappa_r == c.kappa * c.r);
  CHECK(c.kappa_r_J == c.kappa_r * Rational(255));
  CHECK(code_of([] { CouplingRatios::from(Rational(0), 2, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ClockSpec(0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { OscillatorSpec(0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(ClockSpec(6, 0.75).F() == doctest::Approx(2.25));
}
