#include <random>

#include "catmod/error.hpp"
#include "catmod/oracle.hpp"
#include "doctest.h"
#include "support/exact.hpp"

using namespace catmod;
namespace t = catmod::testing;

TEST_CASE("catalan_exact matches the closed form for n <= 35") {
  for (std::uint64_t n = 0; n <= 35; ++n) REQUIRE(catalan_exact(n) == static_cast<std::uint64_t>(t::exact_catalan(n)));
  CHECK(catalan_exact(35) == 3116285494907301262ULL);
  CHECK_THROWS_AS(catalan_exact(36), Error);
}

TEST_CASE("Lucas binomials match exact values") {
  CHECK(lucas_binomial(8, 4, Prime(5)) == Residue{0});
  CHECK(lucas_binomial(10, 5, Prime(7)) == Residue{0});
  CHECK(lucas_binomial(3, 5, Prime(7)) == Residue{0});
  for (std::uint32_t q : {5u, 7u, 11u, 13u, 101u}) {
    for (std::uint64_t m = 0; m <= 120; ++m) {
      for (std::uint64_t k = 0; k <= m; ++k) {
        REQUIRE(lucas_binomial(m, k, Prime(q)).value == t::mod(t::exact_binomial(m, k), q));
      }
    }
  }
}

TEST_CASE("oracle agrees with exact Catalan numbers for n <= 60") {
  for (std::uint32_t q : {5u, 7u, 11u, 13u, 101u}) {
    for (std::uint64_t n = 0; n <= 60; ++n) {
      REQUIRE_MESSAGE(catalan_mod(CatalanIndex{n}, Prime(q)).value == t::mod(t::exact_catalan(n), q),
                      "p=" << q << " n=" << n);
    }
  }
}

TEST_CASE("oracle agrees with the convolution recurrence") {
  for (std::uint32_t q : {5u, 7u, 11u, 13u, 17u}) {
    const auto conv = t::convolution_catalan(q, 2500);
    const auto lucas = catalan_stream(Prime(q), conv.size());
    for (std::size_t n = 0; n < conv.size(); ++n) REQUIRE(lucas[n].value == conv[n]);
  }
}

TEST_CASE("stream examples") {
  const auto s5 = catalan_stream(Prime(5), 5);
  CHECK(s5 == std::vector<Residue>{{1}, {1}, {2}, {0}, {4}});
  CHECK(catalan_stream(Prime(7), 11).back() == Residue{3});
  CHECK(catalan_mod(CatalanIndex{29}, Prime(5)) == Residue{3});
  CHECK(catalan_range(Prime(5), 3, 3).empty());
  const auto tail = catalan_range(Prime(13), 1000, 1100);
  for (std::uint64_t n = 1000; n < 1100; ++n) CHECK(tail[n - 1000] == catalan_mod(CatalanIndex{n}, Prime(13)));
}

TEST_CASE("binom(2n, n) vanishes mod p exactly when a digit of n exceeds (p-1)/2") {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {5u, 7u, 13u}) {
    for (int i = 0; i < 5000; ++i) {
      const std::uint64_t n = rng() >> 2;
      bool big_digit = false;
      for (std::uint64_t m = n; m > 0; m /= q) big_digit |= (m % q) > (q - 1) / 2;
      REQUIRE((lucas_binomial(2 * n, n, Prime(q)) == Residue{0}) == big_digit);
    }
  }
}

TEST_CASE("catalan_mod rejects indices whose double overflows") {
  CHECK_THROWS_AS(catalan_mod(CatalanIndex{1ULL << 63}, Prime(5)), Error);
  CHECK_NOTHROW(catalan_mod(CatalanIndex{(1ULL << 63) - 1}, Prime(5)));
}
