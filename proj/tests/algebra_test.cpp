#include <random>

#include "catmod/algebra.hpp"
#include "catmod/error.hpp"
#include "doctest.h"
#include "support/exact.hpp"

using namespace catmod;
using catmod::testing::exact_binomial;
using catmod::testing::primes_between;
using catmod::testing::trial_prime;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected catmod::Error");
  return ErrorCode::property_violation;
}

FpPolynomial random_poly(std::mt19937_64& rng, std::size_t max_len, Prime p) {
  std::vector<std::uint32_t> c(rng() % (max_len + 1));
  for (auto& x : c) x = static_cast<std::uint32_t>(rng() % p.value());
  while (!c.empty() && c.back() == 0) c.pop_back();
  return FpPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK(Prime(5).value() == 5);
  CHECK(Prime(199).half() == 99);
  CHECK(code_of([] { Prime(4); }) == ErrorCode::not_prime);
  CHECK(code_of([] { Prime(3); }) == ErrorCode::not_prime);
  CHECK(code_of([] { Prime(2); }) == ErrorCode::not_prime);
  CHECK(code_of([] { Prime(1); }) == ErrorCode::not_prime);
  CHECK(code_of([] { Prime(25); }) == ErrorCode::not_prime);
  CHECK(code_of([] { Prime(4294967311ULL); }) == ErrorCode::not_prime);
  CHECK(Prime(2147483647).value() == 2147483647u);
}

TEST_CASE("is_prime agrees with trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) CHECK_MESSAGE(is_prime(n) == trial_prime(n), n);
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(18446744073709551615ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("field arithmetic examples") {
  const Prime p(7);
  CHECK(fp_inverse(Residue{3}, p) == Residue{5});
  CHECK(fp_add(Residue{6}, Residue{4}, p) == Residue{3});
  CHECK(fp_sub(Residue{2}, Residue{5}, p) == Residue{4});
  CHECK(fp_mul(Residue{6}, Residue{6}, p) == Residue{1});
  CHECK(fp_reduce(-1, p) == Residue{6});
  CHECK(fp_reduce(-15, p) == Residue{6});
  CHECK(fp_pow(Residue{0}, 0, p) == Residue{1});
  CHECK(code_of([&] { fp_inverse(Residue{0}, p); }) == ErrorCode::non_invertible);
}

TEST_CASE("Fermat and double inverse hold for every unit, p <= 199") {
  for (std::uint32_t q : primes_between(5, 199)) {
    const Prime p(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      const Residue r{a};
      REQUIRE(fp_pow(r, q - 1, p) == Residue{1});
      REQUIRE(fp_inverse(fp_inverse(r, p), p) == r);
      REQUIRE(fp_mul(r, fp_inverse(r, p), p) == Residue{1});
    }
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(1).empty());
  CHECK(factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(97) == Factorization{{97, 1}});
  CHECK_THROWS_AS(factorize(0), Error);
  for (std::uint64_t n = 1; n < 3000; ++n) {
    std::uint64_t back = 1;
    std::uint64_t last = 0;
    for (const auto& [q, e] : factorize(n)) {
      REQUIRE(trial_prime(q));
      REQUIRE(q > last);
      last = q;
      for (std::uint32_t i = 0; i < e; ++i) back *= q;
    }
    REQUIRE(back == n);
  }
}

TEST_CASE("binomial_valuation examples") {
  CHECK(binomial_valuation(2, 6, 3) == 2);
  CHECK(binomial_valuation(3, 6, 3) == 0);
  CHECK(binomial_valuation(5, 6, 3) == 1);
  CHECK(binomial_valuation(7, 8, 4) == 1);
  CHECK(code_of([] { binomial_valuation(2, 3, 5); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { binomial_valuation(4, 6, 3); }) == ErrorCode::not_prime);
}

TEST_CASE("Kummer valuation matches exact binomials for m <= 60") {
  for (std::uint32_t q : primes_between(2, 60)) {
    for (std::uint64_t m = 0; m <= 60; ++m) {
      for (std::uint64_t k = 0; k <= m; ++k) {
        auto b = exact_binomial(m, k);
        std::uint32_t v = 0;
        while (b % q == 0) {
          b /= q;
          ++v;
        }
        REQUIRE_MESSAGE(binomial_valuation(q, m, k) == v, "q=" << q << " m=" << m << " k=" << k);
      }
    }
  }
}

TEST_CASE("digit conversions") {
  CHECK(to_digits(0, 5) == std::vector<std::uint32_t>{0});
  CHECK(to_digits(29, 5) == std::vector<std::uint32_t>{4, 0, 1});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = rng();
    const std::uint32_t base = 2 + static_cast<std::uint32_t>(rng() % 300);
    REQUIRE(from_digits(to_digits(n, base), base) == n);
  }
  const std::vector<std::uint32_t> big(30, 4);
  CHECK_FALSE(from_digits(big, 5).has_value());
}

TEST_CASE("polynomials stay normalized") {
  const Prime p(7);
  const auto f = FpPolynomial::from_integers({1, 2, 7, 14}, p);
  CHECK(f.size() == 2);
  CHECK(FpPolynomial::from_integers({7, 0, -7}, p).is_zero());
  CHECK(poly_add(f, poly_scale(f, Residue{6}, p), p).is_zero());
  CHECK(poly_scale(f, Residue{0}, p).is_zero());
  CHECK(poly_shift(f, 3).coefficient(3) == Residue{1});
  CHECK(poly_shift(FpPolynomial{}, 3).is_zero());
  CHECK(hash_value(f) == hash_value(FpPolynomial::from_integers({8, 9}, p)));
}

TEST_CASE("poly_mul is commutative and associative") {
  for (std::uint32_t q : {5u, 7u, 13u}) {
    const Prime p(q);
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_poly(rng, 12, p);
      const auto g = random_poly(rng, 12, p);
      const auto h = random_poly(rng, 12, p);
      REQUIRE(poly_mul(f, g, p) == poly_mul(g, f, p));
      REQUIRE(poly_mul(poly_mul(f, g, p), h, p) == poly_mul(f, poly_mul(g, h, p), p));
      REQUIRE(poly_mul(f, poly_add(g, h, p), p) == poly_add(poly_mul(f, g, p), poly_mul(f, h, p), p));
    }
  }
}

TEST_CASE("Cartier pieces reassemble the polynomial") {
  for (std::uint32_t q : {5u, 7u, 11u}) {
    const Prime p(q);
    std::mt19937_64 rng(100 + q);
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_poly(rng, 60, p);
      FpPolynomial back;
      for (std::uint32_t r = 0; r < q; ++r) {
        const auto piece = poly_cartier(r, f, p);
        std::vector<std::uint32_t> spread(piece.size() == 0 ? 0 : (piece.size() - 1) * q + 1, 0);
        for (std::size_t i = 0; i < piece.size(); ++i) spread[i * q] = piece.coefficient(i).value;
        back = poly_add(back, poly_shift(FpPolynomial(spread), r), p);
      }
      REQUIRE(back == f);
    }
  }
  CHECK(code_of([] { poly_cartier(5, FpPolynomial{}, Prime(5)); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Cartier pulls out p-th powers") {
  const Prime p(5);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_poly(rng, 6, p);
    const auto h = random_poly(rng, 30, p);
    auto gp = FpPolynomial::constant(Residue{1});
    for (int i = 0; i < 5; ++i) gp = poly_mul(gp, g, p);
    for (std::uint32_t r = 0; r < 5; ++r) {
      REQUIRE(poly_cartier(r, poly_mul(gp, h, p), p) == poly_mul(g, poly_cartier(r, h, p), p));
    }
  }
}

TEST_CASE("powers of 1 - 4x and exact division") {
  for (std::uint32_t q : {5u, 7u, 13u}) {
    const Prime p(q);
    const auto d = FpPolynomial::from_integers({1, -4}, p);
    auto expected = FpPolynomial::constant(Residue{1});
    for (std::uint64_t k = 0; k < 3 * q + 2; ++k) {
      REQUIRE(poly_d_power(k, p) == expected);
      if (k > 0) {
        REQUIRE(poly_divide_by_d(expected, p) == poly_d_power(k - 1, p));
      }
      expected = poly_mul(expected, d, p);
    }
    CHECK_FALSE(poly_divide_by_d(FpPolynomial::constant(Residue{1}), p).has_value());
  }
  const Prime p(5);
  CHECK(poly_divide_by_x(FpPolynomial::from_integers({0, 3, 1}, p)) == FpPolynomial::from_integers({3, 1}, p));
  CHECK_FALSE(poly_divide_by_x(FpPolynomial::from_integers({1, 3}, p)).has_value());
}
