#include "catmod/catmod.h"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <optional>
#include <string>

#include "catmod/automaton.hpp"
#include "catmod/decomposition.hpp"
#include "catmod/error.hpp"
#include "catmod/oracle.hpp"
#include "catmod/report.hpp"
#include "catmod/selftest.hpp"

struct catmod_dfao {
  explicit catmod_dfao(catmod::Dfao d) : dfao(std::move(d)) {}

  catmod::Dfao dfao;
  // Detected once on first use; a failed detection keeps its message.
  mutable std::once_flag family_once;
  mutable std::optional<catmod::FamilyTable> families;
  mutable std::string family_error;
};

namespace {

thread_local std::string last_error;

catmod_status status_of(catmod::ErrorCode code) {
  using catmod::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::non_invertible:
      return CATMOD_ERR_INVALID_ARGUMENT;
    case ErrorCode::not_prime:
      return CATMOD_ERR_NOT_PRIME;
    case ErrorCode::overflow_range:
      return CATMOD_ERR_OVERFLOW;
    case ErrorCode::state_cap_exceeded:
      return CATMOD_ERR_STATE_CAP;
    case ErrorCode::not_power_series:
    case ErrorCode::no_qualifying_family:
    case ErrorCode::ambiguous_family:
    case ErrorCode::property_violation:
      return CATMOD_ERR_PROPERTY;
  }
  return CATMOD_ERR_INTERNAL;
}

catmod_status fail(catmod_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

/// Runs fn, translating exceptions into status codes.
template <typename Fn>
catmod_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const catmod::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CATMOD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CATMOD_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

catmod::Format to_format(catmod_format f) {
  switch (f) {
    case CATMOD_FORMAT_TEXT: return catmod::Format::text;
    case CATMOD_FORMAT_JSON: return catmod::Format::json;
    case CATMOD_FORMAT_DOT: return catmod::Format::dot;
    case CATMOD_FORMAT_CSV: return catmod::Format::csv;
  }
  throw catmod::Error(catmod::ErrorCode::invalid_argument, "unknown output format");
}

catmod_status deliver(const catmod::Report& report, char** out) {
  *out = duplicate(report.body);
  if (!report.verified) return fail(CATMOD_ERR_PROPERTY, "inline verification failed");
  return CATMOD_OK;
}

const catmod::FamilyTable& family_of(const catmod_dfao* h) {
  std::call_once(h->family_once, [h] {
    try {
      h->families = catmod::detect_constant_family(h->dfao);
    } catch (const catmod::Error& e) {
      h->family_error = e.what();
    }
  });
  if (!h->families) throw catmod::Error(catmod::ErrorCode::property_violation, h->family_error);
  return *h->families;
}

}  // namespace

#define CATMOD_REQUIRE(ptr)                                                    \
  do {                                                                         \
    if ((ptr) == nullptr) return fail(CATMOD_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

extern "C" {

const char* catmod_version(void) { return "1.0.0"; }

const char* catmod_status_string(catmod_status status) {
  switch (status) {
    case CATMOD_OK: return "ok";
    case CATMOD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CATMOD_ERR_NOT_PRIME: return "not a prime >= 5";
    case CATMOD_ERR_STATE_CAP: return "state cap exceeded";
    case CATMOD_ERR_PROPERTY: return "property violation";
    case CATMOD_ERR_OVERFLOW: return "overflow";
    case CATMOD_ERR_NULL_POINTER: return "null pointer";
    case CATMOD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* catmod_last_error(void) { return last_error.c_str(); }

void catmod_string_free(char* s) { std::free(s); }

int catmod_is_valid_prime(uint64_t p) { return p >= 5 && p < (uint64_t{1} << 31) && catmod::is_prime(p) ? 1 : 0; }

catmod_status catmod_catalan_mod(uint64_t n, uint32_t p, uint32_t* out) {
  CATMOD_REQUIRE(out);
  return guarded([&] {
    *out = catmod::catalan_mod(catmod::CatalanIndex{n}, catmod::Prime(p)).value;
    return CATMOD_OK;
  });
}

catmod_status catmod_binomial_mod(uint64_t m, uint64_t k, uint32_t p, uint32_t* out) {
  CATMOD_REQUIRE(out);
  return guarded([&] {
    *out = catmod::lucas_binomial(m, k, catmod::Prime(p)).value;
    return CATMOD_OK;
  });
}

catmod_status catmod_dfao_synthesize(uint32_t p, uint64_t state_cap, catmod_dfao** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::optional<std::uint64_t> cap = state_cap == 0 ? std::nullopt : std::optional(state_cap);
    *out = new catmod_dfao(catmod::synthesize(catmod::Prime(p), cap));
    return CATMOD_OK;
  });
}

catmod_status catmod_dfao_minimize(const catmod_dfao* dfao, catmod_dfao** out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new catmod_dfao(catmod::minimize(dfao->dfao));
    return CATMOD_OK;
  });
}

void catmod_dfao_free(catmod_dfao* dfao) { delete dfao; }

catmod_status catmod_dfao_prime(const catmod_dfao* dfao, uint32_t* out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  *out = dfao->dfao.prime().value();
  return CATMOD_OK;
}

catmod_status catmod_dfao_state_count(const catmod_dfao* dfao, size_t* out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  *out = dfao->dfao.state_count();
  return CATMOD_OK;
}

catmod_status catmod_dfao_eval(const catmod_dfao* dfao, uint64_t n, uint32_t* out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  return guarded([&] {
    *out = catmod::eval(dfao->dfao, n).value;
    return CATMOD_OK;
  });
}

catmod_status catmod_dfao_constant_family_size(const catmod_dfao* dfao, size_t* out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  return guarded([&] {
    *out = family_of(dfao).constant_family().size();
    return CATMOD_OK;
  });
}

catmod_status catmod_dfao_transfer_counts(const catmod_dfao* dfao, unsigned k, uint64_t* counts, size_t len) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(counts);
  return guarded([&] {
    if (len < dfao->dfao.prime().value()) return fail(CATMOD_ERR_INVALID_ARGUMENT, "counts buffer shorter than p");
    const auto result = catmod::transfer_counts(dfao->dfao, k);
    std::copy(result.begin(), result.end(), counts);
    return CATMOD_OK;
  });
}

catmod_status catmod_dfao_emit(const catmod_dfao* dfao, catmod_format format, char** out) {
  CATMOD_REQUIRE(dfao);
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = duplicate(catmod::emit_dfao(dfao->dfao, to_format(format)));
    return CATMOD_OK;
  });
}

catmod_status catmod_decompose(uint32_t p, uint32_t r, uint32_t* exponents, size_t len) {
  CATMOD_REQUIRE(exponents);
  return guarded([&] {
    const catmod::Prime prime(p);
    if (len < prime.half() + 1) return fail(CATMOD_ERR_INVALID_ARGUMENT, "exponent buffer shorter than (p+1)/2");
    const auto e = catmod::decompose_residue(catmod::Residue{r}, prime);
    std::copy(e.exponents().begin(), e.exponents().end(), exponents);
    return CATMOD_OK;
  });
}

catmod_status catmod_verify_decomposition(uint32_t p, uint32_t r, const uint32_t* exponents, size_t len,
                                          int* verified) {
  CATMOD_REQUIRE(exponents);
  CATMOD_REQUIRE(verified);
  return guarded([&] {
    const catmod::Prime prime(p);
    if (len != prime.half() + 1) return fail(CATMOD_ERR_INVALID_ARGUMENT, "exponent vector must have (p+1)/2 entries");
    catmod::ExponentVector e(prime);
    for (std::uint32_t d = 0; d < len; ++d) e.add(d, exponents[d]);
    *verified = catmod::verify_decomposition(e, catmod::fp_reduce(r, prime), prime) ? 1 : 0;
    return CATMOD_OK;
  });
}

catmod_status catmod_report_coverage(uint32_t p, uint64_t bound, catmod_format format, char** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const std::optional<std::uint64_t> b = bound == 0 ? std::nullopt : std::optional(bound);
    return deliver(catmod::coverage_report(catmod::Prime(p), b, to_format(format)), out);
  });
}

catmod_status catmod_report_decompose(uint32_t p, uint64_t r, catmod_format format, char** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { return deliver(catmod::decompose_report(catmod::Prime(p), r, to_format(format)), out); });
}

catmod_status catmod_report_graph(uint32_t p, int with_walk, catmod_format format, char** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded(
      [&] { return deliver(catmod::graph_report(catmod::Prime(p), with_walk != 0, to_format(format)), out); });
}

catmod_status catmod_report_density(uint32_t p, unsigned kmax, catmod_format format, char** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { return deliver(catmod::density_report(catmod::Prime(p), kmax, to_format(format)), out); });
}

catmod_status catmod_selftest(const uint32_t* primes, size_t count, uint64_t n_bound, uint64_t seed, char** out) {
  CATMOD_REQUIRE(out);
  *out = nullptr;
  if (count > 0) CATMOD_REQUIRE(primes);
  return guarded([&] {
    catmod::SelftestOptions options;
    for (size_t i = 0; i < count; ++i) options.primes.emplace_back(primes[i]);
    options.n_bound = n_bound;
    options.seed = seed;
    const catmod::SelftestResult result = catmod::run_selftest(options);
    *out = duplicate(result.summary);
    if (!result.all_passed) return fail(CATMOD_ERR_PROPERTY, "selftest failures");
    return CATMOD_OK;
  });
}

}  // extern "C"
