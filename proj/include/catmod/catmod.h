/*
 * catmod C API.
 *
 * Catalan numbers modulo a prime p >= 5: the Cartier-closure automaton for
 * n -> C_n mod p, and verified reports on residue coverage, central-binomial
 * decompositions, the constant-state graph and the density of zeros.
 *
 * Every function returns a catmod_status. On failure the thread-local message
 * returned by catmod_last_error() describes the cause. Strings handed out by
 * the library are NUL-terminated and must be released with catmod_string_free.
 */
#ifndef CATMOD_CATMOD_H
#define CATMOD_CATMOD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CATMOD_BUILDING_LIBRARY)
#    define CATMOD_API __declspec(dllexport)
#  else
#    define CATMOD_API __declspec(dllimport)
#  endif
#else
#  define CATMOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum catmod_status {
  CATMOD_OK = 0,
  CATMOD_ERR_INVALID_ARGUMENT = 1, /* includes zero residues where a unit is required */
  CATMOD_ERR_NOT_PRIME = 2,        /* p is not a prime in [5, 2^31) */
  CATMOD_ERR_STATE_CAP = 3,        /* automaton closure exceeded the state cap */
  CATMOD_ERR_PROPERTY = 4,         /* a verification failed */
  CATMOD_ERR_OVERFLOW = 5,
  CATMOD_ERR_NULL_POINTER = 6,
  CATMOD_ERR_INTERNAL = 7
} catmod_status;

typedef enum catmod_format {
  CATMOD_FORMAT_TEXT = 0,
  CATMOD_FORMAT_JSON = 1,
  CATMOD_FORMAT_DOT = 2,
  CATMOD_FORMAT_CSV = 3
} catmod_format;

/* Opaque synthesized automaton. Immutable; safe to share across threads. */
typedef struct catmod_dfao catmod_dfao;

CATMOD_API const char* catmod_version(void);
CATMOD_API const char* catmod_status_string(catmod_status status);
/* Message of the last failure on the calling thread ("" if none). */
CATMOD_API const char* catmod_last_error(void);
CATMOD_API void catmod_string_free(char* s);

/* 1 when p is a prime in [5, 2^31), else 0. */
CATMOD_API int catmod_is_valid_prime(uint64_t p);

/* Oracle (Lucas' theorem). */
CATMOD_API catmod_status catmod_catalan_mod(uint64_t n, uint32_t p, uint32_t* out);
CATMOD_API catmod_status catmod_binomial_mod(uint64_t m, uint64_t k, uint32_t p, uint32_t* out);

/* Automaton. state_cap = 0 selects the default 50 p^2. */
CATMOD_API catmod_status catmod_dfao_synthesize(uint32_t p, uint64_t state_cap, catmod_dfao** out);
CATMOD_API catmod_status catmod_dfao_minimize(const catmod_dfao* dfao, catmod_dfao** out);
CATMOD_API void catmod_dfao_free(catmod_dfao* dfao);
CATMOD_API catmod_status catmod_dfao_prime(const catmod_dfao* dfao, uint32_t* out);
CATMOD_API catmod_status catmod_dfao_state_count(const catmod_dfao* dfao, size_t* out);
CATMOD_API catmod_status catmod_dfao_eval(const catmod_dfao* dfao, uint64_t n, uint32_t* out);
/* Size of the designated constant family; CATMOD_ERR_PROPERTY if none qualifies. */
CATMOD_API catmod_status catmod_dfao_constant_family_size(const catmod_dfao* dfao, size_t* out);
/* counts must hold p entries; counts[r] = #{n < p^k : C_n = r mod p}. */
CATMOD_API catmod_status catmod_dfao_transfer_counts(const catmod_dfao* dfao, unsigned k, uint64_t* counts,
                                                     size_t len);
CATMOD_API catmod_status catmod_dfao_emit(const catmod_dfao* dfao, catmod_format format, char** out);

/* Decomposition. exponents must hold (p+1)/2 entries, indexed by d. */
CATMOD_API catmod_status catmod_decompose(uint32_t p, uint32_t r, uint32_t* exponents, size_t len);
CATMOD_API catmod_status catmod_verify_decomposition(uint32_t p, uint32_t r, const uint32_t* exponents, size_t len,
                                                     int* verified);

/*
 * Reports. On CATMOD_OK or CATMOD_ERR_PROPERTY *out holds the rendered report;
 * CATMOD_ERR_PROPERTY means some inline verification failed.
 * bound = 0 selects the default scan schedule (p^4, extended up to p^6).
 */
CATMOD_API catmod_status catmod_report_coverage(uint32_t p, uint64_t bound, catmod_format format, char** out);
CATMOD_API catmod_status catmod_report_decompose(uint32_t p, uint64_t r, catmod_format format, char** out);
CATMOD_API catmod_status catmod_report_graph(uint32_t p, int with_walk, catmod_format format, char** out);
CATMOD_API catmod_status catmod_report_density(uint32_t p, unsigned kmax, catmod_format format, char** out);
CATMOD_API catmod_status catmod_selftest(const uint32_t* primes, size_t count, uint64_t n_bound, uint64_t seed,
                                         char** out);

#ifdef __cplusplus
}
#endif

#endif /* CATMOD_CATMOD_H */
