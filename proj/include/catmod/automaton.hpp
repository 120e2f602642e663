#pragma once

// DFAO for n -> C_n mod p, synthesized by closing the Catalan generating
// function under the Cartier operators Lambda_0 .. Lambda_{p-1}.
//
// A state is the formal power series (U + V G) / (x^a D^b) with
// G = sqrt(1 - 4x), G(0) = 1, and D = 1 - 4x. Because {1, G} is a basis of
// the quadratic extension, the lowest-terms quadruple (U, V, a, b) is unique,
// so states compare and hash componentwise.
//
// Reading digit r applies Lambda_r; digits are consumed least significant
// first and the output of a state is the constant term of its series.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

struct AutomatonState {
  FpPolynomial u;
  FpPolynomial v;
  std::uint32_t a = 0;  // power of x in the denominator
  std::uint32_t b = 0;  // power of D = 1 - 4x in the denominator

  bool is_zero() const noexcept { return u.is_zero() && v.is_zero(); }

  friend bool operator==(const AutomatonState&, const AutomatonState&) = default;
};

struct AutomatonStateHash {
  std::size_t operator()(const AutomatonState& s) const noexcept;
};

/// Lowest terms: divide U and V jointly by x while a > 0, then by D while b > 0.
AutomatonState canonicalize(AutomatonState s, Prime p);

/// C(x) = (1 - G) / (2x), i.e. U = 1/2, V = -1/2, a = 1, b = 0.
AutomatonState initial_state(Prime p);

/// Canonical form of Lambda_r applied to the series of s.
AutomatonState cartier_transition(const AutomatonState& s, std::uint32_t r, Prime p);

/// Constant term of the series of s. Throws ErrorCode::not_power_series when
/// the representation has a surviving negative-order term.
Residue output(const AutomatonState& s, Prime p);

class Dfao {
 public:
  Dfao(Prime p, std::vector<AutomatonState> states, std::vector<std::uint32_t> delta,
       std::vector<Residue> outputs, std::uint32_t q0);

  Prime prime() const noexcept { return p_; }
  std::size_t state_count() const noexcept { return outputs_.size(); }
  std::uint32_t initial() const noexcept { return q0_; }

  std::uint32_t next(std::uint32_t state, std::uint32_t digit) const {
    return delta_[std::size_t{state} * p_.value() + digit];
  }
  Residue out(std::uint32_t state) const { return outputs_[state]; }
  const AutomatonState& state(std::uint32_t index) const { return states_[index]; }

  /// State reached from `from` after reading `digits` in order.
  std::uint32_t run(std::uint32_t from, std::span<const std::uint32_t> digits) const;

 private:
  Prime p_;
  std::vector<AutomatonState> states_;
  std::vector<std::uint32_t> delta_;  // row-major [state][digit]
  std::vector<Residue> outputs_;
  std::uint32_t q0_;
};

inline std::uint64_t default_state_cap(Prime p) {
  return 50ULL * p.value() * p.value();
}

/// Breadth-first Cartier closure from initial_state; states are numbered in
/// discovery order with digits explored 0..p-1. Throws
/// ErrorCode::state_cap_exceeded rather than truncating.
Dfao synthesize(Prime p, std::optional<std::uint64_t> state_cap = std::nullopt);

/// Output after reading the base-p digits of n from q0 (n = 0 reads [0]).
Residue eval(const Dfao& dfao, std::uint64_t n);
Residue eval_digits(const Dfao& dfao, std::span<const std::uint32_t> digits);

/// Moore partition refinement on output-labelled states, renumbered
/// breadth-first from the initial state. Each block keeps the state of its
/// lowest original index as representative.
Dfao minimize(const Dfao& dfao);

struct FamilyMember {
  std::uint32_t state;
  Residue label;
};

/// Scalar-multiple classes of the non-zero states. Member s with label c has
/// series(s) = c * series(class base), the base being the projectively
/// normalized quadruple.
class FamilyTable {
 public:
  FamilyTable(std::vector<std::vector<FamilyMember>> families, std::size_t constant_id,
              std::size_t state_count);

  const std::vector<std::vector<FamilyMember>>& families() const noexcept { return families_; }
  std::size_t constant_family_id() const noexcept { return constant_id_; }
  const std::vector<FamilyMember>& constant_family() const { return families_[constant_id_]; }

  /// Constant-family member carrying `label`, if any.
  std::optional<std::uint32_t> constant_member(Residue label) const;
  /// Label of `state` when it belongs to the constant family.
  std::optional<Residue> constant_label(std::uint32_t state) const;

 private:
  std::vector<std::vector<FamilyMember>> families_;
  std::size_t constant_id_;
  std::vector<std::optional<Residue>> constant_label_;  // by state index
};

/// Designates the unique family that holds a label-1 member and on which
/// every digit d <= (p-1)/2 acts as multiplication by binom(2d, d).
/// Throws ErrorCode::no_qualifying_family or ErrorCode::ambiguous_family.
FamilyTable detect_constant_family(const Dfao& dfao);

/// The diagonal operator Lambda_{d,d} on a constant-family member: it reads
/// the single base-p digit d of n, so it is one transition on digit d. The
/// target must be the member labelled c * binom(2d, d); anything else throws
/// ErrorCode::property_violation.
std::uint32_t digit_pair_action(const Dfao& dfao, const FamilyTable& families,
                                std::uint32_t member, std::uint32_t d);

/// count[r] = #{ n < p^k : C_n = r mod p }, by dynamic programming over
/// length-k digit strings.
std::vector<std::uint64_t> transfer_counts(const Dfao& dfao, unsigned k);

/// Digit strings w1, w2, w3 (least significant first) such that every
/// w1 w2^j w3 spells a distinct n with C_n = r. w3 is non-empty and ends in a
/// non-zero digit, so the strings carry no leading zeros.
struct PumpingCertificate {
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> pump;
  std::vector<std::uint32_t> suffix;
};

PumpingCertificate pumping_certificate(const Dfao& dfao, Residue r);
std::vector<std::uint32_t> pumped_digits(const PumpingCertificate& cert, unsigned j);

}  // namespace catmod
