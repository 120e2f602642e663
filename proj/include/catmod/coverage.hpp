#pragma once

// No-forbidden-residue and infinitude checks: minimal witnesses per residue,
// pumping certificates, and the zero-density proxy.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "catmod/algebra.hpp"
#include "catmod/automaton.hpp"

namespace catmod {

struct Witness {
  std::uint64_t n;
  std::vector<std::uint32_t> digits;  // least significant first
};

class CoverageTable {
 public:
  explicit CoverageTable(Prime p) : p_(p), witness_(p.value()) {}

  Prime prime() const noexcept { return p_; }
  const std::optional<Witness>& witness(Residue r) const { return witness_.at(r.value); }
  void set_witness(Residue r, std::uint64_t n);

  bool complete() const;
  std::vector<Residue> missing() const;
  /// Largest witness; throws if the table is empty.
  std::uint64_t max_witness() const;

  friend bool operator==(const CoverageTable&, const CoverageTable&);

 private:
  Prime p_;
  std::vector<std::optional<Witness>> witness_;
};

struct ScanOptions {
  /// Scan n < bound. Without a bound the scan covers p^4 and extends by a
  /// factor p up to p^6 before reporting a partial table.
  std::optional<std::uint64_t> bound;
  unsigned threads = 1;
};

/// First occurrence of every residue by a linear oracle scan. Output does not
/// depend on the thread count.
CoverageTable coverage_scan(Prime p, const ScanOptions& options = {});

/// Minimal witnesses read off the automaton: shortest digit string without
/// leading zeros, ties broken by numeric value.
CoverageTable coverage_bfs(const Dfao& dfao);

struct ResidueInfinitude {
  Residue residue;
  PumpingCertificate certificate;
  std::uint64_t witnesses_below_p6;
};

/// One verified pumping certificate per residue plus the count of witnesses
/// below p^6. Throws ErrorCode::property_violation when a residue has fewer
/// than 10 witnesses or no certificate.
std::vector<ResidueInfinitude> infinitude_report(const Dfao& dfao);

struct Fraction {
  std::uint64_t num;
  std::uint64_t den;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Reduced fraction num / den.
Fraction make_fraction(std::uint64_t num, std::uint64_t den);
bool less_than(const Fraction& a, const Fraction& b);

/// fraction_k = #{ n < p^k : C_n = 0 mod p } / p^k for k = 1..kmax.
std::vector<Fraction> zero_density(const Dfao& dfao, unsigned kmax);
bool strictly_increasing(std::span<const Fraction> fractions);

struct GlsBoundReport {
  std::uint64_t max_witness;
  double bound;  // p^(13/2) (log p)^6
  double ratio;
  bool within;
};

GlsBoundReport gls_bound_report(Prime p, const CoverageTable& table);

}  // namespace catmod
