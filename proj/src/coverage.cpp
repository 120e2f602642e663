#include "catmod/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "catmod/error.hpp"
#include "catmod/oracle.hpp"

namespace catmod {

void CoverageTable::set_witness(Residue r, std::uint64_t n) {
  witness_.at(r.value) = Witness{n, to_digits(n, p_.value())};
}

bool CoverageTable::complete() const {
  return std::all_of(witness_.begin(), witness_.end(), [](const auto& w) { return w.has_value(); });
}

std::vector<Residue> CoverageTable::missing() const {
  std::vector<Residue> out;
  for (std::uint32_t r = 0; r < witness_.size(); ++r) {
    if (!witness_[r]) out.push_back(Residue{r});
  }
  return out;
}

std::uint64_t CoverageTable::max_witness() const {
  std::optional<std::uint64_t> best;
  for (const auto& w : witness_) {
    if (w) best = std::max(best.value_or(0), w->n);
  }
  if (!best) throw Error(ErrorCode::invalid_argument, "coverage table has no witnesses");
  return *best;
}

bool operator==(const CoverageTable& a, const CoverageTable& b) {
  if (!(a.p_ == b.p_)) return false;
  for (std::size_t r = 0; r < a.witness_.size(); ++r) {
    const auto& x = a.witness_[r];
    const auto& y = b.witness_[r];
    if (x.has_value() != y.has_value()) return false;
    if (x && (x->n != y->n || x->digits != y->digits)) return false;
  }
  return true;
}

namespace {

constexpr std::uint64_t kScanChunk = 1 << 16;

std::uint64_t saturating_pow(std::uint64_t base, unsigned e) {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= base;
    if (v > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(v);
}

/// First occurrences inside [first, last); UINT64_MAX marks "not seen".
std::vector<std::uint64_t> first_occurrences(Prime p, std::uint64_t first, std::uint64_t last) {
  std::vector<std::uint64_t> seen(p.value(), UINT64_MAX);
  std::uint64_t n = first;
  for (Residue r : catalan_range(p, first, last)) {
    if (seen[r.value] == UINT64_MAX) seen[r.value] = n;
    ++n;
  }
  return seen;
}

}  // namespace

CoverageTable coverage_scan(Prime p, const ScanOptions& options) {
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::uint64_t> targets;
  if (options.bound) {
    targets.push_back(*options.bound);
  } else {
    for (unsigned e = 4; e <= 6; ++e) targets.push_back(saturating_pow(p.value(), e));
  }

  std::vector<std::uint64_t> best(p.value(), UINT64_MAX);
  std::size_t found = 0;
  std::uint64_t scanned = 0;
  for (std::uint64_t limit : targets) {
    while (scanned < limit && found < p.value()) {
      // One round hands each worker a chunk; merging by minimum keeps the
      // result independent of the worker count.
      std::vector<std::vector<std::uint64_t>> partial(threads);
      std::vector<std::thread> workers;
      std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
      for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = std::min(limit, scanned + t * kScanChunk);
        const std::uint64_t hi = std::min(limit, lo + kScanChunk);
        ranges.emplace_back(lo, hi);
      }
      if (threads == 1) {
        partial[0] = first_occurrences(p, ranges[0].first, ranges[0].second);
      } else {
        for (unsigned t = 0; t < threads; ++t) {
          workers.emplace_back([&, t] { partial[t] = first_occurrences(p, ranges[t].first, ranges[t].second); });
        }
        for (auto& w : workers) w.join();
      }
      for (const auto& part : partial) {
        for (std::uint32_t r = 0; r < p.value(); ++r) best[r] = std::min(best[r], part[r]);
      }
      scanned = ranges.back().second;
      found = static_cast<std::size_t>(std::count_if(best.begin(), best.end(),
                                                     [](std::uint64_t n) { return n != UINT64_MAX; }));
    }
    if (found == p.value()) break;
  }

  CoverageTable table(p);
  for (std::uint32_t r = 0; r < p.value(); ++r) {
    if (best[r] != UINT64_MAX) table.set_witness(Residue{r}, best[r]);
  }
  return table;
}

CoverageTable coverage_bfs(const Dfao& dfao) {
  const Prime p = dfao.prime();
  const std::size_t n_states = dfao.state_count();
  CoverageTable table(p);

  // reachable[i]: states reachable from q0 by words of length exactly i.
  std::vector<std::vector<bool>> reachable;
  reachable.emplace_back(n_states, false);
  reachable[0][dfao.initial()] = true;
  auto step = [&](const std::vector<bool>& from) {
    std::vector<bool> to(n_states, false);
    for (std::uint32_t s = 0; s < n_states; ++s) {
      if (!from[s]) continue;
      for (std::uint32_t d = 0; d < p.value(); ++d) to[dfao.next(s, d)] = true;
    }
    return to;
  };

  // Any residue an automaton with N states outputs is reached by a word of
  // at most N + 1 digits once leading zeros are disallowed.
  const std::size_t max_len = n_states + 1;
  for (std::uint32_t r = 0; r < p.value(); ++r) {
    for (std::size_t len = 1; len <= max_len && !table.witness(Residue{r}); ++len) {
      while (reachable.size() < len) reachable.push_back(step(reachable.back()));
      // Choose digits most significant first, each as small as possible while
      // some length-prefix word can still complete the string.
      std::vector<bool> target(n_states, false);
      for (std::uint32_t s = 0; s < n_states; ++s) target[s] = dfao.out(s) == Residue{r};
      std::vector<std::uint32_t> digits(len, 0);
      bool ok = true;
      for (std::size_t pos = len; pos-- > 0;) {
        const std::uint32_t lowest = (pos == len - 1 && len > 1) ? 1 : 0;
        const auto& before = reachable[pos];
        std::optional<std::uint32_t> chosen;
        std::vector<bool> next_target(n_states, false);
        for (std::uint32_t d = lowest; d < p.value() && !chosen; ++d) {
          bool any = false;
          for (std::uint32_t s = 0; s < n_states; ++s) {
            if (before[s] && target[dfao.next(s, d)]) {
              next_target[s] = true;
              any = true;
            }
          }
          if (any) chosen = d;
        }
        if (!chosen) {
          ok = false;
          break;
        }
        digits[pos] = *chosen;
        target = std::move(next_target);
      }
      if (!ok) continue;
      const auto n = from_digits(digits, p.value());
      if (!n) throw Error(ErrorCode::overflow_range, "coverage_bfs: witness exceeds 64 bits");
      table.set_witness(Residue{r}, *n);
    }
  }
  return table;
}

std::vector<ResidueInfinitude> infinitude_report(const Dfao& dfao) {
  const Prime p = dfao.prime();
  const std::vector<std::uint64_t> counts = transfer_counts(dfao, 6);
  std::vector<ResidueInfinitude> out;
  for (std::uint32_t r = 0; r < p.value(); ++r) {
    PumpingCertificate cert = pumping_certificate(dfao, Residue{r});
    if (counts[r] < 10) {
      throw Error(ErrorCode::property_violation,
                  "residue " + std::to_string(r) + " has fewer than 10 witnesses below p^6");
    }
    out.push_back({Residue{r}, std::move(cert), counts[r]});
  }
  return out;
}

Fraction make_fraction(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "fraction with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

bool less_than(const Fraction& a, const Fraction& b) {
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

std::vector<Fraction> zero_density(const Dfao& dfao, unsigned kmax) {
  if (kmax == 0) throw Error(ErrorCode::invalid_argument, "zero_density: kmax must be >= 1");
  std::vector<Fraction> out;
  std::uint64_t total = 1;
  for (unsigned k = 1; k <= kmax; ++k) {
    total *= dfao.prime().value();
    out.push_back(make_fraction(transfer_counts(dfao, k)[0], total));
  }
  return out;
}

bool strictly_increasing(std::span<const Fraction> fractions) {
  for (std::size_t i = 1; i < fractions.size(); ++i) {
    if (!less_than(fractions[i - 1], fractions[i])) return false;
  }
  return true;
}

GlsBoundReport gls_bound_report(Prime p, const CoverageTable& table) {
  if (!table.complete()) throw Error(ErrorCode::invalid_argument, "gls_bound_report: coverage table incomplete");
  const double pd = p.value();
  GlsBoundReport report{};
  report.max_witness = table.max_witness();
  report.bound = std::pow(pd, 6.5) * std::pow(std::log(pd), 6);
  report.ratio = static_cast<double>(report.max_witness) / report.bound;
  report.within = report.ratio <= 1.0;
  return report;
}

}  // namespace catmod
