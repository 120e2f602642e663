#include "catmod/selftest.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "catmod/automaton.hpp"
#include "catmod/constant_graph.hpp"
#include "catmod/coverage.hpp"
#include "catmod/decomposition.hpp"
#include "catmod/error.hpp"
#include "catmod/oracle.hpp"

namespace catmod {

namespace {

struct Suite {
  const char* name;
  std::function<bool(Prime, const Dfao&, const SelftestOptions&)> run;
};

bool oracle_suite(Prime p, const Dfao& dfao, const SelftestOptions& o) {
  const std::vector<Residue> stream = catalan_stream(p, o.n_bound);
  for (std::uint64_t n = 0; n < o.n_bound; ++n) {
    if (eval(dfao, n) != stream[n]) return false;
  }
  std::mt19937_64 rng(o.seed ^ p.value());
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << 62) - 1);
  for (std::uint64_t i = 0; i < o.random_samples; ++i) {
    const std::uint64_t n = dist(rng);
    if (eval(dfao, n) != catalan_mod(CatalanIndex{n}, p)) return false;
  }
  return true;
}

bool coverage_suite(Prime p, const Dfao& dfao, const SelftestOptions&) {
  const CoverageTable bfs = coverage_bfs(dfao);
  if (!bfs.complete() || !(bfs == coverage_scan(p))) return false;
  infinitude_report(dfao);  // throws on a missing certificate
  return true;
}

bool decomposition_suite(Prime p, const Dfao&, const SelftestOptions&) {
  for (std::uint32_t r = 1; r < p.value(); ++r) {
    const ExponentVector e = decompose_residue(Residue{r}, p);
    if (!verify_decomposition(e, Residue{r}, p)) return false;
    for (std::uint32_t x : e.exponents()) {
      if (x >= p.value() - 1) return false;
    }
  }
  return true;
}

bool graph_suite(Prime p, const Dfao& dfao, const SelftestOptions&) {
  const ConstantGraph graph = build_graph(p);
  if (!strongly_connected(graph)) return false;
  const WalkCertificate walk = closed_walk_all_vertices(graph);
  return validate_walk(walk, graph) && walk.visited == graph.vertices() &&
         automaton_correspondence(walk, dfao, detect_constant_family(dfao));
}

bool family_suite(Prime p, const Dfao& dfao, const SelftestOptions&) {
  const FamilyTable families = detect_constant_family(dfao);
  if (families.constant_family().size() != p.value() - 1) return false;
  // Numbers with every digit <= (p-1)/2 end in the constant family.
  const std::uint64_t limit = std::uint64_t{p.value()} * p.value() * p.value();
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto digits = to_digits(n, p.value());
    bool small = true;
    for (std::uint32_t d : digits) small = small && d <= p.half();
    if (!small) continue;
    if (!families.constant_label(dfao.run(dfao.initial(), digits))) return false;
  }
  return true;
}

bool density_suite(Prime p, const Dfao& dfao, const SelftestOptions&) {
  const std::vector<Fraction> fractions = zero_density(dfao, 4);
  if (!strictly_increasing(fractions)) return false;
  const std::uint64_t span = std::uint64_t{p.value()} * p.value() * p.value();
  std::uint64_t zeros = 0;
  for (Residue r : catalan_stream(p, span)) zeros += r.value == 0 ? 1 : 0;
  return make_fraction(zeros, span) == fractions[2];
}

}  // namespace

SelftestResult run_selftest(const SelftestOptions& options) {
  static const std::vector<Suite> suites = {
      {"oracle", oracle_suite}, {"coverage", coverage_suite}, {"decomposition", decomposition_suite},
      {"graph", graph_suite},   {"family", family_suite},     {"density", density_suite},
  };

  SelftestResult result;
  std::ostringstream os;
  std::ostringstream failures;
  os << "selftest: n-bound " << options.n_bound << ", " << options.random_samples << " random n < 2^62, seed "
     << options.seed << "\n";
  os << "p";
  for (const Suite& s : suites) os << "\t" << s.name;
  os << "\n";
  for (Prime p : options.primes) {
    os << p.value();
    std::optional<Dfao> dfao;
    try {
      dfao = synthesize(p);
    } catch (const Error& e) {
      failures << "p=" << p.value() << " synthesize: " << e.what() << "\n";
    }
    for (const Suite& s : suites) {
      bool ok = false;
      if (dfao) {
        try {
          ok = s.run(p, *dfao, options);
        } catch (const Error& e) {
          failures << "p=" << p.value() << " " << s.name << ": " << e.what() << "\n";
        }
      }
      result.all_passed = result.all_passed && ok;
      os << "\t" << (ok ? "pass" : "FAIL");
    }
    os << "\n";
  }
  os << failures.str();
  os << (result.all_passed ? "all suites passed" : "FAILURES present") << "\n";
  result.summary = os.str();
  return result;
}

}  // namespace catmod
