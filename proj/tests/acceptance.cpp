// Acceptance suite: one PASS/FAIL line per criterion with its time budget.
// Usage: acceptance [path-to-catmod-cli]
// With a CLI path, criterion 8 also compares two CLI runs byte for byte.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "catmod/automaton.hpp"
#include "catmod/constant_graph.hpp"
#include "catmod/coverage.hpp"
#include "catmod/decomposition.hpp"
#include "catmod/oracle.hpp"
#include "catmod/report.hpp"
#include "catmod/selftest.hpp"
#include "support/exact.hpp"

using namespace catmod;
namespace t = catmod::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

std::string run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return out + "\n<status " + std::to_string(status) + ">";
}

void oracle_validity(Outcome& o) {
  for (std::uint32_t q : {5u, 7u, 11u, 13u, 101u}) {
    for (std::uint64_t n = 0; n <= 35; ++n) {
      const std::uint64_t exact = catalan_exact(n);
      o.require(exact == static_cast<std::uint64_t>(t::exact_catalan(n)), "catalan_exact(" + std::to_string(n) + ")");
      o.require(catalan_mod(CatalanIndex{n}, Prime(q)).value == exact % q,
                "p=" + std::to_string(q) + " n=" + std::to_string(n));
    }
  }
}

void automaton_equivalence(Outcome& o) {
  for (std::uint32_t q : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
    const Prime p(q);
    const Dfao a = synthesize(p);
    const auto stream = catalan_stream(p, 100000);
    for (std::uint64_t n = 0; n < stream.size() && o.ok; ++n) {
      o.require(eval(a, n) == stream[n], "p=" + std::to_string(q) + " n=" + std::to_string(n));
    }
    std::mt19937_64 rng(20170110 + q);
    for (int i = 0; i < 10000 && o.ok; ++i) {
      const std::uint64_t n = rng() >> 2;
      o.require(eval(a, n) == catalan_mod(CatalanIndex{n}, p), "p=" + std::to_string(q) + " n=" + std::to_string(n));
    }
  }
}

void no_forbidden_residues(Outcome& o) {
  for (std::uint32_t q : t::primes_between(5, 199)) {
    const auto table = coverage_bfs(synthesize(Prime(q)));
    o.require(table.complete(), "incomplete coverage at p=" + std::to_string(q));
  }
  const auto table = coverage_scan(Prime(5));
  const std::uint64_t want[] = {3, 0, 2, 29, 4};
  for (std::uint32_t r = 0; r < 5; ++r) {
    o.require(table.witness(Residue{r}) && table.witness(Residue{r})->n == want[r],
              "p=5 witness(" + std::to_string(r) + ")");
  }
  o.require(coverage_bfs(synthesize(Prime(5))) == table, "p=5 automaton and scan witnesses differ");
}

void decompositions(Outcome& o) {
  for (std::uint32_t q : t::primes_between(5, 199)) {
    const Prime p(q);
    for (std::uint32_t r = 1; r < q && o.ok; ++r) {
      const auto e = decompose_residue(Residue{r}, p);
      const std::string where = "p=" + std::to_string(q) + " r=" + std::to_string(r);
      o.require(verify_decomposition(e, Residue{r}, p), where + " does not verify");
      for (std::uint32_t d : flatten(e)) o.require(d <= (q - 1) / 2, where + " digit out of range");
      for (std::uint32_t x : e.exponents()) o.require(x < q - 1, where + " exponent not reduced");
    }
  }
  for (std::uint32_t q : t::primes_between(5, 1000)) {
    const Prime p(q);
    std::vector<Residue> multipliers;
    for (std::uint32_t d = 0; d <= (q - 1) / 2; ++d) multipliers.push_back(central_binomial_mod(d, p));
    std::vector<char> seen(q, 0);
    std::vector<std::uint32_t> stack{1};
    seen[1] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::uint32_t c = stack.back();
      stack.pop_back();
      for (const Residue m : multipliers) {
        const auto next = fp_mul(Residue{c}, m, p).value;
        if (!seen[next]) {
          seen[next] = 1;
          ++count;
          stack.push_back(next);
        }
      }
    }
    o.require(count == q - 1, "central binomials do not generate the units mod " + std::to_string(q));
  }
}

void strong_connectivity(Outcome& o) {
  for (std::uint32_t q : t::primes_between(5, 199)) {
    const auto g = build_graph(Prime(q));
    const std::string where = "p=" + std::to_string(q);
    o.require(strongly_connected(g), where + " not strongly connected");
    const auto walk = closed_walk_all_vertices(g);
    o.require(validate_walk(walk, g), where + " walk invalid");
    o.require(std::set<std::uint32_t>(walk.vertices.begin(), walk.vertices.end()).size() == q - 1,
              where + " walk misses a vertex");
  }
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    const Dfao a = synthesize(Prime(q));
    const auto walk = closed_walk_all_vertices(build_graph(Prime(q)));
    o.require(automaton_correspondence(walk, a, detect_constant_family(a)),
              "p=" + std::to_string(q) + " walk does not replay in the automaton");
  }
}

void infinitude(Outcome& o) {
  for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
    const Prime p(q);
    const Dfao a = synthesize(p);
    for (std::uint32_t r = 0; r < q; ++r) {
      const auto cert = pumping_certificate(a, Residue{r});
      std::set<std::uint64_t> seen;
      for (unsigned j = 0; j <= 3; ++j) {
        const auto n = from_digits(pumped_digits(cert, j), q);
        const std::string where = "p=" + std::to_string(q) + " r=" + std::to_string(r) + " j=" + std::to_string(j);
        o.require(n.has_value() && seen.insert(*n).second, where + " witness not distinct");
        o.require(n && catalan_mod(CatalanIndex{*n}, p) == Residue{r}, where + " wrong residue");
      }
    }
    const std::uint64_t limit = std::uint64_t{q} * q * q * q;
    for (std::uint64_t n = 0; n < limit; ++n) {
      bool small = true;
      for (std::uint64_t m = n; m > 0 && small; m /= q) small = (m % q) <= (q - 1) / 2;
      if (small) o.require(eval(a, n) != Residue{0}, "p=" + std::to_string(q) + " zero at n=" + std::to_string(n));
    }
  }
}

void zero_density_proxy(Outcome& o) {
  const auto f5 = zero_density(synthesize(Prime(5)), 6);
  o.require(f5[0] == Fraction{1, 5}, "p=5 k=1 fraction");
  o.require(f5[1] == Fraction{13, 25}, "p=5 k=2 fraction");
  for (std::uint32_t q : {5u, 7u, 13u}) {
    o.require(strictly_increasing(zero_density(synthesize(Prime(q)), 6)),
              "p=" + std::to_string(q) + " fractions not strictly increasing");
  }
  for (std::uint32_t q : {5u, 7u}) {
    const Prime p(q);
    const Dfao a = synthesize(p);
    for (unsigned k = 1; k <= 4; ++k) {
      std::uint64_t limit = 1;
      for (unsigned i = 0; i < k; ++i) limit *= q;
      std::vector<std::uint64_t> want(q, 0);
      for (const Residue r : catalan_stream(p, limit)) ++want[r.value];
      o.require(transfer_counts(a, k) == want, "p=" + std::to_string(q) + " k=" + std::to_string(k) + " counts");
    }
  }
}

std::function<void(Outcome&)> determinism(const std::string& cli) {
  return [cli](Outcome& o) {
    for (std::uint32_t q : {5u, 7u, 11u, 13u}) {
      for (Format f : {Format::json, Format::dot, Format::csv, Format::text}) {
        o.require(emit_dfao(synthesize(Prime(q)), f) == emit_dfao(synthesize(Prime(q)), f),
                  "synth output differs at p=" + std::to_string(q));
      }
    }
    SelftestOptions options;
    for (std::uint32_t q : {5u, 7u, 11u, 13u}) options.primes.emplace_back(q);
    o.require(run_selftest(options).summary == run_selftest(options).summary, "selftest summary differs");
    if (!cli.empty()) {
      for (const std::string args : {" synth --p-list 5,7,11,13 --emit json", " synth --p 13 --emit dot --minimize",
                                     " selftest --seed 20170110"}) {
        const std::string cmd = "\"" + cli + "\"" + args + " 2>&1";
        const std::string first = run_command(cmd);
        o.require(first.find("<status 0>") != std::string::npos, "cli failed:" + args);
        o.require(first == run_command(cmd), "cli output differs:" + args);
      }
    }
  };
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "oracle validity (n <= 35, p in {5,7,11,13,101})", 1, oracle_validity},
      {2, "automaton equals oracle (n < 1e5 and 1e4 random n < 2^62)", 60, automaton_equivalence},
      {3, "no forbidden residues (5 <= p <= 199)", 60, no_forbidden_residues},
      {4, "central-binomial decompositions and unit generation", 30, decompositions},
      {5, "constant graph strongly connected with replayed closed walk", 60, strong_connectivity},
      {6, "infinitude certificates and small-digit non-vanishing", 60, infinitude},
      {7, "zero density fractions and transfer counts", 30, zero_density_proxy},
      {8, "byte-identical synth and selftest output", 60, determinism(cli)},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(seconds < c.budget_seconds, "over time budget");
    if (!o.ok) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << seconds << " s / "
         << c.budget_seconds << " s]";
    if (!o.ok) line << "  -- " << o.detail;
    std::cout << line.str() << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
