// catmod command-line interface. Links the C API only.
//
// Exit codes: 0 success, 1 property violation (or state-cap breach), 2 usage error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catmod/catmod.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_of(catmod_status s) {
  switch (s) {
    case CATMOD_OK: return kExitOk;
    case CATMOD_ERR_INVALID_ARGUMENT:
    case CATMOD_ERR_NOT_PRIME:
    case CATMOD_ERR_OVERFLOW:
    case CATMOD_ERR_NULL_POINTER:
      return kExitUsage;
    default:
      return kExitViolation;
  }
}

/// Owns a library-allocated string.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { catmod_string_free(ptr_); }

  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

/// Owns a catmod_dfao handle.
class DfaoHandle {
 public:
  DfaoHandle() = default;
  DfaoHandle(const DfaoHandle&) = delete;
  DfaoHandle& operator=(const DfaoHandle&) = delete;
  ~DfaoHandle() { catmod_dfao_free(ptr_); }

  catmod_dfao** out() { return &ptr_; }
  const catmod_dfao* get() const { return ptr_; }

 private:
  catmod_dfao* ptr_ = nullptr;
};

struct RunConfig {
  std::optional<std::uint64_t> p;
  std::string p_list;
  std::uint64_t n = 0;
  std::uint64_t r = 0;
  unsigned kmax = 6;
  std::optional<std::uint64_t> bound;
  std::string emit = "text";
  std::string out_path;
  std::uint64_t seed = 20170110;
  std::uint64_t state_cap = 0;
  bool minimize = false;
  bool walk = false;
  std::string method = "automaton";
};

std::uint32_t checked_prime(std::uint64_t p) {
  if (!catmod_is_valid_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not a prime >= 5");
  return static_cast<std::uint32_t>(p);
}

/// --p and --p-list, each entry validated; sorted ascending and deduplicated.
std::vector<std::uint32_t> primes_of(const RunConfig& cfg, std::vector<std::uint32_t> fallback = {}) {
  std::vector<std::uint32_t> primes;
  if (cfg.p) primes.push_back(checked_prime(*cfg.p));
  if (!cfg.p_list.empty()) {
    std::stringstream ss(cfg.p_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::uint64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("--p-list entry '" + item + "' is not an integer");
      }
      primes.push_back(checked_prime(v));
    }
  }
  if (primes.empty()) primes = std::move(fallback);
  if (primes.empty()) throw UsageError("--p or --p-list is required");
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

catmod_format format_of(const std::string& emit) {
  static const std::map<std::string, catmod_format> formats = {
      {"text", CATMOD_FORMAT_TEXT}, {"json", CATMOD_FORMAT_JSON}, {"dot", CATMOD_FORMAT_DOT}, {"csv", CATMOD_FORMAT_CSV}};
  return formats.at(emit);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open --out path '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

int report_status(catmod_status s) {
  if (s != CATMOD_OK) {
    std::cerr << "catmod: " << catmod_status_string(s) << ": " << catmod_last_error() << "\n";
  }
  return exit_code_of(s);
}

int eval_one(const RunConfig& cfg, std::uint32_t p, Output& out) {
  const bool want_automaton = cfg.method != "oracle";
  const bool want_oracle = cfg.method != "automaton";
  std::optional<std::uint32_t> by_automaton;
  std::optional<std::uint32_t> by_oracle;
  if (want_automaton) {
    DfaoHandle dfao;
    if (auto s = catmod_dfao_synthesize(p, cfg.state_cap, dfao.out()); s != CATMOD_OK) return report_status(s);
    std::uint32_t v = 0;
    if (auto s = catmod_dfao_eval(dfao.get(), cfg.n, &v); s != CATMOD_OK) return report_status(s);
    by_automaton = v;
  }
  if (want_oracle) {
    std::uint32_t v = 0;
    if (auto s = catmod_catalan_mod(cfg.n, p, &v); s != CATMOD_OK) return report_status(s);
    by_oracle = v;
  }
  if (cfg.emit == "json") {
    out.stream() << "{\"p\":" << p << ",\"n\":" << cfg.n;
    if (by_automaton) out.stream() << ",\"automaton\":" << *by_automaton;
    if (by_oracle) out.stream() << ",\"oracle\":" << *by_oracle;
    out.stream() << "}\n";
  } else if (by_automaton && by_oracle) {
    out.stream() << "automaton " << *by_automaton << "\noracle " << *by_oracle << "\n";
  } else {
    out.stream() << (by_automaton ? *by_automaton : *by_oracle) << "\n";
  }
  if (by_automaton && by_oracle && *by_automaton != *by_oracle) {
    std::cerr << "catmod: property violation: automaton and oracle disagree\n";
    return kExitViolation;
  }
  return kExitOk;
}

int eval_all(const RunConfig& cfg) {
  Output out(cfg.out_path);
  int code = kExitOk;
  for (std::uint32_t p : primes_of(cfg)) code = std::max(code, eval_one(cfg, p, out));
  return code;
}

int synth_one(const RunConfig& cfg, std::uint32_t p, Output& out) {
  DfaoHandle synthesized;
  if (auto s = catmod_dfao_synthesize(p, cfg.state_cap, synthesized.out()); s != CATMOD_OK) return report_status(s);
  std::size_t synthesized_count = 0;
  catmod_dfao_state_count(synthesized.get(), &synthesized_count);

  DfaoHandle minimized;
  const catmod_dfao* chosen = synthesized.get();
  if (cfg.minimize) {
    if (auto s = catmod_dfao_minimize(synthesized.get(), minimized.out()); s != CATMOD_OK) return report_status(s);
    chosen = minimized.get();
  }
  std::size_t states = 0;
  catmod_dfao_state_count(chosen, &states);
  std::size_t family = 0;
  const catmod_status family_status = catmod_dfao_constant_family_size(chosen, &family);

  LibString body;
  if (auto s = catmod_dfao_emit(chosen, format_of(cfg.emit), body.out()); s != CATMOD_OK) return report_status(s);
  out.stream() << body.str();

  std::ostream& summary = out.to_file() ? std::cout : std::cerr;
  summary << "p=" << p << " states: " << states;
  if (cfg.minimize) summary << " (minimized from " << synthesized_count << ")";
  summary << "\n";
  if (family_status != CATMOD_OK) return report_status(family_status);
  summary << "p=" << p << " constant family size: " << family << "\n";
  return kExitOk;
}

int synth_all(const RunConfig& cfg) {
  Output out(cfg.out_path);
  int code = kExitOk;
  for (std::uint32_t p : primes_of(cfg)) code = std::max(code, synth_one(cfg, p, out));
  return code;
}

template <typename Fn>
int cmd_report(const RunConfig& cfg, const std::vector<std::uint32_t>& primes, Fn&& call) {
  const catmod_format format = format_of(cfg.emit);
  Output out(cfg.out_path);
  int code = kExitOk;
  for (std::uint32_t p : primes) {
    LibString body;
    const catmod_status s = call(p, format, body.out());
    out.stream() << body.str();
    if (s != CATMOD_OK) code = std::max(code, report_status(s));
  }
  return code;
}

int cmd_selftest(const RunConfig& cfg) {
  const std::vector<std::uint32_t> primes = primes_of(cfg, {5, 7, 11, 13});
  LibString body;
  const catmod_status s =
      catmod_selftest(primes.data(), primes.size(), cfg.bound.value_or(10'000), cfg.seed, body.out());
  Output out(cfg.out_path);
  out.stream() << body.str();
  return report_status(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalan numbers modulo a prime: automaton synthesis and verified reports"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::vector<std::string> formats = {"text", "json", "dot", "csv"};
  auto add_common = [&](CLI::App* sub) {
    auto* single = sub->add_option("--p", cfg.p, "prime modulus p >= 5");
    sub->add_option("--p-list", cfg.p_list, "comma-separated primes")->excludes(single);
    sub->add_option("--emit", cfg.emit, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", cfg.out_path, "write output to PATH instead of stdout");
  };

  auto* eval = app.add_subcommand("eval", "print C_n mod p");
  add_common(eval);
  eval->add_option("--n", cfg.n, "index n")->required();
  eval->add_option("--method", cfg.method, "automaton, oracle or both")
      ->check(CLI::IsMember({"automaton", "oracle", "both"}));
  eval->add_option("--state-cap", cfg.state_cap, "automaton state cap (0 = 50 p^2)");

  auto* synth = app.add_subcommand("synth", "synthesize the automaton and emit it");
  add_common(synth);
  synth->add_flag("--minimize", cfg.minimize, "minimize before emitting");
  synth->add_option("--state-cap", cfg.state_cap, "state cap (0 = 50 p^2)");

  auto* coverage = app.add_subcommand("coverage", "minimal witness for every residue");
  add_common(coverage);
  coverage->add_option("--bound", cfg.bound, "scan n < BOUND (default p^4, extended to p^6)");

  auto* decompose = app.add_subcommand("decompose", "write r as a product of central binomials mod p");
  add_common(decompose);
  decompose->add_option("--r", cfg.r, "residue (reduced mod p, must be non-zero)")->required();

  auto* graph = app.add_subcommand("graph", "constant-state graph and covering closed walk");
  add_common(graph);
  graph->add_flag("--walk", cfg.walk, "construct, validate and replay the closed walk");

  auto* density = app.add_subcommand("density", "fraction of n < p^k with C_n = 0 mod p");
  add_common(density);
  density->add_option("--kmax", cfg.kmax, "largest k")->check(CLI::Range(1u, 20u));

  auto* selftest = app.add_subcommand("selftest", "run every verification suite");
  add_common(selftest);
  selftest->add_option("--bound", cfg.bound, "exhaustive oracle range n < BOUND (default 10000)");
  selftest->add_option("--seed", cfg.seed, "seed for the random oracle sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return eval_all(cfg);
    if (*synth) {
      if (cfg.emit == "text" && synth->count("--emit") == 0) cfg.emit = "json";
      return synth_all(cfg);
    }
    if (*coverage) {
      return cmd_report(cfg, primes_of(cfg), [&](std::uint32_t p, catmod_format f, char** out) {
        return catmod_report_coverage(p, cfg.bound.value_or(0), f, out);
      });
    }
    if (*decompose) {
      return cmd_report(cfg, primes_of(cfg), [&](std::uint32_t p, catmod_format f, char** out) {
        return catmod_report_decompose(p, cfg.r, f, out);
      });
    }
    if (*graph) {
      return cmd_report(cfg, primes_of(cfg), [&](std::uint32_t p, catmod_format f, char** out) {
        return catmod_report_graph(p, cfg.walk ? 1 : 0, f, out);
      });
    }
    if (*density) {
      return cmd_report(cfg, primes_of(cfg), [&](std::uint32_t p, catmod_format f, char** out) {
        return catmod_report_density(p, cfg.kmax, f, out);
      });
    }
    if (*selftest) return cmd_selftest(cfg);
  } catch (const UsageError& e) {
    std::cerr << "catmod: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
