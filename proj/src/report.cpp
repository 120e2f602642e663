#include "catmod/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "catmod/decomposition.hpp"
#include "catmod/error.hpp"
#include "catmod/oracle.hpp"
#include "json.hpp"

namespace catmod {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join(const std::vector<std::uint32_t>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string bracketed(const std::vector<std::uint32_t>& values) { return "[" + join(values, ",") + "]"; }

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

[[noreturn]] void unsupported(const char* what, Format format) {
  static const char* const names[] = {"text", "json", "dot", "csv"};
  throw Error(ErrorCode::invalid_argument,
              std::string(what) + " cannot be emitted as " + names[static_cast<int>(format)]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Automaton and graph serializations

std::string dfao_to_json(const Dfao& dfao) {
  ordered_json j;
  j["p"] = dfao.prime().value();
  j["q0"] = dfao.initial();
  auto outputs = ordered_json::array();
  auto delta = ordered_json::array();
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    outputs.push_back(dfao.out(s).value);
    auto row = ordered_json::array();
    for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) row.push_back(dfao.next(s, d));
    delta.push_back(std::move(row));
  }
  j["outputs"] = std::move(outputs);
  j["delta"] = std::move(delta);
  return j.dump() + "\n";
}

std::string dfao_to_dot(const Dfao& dfao) {
  std::ostringstream os;
  os << "digraph dfao {\n  rankdir=LR;\n";
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    os << "  s" << s << " [label=\"s" << s << "/" << dfao.out(s).value << "\""
       << (s == dfao.initial() ? ", shape=doublecircle" : "") << "];\n";
  }
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_target;
    for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) by_target[dfao.next(s, d)].push_back(d);
    for (const auto& [target, digits] : by_target) {
      os << "  s" << s << " -> s" << target << " [label=\"" << join(digits, ",") << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string dfao_to_text(const Dfao& dfao) {
  std::ostringstream os;
  os << "DFAO for C_n mod " << dfao.prime().value() << ": " << dfao.state_count()
     << " states, initial s" << dfao.initial() << "\n";
  os << "state  out  delta[0.." << dfao.prime().value() - 1 << "]\n";
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    std::vector<std::uint32_t> row;
    for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) row.push_back(dfao.next(s, d));
    char head[32];
    std::snprintf(head, sizeof head, "s%-5u %-4u ", s, dfao.out(s).value);
    os << head << join(row, " ") << "\n";
  }
  return os.str();
}

std::string dfao_to_csv(const Dfao& dfao) {
  std::ostringstream os;
  os << "state,output";
  for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) os << ",d" << d;
  os << "\n";
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    os << s << "," << dfao.out(s).value;
    for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) os << "," << dfao.next(s, d);
    os << "\n";
  }
  return os.str();
}

std::string emit_dfao(const Dfao& dfao, Format format) {
  switch (format) {
    case Format::json: return dfao_to_json(dfao);
    case Format::dot: return dfao_to_dot(dfao);
    case Format::csv: return dfao_to_csv(dfao);
    case Format::text: return dfao_to_text(dfao);
  }
  unsupported("automaton", format);
}

std::string graph_to_dot(const ConstantGraph& graph) {
  std::ostringstream os;
  os << "digraph constant_states {\n";
  for (std::uint32_t c : graph.vertices()) os << "  c" << c << " [label=\"" << c << "\"];\n";
  for (const GraphEdge& e : graph.edges()) {
    os << "  c" << e.source << " -> c" << e.target << " [label=\"" << e.label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

ordered_json walk_json(const WalkCertificate& walk) {
  ordered_json j;
  j["start"] = walk.start;
  j["labels"] = walk.labels;
  j["vertices"] = walk.vertices;
  return j;
}

}  // namespace

std::string walk_to_json(const WalkCertificate& walk) { return walk_json(walk).dump() + "\n"; }

// ---------------------------------------------------------------------------
// Coverage

Report coverage_report(Prime p, std::optional<std::uint64_t> bound, Format format) {
  if (format == Format::dot) unsupported("coverage table", format);

  const CoverageTable scan = coverage_scan(p, ScanOptions{bound, 1});
  const Dfao dfao = synthesize(p);
  const CoverageTable bfs = coverage_bfs(dfao);
  const std::vector<ResidueInfinitude> infinitude = infinitude_report(dfao);

  bool methods_agree = bfs.complete();
  for (std::uint32_t r = 0; r < p.value(); ++r) {
    const auto& w = scan.witness(Residue{r});
    if (!w) continue;
    const auto& v = bfs.witness(Residue{r});
    methods_agree = methods_agree && v && v->n == w->n;
    methods_agree = methods_agree && catalan_mod(CatalanIndex{w->n}, p) == Residue{r};
  }
  const bool complete = scan.complete();
  Report report;
  report.verified = complete && methods_agree;

  std::optional<GlsBoundReport> gls;
  if (complete) gls = gls_bound_report(p, scan);
  if (gls && !gls->within) report.verified = false;

  std::ostringstream os;
  if (format == Format::json) {
    ordered_json j;
    j["p"] = p.value();
    j["complete"] = complete;
    auto missing = ordered_json::array();
    for (Residue r : scan.missing()) missing.push_back(r.value);
    j["missing"] = std::move(missing);
    auto rows = ordered_json::array();
    for (std::uint32_t r = 0; r < p.value(); ++r) {
      const auto& w = scan.witness(Residue{r});
      const auto& inf = infinitude[r];
      ordered_json row;
      row["residue"] = r;
      row["witness"] = w ? ordered_json(w->n) : ordered_json(nullptr);
      row["digits"] = w ? ordered_json(w->digits) : ordered_json(nullptr);
      row["w1_len"] = inf.certificate.prefix.size();
      row["w2_len"] = inf.certificate.pump.size();
      row["w3_len"] = inf.certificate.suffix.size();
      row["witnesses_below_p6"] = inf.witnesses_below_p6;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["methods_agree"] = methods_agree;
    if (gls) {
      ordered_json g;
      g["max_witness"] = gls->max_witness;
      g["bound"] = gls->bound;
      g["ratio"] = gls->ratio;
      g["within"] = gls->within;
      j["gls"] = std::move(g);
    } else {
      j["gls"] = nullptr;
    }
    j["verified"] = report.verified;
    os << j.dump() << "\n";
  } else if (format == Format::csv) {
    os << "residue,witness,digits,w1_len,w2_len,w3_len\n";
    for (std::uint32_t r = 0; r < p.value(); ++r) {
      const auto& w = scan.witness(Residue{r});
      const auto& c = infinitude[r].certificate;
      os << r << "," << (w ? std::to_string(w->n) : "") << "," << (w ? join(w->digits, " ") : "") << ","
         << c.prefix.size() << "," << c.pump.size() << "," << c.suffix.size() << "\n";
    }
  } else {
    os << "C_n mod " << p.value() << ": " << (p.value() - scan.missing().size()) << "/" << p.value()
       << " residues attained" << (complete ? ", no forbidden residue" : "") << "\n";
    os << "residue  witness  digits(lsd first)  |w1| |w2| |w3|  n < p^6\n";
    for (std::uint32_t r = 0; r < p.value(); ++r) {
      const auto& w = scan.witness(Residue{r});
      const auto& inf = infinitude[r];
      char line[160];
      std::snprintf(line, sizeof line, "%-8u %-8s %-18s %-4zu %-4zu %-5zu %llu\n", r,
                    w ? std::to_string(w->n).c_str() : "-", w ? bracketed(w->digits).c_str() : "-",
                    inf.certificate.prefix.size(), inf.certificate.pump.size(), inf.certificate.suffix.size(),
                    static_cast<unsigned long long>(inf.witnesses_below_p6));
      os << line;
    }
    os << "scan and automaton search agree: " << (methods_agree ? "yes" : "no") << "\n";
    if (gls) {
      os << "max witness " << gls->max_witness << ", p^(13/2) (log p)^6 = " << scientific(gls->bound)
         << ", ratio " << scientific(gls->ratio) << "\n";
    }
    os << (report.verified ? "verified" : "NOT verified") << "\n";
  }
  report.body = os.str();
  return report;
}

// ---------------------------------------------------------------------------
// Decomposition

Report decompose_report(Prime p, std::uint64_t r, Format format) {
  if (format == Format::dot) unsupported("decomposition", format);
  const Residue residue = Residue{static_cast<std::uint32_t>(r % p.value())};
  const ExponentVector e = decompose_residue(residue, p);
  const std::vector<std::uint32_t> ds = flatten(e);

  Report report;
  report.verified = verify_decomposition(e, residue, p);
  for (std::uint32_t d : ds) report.verified = report.verified && d <= p.half();
  for (std::uint32_t x : e.exponents()) report.verified = report.verified && x < p.value() - 1;

  std::ostringstream os;
  if (format == Format::json) {
    ordered_json j;
    j["p"] = p.value();
    j["r"] = residue.value;
    j["exponents"] = e.exponents();
    j["d_list"] = ds;
    j["length"] = ds.size();
    j["verified"] = report.verified;
    os << j.dump() << "\n";
  } else if (format == Format::csv) {
    os << "d,central_binomial,exponent\n";
    for (std::uint32_t d = 0; d < e.size(); ++d) {
      if (e[d] != 0) os << d << "," << central_binomial_mod(d, p).value << "," << e[d] << "\n";
    }
  } else {
    os << residue.value << " = product of binom(2d, d) mod " << p.value() << " over d-list " << bracketed(ds)
       << "\n";
    os << "length " << ds.size() << "\n";
    os << (report.verified ? "verified" : "NOT verified") << "\n";
  }
  report.body = os.str();
  return report;
}

// ---------------------------------------------------------------------------
// Constant-state graph

Report graph_report(Prime p, bool with_walk, Format format) {
  const ConstantGraph graph = build_graph(p);
  Report report;
  const bool connected = strongly_connected(graph);
  report.verified = connected;

  std::optional<WalkCertificate> walk;
  bool replayed = false;
  if (with_walk) {
    walk = closed_walk_all_vertices(graph);
    report.verified = report.verified && validate_walk(*walk, graph) && walk->visited == graph.vertices();
    const Dfao dfao = synthesize(p);
    replayed = automaton_correspondence(*walk, dfao, detect_constant_family(dfao));
    report.verified = report.verified && replayed;
  }

  std::ostringstream os;
  switch (format) {
    case Format::dot:
      os << graph_to_dot(graph);
      break;
    case Format::csv:
      if (walk) {
        os << "step,source,d,target\n";
        for (std::size_t i = 0; i < walk->labels.size(); ++i) {
          os << i << "," << walk->vertices[i] << "," << walk->labels[i] << "," << walk->vertices[i + 1] << "\n";
        }
      } else {
        os << "source,d,target\n";
        for (const GraphEdge& e : graph.edges()) os << e.source << "," << e.label << "," << e.target << "\n";
      }
      break;
    case Format::json: {
      ordered_json j;
      j["p"] = p.value();
      j["vertices"] = graph.vertices();
      auto edges = ordered_json::array();
      for (const GraphEdge& e : graph.edges()) {
        ordered_json edge;
        edge["source"] = e.source;
        edge["d"] = e.label;
        edge["target"] = e.target;
        edges.push_back(std::move(edge));
      }
      j["edges"] = std::move(edges);
      j["strongly_connected"] = connected;
      if (walk) {
        j["walk"] = walk_json(*walk);
        j["automaton_correspondence"] = replayed;
      }
      j["verified"] = report.verified;
      os << j.dump() << "\n";
      break;
    }
    case Format::text:
      os << "G for p = " << p.value() << ": " << graph.vertices().size() << " vertices, " << graph.edges().size()
         << " edges, out-degree " << p.half() + 1 << ", strongly connected: " << (connected ? "yes" : "no")
         << "\n";
      if (walk) {
        os << "closed walk of length " << walk->labels.size() << " from " << walk->start << " visits "
           << walk->visited.size() << "/" << graph.vertices().size() << " vertices\n";
        os << "labels: " << bracketed(walk->labels) << "\n";
        os << "vertices: " << bracketed(walk->vertices) << "\n";
        os << "replayed in automaton: " << (replayed ? "yes" : "no") << "\n";
      }
      os << (report.verified ? "verified" : "NOT verified") << "\n";
      break;
  }
  report.body = os.str();
  return report;
}

// ---------------------------------------------------------------------------
// Zero density

Report density_report(Prime p, unsigned kmax, Format format) {
  if (format == Format::dot) unsupported("density table", format);
  const Dfao dfao = synthesize(p);
  const std::vector<Fraction> fractions = zero_density(dfao, kmax);

  // Cross-check the transfer counts against a direct oracle scan while that
  // stays cheap.
  constexpr std::uint64_t kOracleLimit = 1'000'000;
  unsigned oracle_k = 0;
  bool oracle_agrees = true;
  {
    std::uint64_t span = 1;
    unsigned k = 0;
    while (k < kmax && span * p.value() <= kOracleLimit) {
      span *= p.value();
      ++k;
    }
    if (k > 0) {
      const std::vector<Residue> stream = catalan_stream(p, span);
      std::uint64_t zeros = 0;
      std::uint64_t next_checkpoint = p.value();
      unsigned checked = 0;
      for (std::uint64_t n = 0; n < span; ++n) {
        if (stream[n].value == 0) ++zeros;
        if (n + 1 == next_checkpoint) {
          oracle_agrees = oracle_agrees && make_fraction(zeros, n + 1) == fractions[checked];
          ++checked;
          next_checkpoint *= p.value();
        }
      }
      oracle_k = k;
    }
  }
  const bool increasing = strictly_increasing(fractions);

  Report report;
  report.verified = increasing && oracle_agrees;
  std::ostringstream os;
  if (format == Format::json) {
    ordered_json j;
    j["p"] = p.value();
    j["kmax"] = kmax;
    auto list = ordered_json::array();
    for (unsigned k = 0; k < fractions.size(); ++k) {
      ordered_json f;
      f["k"] = k + 1;
      f["num"] = fractions[k].num;
      f["den"] = fractions[k].den;
      list.push_back(std::move(f));
    }
    j["fractions"] = std::move(list);
    j["strictly_increasing"] = increasing;
    j["oracle_checked_up_to_k"] = oracle_k;
    j["verified"] = report.verified;
    os << j.dump() << "\n";
  } else if (format == Format::csv) {
    os << "k,numerator,denominator\n";
    for (unsigned k = 0; k < fractions.size(); ++k) {
      os << k + 1 << "," << fractions[k].num << "," << fractions[k].den << "\n";
    }
  } else {
    os << "density of n < p^k with C_n = 0 mod " << p.value() << "\n";
    for (unsigned k = 0; k < fractions.size(); ++k) {
      char line[96];
      std::snprintf(line, sizeof line, "k=%-3u %llu/%llu  (%.6f)\n", k + 1,
                    static_cast<unsigned long long>(fractions[k].num),
                    static_cast<unsigned long long>(fractions[k].den),
                    static_cast<double>(fractions[k].num) / static_cast<double>(fractions[k].den));
      os << line;
    }
    os << "strictly increasing: " << (increasing ? "yes" : "no") << "; oracle cross-check up to k=" << oracle_k
       << ": " << (oracle_agrees ? "agrees" : "DISAGREES") << "\n";
    os << (report.verified ? "verified" : "NOT verified") << "\n";
  }
  report.body = os.str();
  return report;
}

}  // namespace catmod
