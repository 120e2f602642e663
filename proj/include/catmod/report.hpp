#pragma once

// Serializations (JSON, DOT, CSV, text) and the verified reports behind the
// command-line subcommands. Every function here is deterministic: identical
// inputs produce byte-identical strings.

#include <cstdint>
#include <optional>
#include <string>

#include "catmod/algebra.hpp"
#include "catmod/automaton.hpp"
#include "catmod/constant_graph.hpp"
#include "catmod/coverage.hpp"

namespace catmod {

enum class Format { text, json, dot, csv };

/// {"p":..,"q0":..,"outputs":[..],"delta":[[..],..]}, states in index order.
std::string dfao_to_json(const Dfao& dfao);
/// One node per state labelled "s{i}/{out}"; digits sharing an endpoint pair
/// are merged into one comma-separated edge label.
std::string dfao_to_dot(const Dfao& dfao);
/// Human-readable state table.
std::string dfao_to_text(const Dfao& dfao);
/// Header state,output,d0..d{p-1}; one row per state.
std::string dfao_to_csv(const Dfao& dfao);
std::string emit_dfao(const Dfao& dfao, Format format);
std::string graph_to_dot(const ConstantGraph& graph);
/// {"start":..,"labels":[..],"vertices":[..]}
std::string walk_to_json(const WalkCertificate& walk);

/// Rendered report plus whether every inline verification passed.
struct Report {
  std::string body;
  bool verified = true;
};

Report coverage_report(Prime p, std::optional<std::uint64_t> bound, Format format);
/// r is reduced mod p first; a zero residue throws ErrorCode::invalid_argument.
Report decompose_report(Prime p, std::uint64_t r, Format format);
Report graph_report(Prime p, bool with_walk, Format format);
Report density_report(Prime p, unsigned kmax, Format format);

}  // namespace catmod
