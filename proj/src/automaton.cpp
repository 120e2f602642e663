#include "catmod/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>

#include "catmod/error.hpp"
#include "catmod/oracle.hpp"

namespace catmod {

namespace {

/// Numerators of Lambda_r(series(s)) before the final factor of D on U:
/// both depend on s only, so they are built once and shared by all digits.
struct CartierOperands {
  FpPolynomial u;  // U x^((p-1)a) D^((p-1)b)
  FpPolynomial v;  // V x^((p-1)a) D^((p-1)b + (p+1)/2)
};

CartierOperands cartier_operands(const AutomatonState& s, Prime p) {
  const std::uint64_t pm1 = p.value() - 1;
  const std::uint64_t d_exp = pm1 * s.b;
  CartierOperands ops;
  ops.u = poly_mul(poly_shift(s.u, pm1 * s.a), poly_d_power(d_exp, p), p);
  ops.v = poly_mul(poly_shift(s.v, pm1 * s.a), poly_d_power(d_exp + (p.value() + 1) / 2, p), p);
  return ops;
}

// Lambda_r(F^p H) = F Lambda_r(H), with 1/(x^a D^b) = x^((p-1)a) D^((p-1)b) / (x^a D^b)^p
// and G = G^p D^((p+1)/2) / D^p, gives
//   Lambda_r(series) = (D Lambda_r(ops.u) + G Lambda_r(ops.v)) / (x^a D^(b+1)).
AutomatonState apply_cartier(const CartierOperands& ops, const AutomatonState& s,
                             std::uint32_t r, Prime p) {
  AutomatonState next;
  next.u = poly_mul(poly_cartier(r, ops.u, p), poly_d_power(1, p), p);
  next.v = poly_cartier(r, ops.v, p);
  next.a = s.a;
  next.b = s.b + 1;
  return canonicalize(std::move(next), p);
}

/// First `n` coefficients of G = sqrt(1 - 4x) with G(0) = 1, from G^2 = 1 - 4x.
std::vector<Residue> sqrt_d_series(std::size_t n, Prime p) {
  std::vector<Residue> g(n);
  if (n == 0) return g;
  g[0] = Residue{1};
  const Residue inv2 = fp_inverse(Residue{2}, p);
  for (std::size_t k = 1; k < n; ++k) {
    Residue rhs = k == 1 ? fp_reduce(-4, p) : Residue{0};
    for (std::size_t i = 1; i < k; ++i) rhs = fp_sub(rhs, fp_mul(g[i], g[k - i], p), p);
    g[k] = fp_mul(rhs, inv2, p);
  }
  return g;
}

/// First `n` coefficients of 1/f for f with f(0) = 1.
std::vector<Residue> inverse_series(const FpPolynomial& f, std::size_t n, Prime p) {
  std::vector<Residue> inv(n);
  if (n == 0) return inv;
  inv[0] = Residue{1};
  for (std::size_t k = 1; k < n; ++k) {
    Residue acc{0};
    for (std::size_t i = 1; i <= k && i < f.size(); ++i) {
      acc = fp_add(acc, fp_mul(f.coefficient(i), inv[k - i], p), p);
    }
    inv[k] = fp_sub(Residue{0}, acc, p);
  }
  return inv;
}

Residue leading_unit(const AutomatonState& s) {
  for (std::uint32_t c : s.u.coefficients()) {
    if (c != 0) return Residue{c};
  }
  for (std::uint32_t c : s.v.coefficients()) {
    if (c != 0) return Residue{c};
  }
  return Residue{0};
}

}  // namespace

std::size_t AutomatonStateHash::operator()(const AutomatonState& s) const noexcept {
  std::size_t h = hash_value(s.u);
  h ^= hash_value(s.v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= (std::size_t{s.a} << 32 | s.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

AutomatonState canonicalize(AutomatonState s, Prime p) {
  while (s.a > 0) {
    auto u = poly_divide_by_x(s.u);
    auto v = poly_divide_by_x(s.v);
    if (!u || !v) break;
    s.u = std::move(*u);
    s.v = std::move(*v);
    --s.a;
  }
  while (s.b > 0) {
    auto u = poly_divide_by_d(s.u, p);
    auto v = poly_divide_by_d(s.v, p);
    if (!u || !v) break;
    s.u = std::move(*u);
    s.v = std::move(*v);
    --s.b;
  }
  return s;
}

AutomatonState initial_state(Prime p) {
  const Residue inv2 = fp_inverse(Residue{2}, p);
  AutomatonState s;
  s.u = FpPolynomial::constant(inv2);
  s.v = FpPolynomial::constant(fp_sub(Residue{0}, inv2, p));
  s.a = 1;
  s.b = 0;
  return canonicalize(std::move(s), p);
}

AutomatonState cartier_transition(const AutomatonState& s, std::uint32_t r, Prime p) {
  if (r >= p.value()) throw Error(ErrorCode::invalid_argument, "cartier_transition: digit out of range");
  return apply_cartier(cartier_operands(s, p), s, r, p);
}

Residue output(const AutomatonState& s, Prime p) {
  const std::size_t order = std::size_t{s.a} + 1;
  const std::vector<Residue> g = sqrt_d_series(order, p);
  std::vector<Residue> numerator(order);
  for (std::size_t i = 0; i < order; ++i) {
    numerator[i] = s.u.coefficient(i);
    for (std::size_t j = 0; j <= i; ++j) {
      numerator[i] = fp_add(numerator[i], fp_mul(s.v.coefficient(j), g[i - j], p), p);
    }
  }
  const std::vector<Residue> d_inv = inverse_series(poly_d_power(s.b, p), order, p);
  std::vector<Residue> series(order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      series[i] = fp_add(series[i], fp_mul(numerator[j], d_inv[i - j], p), p);
    }
  }
  for (std::size_t i = 0; i < s.a; ++i) {
    if (series[i].value != 0) {
      throw Error(ErrorCode::not_power_series,
                  "not a power series: coefficient of x^" + std::to_string(i) + " survives over x^" +
                      std::to_string(s.a));
    }
  }
  return series[s.a];
}

// ---------------------------------------------------------------------------
// Dfao

Dfao::Dfao(Prime p, std::vector<AutomatonState> states, std::vector<std::uint32_t> delta,
           std::vector<Residue> outputs, std::uint32_t q0)
    : p_(p), states_(std::move(states)), delta_(std::move(delta)), outputs_(std::move(outputs)), q0_(q0) {
  if (states_.size() != outputs_.size() || delta_.size() != outputs_.size() * p_.value() ||
      q0_ >= outputs_.size()) {
    throw Error(ErrorCode::invalid_argument, "Dfao: inconsistent table sizes");
  }
  for (std::uint32_t t : delta_) {
    if (t >= outputs_.size()) throw Error(ErrorCode::invalid_argument, "Dfao: transition out of range");
  }
}

std::uint32_t Dfao::run(std::uint32_t from, std::span<const std::uint32_t> digits) const {
  std::uint32_t s = from;
  for (std::uint32_t d : digits) s = next(s, d);
  return s;
}

Dfao synthesize(Prime p, std::optional<std::uint64_t> state_cap) {
  const std::uint64_t cap = state_cap.value_or(default_state_cap(p));
  if (cap == 0) throw Error(ErrorCode::invalid_argument, "synthesize: state cap must be positive");

  std::vector<AutomatonState> states;
  std::unordered_map<AutomatonState, std::uint32_t, AutomatonStateHash> index;
  std::vector<std::uint32_t> delta;

  auto intern = [&](AutomatonState s) -> std::uint32_t {
    if (auto it = index.find(s); it != index.end()) return it->second;
    if (states.size() >= cap) {
      throw Error(ErrorCode::state_cap_exceeded,
                  "more than " + std::to_string(cap) + " states");
    }
    const auto id = static_cast<std::uint32_t>(states.size());
    index.emplace(s, id);
    states.push_back(std::move(s));
    return id;
  };

  intern(initial_state(p));
  // Discovery order is BFS order, so row i of delta is filled when state i is expanded.
  for (std::size_t i = 0; i < states.size(); ++i) {
    const AutomatonState current = states[i];
    const CartierOperands ops = cartier_operands(current, p);
    for (std::uint32_t r = 0; r < p.value(); ++r) {
      delta.push_back(intern(apply_cartier(ops, current, r, p)));
    }
  }

  std::vector<Residue> outputs;
  outputs.reserve(states.size());
  for (const auto& s : states) outputs.push_back(output(s, p));
  return Dfao(p, std::move(states), std::move(delta), std::move(outputs), 0);
}

Residue eval_digits(const Dfao& dfao, std::span<const std::uint32_t> digits) {
  for (std::uint32_t d : digits) {
    if (d >= dfao.prime().value()) throw Error(ErrorCode::invalid_argument, "eval: digit out of range");
  }
  return dfao.out(dfao.run(dfao.initial(), digits));
}

Residue eval(const Dfao& dfao, std::uint64_t n) {
  const std::uint64_t base = dfao.prime().value();
  std::uint32_t s = dfao.initial();
  do {
    s = dfao.next(s, static_cast<std::uint32_t>(n % base));
    n /= base;
  } while (n > 0);
  return dfao.out(s);
}

Dfao minimize(const Dfao& dfao) {
  const std::size_t n = dfao.state_count();
  const std::uint32_t p = dfao.prime().value();

  // Moore refinement: block ids are assigned by first occurrence, so the
  // partition is canonical and the loop stops when the block count is stable.
  std::vector<std::uint32_t> block(n);
  std::size_t blocks = 0;
  {
    std::map<std::uint32_t, std::uint32_t> by_output;
    for (std::size_t s = 0; s < n; ++s) {
      auto [it, inserted] = by_output.emplace(dfao.out(static_cast<std::uint32_t>(s)).value,
                                              static_cast<std::uint32_t>(by_output.size()));
      block[s] = it->second;
    }
    blocks = by_output.size();
  }
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signatures;
    std::vector<std::uint32_t> refined(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::uint32_t> sig;
      sig.reserve(p + 1);
      sig.push_back(block[s]);
      for (std::uint32_t d = 0; d < p; ++d) sig.push_back(block[dfao.next(static_cast<std::uint32_t>(s), d)]);
      auto [it, inserted] = signatures.emplace(std::move(sig), static_cast<std::uint32_t>(signatures.size()));
      refined[s] = it->second;
    }
    block = std::move(refined);
    if (signatures.size() == blocks) break;
    blocks = signatures.size();
  }

  std::vector<std::uint32_t> representative(blocks, UINT32_MAX);
  for (std::size_t s = 0; s < n; ++s) {
    representative[block[s]] = std::min(representative[block[s]], static_cast<std::uint32_t>(s));
  }

  // Renumber reachable blocks breadth-first from the initial block.
  std::vector<std::uint32_t> new_id(blocks, UINT32_MAX);
  std::vector<std::uint32_t> order;
  new_id[block[dfao.initial()]] = 0;
  order.push_back(block[dfao.initial()]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t rep = representative[order[i]];
    for (std::uint32_t d = 0; d < p; ++d) {
      const std::uint32_t target = block[dfao.next(rep, d)];
      if (new_id[target] == UINT32_MAX) {
        new_id[target] = static_cast<std::uint32_t>(order.size());
        order.push_back(target);
      }
    }
  }

  std::vector<AutomatonState> states;
  std::vector<Residue> outputs;
  std::vector<std::uint32_t> delta;
  for (std::uint32_t b : order) {
    const std::uint32_t rep = representative[b];
    states.push_back(dfao.state(rep));
    outputs.push_back(dfao.out(rep));
    for (std::uint32_t d = 0; d < p; ++d) delta.push_back(new_id[block[dfao.next(rep, d)]]);
  }
  return Dfao(dfao.prime(), std::move(states), std::move(delta), std::move(outputs), 0);
}

// ---------------------------------------------------------------------------
// Constant family

FamilyTable::FamilyTable(std::vector<std::vector<FamilyMember>> families, std::size_t constant_id,
                         std::size_t state_count)
    : families_(std::move(families)), constant_id_(constant_id), constant_label_(state_count) {
  for (const FamilyMember& m : families_.at(constant_id_)) constant_label_.at(m.state) = m.label;
}

std::optional<std::uint32_t> FamilyTable::constant_member(Residue label) const {
  for (const FamilyMember& m : constant_family()) {
    if (m.label == label) return m.state;
  }
  return std::nullopt;
}

std::optional<Residue> FamilyTable::constant_label(std::uint32_t state) const {
  if (state >= constant_label_.size()) return std::nullopt;
  return constant_label_[state];
}

FamilyTable detect_constant_family(const Dfao& dfao) {
  const Prime p = dfao.prime();
  std::unordered_map<AutomatonState, std::size_t, AutomatonStateHash> by_key;
  std::vector<std::vector<FamilyMember>> families;
  std::vector<std::optional<std::pair<std::size_t, Residue>>> membership(dfao.state_count());

  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
    const AutomatonState& st = dfao.state(s);
    if (st.is_zero()) continue;
    const Residue label = leading_unit(st);
    const Residue inv = fp_inverse(label, p);
    AutomatonState key{poly_scale(st.u, inv, p), poly_scale(st.v, inv, p), st.a, st.b};
    auto [it, inserted] = by_key.emplace(std::move(key), families.size());
    if (inserted) families.emplace_back();
    for (const FamilyMember& m : families[it->second]) {
      if (m.label == label) {
        throw Error(ErrorCode::property_violation, "family labels are not pairwise distinct");
      }
    }
    families[it->second].push_back({s, label});
    membership[s] = std::make_pair(it->second, label);
  }

  std::vector<std::size_t> qualifying;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& members = families[f];
    const bool has_unit = std::any_of(members.begin(), members.end(),
                                      [](const FamilyMember& m) { return m.label == Residue{1}; });
    if (!has_unit) continue;
    bool multiplier_holds = true;
    for (const FamilyMember& m : members) {
      for (std::uint32_t d = 0; d <= p.half() && multiplier_holds; ++d) {
        const auto& target = membership[dfao.next(m.state, d)];
        const Residue want = fp_mul(m.label, lucas_binomial(2 * d, d, p), p);
        multiplier_holds = target && target->first == f && target->second == want;
      }
    }
    if (multiplier_holds) qualifying.push_back(f);
  }
  if (qualifying.empty()) {
    throw Error(ErrorCode::no_qualifying_family,
                "no qualifying family: no scalar class is closed under the central-binomial multipliers");
  }
  if (qualifying.size() > 1) {
    throw Error(ErrorCode::ambiguous_family,
                "ambiguous family: " + std::to_string(qualifying.size()) + " classes qualify");
  }
  return FamilyTable(std::move(families), qualifying.front(), dfao.state_count());
}

std::uint32_t digit_pair_action(const Dfao& dfao, const FamilyTable& families, std::uint32_t member,
                                std::uint32_t d) {
  const Prime p = dfao.prime();
  if (d > p.half()) throw Error(ErrorCode::invalid_argument, "digit_pair_action: d > (p-1)/2");
  const auto label = families.constant_label(member);
  if (!label) throw Error(ErrorCode::invalid_argument, "digit_pair_action: state is not a constant-family member");
  const std::uint32_t target = dfao.next(member, d);
  const auto target_label = families.constant_label(target);
  const Residue want = fp_mul(*label, lucas_binomial(2 * d, d, p), p);
  if (!target_label || *target_label != want) {
    throw Error(ErrorCode::property_violation,
                "digit_pair_action: digit " + std::to_string(d) + " from label " +
                    std::to_string(label->value) + " leaves the constant family");
  }
  return target;
}

// ---------------------------------------------------------------------------
// Counting and pumping

std::vector<std::uint64_t> transfer_counts(const Dfao& dfao, unsigned k) {
  const std::uint32_t p = dfao.prime().value();
  if (k == 0) throw Error(ErrorCode::invalid_argument, "transfer_counts: k must be >= 1");
  unsigned __int128 total = 1;
  for (unsigned i = 0; i < k; ++i) {
    total *= p;
    if (total > UINT64_MAX) throw Error(ErrorCode::overflow_range, "transfer_counts: p^k exceeds 64 bits");
  }
  std::vector<std::uint64_t> weight(dfao.state_count(), 0);
  weight[dfao.initial()] = 1;
  for (unsigned step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(dfao.state_count(), 0);
    for (std::uint32_t s = 0; s < dfao.state_count(); ++s) {
      if (weight[s] == 0) continue;
      for (std::uint32_t d = 0; d < p; ++d) next[dfao.next(s, d)] += weight[s];
    }
    weight = std::move(next);
  }
  std::vector<std::uint64_t> counts(p, 0);
  for (std::uint32_t s = 0; s < dfao.state_count(); ++s) counts[dfao.out(s).value] += weight[s];
  return counts;
}

namespace {

/// Shortest words from `from` to every reachable state (BFS, digits ascending).
/// A state's word is reconstructed from parent links.
struct WordTree {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> digit;
  std::vector<std::uint32_t> order;  // visiting order
  std::vector<bool> seen;

  std::vector<std::uint32_t> word_to(std::uint32_t target, std::uint32_t root) const {
    std::vector<std::uint32_t> w;
    while (target != root) {
      w.push_back(digit[target]);
      target = parent[target];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

WordTree bfs_words(const Dfao& dfao, std::uint32_t from) {
  const std::size_t n = dfao.state_count();
  WordTree t{std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 0), {}, std::vector<bool>(n, false)};
  t.seen[from] = true;
  t.order.push_back(from);
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const std::uint32_t s = t.order[i];
    for (std::uint32_t d = 0; d < dfao.prime().value(); ++d) {
      const std::uint32_t x = dfao.next(s, d);
      if (t.seen[x]) continue;
      t.seen[x] = true;
      t.parent[x] = s;
      t.digit[x] = d;
      t.order.push_back(x);
    }
  }
  return t;
}

}  // namespace

std::vector<std::uint32_t> pumped_digits(const PumpingCertificate& cert, unsigned j) {
  std::vector<std::uint32_t> w = cert.prefix;
  for (unsigned i = 0; i < j; ++i) w.insert(w.end(), cert.pump.begin(), cert.pump.end());
  w.insert(w.end(), cert.suffix.begin(), cert.suffix.end());
  return w;
}

PumpingCertificate pumping_certificate(const Dfao& dfao, Residue r) {
  const std::uint32_t p = dfao.prime().value();
  const WordTree from_start = bfs_words(dfao, dfao.initial());

  for (std::uint32_t hub : from_start.order) {
    const WordTree from_hub = bfs_words(dfao, hub);

    // Shortest cycle through hub: a word to some t with an edge t -> hub.
    std::optional<std::vector<std::uint32_t>> cycle;
    for (std::uint32_t t : from_hub.order) {
      for (std::uint32_t d = 0; d < p && !cycle; ++d) {
        if (dfao.next(t, d) != hub) continue;
        auto w = from_hub.word_to(t, hub);
        w.push_back(d);
        cycle = std::move(w);
      }
      if (cycle) break;
    }
    if (!cycle) continue;

    // Shortest exit word ending in a non-zero digit that lands on output r.
    std::optional<std::vector<std::uint32_t>> exit;
    for (std::uint32_t t : from_hub.order) {
      for (std::uint32_t d = 1; d < p && !exit; ++d) {
        if (dfao.out(dfao.next(t, d)) != r) continue;
        auto w = from_hub.word_to(t, hub);
        w.push_back(d);
        exit = std::move(w);
      }
      if (exit) break;
    }
    if (!exit) continue;

    PumpingCertificate cert{from_start.word_to(hub, dfao.initial()), std::move(*cycle), std::move(*exit)};
    for (unsigned j = 0; j <= 3; ++j) {
      if (eval_digits(dfao, pumped_digits(cert, j)) != r) {
        throw Error(ErrorCode::property_violation, "pumping certificate failed its own check");
      }
    }
    return cert;
  }
  throw Error(ErrorCode::property_violation,
              "no pumping certificate for residue " + std::to_string(r.value));
}

}  // namespace catmod
