#include "omegalab/netcomplexity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "omegalab/errors.hpp"
#include "omegalab/prefix_code.hpp"

namespace omegalab {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

unsigned index_bits(unsigned n) { return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1)); }

void check_state(const StateVector& s) {
  if (s.n < 1 || s.n > 4) throw std::invalid_argument("StateVector: n must be in [1, 4]");
  if (s.amps.size() != (std::size_t{1} << s.n)) {
    throw std::invalid_argument("StateVector: amplitude count must be 2^n");
  }
}

}  // namespace

StateVector StateVector::zero_state(unsigned n) {
  StateVector s;
  s.n = n;
  s.amps.assign(std::size_t{1} << n, {0.0, 0.0});
  s.amps[0] = {1.0, 0.0};
  return s;
}

double StateVector::norm_sq() const {
  double total = 0.0;
  for (const auto& a : amps) total += std::norm(a);
  return total;
}

void apply_gate(StateVector& s, const Gate& g) {
  const std::size_t dim = s.amps.size();
  const std::size_t t = std::size_t{1} << g.target;
  if (t >= dim) throw std::invalid_argument("apply_gate: target out of range");
  switch (g.kind) {
    case GateKind::H:
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        auto a = s.amps[i];
        auto b = s.amps[i | t];
        s.amps[i] = (a + b) * kInvSqrt2;
        s.amps[i | t] = (a - b) * kInvSqrt2;
      }
      break;
    case GateKind::T: {
      const std::complex<double> phase(kInvSqrt2, kInvSqrt2);  // e^{i pi/4}
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) s.amps[i] *= phase;
      }
      break;
    }
    case GateKind::CNOT: {
      const std::size_t c = std::size_t{1} << g.control;
      if (c >= dim || g.control == g.target) {
        throw std::invalid_argument("apply_gate: bad CNOT operands");
      }
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
      }
      break;
    }
  }
}

StateVector apply_circuit(const Circuit& c, unsigned n) {
  StateVector s = StateVector::zero_state(n);
  for (const Gate& g : c.ops) apply_gate(s, g);
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw std::invalid_argument("fidelity: qubit counts differ");
  std::complex<double> inner{0.0, 0.0};
  for (std::size_t i = 0; i < a.amps.size(); ++i) inner += std::conj(a.amps[i]) * b.amps[i];
  return std::abs(inner);
}

namespace {

std::vector<Gate> gate_alphabet(unsigned n) {
  // Encoding order (opcode, target, control), so breadth-first search visits
  // circuits in encoded lexicographic order within each length.
  std::vector<Gate> out;
  for (unsigned t = 0; t < n; ++t) out.push_back({GateKind::H, static_cast<std::uint8_t>(t), 0});
  for (unsigned t = 0; t < n; ++t) out.push_back({GateKind::T, static_cast<std::uint8_t>(t), 0});
  for (unsigned t = 0; t < n; ++t) {
    for (unsigned c = 0; c < n; ++c) {
      if (c != t) out.push_back({GateKind::CNOT, static_cast<std::uint8_t>(t),
                                 static_cast<std::uint8_t>(c)});
    }
  }
  return out;
}

// Canonical key of a state up to global phase, quantized coarsely enough to
// absorb float noise but far below the amplitude lattice spacing at these
// search depths.
std::vector<std::int32_t> canonical_key(const StateVector& s) {
  double max_abs = 0.0;
  for (const auto& a : s.amps) max_abs = std::max(max_abs, std::abs(a));
  std::size_t anchor = 0;
  for (std::size_t i = 0; i < s.amps.size(); ++i) {
    if (std::abs(s.amps[i]) >= max_abs - 1e-9) {
      anchor = i;
      break;
    }
  }
  std::complex<double> rot = std::conj(s.amps[anchor]) / std::abs(s.amps[anchor]);
  std::vector<std::int32_t> key;
  key.reserve(2 * s.amps.size());
  for (const auto& a : s.amps) {
    auto r = a * rot;
    key.push_back(static_cast<std::int32_t>(std::lround(r.real() * 16384.0)));
    key.push_back(static_cast<std::int32_t>(std::lround(r.imag() * 16384.0)));
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::int32_t>& key) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::int32_t v : key) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B97F4A7C15ULL +
           (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::size_t kSearchNodeBudget = 6'000'000;

}  // namespace

std::optional<Circuit> synthesize(const StateVector& target, const SynthesisConfig& cfg) {
  check_state(target);
  if (cfg.n != target.n) throw std::invalid_argument("synthesize: config/target qubit mismatch");
  const double bar = 1.0 - cfg.epsilon;
  const unsigned max_gates = cfg.effective_max_gates();

  StateVector start = StateVector::zero_state(cfg.n);
  if (fidelity(target, start) >= bar) return Circuit{};

  const std::vector<Gate> alphabet = gate_alphabet(cfg.n);
  struct Node {
    StateVector state;
    Circuit circuit;
  };
  std::unordered_set<std::vector<std::int32_t>, KeyHash> visited;
  visited.insert(canonical_key(start));
  std::vector<Node> frontier{Node{std::move(start), Circuit{}}};

  for (unsigned depth = 1; depth <= max_gates; ++depth) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (const Gate& g : alphabet) {
        // An immediately repeated self-inverse gate can never be minimal.
        if (!node.circuit.ops.empty() && g.kind != GateKind::T &&
            node.circuit.ops.back() == g) {
          continue;
        }
        StateVector child = node.state;
        apply_gate(child, g);
        if (fidelity(target, child) >= bar) {
          Circuit found = node.circuit;
          found.ops.push_back(g);
          return found;
        }
        auto key = canonical_key(child);
        if (!visited.insert(std::move(key)).second) continue;
        Node child_node;
        child_node.state = std::move(child);
        child_node.circuit = node.circuit;
        child_node.circuit.ops.push_back(g);
        next.push_back(std::move(child_node));
        if (visited.size() > kSearchNodeBudget) {
          throw CapExceededError("synthesize: search exceeded the node budget");
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;  // state space exhausted below max_gates
  }
  return std::nullopt;
}

BitString encode_circuit(const Circuit& c, unsigned n) {
  const unsigned tbits = index_bits(n);
  BitString body;
  auto push_index = [&](unsigned v) {
    for (int i = static_cast<int>(tbits) - 1; i >= 0; --i) body.push_back((v >> i) & 1u);
  };
  for (const Gate& g : c.ops) {
    unsigned op = static_cast<unsigned>(g.kind);
    body.push_back((op >> 1) & 1u);
    body.push_back(op & 1u);
    push_index(g.target);
    if (g.kind == GateKind::CNOT) push_index(g.control);
  }
  return encode_efficient(body);
}

std::optional<Circuit> decode_circuit(const BitString& bits, unsigned n) {
  BitStringSource source(bits);
  auto body = decode_efficient(source);
  if (!body || body->consumed != bits.size()) return std::nullopt;
  const unsigned tbits = index_bits(n);
  const BitString& payload = body->value;
  Circuit out;
  std::size_t pos = 0;
  auto read_index = [&](unsigned* v) {
    if (pos + tbits > payload.size()) return false;
    unsigned r = 0;
    for (unsigned i = 0; i < tbits; ++i) r = (r << 1) | static_cast<unsigned>(payload[pos++]);
    *v = r;
    return true;
  };
  while (pos < payload.size()) {
    if (pos + 2 > payload.size()) return std::nullopt;
    unsigned op = static_cast<unsigned>(payload[pos] << 1 | payload[pos + 1]);
    pos += 2;
    if (op > 2) return std::nullopt;
    Gate g;
    g.kind = static_cast<GateKind>(op);
    unsigned t = 0;
    if (!read_index(&t) || t >= n) return std::nullopt;
    g.target = static_cast<std::uint8_t>(t);
    if (g.kind == GateKind::CNOT) {
      unsigned ctl = 0;
      if (!read_index(&ctl) || ctl >= n || ctl == t) return std::nullopt;
      g.control = static_cast<std::uint8_t>(ctl);
    }
    out.ops.push_back(g);
  }
  return out;
}

std::optional<unsigned> h_net_upper(const StateVector& target, const SynthesisConfig& cfg) {
  auto circuit = synthesize(target, cfg);
  if (!circuit) return std::nullopt;
  return static_cast<unsigned>(encode_circuit(*circuit, cfg.n).size());
}

unsigned schmidt_rank(const StateVector& s, std::uint32_t cut_mask) {
  check_state(s);
  const std::uint32_t full = (std::uint32_t{1} << s.n) - 1;
  if (cut_mask == 0 || (cut_mask & ~full) || cut_mask == full) {
    throw std::invalid_argument("schmidt_rank: cut must be a nontrivial proper subset");
  }
  const unsigned rows_bits = static_cast<unsigned>(std::popcount(cut_mask));
  const unsigned cols_bits = s.n - rows_bits;
  Eigen::MatrixXcd m(1 << rows_bits, 1 << cols_bits);
  for (std::size_t i = 0; i < s.amps.size(); ++i) {
    unsigned r = 0, c = 0, rpos = 0, cpos = 0;
    for (unsigned q = 0; q < s.n; ++q) {
      unsigned bit = (static_cast<unsigned>(i) >> q) & 1u;
      if (cut_mask & (1u << q)) {
        r |= bit << rpos++;
      } else {
        c |= bit << cpos++;
      }
    }
    m(r, c) = s.amps[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  unsigned rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-9) ++rank;
  }
  return rank;
}

EntanglementReport classify_entanglement(const StateVector& s) {
  check_state(s);
  EntanglementReport report;
  bool all_one = true;
  bool all_max = true;
  const std::uint32_t full = (std::uint32_t{1} << s.n) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;  // one representative per bipartition
    unsigned rank = schmidt_rank(s, mask);
    report.ranks.emplace_back(mask, rank);
    unsigned a = static_cast<unsigned>(std::popcount(mask));
    unsigned max_rank = 1u << std::min(a, s.n - a);
    if (rank != 1) all_one = false;
    if (rank != max_rank) all_max = false;
  }
  if (report.ranks.empty() || all_one) {
    report.classification = EntanglementReport::Class::Product;
  } else if (all_max) {
    report.classification = EntanglementReport::Class::MaxRankAllCuts;
  } else {
    report.classification = EntanglementReport::Class::Entangled;
  }
  if (s.n == 2 && !report.ranks.empty()) {
    report.schmidt_measure_2q = std::log2(static_cast<double>(report.ranks.front().second));
  }
  return report;
}

StateVector plus_state(unsigned n) {
  StateVector s = StateVector::zero_state(n);
  const double amp = std::pow(kInvSqrt2, static_cast<double>(n));
  for (auto& a : s.amps) a = {amp, 0.0};
  return s;
}

StateVector bell_state() {
  StateVector s = StateVector::zero_state(2);
  s.amps[0] = {kInvSqrt2, 0.0};
  s.amps[3] = {kInvSqrt2, 0.0};
  return s;
}

StateVector ghz_state(unsigned n) {
  StateVector s = StateVector::zero_state(n);
  s.amps[0] = {kInvSqrt2, 0.0};
  s.amps[s.amps.size() - 1] = {kInvSqrt2, 0.0};
  return s;
}

namespace {

std::complex<double> gaussian_pair(Rng& rng) {
  double u1 = rng.next_unit();
  double u2 = rng.next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

void normalize(StateVector* s) {
  double norm = std::sqrt(s->norm_sq());
  for (auto& a : s->amps) a /= norm;
}

}  // namespace

StateVector haar_random_state(unsigned n, Rng& rng) {
  StateVector s = StateVector::zero_state(n);
  for (auto& a : s.amps) a = gaussian_pair(rng);
  normalize(&s);
  return s;
}

StateVector random_product_state(unsigned n, Rng& rng) {
  StateVector s = StateVector::zero_state(n);
  s.amps.assign(s.amps.size(), {1.0, 0.0});
  for (unsigned q = 0; q < n; ++q) {
    std::complex<double> a0 = gaussian_pair(rng);
    std::complex<double> a1 = gaussian_pair(rng);
    double norm = std::sqrt(std::norm(a0) + std::norm(a1));
    a0 /= norm;
    a1 /= norm;
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
      s.amps[i] *= (i >> q) & 1u ? a1 : a0;
    }
  }
  return s;
}

}  // namespace omegalab
