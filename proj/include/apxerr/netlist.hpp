#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace apxerr {

using NetId = uint32_t;

enum class GateKind : uint8_t {
  kAnd,
  kOr,
  kXor,
  kNot,
  kNand,
  kNor,
  kXnor,
  kConst0,
  kConst1,
};

const char* gate_kind_name(GateKind k);

struct Gate {
  GateKind kind;
  std::vector<NetId> inputs;
  NetId output;
};

/// Gate-level combinational netlist. Nets are dense ids; gates are stored in
/// topological order (each gate reads primary inputs or outputs of earlier
/// gates only). `check()` validates single definition, no dangling references
/// and gate arities.
struct Netlist {
  std::string name;
  std::vector<NetId> inputs;
  std::vector<NetId> outputs;
  std::vector<Gate> gates;

  NetId net_count() const { return netCount_; }
  void set_net_count(NetId n) { netCount_ = n; }

  void check() const;

  std::vector<bool> simulate(const std::vector<bool>& inputBits) const;

  // Bit-parallel variant: each word carries 64 independent input patterns.
  std::vector<uint64_t> simulate_words(const std::vector<uint64_t>& inputWords) const;

 private:
  NetId netCount_ = 0;
};

/// Allocates dense net ids and accumulates gates in definition order.
class NetlistBuilder {
 public:
  NetId add_input();
  NetId add_gate(GateKind kind, std::vector<NetId> gateInputs);
  NetId add_const0() { return add_gate(GateKind::kConst0, {}); }
  NetId add_const1() { return add_gate(GateKind::kConst1, {}); }

  NetId net_count() const { return next_; }

  Netlist take(std::string name, std::vector<NetId> outputs);

 private:
  NetId next_ = 0;
  std::vector<NetId> inputs_;
  std::vector<Gate> gates_;
};

} // namespace apxerr
