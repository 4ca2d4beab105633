#include "apxerr/netlist.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <cassert>

namespace apxerr {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::kAnd: return "AND";
    case GateKind::kOr: return "OR";
    case GateKind::kXor: return "XOR";
    case GateKind::kNot: return "NOT";
    case GateKind::kNand: return "NAND";
    case GateKind::kNor: return "NOR";
    case GateKind::kXnor: return "XNOR";
    case GateKind::kConst0: return "CONST0";
    case GateKind::kConst1: return "CONST1";
  }
  return "?";
}

namespace {

void check_arity(const Gate& g) {
  size_t a = g.inputs.size();
  switch (g.kind) {
    case GateKind::kAnd:
    case GateKind::kOr:
    case GateKind::kNand:
    case GateKind::kNor:
      if (a < 2) throw InputError("netlist: gate needs >= 2 inputs");
      break;
    case GateKind::kXor:
    case GateKind::kXnor:
      if (a != 2) throw InputError("netlist: XOR/XNOR takes exactly 2 inputs");
      break;
    case GateKind::kNot:
      if (a != 1) throw InputError("netlist: NOT takes exactly 1 input");
      break;
    case GateKind::kConst0:
    case GateKind::kConst1:
      if (a != 0) throw InputError("netlist: const gate takes no inputs");
      break;
  }
}

bool eval_gate(GateKind k, const std::vector<NetId>& in, const std::vector<bool>& v) {
  switch (k) {
    case GateKind::kAnd: {
      for (NetId x : in)
        if (!v[x]) return false;
      return true;
    }
    case GateKind::kOr: {
      for (NetId x : in)
        if (v[x]) return true;
      return false;
    }
    case GateKind::kNand: {
      for (NetId x : in)
        if (!v[x]) return true;
      return false;
    }
    case GateKind::kNor: {
      for (NetId x : in)
        if (v[x]) return false;
      return true;
    }
    case GateKind::kXor: return v[in[0]] != v[in[1]];
    case GateKind::kXnor: return v[in[0]] == v[in[1]];
    case GateKind::kNot: return !v[in[0]];
    case GateKind::kConst0: return false;
    case GateKind::kConst1: return true;
  }
  return false;
}

uint64_t eval_gate_words(GateKind k, const std::vector<NetId>& in, const std::vector<uint64_t>& v) {
  switch (k) {
    case GateKind::kAnd: {
      uint64_t r = ~0ull;
      for (NetId x : in) r &= v[x];
      return r;
    }
    case GateKind::kOr: {
      uint64_t r = 0;
      for (NetId x : in) r |= v[x];
      return r;
    }
    case GateKind::kNand: {
      uint64_t r = ~0ull;
      for (NetId x : in) r &= v[x];
      return ~r;
    }
    case GateKind::kNor: {
      uint64_t r = 0;
      for (NetId x : in) r |= v[x];
      return ~r;
    }
    case GateKind::kXor: return v[in[0]] ^ v[in[1]];
    case GateKind::kXnor: return ~(v[in[0]] ^ v[in[1]]);
    case GateKind::kNot: return ~v[in[0]];
    case GateKind::kConst0: return 0;
    case GateKind::kConst1: return ~0ull;
  }
  return 0;
}

} // namespace

void Netlist::check() const {
  std::vector<uint8_t> defined(netCount_, 0);
  for (NetId in : inputs) {
    if (in >= netCount_) throw InputError("netlist: input net out of range");
    if (defined[in]) throw InputError("netlist: input net defined twice");
    defined[in] = 1;
  }
  for (const Gate& g : gates) {
    check_arity(g);
    for (NetId in : g.inputs) {
      if (in >= netCount_ || !defined[in])
        throw InputError("netlist: gate reads undefined net (not acyclic/topological)");
    }
    if (g.output >= netCount_) throw InputError("netlist: gate output out of range");
    if (defined[g.output]) throw InputError("netlist: net defined twice");
    defined[g.output] = 1;
  }
  for (NetId out : outputs) {
    if (out >= netCount_ || !defined[out]) throw InputError("netlist: dangling output reference");
  }
}

std::vector<bool> Netlist::simulate(const std::vector<bool>& inputBits) const {
  if (inputBits.size() != inputs.size())
    throw InputError("simulate: input width mismatch");
  std::vector<bool> v(netCount_, false);
  for (size_t i = 0; i < inputs.size(); ++i) v[inputs[i]] = inputBits[i];
  for (const Gate& g : gates) v[g.output] = eval_gate(g.kind, g.inputs, v);
  std::vector<bool> out(outputs.size());
  for (size_t i = 0; i < outputs.size(); ++i) out[i] = v[outputs[i]];
  return out;
}

std::vector<uint64_t> Netlist::simulate_words(const std::vector<uint64_t>& inputWords) const {
  if (inputWords.size() != inputs.size())
    throw InputError("simulate: input width mismatch");
  std::vector<uint64_t> v(netCount_, 0);
  for (size_t i = 0; i < inputs.size(); ++i) v[inputs[i]] = inputWords[i];
  for (const Gate& g : gates) v[g.output] = eval_gate_words(g.kind, g.inputs, v);
  std::vector<uint64_t> out(outputs.size());
  for (size_t i = 0; i < outputs.size(); ++i) out[i] = v[outputs[i]];
  return out;
}

NetId NetlistBuilder::add_input() {
  NetId id = next_++;
  inputs_.push_back(id);
  return id;
}

NetId NetlistBuilder::add_gate(GateKind kind, std::vector<NetId> gateInputs) {
  Gate g{kind, std::move(gateInputs), next_++};
  check_arity(g);
  for (NetId in : g.inputs)
    if (in >= g.output) throw InvariantError("builder: gate input not yet defined");
  gates_.push_back(std::move(g));
  return gates_.back().output;
}

Netlist NetlistBuilder::take(std::string name, std::vector<NetId> outputs) {
  Netlist n;
  n.name = std::move(name);
  n.inputs = std::move(inputs_);
  n.outputs = std::move(outputs);
  n.gates = std::move(gates_);
  n.set_net_count(next_);
  n.check();
  return n;
}

} // namespace apxerr
