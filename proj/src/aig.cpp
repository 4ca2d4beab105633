#include "apxerr/aig.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace apxerr {

namespace {

struct LineReader {
  std::string_view text;
  size_t pos = 0;
  int line = 0;

  bool next(std::string_view& out) {
    if (pos >= text.size()) return false;
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    out = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("aig: line " + std::to_string(line) + ": " + what);
  }
};

std::vector<uint64_t> parse_fields(LineReader& r, std::string_view line, size_t count) {
  std::vector<uint64_t> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc{} || p != line.data() + j)
      r.fail("syntax error, expected unsigned integer");
    out.push_back(v);
    i = j;
  }
  if (out.size() != count)
    r.fail("syntax error, expected " + std::to_string(count) + " fields");
  return out;
}

} // namespace

Netlist parse_aig(std::string_view text) {
  LineReader r{text};
  std::string_view line;
  if (!r.next(line)) throw ParseError("aig: empty document");

  if (line.substr(0, 4) != "aag " && line != "aag")
    r.fail("syntax error, expected 'aag M I L O A' header");
  std::vector<uint64_t> hdr = parse_fields(r, line.substr(3), 5);
  uint64_t maxVar = hdr[0], nIn = hdr[1], nLatch = hdr[2], nOut = hdr[3], nAnd = hdr[4];
  if (nLatch > 0) r.fail("sequential element unsupported (latch present)");
  if (nIn + nAnd > maxVar) r.fail("header maximum variable index too small");

  NetlistBuilder b;
  // literal -> net id; populated lazily for negations and constants
  std::map<uint64_t, NetId> netOfLit;

  std::vector<uint64_t> inputLits;
  for (uint64_t i = 0; i < nIn; ++i) {
    if (!r.next(line)) r.fail("unexpected end of document in inputs");
    uint64_t lit = parse_fields(r, line, 1)[0];
    if (lit < 2 || (lit & 1) || lit > 2 * maxVar) r.fail("bad input literal");
    if (netOfLit.count(lit)) r.fail("input literal declared twice");
    netOfLit[lit] = b.add_input();
    inputLits.push_back(lit);
  }

  std::vector<uint64_t> outputLits;
  for (uint64_t i = 0; i < nOut; ++i) {
    if (!r.next(line)) r.fail("unexpected end of document in outputs");
    uint64_t lit = parse_fields(r, line, 1)[0];
    if (lit > 2 * maxVar + 1) r.fail("output literal out of range");
    outputLits.push_back(lit);
  }

  struct AndLine {
    uint64_t lhs, rhs0, rhs1;
  };
  std::vector<AndLine> ands;
  std::map<uint64_t, bool> lhsSeen;
  for (uint64_t lit : inputLits) lhsSeen[lit] = true;
  for (uint64_t i = 0; i < nAnd; ++i) {
    if (!r.next(line)) r.fail("unexpected end of document in and section");
    std::vector<uint64_t> f = parse_fields(r, line, 3);
    if ((f[0] & 1) || f[0] < 2 || f[0] > 2 * maxVar) r.fail("bad and-gate lhs literal");
    if (lhsSeen.count(f[0])) r.fail("literal defined twice");
    if (f[1] >= f[0] || f[2] >= f[0])
      r.fail("and-gate input literal not below its lhs (cycle or forward reference)");
    lhsSeen[f[0]] = true;
    ands.push_back({f[0], f[1], f[2]});
  }
  // remaining lines: symbols/comments; ignored

  // rhs < lhs everywhere, so lhs order is a topological order
  std::sort(ands.begin(), ands.end(),
            [](const AndLine& a, const AndLine& b2) { return a.lhs < b2.lhs; });

  // lit_net resolves a literal, materializing NOT/const gates on demand.
  auto lit_net = [&](uint64_t lit) -> NetId {
    auto it = netOfLit.find(lit);
    if (it != netOfLit.end()) return it->second;
    NetId net;
    if (lit == 0) {
      net = b.add_const0();
    } else if (lit == 1) {
      net = b.add_const1();
    } else {
      auto base = netOfLit.find(lit ^ 1);
      if (base == netOfLit.end())
        throw ParseError("aig: literal " + std::to_string(lit) + " undefined");
      net = b.add_gate(GateKind::kNot, {base->second});
    }
    netOfLit[lit] = net;
    return net;
  };

  for (const AndLine& a : ands) {
    NetId r0 = lit_net(a.rhs0);
    NetId r1 = lit_net(a.rhs1);
    netOfLit[a.lhs] = b.add_gate(GateKind::kAnd, {r0, r1});
  }

  std::vector<NetId> outs;
  for (uint64_t lit : outputLits) outs.push_back(lit_net(lit));
  return b.take("aig", std::move(outs));
}

std::string write_aig(const Netlist& netlist) {
  netlist.check();

  // literal of each net; inverters fold into polarity, other kinds decompose
  std::vector<uint64_t> litOf(netlist.net_count(), ~0ull);
  uint64_t nextVar = 1;
  std::vector<std::array<uint64_t, 3>> ands;

  for (NetId in : netlist.inputs) litOf[in] = 2 * nextVar++;

  auto mk_and = [&](uint64_t x, uint64_t y) {
    uint64_t lhs = 2 * nextVar++;
    ands.push_back({lhs, x, y});
    return lhs;
  };
  auto mk_or = [&](uint64_t x, uint64_t y) { return mk_and(x ^ 1, y ^ 1) ^ 1; };

  for (const Gate& g : netlist.gates) {
    auto in = [&](size_t i) { return litOf[g.inputs[i]]; };
    uint64_t lit = 0;
    switch (g.kind) {
      case GateKind::kAnd:
      case GateKind::kNand: {
        lit = in(0);
        for (size_t i = 1; i < g.inputs.size(); ++i) lit = mk_and(lit, in(i));
        if (g.kind == GateKind::kNand) lit ^= 1;
        break;
      }
      case GateKind::kOr:
      case GateKind::kNor: {
        lit = in(0);
        for (size_t i = 1; i < g.inputs.size(); ++i) lit = mk_or(lit, in(i));
        if (g.kind == GateKind::kNor) lit ^= 1;
        break;
      }
      case GateKind::kXor:
      case GateKind::kXnor: {
        uint64_t t1 = mk_and(in(0), in(1) ^ 1);
        uint64_t t2 = mk_and(in(0) ^ 1, in(1));
        lit = mk_or(t1, t2);
        if (g.kind == GateKind::kXnor) lit ^= 1;
        break;
      }
      case GateKind::kNot: lit = in(0) ^ 1; break;
      case GateKind::kConst0: lit = 0; break;
      case GateKind::kConst1: lit = 1; break;
    }
    litOf[g.output] = lit;
  }

  std::ostringstream os;
  uint64_t maxVar = nextVar - 1;
  os << "aag " << maxVar << ' ' << netlist.inputs.size() << " 0 "
     << netlist.outputs.size() << ' ' << ands.size() << '\n';
  for (size_t i = 0; i < netlist.inputs.size(); ++i) os << 2 * (i + 1) << '\n';
  for (NetId out : netlist.outputs) os << litOf[out] << '\n';
  for (const auto& a : ands) os << a[0] << ' ' << a[1] << ' ' << a[2] << '\n';
  return os.str();
}

} // namespace apxerr
