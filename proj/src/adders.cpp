#include "apxerr/adders.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>

namespace apxerr {

const char* adder_family_name(AdderFamily f) {
  switch (f) {
    case AdderFamily::kExact: return "adder";
    case AdderFamily::kTrunc: return "trunc";
    case AdderFamily::kLoa: return "loa";
    case AdderFamily::kAma1: return "ama1";
    case AdderFamily::kAma2: return "ama2";
    case AdderFamily::kAma5: return "ama5";
    case AdderFamily::kAxa2: return "axa2";
    case AdderFamily::kGear: return "gear";
  }
  return "?";
}

void AdderSpec::check() const {
  if (width < 1) throw InputError("adder spec: width must be >= 1");
  if (family == AdderFamily::kGear) {
    if (gearR < 1 || gearP < 0 || gearR + gearP > width)
      throw InputError("adder spec: gear needs R >= 1, P >= 0, R+P <= width");
  } else {
    if (approxBits < 0 || approxBits > width)
      throw InputError("adder spec: 0 <= approxBits <= width required");
  }
}

namespace {

struct FullAdderOut {
  NetId sum;
  NetId carry;
};

NetId majority(NetlistBuilder& b, NetId x, NetId y, NetId z) {
  NetId xy = b.add_gate(GateKind::kAnd, {x, y});
  NetId xz = b.add_gate(GateKind::kAnd, {x, z});
  NetId yz = b.add_gate(GateKind::kAnd, {y, z});
  return b.add_gate(GateKind::kOr, {xy, xz, yz});
}

FullAdderOut exact_cell(NetlistBuilder& b, NetId a, NetId x, NetId cin) {
  NetId t = b.add_gate(GateKind::kXor, {a, x});
  NetId sum = b.add_gate(GateKind::kXor, {t, cin});
  NetId g = b.add_gate(GateKind::kAnd, {a, x});
  NetId p = b.add_gate(GateKind::kAnd, {t, cin});
  NetId carry = b.add_gate(GateKind::kOr, {g, p});
  return {sum, carry};
}

// AMA1 (Gupta et al. 2013): sum errs at (a,b,cin) = (0,1,0) and (1,0,1).
FullAdderOut ama1_cell(NetlistBuilder& b, NetId a, NetId x, NetId cin) {
  NetId nb = b.add_gate(GateKind::kNot, {x});
  NetId ac = b.add_gate(GateKind::kOr, {a, cin});
  NetId t1 = b.add_gate(GateKind::kAnd, {nb, ac});
  NetId t2 = b.add_gate(GateKind::kAnd, {a, x, cin});
  NetId sum = b.add_gate(GateKind::kOr, {t1, t2});
  NetId carry = majority(b, a, x, cin);
  return {sum, carry};
}

// AMA2 (Gupta et al. 2013): sum = ~carry; errs at 000 and 111.
FullAdderOut ama2_cell(NetlistBuilder& b, NetId a, NetId x, NetId cin) {
  NetId carry = majority(b, a, x, cin);
  NetId sum = b.add_gate(GateKind::kNot, {carry});
  return {sum, carry};
}

// AMA5 (Gupta et al. 2013): both outputs wired to b.
FullAdderOut ama5_cell(NetlistBuilder&, NetId, NetId x, NetId) { return {x, x}; }

// AXA2 (Yang et al. 2013): sum = xnor(a,b), correct exactly when cin = 1.
FullAdderOut axa2_cell(NetlistBuilder& b, NetId a, NetId x, NetId cin) {
  NetId sum = b.add_gate(GateKind::kXnor, {a, x});
  NetId carry = majority(b, a, x, cin);
  return {sum, carry};
}

EmittedAdder emit_ripple(NetlistBuilder& b, const std::vector<NetId>& a,
                         const std::vector<NetId>& x, NetId cin) {
  EmittedAdder out;
  NetId carry = cin;
  for (size_t i = 0; i < a.size(); ++i) {
    FullAdderOut fa = exact_cell(b, a[i], x[i], carry);
    out.sum.push_back(fa.sum);
    carry = fa.carry;
  }
  out.carryOut = carry;
  return out;
}

EmittedAdder emit_lpaa(NetlistBuilder& b, const std::vector<NetId>& a,
                       const std::vector<NetId>& x, const AdderSpec& spec) {
  int w = spec.width;
  int k = spec.approxBits;
  EmittedAdder out;
  NetId upperCin = 0;
  bool haveCin = false;

  if (spec.family == AdderFamily::kTrunc) {
    for (int i = 0; i < k; ++i) out.sum.push_back(b.add_const0());
    if (k > 0) {
      upperCin = b.add_const0();
      haveCin = true;
    }
  } else if (spec.family == AdderFamily::kLoa) {
    for (int i = 0; i < k; ++i)
      out.sum.push_back(b.add_gate(GateKind::kOr, {a[i], x[i]}));
    if (k > 0) {
      upperCin = b.add_gate(GateKind::kAnd, {a[k - 1], x[k - 1]});
      haveCin = true;
    }
  } else {
    NetId carry = 0;
    bool haveCarry = false;
    for (int i = 0; i < k; ++i) {
      NetId cin = haveCarry ? carry : b.add_const0();
      haveCarry = true;
      FullAdderOut fa{0, 0};
      switch (spec.family) {
        case AdderFamily::kAma1: fa = ama1_cell(b, a[i], x[i], cin); break;
        case AdderFamily::kAma2: fa = ama2_cell(b, a[i], x[i], cin); break;
        case AdderFamily::kAma5: fa = ama5_cell(b, a[i], x[i], cin); break;
        case AdderFamily::kAxa2: fa = axa2_cell(b, a[i], x[i], cin); break;
        default: throw InvariantError("emit_lpaa: unexpected family");
      }
      out.sum.push_back(fa.sum);
      carry = fa.carry;
    }
    if (k > 0) {
      upperCin = carry;
      haveCin = true;
    }
  }

  std::vector<NetId> aUp(a.begin() + k, a.end());
  std::vector<NetId> xUp(x.begin() + k, x.end());
  if (k < w) {
    NetId cin = haveCin ? upperCin : b.add_const0();
    EmittedAdder up = emit_ripple(b, aUp, xUp, cin);
    out.sum.insert(out.sum.end(), up.sum.begin(), up.sum.end());
    out.carryOut = up.carryOut;
  } else {
    out.carryOut = haveCin ? upperCin : b.add_const0();
  }
  return out;
}

EmittedAdder emit_gear(NetlistBuilder& b, const std::vector<NetId>& a,
                       const std::vector<NetId>& x, const AdderSpec& spec) {
  int n = spec.width;
  int r = spec.gearR;
  int p = spec.gearP;
  int len = r + p;

  EmittedAdder out;
  out.sum.assign(static_cast<size_t>(n), 0);
  int covered = -1; // highest result bit produced so far
  NetId lastCarry = 0;

  auto window = [&](int start, int firstResultBit) {
    std::vector<NetId> aw(a.begin() + start, a.begin() + start + len);
    std::vector<NetId> xw(x.begin() + start, x.begin() + start + len);
    EmittedAdder sub = emit_ripple(b, aw, xw, b.add_const0());
    for (int bit = firstResultBit; bit < start + len; ++bit)
      out.sum[static_cast<size_t>(bit)] = sub.sum[static_cast<size_t>(bit - start)];
    covered = start + len - 1;
    lastCarry = sub.carryOut;
  };

  window(0, 0);
  for (int start = r; start + len <= n; start += r) window(start, start + p);
  if (covered < n - 1) window(n - len, covered + 1);

  out.carryOut = lastCarry;
  return out;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw InputError("circuit spec: bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(':', pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::optional<AdderFamily> family_from_name(const std::string& s) {
  for (AdderFamily f : {AdderFamily::kExact, AdderFamily::kTrunc, AdderFamily::kLoa,
                        AdderFamily::kAma1, AdderFamily::kAma2, AdderFamily::kAma5,
                        AdderFamily::kAxa2, AdderFamily::kGear})
    if (s == adder_family_name(f)) return f;
  return std::nullopt;
}

} // namespace

EmittedAdder emit_adder(NetlistBuilder& b, const std::vector<NetId>& a,
                        const std::vector<NetId>& bb, const AdderSpec& spec) {
  spec.check();
  if (a.size() != static_cast<size_t>(spec.width) || bb.size() != a.size())
    throw InputError("emit_adder: operand width mismatch");
  switch (spec.family) {
    case AdderFamily::kExact: return emit_ripple(b, a, bb, b.add_const0());
    case AdderFamily::kGear: return emit_gear(b, a, bb, spec);
    default: return emit_lpaa(b, a, bb, spec);
  }
}

Netlist generate_adder(const AdderSpec& spec) {
  spec.check();
  NetlistBuilder b;
  std::vector<NetId> a, x;
  for (int i = 0; i < spec.width; ++i) {
    a.push_back(b.add_input());
    x.push_back(b.add_input());
  }
  EmittedAdder sum = emit_adder(b, a, x, spec);
  std::vector<NetId> outs = sum.sum;
  outs.push_back(sum.carryOut);
  std::string name = adder_family_name(spec.family);
  name += ":" + std::to_string(spec.width);
  return b.take(std::move(name), std::move(outs));
}

void TreeSpec::check() const {
  if (leaves < 1 || leafWidth < 1) throw InputError("tree spec: leaves/width must be >= 1");
  if (!shifts.empty() && shifts.size() != static_cast<size_t>(leaves))
    throw InputError("tree spec: one shift per leaf");
  for (int s : shifts)
    if (s < 0) throw InputError("tree spec: negative shift");
}

namespace {

struct Operand {
  std::vector<NetId> bits; // low-to-high
};

Netlist compose_tree_impl(const TreeSpec& spec, NetlistBuilder& b,
                          std::vector<Operand> level, std::string name) {
  while (level.size() > 1) {
    // Equalize widths inside the level, then pair-sum.
    size_t w = 0;
    for (const Operand& o : level) w = std::max(w, o.bits.size());
    for (Operand& o : level)
      while (o.bits.size() < w) o.bits.push_back(b.add_const0());

    std::vector<Operand> next;
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      AdderSpec inner;
      inner.family = spec.inner;
      inner.width = static_cast<int>(w);
      inner.approxBits = std::min(spec.innerApproxBits, inner.width);
      EmittedAdder sum = emit_adder(b, level[i].bits, level[i + 1].bits, inner);
      Operand o;
      o.bits = sum.sum;
      o.bits.push_back(sum.carryOut);
      next.push_back(std::move(o));
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return b.take(std::move(name), level.front().bits);
}

} // namespace

Netlist compose_adder_tree(const TreeSpec& spec) {
  spec.check();
  NetlistBuilder b;
  std::vector<Operand> leaves(static_cast<size_t>(spec.leaves));
  for (int j = 0; j < spec.leaves; ++j)
    for (int i = 0; i < spec.leafWidth; ++i)
      leaves[static_cast<size_t>(j)].bits.push_back(b.add_input());
  for (int j = 0; j < spec.leaves; ++j) {
    int sh = spec.shifts.empty() ? 0 : spec.shifts[static_cast<size_t>(j)];
    if (sh > 0) {
      std::vector<NetId> shifted;
      for (int i = 0; i < sh; ++i) shifted.push_back(b.add_const0());
      auto& bits = leaves[static_cast<size_t>(j)].bits;
      shifted.insert(shifted.end(), bits.begin(), bits.end());
      bits = std::move(shifted);
    }
  }
  return compose_tree_impl(spec, b, std::move(leaves),
                           "tree:" + std::to_string(spec.leaves) + ":" +
                               std::to_string(spec.leafWidth));
}

Netlist generate_multiplier(int width, AdderFamily inner, int innerApproxBits) {
  if (width < 1) throw InputError("mult: width must be >= 1");
  NetlistBuilder b;
  std::vector<NetId> a, x;
  for (int i = 0; i < width; ++i) a.push_back(b.add_input());
  for (int i = 0; i < width; ++i) x.push_back(b.add_input());

  TreeSpec spec;
  spec.leaves = width;
  spec.leafWidth = width;
  spec.inner = inner;
  spec.innerApproxBits = innerApproxBits;

  std::vector<Operand> rows(static_cast<size_t>(width));
  for (int j = 0; j < width; ++j) {
    Operand& row = rows[static_cast<size_t>(j)];
    for (int s = 0; s < j; ++s) row.bits.push_back(b.add_const0());
    for (int i = 0; i < width; ++i)
      row.bits.push_back(b.add_gate(GateKind::kAnd, {a[static_cast<size_t>(i)],
                                                     x[static_cast<size_t>(j)]}));
  }
  Netlist n = compose_tree_impl(spec, b, std::move(rows), "mult:" + std::to_string(width));
  // Array product fits in 2*width bits; trim the tree's padding above that.
  if (n.outputs.size() > static_cast<size_t>(2 * width))
    n.outputs.resize(static_cast<size_t>(2 * width));
  return n;
}

Netlist generate_const0(int width) {
  if (width < 1) throw InputError("const0: width must be >= 1");
  NetlistBuilder b;
  for (int i = 0; i < 2 * width; ++i) b.add_input();
  std::vector<NetId> outs;
  for (int i = 0; i < width + 1; ++i) outs.push_back(b.add_const0());
  return b.take("const0:" + std::to_string(width), std::move(outs));
}

std::optional<Netlist> make_circuit_from_spec(const std::string& text) {
  std::vector<std::string> parts = split_colon(text);
  const std::string& head = parts[0];

  if (head == "const0") {
    if (parts.size() != 2) throw InputError("circuit spec: const0:W");
    return generate_const0(parse_int(parts[1]));
  }
  if (head == "mult") {
    if (parts.size() != 2 && parts.size() != 4)
      throw InputError("circuit spec: mult:W[:FAMILY:K]");
    AdderFamily inner = AdderFamily::kExact;
    int k = 0;
    if (parts.size() == 4) {
      auto f = family_from_name(parts[2]);
      if (!f) throw InputError("circuit spec: unknown family '" + parts[2] + "'");
      inner = *f;
      k = parse_int(parts[3]);
    }
    return generate_multiplier(parse_int(parts[1]), inner, k);
  }
  if (head == "tree") {
    if (parts.size() != 3 && parts.size() != 5)
      throw InputError("circuit spec: tree:LEAVES:W[:FAMILY:K]");
    TreeSpec spec;
    spec.leaves = parse_int(parts[1]);
    spec.leafWidth = parse_int(parts[2]);
    if (parts.size() == 5) {
      auto f = family_from_name(parts[3]);
      if (!f) throw InputError("circuit spec: unknown family '" + parts[3] + "'");
      spec.inner = *f;
      spec.innerApproxBits = parse_int(parts[4]);
    }
    return compose_adder_tree(spec);
  }

  auto spec = parse_adder_spec(text);
  if (!spec) return std::nullopt;
  return generate_adder(*spec);
}

std::optional<AdderSpec> parse_adder_spec(const std::string& text) {
  std::vector<std::string> parts = split_colon(text);
  auto fam = family_from_name(parts[0]);
  if (!fam) return std::nullopt;

  AdderSpec spec;
  spec.family = *fam;
  if (*fam == AdderFamily::kExact) {
    if (parts.size() != 2) throw InputError("circuit spec: adder:W");
    spec.width = parse_int(parts[1]);
  } else if (*fam == AdderFamily::kGear) {
    if (parts.size() != 4) throw InputError("circuit spec: gear:W:R:P");
    spec.width = parse_int(parts[1]);
    spec.gearR = parse_int(parts[2]);
    spec.gearP = parse_int(parts[3]);
  } else {
    if (parts.size() != 3)
      throw InputError("circuit spec: " + parts[0] + ":W:K");
    spec.width = parse_int(parts[1]);
    spec.approxBits = parse_int(parts[2]);
  }
  spec.check();
  return spec;
}

} // namespace apxerr
