#pragma once

#include "apxerr/netlist.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apxerr {

enum class AdderFamily : uint8_t {
  kExact,
  kTrunc,
  kLoa,
  kAma1,
  kAma2,
  kAma5,
  kAxa2,
  kGear,
};

const char* adder_family_name(AdderFamily f);

/// Parametric adder description. `approxBits` is the number of approximated
/// low positions (the NE knob); gearR/gearP are the GeAr resolution and
/// prediction lengths and are meaningful only for family kGear.
struct AdderSpec {
  AdderFamily family = AdderFamily::kExact;
  int width = 0;
  int approxBits = 0;
  int gearR = 0;
  int gearP = 0;

  void check() const;
};

/// Builds a `width`-bit adder: 2*width inputs (operands a, b interleaved
/// low-to-high: a0 b0 a1 b1 ...), width+1 outputs (sum bits low-to-high, then
/// carry-out).
///
/// Approximate families touch only the low `approxBits` positions:
///   TRUNC: low sum bits are constant 0, no carry into the exact upper part.
///   LOA:   low sum bits are a|b; carry into the upper part is
///          a[k-1] & b[k-1] (Mahdiani et al. 2010).
///   AMA1:  sum = ~b&(a|cin) | a&b&cin, exact carry (Gupta et al. 2013).
///   AMA2:  sum = ~carry, exact carry (Gupta et al. 2013).
///   AMA5:  sum = b, carry = b (Gupta et al. 2013).
///   AXA2:  sum = xnor(a,b), exact carry (Yang et al. 2013).
///   GEAR:  overlapping (gearR+gearP)-bit sub-adders stepped by gearR; each
///          window's top gearR bits are result bits, the first window
///          contributes all its bits; a right-aligned tail window covers any
///          remainder when width-gearP is not a multiple of gearR.
Netlist generate_adder(const AdderSpec& spec);

/// Cell-level emitter used by both generate_adder and the tree composer:
/// sums two equal-width operand bit groups already present in `b`.
struct EmittedAdder {
  std::vector<NetId> sum; // width bits
  NetId carryOut;
};
EmittedAdder emit_adder(NetlistBuilder& b, const std::vector<NetId>& a,
                        const std::vector<NetId>& bb, const AdderSpec& spec);

/// A balanced tree of adders over `leaves` operands of `leafWidth` bits each.
/// Leaf j may be shifted left by shifts[j] (zero padding); internal adders use
/// the given family/approxBits at every level. Input order is leaf-major,
/// low-to-high within a leaf. Output is the full sum, carry included.
struct TreeSpec {
  int leaves = 0;
  int leafWidth = 0;
  AdderFamily inner = AdderFamily::kExact;
  int innerApproxBits = 0;
  std::vector<int> shifts; // empty = no shifts

  void check() const;
};
Netlist compose_adder_tree(const TreeSpec& spec);

/// width x width unsigned array multiplier: AND partial products summed by an
/// adder tree (approximate inner adders give a "mult-style" approximate
/// circuit). Inputs a0..a{w-1} then b0..b{w-1}; 2*width outputs.
Netlist generate_multiplier(int width, AdderFamily inner, int innerApproxBits);

/// 2*width unused inputs, width+1 constant-0 outputs (same shape as an adder).
Netlist generate_const0(int width);

/// Parses plain adder-family specs (adder:W, trunc:W:K, loa:W:K, ama1:W:K,
/// ama2:W:K, ama5:W:K, axa2:W:K, gear:W:R:P); nullopt when `text` is not one.
std::optional<AdderSpec> parse_adder_spec(const std::string& text);

/// Parses CLI circuit spec strings: every adder-family spec above plus
/// const0:W, mult:W[:FAM:K], tree:LEAVES:W[:FAM:K]. Returns nullopt if
/// `text` is not a spec (treat it as a path).
std::optional<Netlist> make_circuit_from_spec(const std::string& text);

} // namespace apxerr
