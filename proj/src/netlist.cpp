#include "polycirc/netlist.hpp"

#include <algorithm>
#include <unordered_map>

#include "polycirc/error.hpp"

namespace polycirc {

namespace {

struct OpKey {
  std::uint8_t code;
  std::uint32_t a;
  std::uint32_t b;
  std::uint64_t value;

  bool operator==(const OpKey&) const = default;
};

struct OpHash {
  std::size_t operator()(const OpKey& k) const noexcept {
    std::size_t h = k.code;
    h = h * 1000003u ^ k.a;
    h = h * 1000003u ^ k.b;
    h = h * 1000003u ^ std::hash<std::uint64_t>{}(k.value);
    return h;
  }
};

}  // namespace

class Netlist::Builder {
 public:
  explicit Builder(Netlist& n) : net_(n) {}

  // Wires of p map to netlist wires through `map`.
  std::vector<std::uint32_t> compile(const Program& p) {
    std::vector<std::uint32_t> map(p.wires, 0);
    for (std::size_t i = 0; i < p.arity; ++i) map[i] = static_cast<std::uint32_t>(i);
    for (const auto& ins : p.instrs) {
      std::vector<std::uint32_t> in;
      in.reserve(ins.in.size());
      for (auto w : ins.in) in.push_back(map[w]);
      const auto out = lower_instr(ins, in);
      for (std::size_t i = 0; i < out.size(); ++i) map[ins.out[i]] = out[i];
    }
    std::vector<std::uint32_t> outputs;
    outputs.reserve(p.outputs.size());
    for (auto w : p.outputs) outputs.push_back(map[w]);
    return outputs;
  }

 private:
  std::uint32_t emit(OpCode code, std::uint32_t a, std::uint32_t b, Element value) {
    if ((code == OpCode::Add || code == OpCode::Mul || code == OpCode::Compare) && b < a) {
      std::swap(a, b);
    }
    OpKey key{static_cast<std::uint8_t>(code), a, b, value.code};
    if (auto it = cse_.find(key); it != cse_.end()) return it->second;
    const auto out = static_cast<std::uint32_t>(net_.wire_count_++);
    net_.ops_.push_back(Op{.code = code, .a = a, .b = b, .out = out, .value = value});
    cse_.emplace(key, out);
    return out;
  }

  std::vector<std::uint32_t> lower_instr(const Program::Instr& g,
                                         const std::vector<std::uint32_t>& in) {
    const Semiring& s = net_.semiring_;
    switch (g.tag) {
      case GenTag::Identity:
      case GenTag::Twist:
      case GenTag::Copy:
      case GenTag::Discard:
        break;  // resolved during lowering
      case GenTag::Add:
        return {emit(OpCode::Add, in[0], in[1], {})};
      case GenTag::Mul:
        return {emit(OpCode::Mul, in[0], in[1], {})};
      case GenTag::Compare:
        return {emit(OpCode::Compare, in[0], in[1], {})};
      case GenTag::Zero:
        return {emit(OpCode::Const, 0, 0, s.zero())};
      case GenTag::One:
        return {emit(OpCode::Const, 0, 0, s.one())};
      case GenTag::Const:
        if (!s.contains(g.value)) {
          throw Error(ErrorCode::ConstOutOfRange,
                      "constant " + std::to_string(g.value.code) + " outside carrier of " + s.id());
        }
        return {emit(OpCode::Const, 0, 0, g.value)};
      case GenTag::Negate:
        if (!s.has_neg()) {
          throw Error(ErrorCode::UnsupportedGenerator, "negate is not available over " + s.id());
        }
        return {emit(OpCode::Negate, in[0], 0, {})};
      case GenTag::Extension: {
        const auto& def = g.ext;
        ExtCall call{def.get(), in, {}};
        for (std::size_t i = 0; i < def->shape.coarity; ++i) {
          call.out.push_back(static_cast<std::uint32_t>(net_.wire_count_++));
        }
        if (std::find(net_.ext_owners_.begin(), net_.ext_owners_.end(), def) ==
            net_.ext_owners_.end()) {
          net_.ext_owners_.push_back(def);
        }
        net_.ops_.push_back(Op{.code = OpCode::Extension,
                               .ext = static_cast<std::uint32_t>(net_.ext_calls_.size())});
        auto out = call.out;
        net_.ext_calls_.push_back(std::move(call));
        return out;
      }
    }
    return {};
  }

  Netlist& net_;
  std::unordered_map<OpKey, std::uint32_t, OpHash> cse_;
};

Netlist::Netlist(const Semiring& s, const Circuit& c) : Netlist(s, lower(c)) {}

Netlist::Netlist(const Semiring& s, const Program& p) : semiring_(s), shape_(p.shape()) {
  wire_count_ = shape_.arity;
  {
    Builder b(*this);
    outputs_ = b.compile(p);
  }

  // Drop dead operations, then renumber the surviving wires densely.
  std::vector<char> live(wire_count_, 0);
  for (auto w : outputs_) live[w] = 1;
  std::vector<Op> kept;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    const Op& op = *it;
    bool needed = false;
    if (op.code == OpCode::Extension) {
      const auto& call = ext_calls_[op.ext];
      needed = std::any_of(call.out.begin(), call.out.end(), [&](auto w) { return live[w] != 0; });
      if (needed) {
        for (auto w : call.in) live[w] = 1;
      }
    } else {
      needed = live[op.out] != 0;
      if (needed) {
        switch (op.code) {
          case OpCode::Add:
          case OpCode::Mul:
          case OpCode::Compare:
            live[op.a] = live[op.b] = 1;
            break;
          case OpCode::Negate:
            live[op.a] = 1;
            break;
          default:
            break;
        }
      }
    }
    if (needed) kept.push_back(op);
  }
  std::reverse(kept.begin(), kept.end());

  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> remap(wire_count_, kUnset);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < shape_.arity; ++i) remap[i] = next++;
  for (auto& op : kept) {
    if (op.code == OpCode::Extension) {
      auto& call = ext_calls_[op.ext];
      for (auto& w : call.in) w = remap[w];
      for (auto& w : call.out) w = remap[w] = next++;
    } else {
      if (op.code != OpCode::Const) op.a = remap[op.a];
      if (op.code == OpCode::Add || op.code == OpCode::Mul || op.code == OpCode::Compare) {
        op.b = remap[op.b];
      }
      op.out = remap[op.out] = next++;
    }
  }
  for (auto& w : outputs_) w = remap[w];
  ops_ = std::move(kept);
  wire_count_ = next;
}

void Netlist::run(std::span<const Element> in, std::span<Element> out,
                  std::span<Element> scratch) const {
  std::copy(in.begin(), in.end(), scratch.begin());
  const Semiring& s = semiring_;
  for (const Op& op : ops_) {
    switch (op.code) {
      case OpCode::Add:
        scratch[op.out] = s.add(scratch[op.a], scratch[op.b]);
        break;
      case OpCode::Mul:
        scratch[op.out] = s.mul(scratch[op.a], scratch[op.b]);
        break;
      case OpCode::Const:
        scratch[op.out] = op.value;
        break;
      case OpCode::Compare:
        scratch[op.out] = scratch[op.a] == scratch[op.b] ? s.one() : s.zero();
        break;
      case OpCode::Negate:
        scratch[op.out] = s.neg(scratch[op.a]);
        break;
      case OpCode::Extension: {
        const auto& call = ext_calls_[op.ext];
        Tuple args(call.in.size());
        Tuple results(call.out.size());
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = scratch[call.in[i]];
        call.def->semantics(args, results);
        for (std::size_t i = 0; i < results.size(); ++i) scratch[call.out[i]] = results[i];
        break;
      }
    }
  }
  for (std::size_t i = 0; i < outputs_.size(); ++i) out[i] = scratch[outputs_[i]];
}

Tuple Netlist::operator()(const Tuple& in) const {
  if (in.size() != shape_.arity) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(shape_.arity) +
                                              " inputs, got " + std::to_string(in.size()));
  }
  for (auto e : in) {
    if (!semiring_.contains(e)) {
      throw Error(ErrorCode::ConstOutOfRange,
                  "input " + std::to_string(e.code) + " outside carrier of " + semiring_.id());
    }
  }
  Tuple out(shape_.coarity);
  std::vector<Element> scratch(std::max<std::size_t>(wire_count_, 1));
  run(in, out, scratch);
  return out;
}

}  // namespace polycirc
