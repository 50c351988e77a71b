#include "polycirc/program.hpp"

#include "polycirc/error.hpp"
#include "polycirc/rdiff.hpp"

namespace polycirc {

namespace {

using Wires = std::vector<std::uint32_t>;

class Emitter {
 public:
  explicit Emitter(Program& p) : p_(p) {}

  Wires instr(GenTag tag, Wires in, Element value = {},
              std::shared_ptr<const ExtensionDef> ext = nullptr) {
    Program::Instr ins;
    ins.tag = tag;
    ins.value = value;
    const std::size_t outs = tag == GenTag::Extension ? ext->shape.coarity : 1;
    ins.ext = std::move(ext);
    ins.in = std::move(in);
    for (std::size_t i = 0; i < outs; ++i) ins.out.push_back(static_cast<std::uint32_t>(p_.wires++));
    Wires out = ins.out;
    p_.instrs.push_back(std::move(ins));
    return out;
  }

  std::uint32_t op(GenTag tag, Wires in) { return instr(tag, std::move(in)).front(); }

  Wires circuit(const Circuit& c, const Wires& in) {
    switch (c.kind()) {
      case Circuit::Kind::Seq:
        return circuit(c.second(), circuit(c.first(), in));
      case Circuit::Kind::Par: {
        const auto split = in.begin() + static_cast<std::ptrdiff_t>(c.first().arity());
        Wires out = circuit(c.first(), Wires(in.begin(), split));
        const Wires tail = circuit(c.second(), Wires(split, in.end()));
        out.insert(out.end(), tail.begin(), tail.end());
        return out;
      }
      case Circuit::Kind::Gen:
        break;
    }
    const Generator& g = c.generator();
    switch (g.tag()) {
      case GenTag::Identity: return in;
      case GenTag::Twist: return {in[1], in[0]};
      case GenTag::Copy: return {in[0], in[0]};
      case GenTag::Discard: return {};
      case GenTag::Extension: return instr(GenTag::Extension, in, {}, g.extension());
      default: return instr(g.tag(), in, g.value());
    }
  }

  // Appends q applied to `in`; returns the image of every wire of q.
  Wires inline_program(const Program& q, const Wires& in) {
    Wires map(q.wires, 0);
    for (std::size_t i = 0; i < q.arity; ++i) map[i] = in[i];
    for (const auto& ins : q.instrs) {
      Wires args;
      args.reserve(ins.in.size());
      for (auto w : ins.in) args.push_back(map[w]);
      const Wires outs = instr(ins.tag, std::move(args), ins.value, ins.ext);
      for (std::size_t i = 0; i < outs.size(); ++i) map[ins.out[i]] = outs[i];
    }
    return map;
  }

  Wires call(const Program& q, const Wires& in) {
    const Wires map = inline_program(q, in);
    Wires out;
    out.reserve(q.outputs.size());
    for (auto w : q.outputs) out.push_back(map[w]);
    return out;
  }

  std::uint32_t sum(const Wires& terms) {
    if (terms.empty()) return op(GenTag::Zero, {});
    std::uint32_t acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) acc = op(GenTag::Add, {acc, terms[i]});
    return acc;
  }

 private:
  Program& p_;
};

Wires iota(std::size_t from, std::size_t count) {
  Wires w(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = static_cast<std::uint32_t>(from + i);
  return w;
}

Program with_inputs(std::size_t arity) {
  Program p;
  p.arity = arity;
  p.wires = arity;
  return p;
}

void check_split(const Program& p, std::size_t a) {
  if (a > p.arity) {
    throw Error(ErrorCode::SplitOutOfRange,
                "split " + std::to_string(a) + " exceeds arity " + std::to_string(p.arity));
  }
}

}  // namespace

Program lower(const Circuit& c) {
  Program p = with_inputs(c.arity());
  Emitter e(p);
  p.outputs = e.circuit(c, iota(0, c.arity()));
  return p;
}

Program reverse(const Program& p) {
  const std::size_t m = p.arity;
  const std::size_t n = p.outputs.size();
  Program r = with_inputs(m + n);
  Emitter e(r);
  const Wires value = e.inline_program(p, iota(0, m));

  // changes[w] lists the changes flowing back into wire w of p, one per read.
  std::vector<Wires> changes(p.wires);
  for (std::size_t j = 0; j < n; ++j) changes[p.outputs[j]].push_back(static_cast<std::uint32_t>(m + j));

  for (auto it = p.instrs.rbegin(); it != p.instrs.rend(); ++it) {
    const auto& ins = *it;
    Wires d;
    for (auto w : ins.out) d.push_back(e.sum(changes[w]));
    switch (ins.tag) {
      case GenTag::Add:
      case GenTag::Compare:
        changes[ins.in[0]].push_back(d[0]);
        changes[ins.in[1]].push_back(d[0]);
        break;
      case GenTag::Mul:
        changes[ins.in[0]].push_back(e.op(GenTag::Mul, {value[ins.in[1]], d[0]}));
        changes[ins.in[1]].push_back(e.op(GenTag::Mul, {value[ins.in[0]], d[0]}));
        break;
      case GenTag::Negate:
        changes[ins.in[0]].push_back(e.op(GenTag::Negate, {d[0]}));
        break;
      case GenTag::Extension: {
        const Circuit rule = reverse_generator(gen::extension(ins.ext));
        Wires args;
        for (auto w : ins.in) args.push_back(value[w]);
        args.insert(args.end(), d.begin(), d.end());
        const Wires back = e.circuit(rule, args);
        for (std::size_t i = 0; i < ins.in.size(); ++i) changes[ins.in[i]].push_back(back[i]);
        break;
      }
      default:  // constants have no inputs
        break;
    }
  }
  for (std::size_t i = 0; i < m; ++i) r.outputs.push_back(e.sum(changes[i]));
  return r;
}

Program forward(const Program& p) {
  const std::size_t m = p.arity;
  const std::size_t n = p.outputs.size();
  const Program rr = reverse(reverse(p));
  Program f = with_inputs(2 * m);
  Emitter e(f);
  Wires args = iota(0, m);
  for (std::size_t j = 0; j < n; ++j) args.push_back(e.op(GenTag::Zero, {}));
  const Wires dx = iota(m, m);
  args.insert(args.end(), dx.begin(), dx.end());
  const Wires out = e.call(rr, args);
  f.outputs.assign(out.begin() + static_cast<std::ptrdiff_t>(m), out.end());
  return f;
}

Program partial(const Program& p, std::size_t a) {
  check_split(p, a);
  const std::size_t b = p.arity - a;
  const Program d = forward(p);
  Program q = with_inputs(p.arity + b);
  Emitter e(q);
  Wires args = iota(0, p.arity);
  for (std::size_t i = 0; i < a; ++i) args.push_back(e.op(GenTag::Zero, {}));
  const Wires db = iota(p.arity, b);
  args.insert(args.end(), db.begin(), db.end());
  q.outputs = e.call(d, args);
  return q;
}

Program linear_in_rhs(const Program& p, std::size_t a) {
  check_split(p, a);
  const std::size_t b = p.arity - a;
  Program q = with_inputs(p.arity + b);
  Emitter e(q);
  Wires args = iota(0, a);
  const Wires db = iota(p.arity, b);
  args.insert(args.end(), db.begin(), db.end());
  q.outputs = e.call(p, args);
  return q;
}

}  // namespace polycirc
