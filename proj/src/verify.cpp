#include "polycirc/verify.hpp"

#include <algorithm>
#include <memory>

#include "polycirc/error.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/netlist.hpp"
#include "polycirc/program.hpp"
#include "polycirc/rdiff.hpp"

namespace polycirc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Case i of a sampled law depends only on (seed, i), never on scheduling.
void sample_tuple(std::uint64_t seed, std::uint64_t i, std::uint64_t k, std::span<Element> out) {
  std::uint64_t state = splitmix64(seed ^ splitmix64(i));
  for (auto& e : out) {
    state = splitmix64(state);
    e = Element{state % k};
  }
}

// Runs one netlist into an owned output buffer.
class Probe {
 public:
  explicit Probe(const Netlist& net)
      : net_(&net), out_(net.shape().coarity), scratch_(net.wire_count()) {}

  const Tuple& operator()(std::span<const Element> in) {
    net_->run(in, out_, scratch_);
    return out_;
  }

 private:
  const Netlist* net_;
  Tuple out_;
  Tuple scratch_;
};

// Evaluates fails(state, x) over S^width, exhaustively when small enough and
// on seeded samples otherwise.
template <class MakeState, class Fails>
LawResult check_law(std::string name, const Semiring& s, std::size_t width,
                    const VerifyOptions& opts, MakeState make_state, Fails fails) {
  LawResult r;
  r.name = std::move(name);
  const std::uint64_t k = s.size();
  struct Slot {
    decltype(make_state()) inner;
    Tuple x;
  };
  if (const auto total = checked_power(k, width, opts.exhaustive_limit)) {
    r.cases = *total;
    r.exhaustive = true;
    const auto hit = first_failure(
        *total, opts.exec, [&] { return Slot{make_state(), Tuple(width)}; },
        [&](Slot& st, std::uint64_t i) {
          decode_index(i, k, st.x);
          return fails(st.inner, st.x);
        });
    if (hit) {
      r.verdict = Verdict::Fail;
      Tuple x(width);
      decode_index(*hit, k, x);
      r.counterexample = std::move(x);
    }
    return r;
  }

  r.cases = opts.random_cases;
  r.exhaustive = false;
  r.seed = opts.seed;
  std::vector<char> failed(opts.random_cases, 0);
  for_each_index(
      opts.random_cases, opts.exec, [&] { return Slot{make_state(), Tuple(width)}; },
      [&](Slot& st, std::uint64_t i) {
        sample_tuple(opts.seed, i, k, st.x);
        failed[i] = fails(st.inner, st.x) ? 1 : 0;
      });
  std::optional<Tuple> least;
  Tuple x(width);
  for (std::uint64_t i = 0; i < opts.random_cases; ++i) {
    if (!failed[i]) continue;
    sample_tuple(opts.seed, i, k, x);
    if (!least || x < *least) least = x;
  }
  if (least) {
    r.verdict = Verdict::Fail;
    r.counterexample = std::move(least);
  }
  return r;
}

LawResult additivity(const Semiring& s, const Netlist& rev, std::size_t m, std::size_t n,
                     const VerifyOptions& opts) {
  struct State {
    Probe probe;
    Tuple in, sum;
  };
  return check_law(
      kAdditivity, s, m + 2 * n, opts,
      [&] { return State{Probe(rev), Tuple(m + n), Tuple(m)}; },
      [&](State& st, const Tuple& x) {
        std::copy_n(x.begin(), m, st.in.begin());
        for (std::size_t j = 0; j < n; ++j) st.in[m + j] = s.add(x[m + j], x[m + n + j]);
        const Tuple joint = st.probe(st.in);
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(m), n, st.in.begin() + static_cast<std::ptrdiff_t>(m));
        st.sum = st.probe(st.in);
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(m + n), n, st.in.begin() + static_cast<std::ptrdiff_t>(m));
        const Tuple& second = st.probe(st.in);
        for (std::size_t i = 0; i < m; ++i) {
          if (joint[i] != s.add(st.sum[i], second[i])) return true;
        }
        return false;
      });
}

LawResult zero_change(const Semiring& s, const Netlist& rev, std::size_t m, std::size_t n,
                      const VerifyOptions& opts) {
  struct State {
    Probe probe;
    Tuple in;
  };
  return check_law(
      kZeroChange, s, m, opts, [&] { return State{Probe(rev), Tuple(m + n, s.zero())}; },
      [&](State& st, const Tuple& x) {
        std::copy(x.begin(), x.end(), st.in.begin());
        const Tuple& out = st.probe(st.in);
        return std::any_of(out.begin(), out.end(), [&](Element e) { return e != s.zero(); });
      });
}

// Compares two netlists of the same shape after optionally rearranging the
// input for the right-hand side.
template <class Rearrange>
LawResult agreement(std::string name, const Semiring& s, const Netlist& lhs, const Netlist& rhs,
                    const VerifyOptions& opts, Rearrange rearrange) {
  const std::size_t width = lhs.shape().arity;
  struct State {
    Probe l, r;
    Tuple moved;
  };
  return check_law(
      std::move(name), s, width, opts,
      [&] { return State{Probe(lhs), Probe(rhs), Tuple(width)}; },
      [&](State& st, const Tuple& x) {
        rearrange(x, st.moved);
        return st.l(x) != st.r(st.moved);
      });
}

void keep(const Tuple& x, Tuple& out) { std::copy(x.begin(), x.end(), out.begin()); }

LawResult fail_from(std::string name, const EqualityResult& eq) {
  LawResult r;
  r.name = std::move(name);
  r.cases = eq.cases;
  if (!eq.equal) {
    r.verdict = Verdict::Fail;
    r.counterexample = eq.counterexample->input;
    r.detail = "lhs=(" + format_tuple(eq.counterexample->lhs) + ") rhs=(" +
               format_tuple(eq.counterexample->rhs) + ")";
  }
  return r;
}

EvalOptions eval_options(const VerifyOptions& opts) {
  EvalOptions e;
  e.budget = std::max<std::uint64_t>(kDefaultBudget, opts.exhaustive_limit);
  e.exec = opts.exec;
  return e;
}

}  // namespace

AxiomReport check_rdc_axioms(const Semiring& s, const Circuit& c, const VerifyOptions& opts) {
  s.size();  // InfiniteCarrier for nat
  const std::size_t m = c.arity();
  const std::size_t n = c.coarity();
  const Circuit r = reverse(c);
  const Netlist rev(s, r);

  AxiomReport report;
  report.add(additivity(s, rev, m, n, opts));
  report.add(zero_change(s, rev, m, n, opts));

  // The third and fourth iterates of R are built on straight-line code,
  // where they stay linear in size; as terms they grow far too quickly.
  const Program rp = reverse(lower(c));
  const Netlist lin_l(s, partial(rp, m));
  const Netlist lin_r(s, linear_in_rhs(rp, m));
  report.add(agreement(kLinearity, s, lin_l, lin_r, opts, keep));

  const Netlist d2(s, forward(forward(lower(c))));
  report.add(agreement(kSymmetry, s, d2, d2, opts, [m](const Tuple& x, Tuple& out) {
    // (a, b, c, d) -> (a, c, b, d), blocks of width m
    const auto mm = static_cast<std::ptrdiff_t>(m);
    auto src = x.begin();
    auto dst = out.begin();
    std::copy(src, src + mm, dst);
    std::copy(src + 2 * mm, src + 3 * mm, dst + mm);
    std::copy(src + mm, src + 2 * mm, dst + 2 * mm);
    std::copy(src + 3 * mm, src + 4 * mm, dst + 3 * mm);
  }));
  return report;
}

Circuit make_extension_generator(
    std::string name, Shape shape,
    std::function<void(std::span<const Element>, std::span<Element>)> semantics,
    std::function<Circuit(const Circuit& self)> reverse_rule) {
  auto def = std::make_shared<ExtensionDef>();
  def->name = std::move(name);
  def->shape = shape;
  def->semantics = std::move(semantics);
  def->reverse_rule = std::move(reverse_rule);
  return gen::extension(std::move(def));
}

AxiomReport check_extension(const Semiring& s, const GeneratorExtension& ext,
                            const VerifyOptions& opts) {
  AxiomReport report;
  report.append(check_rdc_axioms(s, ext.generator, opts), "rdc.");
  const EvalOptions eo = eval_options(opts);
  for (const auto& eq : ext.equations) {
    report.add(fail_from("equation:" + eq.name, extensionally_equal(s, eq.lhs, eq.rhs, eo)));
    report.add(fail_from("reverse:" + eq.name,
                         extensionally_equal(s, reverse(eq.lhs), reverse(eq.rhs), eo)));
  }
  return report;
}

GeneratorExtension negate_extension(const Semiring& s) {
  if (!s.has_neg()) {
    throw Error(ErrorCode::UnsupportedGenerator, "semiring " + s.id() + " has no negation");
  }
  const Circuit g = make_extension_generator(
      "neg", {1, 1}, [s](std::span<const Element> in, std::span<Element> out) { out[0] = s.neg(in[0]); },
      [](const Circuit& self) { return tensor(gen::discard(), self); });
  GeneratorExtension ext{g, {}};
  ext.equations.push_back({"inverse", compose_all({gen::copy(), tensor(gen::id(), g), gen::add()}),
                           compose(gen::discard(), gen::zero())});
  return ext;
}

GeneratorExtension compare_extension(const Semiring& s) {
  const Circuit g = make_extension_generator(
      "cmp", {2, 1},
      [s](std::span<const Element> in, std::span<Element> out) {
        out[0] = in[0] == in[1] ? s.one() : s.zero();
      },
      [](const Circuit&) { return tensor(discard_n(2), gen::copy()); });
  GeneratorExtension ext{g, {}};
  for (const auto a : s.elements()) {
    for (const auto b : s.elements()) {
      const Circuit lhs = compose(tensor(gen::constant(a), gen::constant(b)), g);
      if (a == b) {
        ext.equations.push_back({"compare_equal(" + std::to_string(a.code) + ")", lhs, gen::one()});
      } else {
        ext.equations.push_back({"compare_distinct(" + std::to_string(a.code) + "," +
                                     std::to_string(b.code) + ")",
                                 lhs, gen::zero()});
      }
    }
  }
  return ext;
}

GeneratorExtension squared_change_extension() {
  const Circuit g = make_extension_generator(
      "squared_change", {1, 1},
      [](std::span<const Element> in, std::span<Element> out) { out[0] = in[0]; },
      [](const Circuit&) {
        return compose_all({tensor(gen::discard(), gen::copy()), gen::mul()});
      });
  return GeneratorExtension{g, {}};
}

GeneratorExtension constant_zero_extension(const Semiring& s) {
  const Circuit g = make_extension_generator(
      "zero_map", {1, 1}, [s](std::span<const Element>, std::span<Element> out) { out[0] = s.zero(); },
      [](const Circuit&) { return proj_second(1, 1); });
  GeneratorExtension ext{g, {}};
  ext.equations.push_back({"discard_zero", g, compose(gen::discard(), gen::zero())});
  return ext;
}

AxiomReport check_preservation(const Semiring& s, const Circuit& f, const Circuit& g,
                               const VerifyOptions& opts) {
  AxiomReport report;
  const AxiomReport rf = check_rdc_axioms(s, f, opts);
  const AxiomReport rg = check_rdc_axioms(s, g, opts);
  report.append(rf, "f.");
  report.append(rg, "g.");
  const bool parts_pass = rf.passed() && rg.passed();

  auto summarize = [&](const std::string& which, const AxiomReport& composite) {
    LawResult r;
    r.name = "preservation." + which;
    for (const auto& law : composite.laws()) r.cases += law.cases;
    if (parts_pass && !composite.passed()) {
      r.verdict = Verdict::Fail;
      for (const auto& law : composite.laws()) {
        if (law.verdict == Verdict::Fail) {
          r.counterexample = law.counterexample;
          r.detail = which + "." + law.name;
          break;
        }
      }
    } else if (!parts_pass) {
      r.verdict = Verdict::Skipped;
      r.detail = "a component fails, so nothing is claimed";
    }
    report.add(std::move(r));
  };

  if (f.coarity() == g.arity()) {
    const AxiomReport rs = check_rdc_axioms(s, compose(f, g), opts);
    report.append(rs, "seq.");
    summarize("seq", rs);
  } else {
    LawResult r;
    r.name = "preservation.seq";
    r.verdict = Verdict::Skipped;
    r.detail = "f and g are not composable";
    report.add(std::move(r));
  }
  const AxiomReport rp = check_rdc_axioms(s, tensor(f, g), opts);
  report.append(rp, "par.");
  summarize("par", rp);
  return report;
}

Circuit times_circuit(std::uint64_t n) {
  if (n == 0) return compose(gen::discard(), gen::zero());
  if (n == 1) return gen::id();
  return compose_all({gen::copy(), tensor(gen::id(), times_circuit(n - 1)), gen::add()});
}

std::vector<Equation> presentation_equations(const Semiring& s) {
  const Circuit add = gen::add(), mul = gen::mul(), copy = gen::copy(), discard = gen::discard();
  const Circuit id = gen::id(), twist = gen::twist(), zero = gen::zero(), one = gen::one();
  const auto elems = s.elements();
  auto code = [](Element e) { return std::to_string(e.code); };

  std::vector<Equation> eqs;
  eqs.push_back({"copy_commutative", compose(copy, twist), copy});
  eqs.push_back({"copy_associative", compose(copy, tensor(copy, id)), compose(copy, tensor(id, copy))});
  eqs.push_back({"copy_counit", compose(copy, tensor(discard, id)), id});

  std::vector<std::pair<std::string, Circuit>> generators = {
      {"add", add}, {"zero", zero}, {"mul", mul}, {"one", one}, {"copy", copy},
      {"discard", discard}, {"id", id}, {"swap", twist}, {"eq", gen::compare()}};
  for (const auto e : elems) generators.emplace_back("const(" + code(e) + ")", gen::constant(e));
  if (s.has_neg()) generators.emplace_back("neg", gen::negate());
  for (const auto& [name, g] : generators) {
    const std::size_t m = g.arity();
    const std::size_t n = g.coarity();
    eqs.push_back({"copy_natural[" + name + "]", compose(g, copy_n(n)), compose(copy_n(m), tensor(g, g))});
    const Circuit dropped = n == 0 ? g : compose(g, discard_n(n));
    const Circuit target = m == 0 ? empty_circuit() : discard_n(m);
    eqs.push_back({"discard_natural[" + name + "]", dropped, target});
  }

  eqs.push_back({"add_commutative", compose(twist, add), add});
  eqs.push_back({"add_associative", compose(tensor(add, id), add), compose(tensor(id, add), add)});
  eqs.push_back({"add_unit", compose(tensor(zero, id), add), id});
  eqs.push_back({"mul_commutative", compose(twist, mul), mul});
  eqs.push_back({"mul_associative", compose(tensor(mul, id), mul), compose(tensor(id, mul), mul)});
  eqs.push_back({"mul_unit", compose(tensor(one, id), mul), id});
  eqs.push_back({"distributivity", compose(tensor(id, add), mul),
                 compose_all({tensor_all({copy, id, id}), tensor_all({id, twist, id}),
                              tensor(mul, mul), add})});
  eqs.push_back({"annihilation", compose(tensor(id, zero), mul), compose(discard, zero)});

  eqs.push_back({"const_zero", gen::constant(s.zero()), zero});
  eqs.push_back({"const_one", gen::constant(s.one()), one});
  for (const auto a : elems) {
    for (const auto b : elems) {
      const std::string pair = "(" + code(a) + "," + code(b) + ")";
      const Circuit both = tensor(gen::constant(a), gen::constant(b));
      eqs.push_back({"const_add" + pair, compose(both, add), gen::constant(s.add(a, b))});
      eqs.push_back({"const_mul" + pair, compose(both, mul), gen::constant(s.mul(a, b))});
      eqs.push_back({"compare" + pair, compose(both, gen::compare()), a == b ? one : zero});
    }
  }

  if (s.kind() == Semiring::Kind::ZMod) {
    const auto n = s.size();
    eqs.push_back({"characteristic(n=" + std::to_string(n) + ")", times_circuit(n),
                   compose(discard, zero)});
  }
  if (s.has_neg()) {
    eqs.push_back({"negate_inverse", compose_all({copy, tensor(id, gen::negate()), add}),
                   compose(discard, zero)});
  }
  return eqs;
}

AxiomReport check_presentation(const Semiring& s, const VerifyOptions& opts) {
  AxiomReport report;
  const EvalOptions eo = eval_options(opts);
  for (const auto& eq : presentation_equations(s)) {
    report.add(fail_from(eq.name, extensionally_equal(s, eq.lhs, eq.rhs, eo)));
  }
  return report;
}

}  // namespace polycirc
