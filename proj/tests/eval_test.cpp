#include "polycirc/eval.hpp"

#include <random>

#include "polycirc/netlist.hpp"
#include "polycirc/random_circuit.hpp"
#include "polycirc/semiring.hpp"
#include "polycirc/verify.hpp"
#include "test_util.hpp"

namespace polycirc {
namespace {

using testing::error_of;
using testing::T;

Circuit square() { return compose(gen::copy(), gen::mul()); }

TEST(Eval, Examples) {
  EXPECT_EQ(eval(Semiring::make("zmod:2"), compose(gen::copy(), gen::add()), T({1})), T({0}));
  const auto z3 = Semiring::make("zmod:3");
  EXPECT_EQ(eval(z3, gen::compare(), T({2, 2})), T({1}));
  EXPECT_EQ(eval(z3, gen::compare(), T({1, 2})), T({0}));
  EXPECT_EQ(eval(Semiring::make("sat:3"), gen::mul(), T({2, 2})), T({2}));
}

TEST(Eval, Errors) {
  const auto sat = Semiring::make("sat:3");
  EXPECT_EQ(error_of([&] { eval(sat, gen::negate(), T({1})); }), ErrorCode::UnsupportedGenerator);
  EXPECT_EQ(error_of([&] { eval(sat, gen::add(), T({1})); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(error_of([&] { eval(sat, gen::constant(Element{3}), {}); }), ErrorCode::ConstOutOfRange);
  const auto nat = Semiring::make("nat");
  EXPECT_EQ(error_of([&] { eval(nat, gen::mul(), T({~std::uint64_t{0}, 2})); }), ErrorCode::Overflow);
  EXPECT_EQ(eval(nat, gen::mul(), T({6, 7})), T({42}));
}

TEST(FunctionTable, Examples) {
  const auto z2 = Semiring::make("zmod:2");
  const auto mul = function_table(z2, gen::mul());
  ASSERT_EQ(mul.rows(), 4u);
  EXPECT_EQ(mul.input(1), T({0, 1}));
  EXPECT_EQ(mul.input(2), T({1, 0}));
  for (std::uint64_t r = 0; r < 4; ++r) EXPECT_EQ(mul.at(r, 0).code, r == 3 ? 1u : 0u);

  const auto cmp = function_table(z2, gen::compare());
  for (std::uint64_t r = 0; r < 4; ++r) EXPECT_EQ(cmp.at(r, 0).code, (r == 0 || r == 3) ? 1u : 0u);

  const auto k = function_table(Semiring::make("zmod:3"), gen::constant(Element{2}));
  EXPECT_EQ(k.rows(), 1u);
  EXPECT_EQ(k.output(0), T({2}));
}

TEST(FunctionTable, BudgetAndCarrier) {
  const auto z5 = Semiring::make("zmod:5");
  EvalOptions opts;
  opts.budget = 100;
  EXPECT_EQ(error_of([&] { function_table(z5, add_n(2), opts); }), ErrorCode::BudgetExceeded);
  opts.budget = 625;
  EXPECT_EQ(function_table(z5, add_n(2), opts).rows(), 625u);
  EXPECT_EQ(error_of([] { function_table(Semiring::make("nat"), gen::add()); }),
            ErrorCode::InfiniteCarrier);
  EXPECT_EQ(enumeration_size(z5, 3, 1000), 125u);
}

TEST(ExtensionalEquality, Examples) {
  EXPECT_TRUE(extensionally_equal(Semiring::make("zmod:2"), square(), gen::id()).equal);
  const auto r = extensionally_equal(Semiring::make("zmod:3"), square(), gen::id());
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->input, T({2}));
  EXPECT_EQ(r.counterexample->lhs, T({1}));
  EXPECT_EQ(r.counterexample->rhs, T({2}));
  EXPECT_TRUE(extensionally_equal(Semiring::make("sat:4"), square(), square()).equal);
  EXPECT_EQ(error_of([] { extensionally_equal(Semiring::make("zmod:2"), gen::add(), gen::id()); }),
            ErrorCode::ShapeMismatch);
}

TEST(ExtensionalEquality, CharacteristicKillsNTimesX) {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    const auto s = Semiring::make("zmod:" + std::to_string(n));
    const auto zero_map = compose(gen::discard(), gen::zero());
    EXPECT_TRUE(extensionally_equal(s, times_circuit(n), zero_map).equal) << n;
    EXPECT_FALSE(extensionally_equal(s, times_circuit(n - 1), zero_map).equal) << n;
  }
}

RandomCircuitOptions wide_options() {
  RandomCircuitOptions o;
  o.min_arity = 0;
  o.max_arity = 4;
  o.carrier_size = 3;
  o.allow_compare = true;
  o.allow_negate = true;
  return o;
}

// Property: evaluation is a functor (Seq pipes, Par splits).
TEST(EvalProperty, Functoriality) {
  const auto s = Semiring::make("zmod:3");
  std::mt19937_64 rng(0xF00);
  auto opts = wide_options();
  opts.max_size = 10;
  for (int i = 0; i < 100; ++i) {
    const auto f = random_circuit(rng, opts);
    const auto g = random_circuit(rng, opts, Shape{f.coarity(), 1 + rng() % 3});
    const auto h = random_circuit(rng, opts);
    const auto seq = compose(f, g);
    const auto par = tensor(f, h);
    const auto ft = function_table(s, f);
    for (std::uint64_t r = 0; r < ft.rows(); ++r) {
      const Tuple x = ft.input(r);
      EXPECT_EQ(eval(s, seq, x), eval(s, g, eval(s, f, x)));
      Tuple y(h.arity(), Element{r % 3});
      Tuple xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      Tuple want = eval(s, f, x);
      const Tuple tail = eval(s, h, y);
      want.insert(want.end(), tail.begin(), tail.end());
      EXPECT_EQ(eval(s, par, xy), want);
    }
  }
}

// Property: the compiled netlist agrees with tree-walking evaluation.
TEST(EvalProperty, NetlistMatchesEval) {
  std::mt19937_64 rng(0xBEEF);
  for (const auto& id : testing::finite_semirings()) {
    const auto s = Semiring::make(id);
    auto opts = wide_options();
    opts.carrier_size = s.size();
    opts.allow_negate = s.has_neg();
    for (int i = 0; i < 60; ++i) {
      const auto c = random_circuit(rng, opts);
      const Netlist net(s, c);
      EXPECT_EQ(net.shape(), c.shape());
      const auto t = function_table(s, c);
      for (std::uint64_t r = 0; r < t.rows(); ++r) EXPECT_EQ(net(t.input(r)), eval(s, c, t.input(r)));
    }
  }
}

TEST(EvalProperty, NetlistSharesRepeatedWork) {
  // (x*x) computed twice after a copy collapses to one multiplication.
  const auto c = compose(gen::copy(), tensor(square(), square()));
  const Netlist net(Semiring::make("zmod:5"), c);
  EXPECT_EQ(net.op_count(), 1u);
}

// Parallel and serial kernels must produce bit-identical results.
TEST(EvalProperty, ParallelMatchesSerial) {
  std::mt19937_64 rng(0xABC);
  const auto s = Semiring::make("zmod:5");
  auto opts = wide_options();
  opts.carrier_size = 5;
  EvalOptions serial;
  serial.exec = Exec::Serial;
  EvalOptions parallel;
  parallel.exec = Exec::Parallel;
  for (int i = 0; i < 40; ++i) {
    const auto c = random_circuit(rng, opts);
    const auto d = random_circuit(rng, opts, c.shape());
    EXPECT_EQ(function_table(s, c, serial), function_table(s, c, parallel));
    const auto a = extensionally_equal(s, c, d, serial);
    const auto b = extensionally_equal(s, c, d, parallel);
    EXPECT_EQ(a.equal, b.equal);
    EXPECT_EQ(a.counterexample.has_value(), b.counterexample.has_value());
    if (a.counterexample && b.counterexample) EXPECT_EQ(a.counterexample->input, b.counterexample->input);
  }
}

TEST(Kernels, DecodeIndexIsLexicographic) {
  Tuple out(3);
  decode_index(5, 2, out);
  EXPECT_EQ(out, T({1, 0, 1}));
  decode_index(26, 3, out);
  EXPECT_EQ(out, T({2, 2, 2}));
}

TEST(Kernels, CheckedPower) {
  EXPECT_EQ(checked_power(3, 4, 1000), std::optional<std::uint64_t>(81));
  EXPECT_EQ(checked_power(3, 7, 1000), std::nullopt);
  EXPECT_EQ(checked_power(2, 0, 1), std::optional<std::uint64_t>(1));
  EXPECT_EQ(checked_power(~std::uint64_t{0}, 3, ~std::uint64_t{0}), std::nullopt);
}

TEST(Kernels, FirstFailureFindsLeastIndex) {
  for (auto exec : {Exec::Serial, Exec::Parallel}) {
    const auto hit = first_failure(
        10000, exec, [] { return 0; }, [](int&, std::uint64_t i) { return i % 997 == 500; });
    EXPECT_EQ(hit, std::optional<std::uint64_t>(500));
    const auto none = first_failure(
        100, exec, [] { return 0; }, [](int&, std::uint64_t) { return false; });
    EXPECT_EQ(none, std::nullopt);
  }
}

TEST(Kernels, ForEachIndexPropagatesErrors) {
  for (auto exec : {Exec::Serial, Exec::Parallel}) {
    EXPECT_THROW(for_each_index(
                     100, exec, [] { return 0; },
                     [](int&, std::uint64_t i) {
                       if (i == 42) throw Error(ErrorCode::Overflow, "boom");
                     }),
                 Error);
  }
}

}  // namespace
}  // namespace polycirc
