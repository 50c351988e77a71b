#include "polycirc/synth.hpp"

#include <random>

#include "polycirc/csv.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/semiring.hpp"
#include "polycirc/verify.hpp"
#include "test_util.hpp"

namespace polycirc {
namespace {

using testing::error_of;
using testing::T;

FunctionTable table_of(const Semiring& s, std::size_t m, std::size_t n,
                       const std::vector<std::uint64_t>& codes) {
  std::vector<Element> out;
  for (auto c : codes) out.push_back(Element{c});
  return FunctionTable(s.id(), s.size(), Shape{m, n}, out);
}

TEST(Synth, XorIsAdd) {
  const auto z2 = Semiring::make("zmod:2");
  const auto c = synth_from_table(z2, table_of(z2, 2, 1, {0, 1, 1, 0}));
  EXPECT_TRUE(c.uses_compare());
  EXPECT_TRUE(extensionally_equal(z2, c, gen::add()).equal);
}

TEST(Synth, SuccessorOverZ3) {
  const auto z3 = Semiring::make("zmod:3");
  const auto t = table_of(z3, 1, 1, {1, 2, 0});
  const auto c = synth_from_table(z3, t);
  EXPECT_EQ(function_table(z3, c), t);
  EXPECT_TRUE(extensionally_equal(z3, c, compose(tensor(gen::id(), gen::one()), gen::add())).equal);
}

TEST(Synth, NullaryTableIsConstant) {
  const auto z5 = Semiring::make("zmod:5");
  const auto c = synth_from_table(z5, table_of(z5, 0, 1, {3}));
  EXPECT_EQ(c, gen::constant(Element{3}));
}

TEST(Synth, Errors) {
  const auto z3 = Semiring::make("zmod:3");
  const auto z2 = Semiring::make("zmod:2");
  EXPECT_EQ(error_of([&] { synth_from_table(z3, table_of(z2, 1, 1, {0, 1})); }),
            ErrorCode::IncompleteTable);
  const auto big = function_table(z3, add_n(2));
  EXPECT_EQ(error_of([&] { synth_from_table(z3, big, 10); }), ErrorCode::BudgetExceeded);
}

// Property: synthesis reproduces every table bit-exactly.
TEST(SynthProperty, AllBinaryZ2FunctionsAndRandomTables) {
  const auto z2 = Semiring::make("zmod:2");
  for (std::uint64_t f = 0; f < 16; ++f) {
    const auto t = table_of(z2, 2, 1, {f & 1, (f >> 1) & 1, (f >> 2) & 1, (f >> 3) & 1});
    EXPECT_EQ(function_table(z2, synth_from_table(z2, t)), t) << f;
  }
  std::mt19937_64 rng(31);
  for (const char* id : {"zmod:3", "sat:3", "zmod:4"}) {
    const auto s = Semiring::make(id);
    for (int i = 0; i < 20; ++i) {
      const std::size_t m = rng() % 3, n = 1 + rng() % 2;
      std::uint64_t rows = 1;
      for (std::size_t k = 0; k < m; ++k) rows *= s.size();
      std::vector<std::uint64_t> codes(rows * n);
      for (auto& c : codes) c = rng() % s.size();
      const auto t = table_of(s, m, n, codes);
      EXPECT_EQ(function_table(s, synth_from_table(s, t)), t) << id;
    }
  }
}

// Property: synthesized circuits satisfy additivity of change.
TEST(SynthProperty, SynthesizedCircuitsAreDifferentiable) {
  const auto z3 = Semiring::make("zmod:3");
  std::mt19937_64 rng(32);
  for (int i = 0; i < 5; ++i) {
    std::vector<std::uint64_t> codes(3);
    for (auto& c : codes) c = rng() % 3;
    const auto c = synth_from_table(z3, table_of(z3, 1, 1, codes));
    const auto report = check_rdc_axioms(z3, c);
    const auto* add = report.find(kAdditivity);
    ASSERT_NE(add, nullptr);
    EXPECT_EQ(add->verdict, Verdict::Pass);
    EXPECT_EQ(report.find(kZeroChange)->verdict, Verdict::Pass);
  }
}

TEST(Fermat, DeltaOverZ3) {
  const auto z3 = Semiring::make("zp:3");
  const auto d = fermat_delta(3);
  EXPECT_FALSE(d.uses_compare());
  EXPECT_EQ(eval(z3, d, T({0})), T({1}));
  EXPECT_EQ(eval(z3, d, T({1})), T({0}));
  EXPECT_EQ(eval(z3, d, T({2})), T({0}));
}

TEST(Fermat, CompareAgreement) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const auto s = Semiring::make("zp:" + std::to_string(p));
    const auto c = fermat_compare(p);
    EXPECT_FALSE(c.uses_compare());
    EXPECT_EQ(c.shape(), (Shape{2, 1}));
    const auto r = extensionally_equal(s, c, gen::compare());
    EXPECT_TRUE(r.equal) << p;
    EXPECT_EQ(r.cases, p * p);
  }
  EXPECT_EQ(error_of([] { fermat_compare(4); }), ErrorCode::NotPrime);
  EXPECT_EQ(error_of([] { fermat_delta(1); }), ErrorCode::NotPrime);
}

TEST(Fermat, P2IsXnor) {
  const auto z2 = Semiring::make("zp:2");
  const auto xnor = compose(tensor(gen::add(), gen::one()), gen::add());
  EXPECT_TRUE(extensionally_equal(z2, fermat_compare(2), xnor).equal);
}

TEST(Delta, Examples) {
  const auto z5 = Semiring::make("zmod:5");
  const auto d = delta_circuit();
  EXPECT_EQ(eval(z5, d, T({0})), T({1}));
  EXPECT_EQ(eval(z5, d, T({3})), T({0}));
  for (const auto& id : testing::finite_semirings()) {
    const auto s = Semiring::make(id);
    for (auto x : s.elements()) EXPECT_EQ(eval(s, d, {x}), T({x.code == 0 ? 1u : 0u}));
  }
}

TEST(Builders, TreesAndFanout) {
  const auto z7 = Semiring::make("zmod:7");
  EXPECT_EQ(balanced_tree(GenTag::Add, 0).shape(), (Shape{0, 1}));
  EXPECT_EQ(eval(z7, balanced_tree(GenTag::Add, 5), T({1, 2, 3, 4, 5})), T({1}));
  EXPECT_EQ(eval(z7, balanced_tree(GenTag::Mul, 0), {}), T({1}));
  EXPECT_EQ(eval(z7, fanout(2, 3), T({4, 5})), T({4, 5, 4, 5, 4, 5}));
}

TEST(Csv, TableRoundTrip) {
  const auto z3 = Semiring::make("zmod:3");
  const auto t = function_table(z3, gen::mul());
  const auto text = table_to_csv(t);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x0,x1,y0");
  EXPECT_EQ(table_from_csv(text, z3), t);
}

TEST(Csv, TableErrors) {
  const auto z3 = Semiring::make("zmod:3");
  EXPECT_EQ(error_of([&] { table_from_csv("x0,y0\n0,1\n2,2\n1,0\n", z3); }),
            ErrorCode::IncompleteTable);
  EXPECT_EQ(error_of([&] { table_from_csv("x0,y0\n0,1\n1,2\n", z3); }), ErrorCode::IncompleteTable);
  EXPECT_EQ(error_of([&] { table_from_csv("x0,y0\n0,1\n1,a\n2,0\n", z3); }), ErrorCode::InvalidFormat);
  EXPECT_EQ(error_of([&] { table_from_csv("x0,y0\n0,1\n1,7\n2,0\n", z3); }), ErrorCode::ConstOutOfRange);
  EXPECT_EQ(error_of([&] { table_from_csv("a,b\n0,1\n", z3); }), ErrorCode::InvalidFormat);
}

TEST(Csv, DatasetRoundTrip) {
  const auto z2 = Semiring::make("zmod:2");
  const auto d = dataset_from_csv("x0,y0\n0,1\n1,0\n", z2);
  EXPECT_EQ(d.input_arity, 1u);
  EXPECT_EQ(d.output_arity, 1u);
  ASSERT_EQ(d.samples.size(), 2u);
  EXPECT_EQ(d.samples[1].x, T({1}));
  EXPECT_EQ(d.samples[1].y, T({0}));
  EXPECT_EQ(dataset_to_csv(d), "x0,y0\n0,1\n1,0\n");
}

}  // namespace
}  // namespace polycirc
