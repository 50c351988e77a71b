#include "polycirc/verify.hpp"

#include <random>

#include "polycirc/eval.hpp"
#include "polycirc/random_circuit.hpp"
#include "polycirc/rdiff.hpp"
#include "polycirc/semiring.hpp"
#include "test_util.hpp"

namespace polycirc {
namespace {

using testing::error_of;
using testing::T;

Verdict verdict(const AxiomReport& r, const std::string& name) {
  const auto* law = r.find(name);
  EXPECT_NE(law, nullptr) << name << "\n" << r.to_text();
  return law ? law->verdict : Verdict::Skipped;
}

TEST(RdcAxioms, MulOverZ3) {
  const auto r = check_rdc_axioms(Semiring::make("zmod:3"), gen::mul());
  EXPECT_TRUE(r.passed()) << r.to_text();
  for (const auto& law : r.laws()) EXPECT_TRUE(law.exhaustive) << law.name;
  EXPECT_EQ(r.laws().size(), 4u);
}

TEST(RdcAxioms, CompareOverZ2) {
  const auto r = check_rdc_axioms(Semiring::make("zmod:2"), gen::compare());
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.find(kAdditivity)->cases, 16u);
  EXPECT_EQ(r.find(kSymmetry)->cases, 256u);
}

TEST(RdcAxioms, EveryGeneratorPasses) {
  for (const char* id : {"zmod:2", "zmod:3", "zmod:5", "sat:2", "sat:3", "sat:4"}) {
    const auto s = Semiring::make(id);
    std::vector<Circuit> gens = {gen::add(),     gen::zero(),  gen::mul(),  gen::one(),
                                 gen::copy(),    gen::discard(), gen::id(), gen::twist(),
                                 gen::compare(), gen::constant(Element{1})};
    if (s.has_neg()) gens.push_back(gen::negate());
    for (const auto& g : gens) {
      const auto r = check_rdc_axioms(s, g);
      EXPECT_TRUE(r.passed()) << id << "\n" << r.to_text();
    }
  }
}

TEST(RdcAxioms, InfiniteCarrierRejected) {
  EXPECT_EQ(error_of([] { check_rdc_axioms(Semiring::make("nat"), gen::add()); }),
            ErrorCode::InfiniteCarrier);
}

TEST(Extension, SquaredChangeFailsAdditivity) {
  const auto z3 = Semiring::make("zmod:3");
  const auto ext = squared_change_extension();
  const auto r = check_extension(z3, ext);
  EXPECT_FALSE(r.passed());
  const auto* law = r.find(std::string("rdc.") + kAdditivity);
  ASSERT_NE(law, nullptr);
  EXPECT_EQ(law->verdict, Verdict::Fail);
  ASSERT_TRUE(law->counterexample.has_value());
  EXPECT_EQ(*law->counterexample, T({0, 1, 1}));

  // Replaying the counterexample reproduces the inequality: (1+1)^2 = 1, 1^2 + 1^2 = 2.
  const auto rev = reverse(ext.generator);
  const auto lhs = eval(z3, rev, T({0, 2}));
  const auto one = eval(z3, rev, T({0, 1}));
  EXPECT_EQ(lhs, T({1}));
  EXPECT_EQ(z3.add(one[0], one[0]), Element{2});
}

TEST(Extension, NegateAndComparePass) {
  for (const char* id : {"zmod:2", "zmod:3", "zmod:5"}) {
    const auto s = Semiring::make(id);
    const auto r = check_extension(s, negate_extension(s));
    EXPECT_TRUE(r.passed()) << id << "\n" << r.to_text();
    EXPECT_EQ(verdict(r, "equation:inverse"), Verdict::Pass);
    EXPECT_EQ(verdict(r, "reverse:inverse"), Verdict::Pass);
  }
  for (const char* id : {"zmod:2", "zmod:3", "sat:2", "sat:3", "sat:4"}) {
    const auto s = Semiring::make(id);
    const auto r = check_extension(s, compare_extension(s));
    EXPECT_TRUE(r.passed()) << id << "\n" << r.to_text();
  }
}

TEST(Extension, ZeroMapWithIdentityRuleIsIllDefined) {
  const auto s = Semiring::make("zmod:3");
  const auto r = check_extension(s, constant_zero_extension(s));
  EXPECT_EQ(verdict(r, "equation:discard_zero"), Verdict::Pass);
  EXPECT_EQ(verdict(r, "reverse:discard_zero"), Verdict::Fail);
  EXPECT_TRUE(r.find("reverse:discard_zero")->counterexample.has_value());
}

TEST(Extension, AsymmetricMixedPartialsFailSymmetry) {
  // Multiplication whose rule forgets the dependence on x1: ((x1, x2), d) -> (x2 d, 0).
  const auto z3 = Semiring::make("zmod:3");
  const auto g = make_extension_generator(
      "lopsided_mul", {2, 1},
      [z3](std::span<const Element> in, std::span<Element> out) { out[0] = z3.mul(in[0], in[1]); },
      [](const Circuit&) {
        return compose(tensor(gen::discard(), gen::mul()), tensor(gen::id(), gen::zero()));
      });
  const auto r = check_extension(z3, GeneratorExtension{g, {}});
  EXPECT_EQ(verdict(r, std::string("rdc.") + kAdditivity), Verdict::Pass);
  EXPECT_EQ(verdict(r, std::string("rdc.") + kLinearity), Verdict::Pass);
  EXPECT_EQ(verdict(r, std::string("rdc.") + kSymmetry), Verdict::Fail);
}

TEST(Extension, RuleShapeIsChecked) {
  const auto g = make_extension_generator(
      "bad_shape", {1, 1}, [](std::span<const Element> in, std::span<Element> out) { out[0] = in[0]; },
      [](const Circuit&) { return gen::id(); });
  EXPECT_EQ(error_of([&] { reverse(g); }), ErrorCode::ShapeMismatch);
}

TEST(Preservation, Examples) {
  const auto z2 = Semiring::make("zmod:2");
  const auto sq = compose(gen::copy(), gen::mul());
  const auto r = check_preservation(z2, gen::mul(), sq);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(verdict(r, "preservation.seq"), Verdict::Pass);
  EXPECT_EQ(verdict(r, "preservation.par"), Verdict::Pass);
  const auto ids = check_preservation(z2, gen::id(), gen::id());
  EXPECT_EQ(verdict(ids, "preservation.seq"), Verdict::Pass);
  const auto skew = check_preservation(z2, gen::add(), gen::add());
  EXPECT_EQ(verdict(skew, "preservation.seq"), Verdict::Skipped);
  EXPECT_EQ(verdict(skew, "preservation.par"), Verdict::Pass);
}

TEST(Preservation, RandomPairs) {
  const auto z2 = Semiring::make("zmod:2");
  std::mt19937_64 rng(41);
  RandomCircuitOptions o;
  o.max_arity = 2;
  o.max_coarity = 2;
  o.max_size = 10;
  for (int i = 0; i < 40; ++i) {
    const auto f = random_circuit(rng, o);
    const auto g = random_circuit(rng, o, Shape{f.coarity(), 1 + rng() % 2});
    const auto r = check_preservation(z2, f, g);
    EXPECT_EQ(verdict(r, "preservation.seq"), Verdict::Pass) << r.to_text();
    EXPECT_EQ(verdict(r, "preservation.par"), Verdict::Pass) << r.to_text();
  }
}

TEST(Presentation, Z2AndCharacteristic) {
  const auto r = check_presentation(Semiring::make("zmod:2"));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(verdict(r, "characteristic(n=2)"), Verdict::Pass);
  for (std::uint64_t n = 3; n <= 6; ++n) {
    const auto rn = check_presentation(Semiring::make("zmod:" + std::to_string(n)));
    EXPECT_TRUE(rn.passed()) << n;
    EXPECT_EQ(verdict(rn, "characteristic(n=" + std::to_string(n) + ")"), Verdict::Pass);
  }
}

TEST(Presentation, ConstantEquationsCoverAllPairs) {
  const auto r = check_presentation(Semiring::make("zmod:5"));
  EXPECT_TRUE(r.passed());
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      const std::string pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      EXPECT_EQ(verdict(r, "const_add" + pair), Verdict::Pass);
      EXPECT_EQ(verdict(r, "const_mul" + pair), Verdict::Pass);
      EXPECT_EQ(verdict(r, "compare" + pair), Verdict::Pass);
    }
  }
}

TEST(Presentation, SatDistributivity) {
  for (std::uint64_t n = 2; n <= 8; ++n) {
    const auto r = check_presentation(Semiring::make("sat:" + std::to_string(n)));
    EXPECT_TRUE(r.passed()) << n << "\n" << r.to_text();
    const auto* d = r.find("distributivity");
    ASSERT_NE(d, nullptr);
    EXPECT_EQ(d->verdict, Verdict::Pass);
    EXPECT_TRUE(d->exhaustive);
    if (n == 3) EXPECT_EQ(d->cases, 27u);
    EXPECT_EQ(verdict(r, "annihilation"), Verdict::Pass);
  }
}

TEST(Presentation, TableStructureFailsWithReplayableCounterexample) {
  // XOR as addition and OR as multiplication is not distributive.
  const std::vector<Element> orr = {Element{0}, Element{1}, Element{1}, Element{1}};
  const std::vector<Element> xr = {Element{0}, Element{1}, Element{1}, Element{0}};
  const auto s = Semiring::from_tables("mixed", 2, Element{0}, Element{1}, xr, orr);
  const auto r = check_presentation(s);
  EXPECT_FALSE(r.passed());
  for (const auto& eq : presentation_equations(s)) {
    const auto* law = r.find(eq.name);
    ASSERT_NE(law, nullptr) << eq.name;
    if (law->verdict != Verdict::Fail) continue;
    ASSERT_TRUE(law->counterexample.has_value()) << eq.name;
    EXPECT_NE(eval(s, eq.lhs, *law->counterexample), eval(s, eq.rhs, *law->counterexample))
        << eq.name;
  }
}

// Property: sampled checks are reproducible and independent of the executor.
TEST(VerifyProperty, DeterministicAcrossRunsAndExecutors) {
  const auto z5 = Semiring::make("zmod:5");
  std::mt19937_64 rng(42);
  RandomCircuitOptions o;
  o.min_arity = 3;
  o.max_arity = 3;
  o.carrier_size = 5;
  o.allow_compare = true;
  o.max_size = 8;
  const auto c = random_circuit(rng, o);
  VerifyOptions serial;
  serial.exec = Exec::Serial;
  const auto a = check_rdc_axioms(z5, c);
  const auto b = check_rdc_axioms(z5, c);
  const auto d = check_rdc_axioms(z5, c, serial);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.to_json(), d.to_json());
  const auto* sym = a.find(kSymmetry);
  ASSERT_NE(sym, nullptr);
  EXPECT_FALSE(sym->exhaustive);
  EXPECT_TRUE(sym->seed.has_value());
  EXPECT_EQ(sym->cases, 10000u);
}

TEST(VerifyProperty, SerialAndParallelAgreeOnFailures) {
  const auto z3 = Semiring::make("zmod:3");
  VerifyOptions serial;
  serial.exec = Exec::Serial;
  const auto ext = squared_change_extension();
  EXPECT_EQ(check_extension(z3, ext).to_json(), check_extension(z3, ext, serial).to_json());
}

}  // namespace
}  // namespace polycirc
