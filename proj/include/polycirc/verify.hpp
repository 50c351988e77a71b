#ifndef POLYCIRC_VERIFY_HPP
#define POLYCIRC_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/kernels.hpp"
#include "polycirc/report.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

struct VerifyOptions {
  /// Laws with at most this many cases are checked exhaustively.
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
  /// Number of seeded random cases for larger laws.
  std::uint64_t random_cases = 10000;
  std::uint64_t seed = 20240501;
  Exec exec = Exec::Parallel;
};

/// Law names used in reports.
inline constexpr const char* kAdditivity = "additivity_of_change";
inline constexpr const char* kZeroChange = "zero_change";
inline constexpr const char* kLinearity = "linearity_of_change";
inline constexpr const char* kSymmetry = "symmetry_of_partials";

/// Checks, for c : m -> n with R = reverse(c):
///   additivity_of_change   R(x, d1 + d2) = R(x, d1) + R(x, d2)
///   zero_change            R(x, 0) = 0
///   linearity_of_change    partial(R, m)((x, d), e) = R(x, e)
///   symmetry_of_partials   D2((a, b), (c, d)) = D2((a, c), (b, d)), D2 = forward(forward(c))
/// Counterexamples are the lexicographically least failing case.
AxiomReport check_rdc_axioms(const Semiring& s, const Circuit& c, const VerifyOptions& opts = {});

struct Equation {
  std::string name;
  Circuit lhs;
  Circuit rhs;
};

/// A new generator together with the equations it must respect. The
/// generator carries both its semantics and its proposed reverse rule.
struct GeneratorExtension {
  Circuit generator;
  std::vector<Equation> equations;
};

/// Builds a single Extension generator.
Circuit make_extension_generator(
    std::string name, Shape shape,
    std::function<void(std::span<const Element>, std::span<Element>)> semantics,
    std::function<Circuit(const Circuit& self)> reverse_rule);

/// rdc.* laws for the generator itself, then for each equation
///   equation:<name>   lhs and rhs agree extensionally
///   reverse:<name>    reverse(lhs) and reverse(rhs) agree extensionally
/// Throws ShapeMismatch when the proposed reverse has the wrong shape.
AxiomReport check_extension(const Semiring& s, const GeneratorExtension& ext,
                            const VerifyOptions& opts = {});

/// Negation as an extension: R(x, d) = neg(d), equation x + neg(x) = 0.
GeneratorExtension negate_extension(const Semiring& s);
/// Equality test with the Add rule; equations compare(s, s) = 1 and
/// compare(s, t) = 0 for every pair of distinct constants.
GeneratorExtension compare_extension(const Semiring& s);
/// Identity semantics with the rule R(x, d) = d * d. Not additive.
GeneratorExtension squared_change_extension();
/// The zero map, declared equal to discard ; zero, with rule R(x, d) = d.
GeneratorExtension constant_zero_extension(const Semiring& s);

/// Checks f, g, and their composites. The preservation.seq / preservation.par
/// laws fail only when both components pass and the composite does not.
/// The sequential half is skipped when f and g are not composable.
AxiomReport check_preservation(const Semiring& s, const Circuit& f, const Circuit& g,
                               const VerifyOptions& opts = {});

/// The defining equations of the category over `s`: cartesian structure and
/// naturality of copy and discard, the additive and multiplicative monoids,
/// distributivity and annihilation, the constant equations, the
/// characteristic equation n x = 0 over zmod:n, the compare equations, and
/// the negation equation over rings.
std::vector<Equation> presentation_equations(const Semiring& s);

/// Checks every presentation equation extensionally.
AxiomReport check_presentation(const Semiring& s, const VerifyOptions& opts = {});

/// n-fold sum x + ... + x as a circuit 1 -> 1 (n = 0 is the zero map).
Circuit times_circuit(std::uint64_t n);

}  // namespace polycirc

#endif  // POLYCIRC_VERIFY_HPP
