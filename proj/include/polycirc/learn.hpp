#ifndef POLYCIRC_LEARN_HPP
#define POLYCIRC_LEARN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycirc/circuit.hpp"
#include "polycirc/kernels.hpp"
#include "polycirc/netlist.hpp"
#include "polycirc/semiring.hpp"

namespace polycirc {

/// A parameterised model f : p + a -> b. Parameters come first.
struct Model {
  Circuit circuit;
  std::size_t param_arity = 0;

  std::size_t input_arity() const { return circuit.arity() - param_arity; }
  std::size_t output_arity() const { return circuit.coarity(); }
};

struct Sample {
  Tuple x;
  Tuple y;
};

using Dataset = std::vector<Sample>;

struct TrainConfig {
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  /// (prediction, target) -> change, shape 2b -> b. Defaults to add_n(b).
  std::optional<Circuit> error_map;
  /// Explicit initial parameters; otherwise drawn uniformly from `seed`.
  std::optional<Tuple> initial_params;
  /// Visit samples in a seeded random order each epoch instead of dataset order.
  bool shuffle = false;
  Exec exec = Exec::Parallel;
};

/// Throws InvalidErrorMap unless e : 2b -> b and e(y, y) = 0 for every y.
void validate_error_map(const Semiring& s, const Circuit& e, std::size_t b);

/// Compiled form of one reverse-derivative-ascent step.
class RdaStepper {
 public:
  RdaStepper(const Semiring& s, const Model& model, const Circuit& error_map);

  Tuple predict(const Tuple& params, const Tuple& x) const;
  /// params + dp where (dp, dx) = R[f]((params, x), e(f(params, x), y)).
  Tuple step(const Tuple& params, const Tuple& x, const Tuple& y) const;

 private:
  const Semiring& s_;
  Model model_;
  Netlist forward_;
  Netlist error_;
  Netlist reverse_;
};

Tuple rda_step(const Semiring& s, const Model& model, const Circuit& error_map,
               const Tuple& params, const Tuple& x, const Tuple& y);

/// Fraction of samples with f(params, x) == y.
double accuracy(const Semiring& s, const Model& model, const Tuple& params, const Dataset& data,
                Exec exec = Exec::Parallel);

struct EpochMetrics {
  std::size_t epoch = 0;
  double accuracy = 0.0;
  Tuple params;
};

struct TrainResult {
  Tuple params;
  std::vector<EpochMetrics> epochs;

  /// [{"epoch", "accuracy", "params"}, ...]
  std::string to_json() const;
};

TrainResult train(const Semiring& s, const Model& model, const Dataset& data,
                  const TrainConfig& cfg);

/// One parameter copied into two Add sub-models on separate inputs, whose
/// outputs are summed. Each sub-model passes a change of 1 back to the
/// parameter, so the update is 1 + 1 in the semiring.
struct WrapAroundReport {
  std::string semiring;
  Circuit model;
  Tuple sub_gradients;
  Element update;
  Element params_before;
  Element params_after;

  std::string to_json() const;
};

WrapAroundReport wrap_around_demo(const Semiring& s);

}  // namespace polycirc

#endif  // POLYCIRC_LEARN_HPP
