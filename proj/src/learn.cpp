#include "polycirc/learn.hpp"

#include <algorithm>
#include <atomic>
#include <random>

#include <json.hpp>

#include "polycirc/error.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/rdiff.hpp"

namespace polycirc {

namespace {

Tuple concat(const Tuple& a, const Tuple& b) {
  Tuple out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_sample(const Model& m, const Tuple& params, const Tuple& x, const Tuple& y) {
  if (params.size() != m.param_arity || x.size() != m.input_arity() || y.size() != m.output_arity()) {
    throw Error(ErrorCode::ShapeMismatch,
                "sample shape (" + std::to_string(params.size()) + "," + std::to_string(x.size()) +
                    "," + std::to_string(y.size()) + ") does not fit model " +
                    to_string(m.circuit.shape()) + " with " + std::to_string(m.param_arity) +
                    " parameters");
  }
}

nlohmann::ordered_json codes(const Tuple& t) {
  auto j = nlohmann::ordered_json::array();
  for (auto e : t) j.push_back(e.code);
  return j;
}

}  // namespace

void validate_error_map(const Semiring& s, const Circuit& e, std::size_t b) {
  if (e.shape() != Shape{2 * b, b}) {
    throw Error(ErrorCode::InvalidErrorMap, "error map must have shape " + to_string({2 * b, b}) +
                                                ", got " + to_string(e.shape()));
  }
  const Netlist net(s, e);
  const std::uint64_t rows = enumeration_size(s, b, kDefaultBudget);
  Tuple y(b);
  for (std::uint64_t i = 0; i < rows; ++i) {
    decode_index(i, s.size(), y);
    const Tuple d = net(concat(y, y));
    if (std::any_of(d.begin(), d.end(), [&](Element v) { return v != s.zero(); })) {
      throw Error(ErrorCode::InvalidErrorMap, "error map is nonzero at y = (" + format_tuple(y) +
                                                  "): gives (" + format_tuple(d) + ")");
    }
  }
}

RdaStepper::RdaStepper(const Semiring& s, const Model& model, const Circuit& error_map)
    : s_(s),
      model_(model),
      forward_(s, model.circuit),
      error_(s, error_map),
      reverse_(s, reverse(model.circuit)) {
  if (model.param_arity > model.circuit.arity()) {
    throw Error(ErrorCode::ShapeMismatch, "model has more parameters than inputs");
  }
  const std::size_t b = model.output_arity();
  if (error_map.shape() != Shape{2 * b, b}) {
    throw Error(ErrorCode::ShapeMismatch, "error map must have shape " + to_string({2 * b, b}));
  }
}

Tuple RdaStepper::predict(const Tuple& params, const Tuple& x) const {
  return forward_(concat(params, x));
}

Tuple RdaStepper::step(const Tuple& params, const Tuple& x, const Tuple& y) const {
  check_sample(model_, params, x, y);
  const Tuple point = concat(params, x);
  const Tuple change = error_(concat(forward_(point), y));
  const Tuple grad = reverse_(concat(point, change));
  Tuple out(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) out[i] = s_.add(params[i], grad[i]);
  return out;
}

Tuple rda_step(const Semiring& s, const Model& model, const Circuit& error_map,
               const Tuple& params, const Tuple& x, const Tuple& y) {
  return RdaStepper(s, model, error_map).step(params, x, y);
}

double accuracy(const Semiring& s, const Model& model, const Tuple& params, const Dataset& data,
                Exec exec) {
  if (data.empty()) return 0.0;
  const Netlist net(s, model.circuit);
  std::atomic<std::uint64_t> hits{0};
  for_each_index(
      data.size(), exec, [] { return 0; },
      [&](int&, std::uint64_t i) {
        const auto& sample = data[i];
        check_sample(model, params, sample.x, sample.y);
        if (net(concat(params, sample.x)) == sample.y) hits.fetch_add(1, std::memory_order_relaxed);
      });
  return static_cast<double>(hits.load()) / static_cast<double>(data.size());
}

TrainResult train(const Semiring& s, const Model& model, const Dataset& data,
                  const TrainConfig& cfg) {
  const std::size_t b = model.output_arity();
  const Circuit error_map = cfg.error_map ? *cfg.error_map : add_n(b);
  validate_error_map(s, error_map, b);

  std::mt19937_64 rng(cfg.seed);
  Tuple params;
  if (cfg.initial_params) {
    params = *cfg.initial_params;
    for (auto e : params) {
      if (!s.contains(e)) {
        throw Error(ErrorCode::ConstOutOfRange, "initial parameter " + std::to_string(e.code) +
                                                    " outside carrier of " + s.id());
      }
    }
  } else {
    std::uniform_int_distribution<std::uint64_t> dist(0, s.size() - 1);
    for (std::size_t i = 0; i < model.param_arity; ++i) params.push_back(Element{dist(rng)});
  }
  if (params.size() != model.param_arity) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(model.param_arity) +
                                              " parameters, got " + std::to_string(params.size()));
  }

  const RdaStepper stepper(s, model, error_map);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
    for (const auto i : order) params = stepper.step(params, data[i].x, data[i].y);
    result.epochs.push_back({epoch, accuracy(s, model, params, data, cfg.exec), params});
  }
  result.params = params;
  return result;
}

std::string TrainResult::to_json() const {
  auto j = nlohmann::ordered_json::array();
  for (const auto& e : epochs) {
    nlohmann::ordered_json row;
    row["epoch"] = e.epoch;
    row["accuracy"] = e.accuracy;
    row["params"] = codes(e.params);
    j.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

WrapAroundReport wrap_around_demo(const Semiring& s) {
  // (p, x1, x2) -> (p + x1) + (p + x2)
  const Circuit model = compose_all({tensor_all({gen::copy(), gen::id(), gen::id()}),
                                     tensor_all({gen::id(), gen::twist(), gen::id()}),
                                     tensor(gen::add(), gen::add()), gen::add()});
  const Element p = s.zero();
  const Element x = s.zero();
  const Element change = s.one();

  WrapAroundReport report{s.id(), model, {}, s.zero(), p, p};
  // Each sub-model's own reverse derivative at the shared parameter.
  const Circuit sub = gen::add();
  const Tuple sub_grad = eval(s, reverse(sub), Tuple{p, x, change});
  report.sub_gradients = Tuple{sub_grad[0], sub_grad[0]};

  const Tuple grad = eval(s, reverse(model), Tuple{p, x, x, change});
  report.update = grad[0];
  report.params_after = s.add(p, grad[0]);
  return report;
}

std::string WrapAroundReport::to_json() const {
  nlohmann::ordered_json j;
  j["semiring"] = semiring;
  j["sub_gradients"] = codes(sub_gradients);
  j["update"] = update.code;
  j["params_before"] = codes(Tuple{params_before});
  j["params_after"] = codes(Tuple{params_after});
  return j.dump(2) + "\n";
}

}  // namespace polycirc
