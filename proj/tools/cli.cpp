#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "polycirc/csv.hpp"
#include "polycirc/dsl.hpp"
#include "polycirc/error.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/json_io.hpp"
#include "polycirc/learn.hpp"
#include "polycirc/polynomial.hpp"
#include "polycirc/rdiff.hpp"
#include "polycirc/synth.hpp"
#include "polycirc/verify.hpp"

namespace polycirc::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Raised for mistakes in how the tool was invoked, as opposed to domain errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string semiring;
  std::string circuit;
  std::string name;
  std::string input;
  std::string format;
  std::string emit = "json";
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  std::string out;
  bool pretty = false;

  // command specific
  std::string table;
  std::string data;
  std::size_t params = 0;
  std::size_t epochs = 1;
  std::string init;
  std::string error_map;
  bool shuffle = false;
  std::string ext;
  std::string f;
  std::string g;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Semiring semiring_of(const Flags& f) {
  if (f.semiring.empty()) throw UsageError("--semiring is required for this command");
  return Semiring::make(f.semiring);
}

std::uint64_t budget_of(const Flags& f) {
  if (f.budget) return *f.budget;
  if (const char* env = std::getenv("POLYCIRC_BUDGET")) {
    std::uint64_t v = 0;
    std::istringstream ss(env);
    if (!(ss >> v) || !ss.eof()) throw UsageError("POLYCIRC_BUDGET must be an unsigned integer");
    return v;
  }
  return kDefaultBudget;
}

EvalOptions eval_options(const Flags& f) {
  EvalOptions o;
  o.budget = budget_of(f);
  return o;
}

Tuple parse_codes(const std::string& text, const Semiring& s) {
  Tuple t;
  if (text.empty()) return t;
  std::istringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::uint64_t v = 0;
    std::istringstream cs(cell);
    if (!(cs >> v) || !(cs >> std::ws).eof()) throw UsageError("'" + cell + "' is not an element code");
    if (!s.contains(Element{v})) {
      throw Error(ErrorCode::ConstOutOfRange,
                  "code " + std::to_string(v) + " outside carrier of " + s.id());
    }
    t.push_back(Element{v});
  }
  return t;
}

std::vector<NamedCircuit> load_circuits(const Flags& f, const Semiring* s) {
  if (f.circuit.empty()) throw UsageError("--circuit is required for this command");
  const std::string text = read_file(f.circuit);
  std::string format = f.format;
  if (format.empty()) {
    const bool json = f.circuit.size() >= 5 && f.circuit.substr(f.circuit.size() - 5) == ".json";
    format = json ? "json" : "dsl";
  }
  if (format == "json") return decode_circuit_file(text, s).circuits;
  DslOptions opts;
  opts.semiring = s;
  return parse_dsl(text, opts);
}

Circuit pick(const std::vector<NamedCircuit>& circuits, const std::string& name) {
  if (name.empty()) {
    if (circuits.size() == 1) return circuits.front().circuit;
    throw UsageError("--name is required when the file defines several circuits");
  }
  for (const auto& nc : circuits) {
    if (nc.name == name) return nc.circuit;
  }
  throw Error(ErrorCode::UnknownName, "no circuit named '" + name + "'");
}

std::string output_name(const Flags& f, const std::vector<NamedCircuit>& circuits) {
  if (!f.name.empty()) return f.name;
  return circuits.size() == 1 ? circuits.front().name : "f";
}

std::string emit_circuit(const Flags& f, const std::string& semiring, const std::string& name,
                         const Circuit& c) {
  if (f.emit == "dsl") return render_dsl_program({{name, c}});
  return encode_circuit_file({semiring, {{name, c}}});
}

std::string report_text(const Flags& f, const AxiomReport& r) {
  return f.pretty ? r.to_text() : r.to_json();
}

// Each command returns its output text and whether it succeeded.
struct Result {
  std::string text;
  bool ok = true;
};

Result cmd_eval(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  return {format_tuple(eval(s, pick(circuits, f.name), parse_codes(f.input, s))) + "\n"};
}

Result cmd_table(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  const FunctionTable t = function_table(s, pick(circuits, f.name), eval_options(f));
  if (!f.pretty) return {table_to_csv(t)};
  std::ostringstream ss;
  for (std::uint64_t r = 0; r < t.rows(); ++r) {
    ss << "(" << format_tuple(t.input(r)) << ") -> (" << format_tuple(t.output(r)) << ")\n";
  }
  return {ss.str()};
}

Result cmd_transform(const Flags& f, Circuit (*transform)(const Circuit&)) {
  std::optional<Semiring> s;
  if (!f.semiring.empty()) s = Semiring::make(f.semiring);
  const auto circuits = load_circuits(f, s ? &*s : nullptr);
  const Circuit c = transform(pick(circuits, f.name));
  return {emit_circuit(f, s ? s->id() : f.semiring, output_name(f, circuits), c)};
}

Result cmd_normalize(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  const PolyMap pm = to_poly(s, pick(circuits, f.name));
  if (f.pretty) return {render(pm)};
  ojson j;
  j["semiring"] = s.id();
  j["arity"] = pm.arity;
  auto polys = ojson::array();
  for (const auto& p : pm.polys) {
    auto terms = ojson::array();
    for (const auto& [mono, coeff] : p.terms()) {
      ojson t;
      t["coefficient"] = coeff.code;
      t["exponents"] = mono;
      terms.push_back(std::move(t));
    }
    polys.push_back({{"text", render(p)}, {"terms", std::move(terms)}});
  }
  j["polys"] = std::move(polys);
  return {j.dump(2) + "\n"};
}

Result cmd_synth(const Flags& f) {
  const Semiring s = semiring_of(f);
  if (f.table.empty()) throw UsageError("--table is required for synth");
  const FunctionTable t = table_from_csv(read_file(f.table), s);
  const Circuit c = synth_from_table(s, t, budget_of(f));
  return {emit_circuit(f, s.id(), f.name.empty() ? "f" : f.name, c)};
}

VerifyOptions verify_options(const Flags& f) {
  VerifyOptions o;
  o.seed = f.seed;
  return o;
}

Result cmd_verify_axioms(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  const AxiomReport r = check_rdc_axioms(s, pick(circuits, f.name), verify_options(f));
  return {report_text(f, r), r.passed()};
}

Result cmd_verify_extension(const Flags& f) {
  const Semiring s = semiring_of(f);
  GeneratorExtension ext{gen::id(), {}};
  if (f.ext == "negate") {
    ext = negate_extension(s);
  } else if (f.ext == "compare") {
    ext = compare_extension(s);
  } else if (f.ext == "squared-change") {
    ext = squared_change_extension();
  } else if (f.ext == "zero-map") {
    ext = constant_zero_extension(s);
  } else {
    throw UsageError("unknown extension '" + f.ext + "'");
  }
  const AxiomReport r = check_extension(s, ext, verify_options(f));
  return {report_text(f, r), r.passed()};
}

Result cmd_verify_presentation(const Flags& f) {
  const Semiring s = semiring_of(f);
  const AxiomReport r = check_presentation(s, verify_options(f));
  return {report_text(f, r), r.passed()};
}

Result cmd_verify_preservation(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  const AxiomReport r =
      check_preservation(s, pick(circuits, f.f), pick(circuits, f.g), verify_options(f));
  return {report_text(f, r), r.passed()};
}

Result cmd_train(const Flags& f) {
  const Semiring s = semiring_of(f);
  const auto circuits = load_circuits(f, &s);
  if (f.data.empty()) throw UsageError("--data is required for train");
  const Model model{pick(circuits, f.name), f.params};
  if (f.params > model.circuit.arity()) throw UsageError("--params exceeds the circuit arity");
  const CsvDataset data = dataset_from_csv(read_file(f.data), s);
  if (data.input_arity != model.input_arity() || data.output_arity != model.output_arity()) {
    throw Error(ErrorCode::ShapeMismatch, "dataset columns do not match the model");
  }
  TrainConfig cfg;
  cfg.epochs = f.epochs;
  cfg.seed = f.seed;
  cfg.shuffle = f.shuffle;
  if (!f.init.empty()) cfg.initial_params = parse_codes(f.init, s);
  if (!f.error_map.empty()) cfg.error_map = pick(circuits, f.error_map);
  return {train(s, model, data.samples, cfg).to_json()};
}

Result cmd_demo(const Flags& f) {
  const WrapAroundReport r = wrap_around_demo(semiring_of(f));
  if (!f.pretty) return {r.to_json()};
  std::ostringstream ss;
  ss << "semiring " << r.semiring << ": sub-gradients (" << format_tuple(r.sub_gradients)
     << "), update " << r.update.code << "\n";
  return {ss.str()};
}

Result cmd_check(const Flags& f) {
  std::optional<Semiring> s;
  if (!f.semiring.empty()) s = Semiring::make(f.semiring);
  const auto circuits = load_circuits(f, s ? &*s : nullptr);
  if (f.pretty) {
    std::ostringstream ss;
    for (const auto& nc : circuits) ss << nc.name << " : " << to_string(nc.circuit.shape()) << "\n";
    return {ss.str()};
  }
  ojson j = ojson::object();
  for (const auto& nc : circuits) j[nc.name] = to_string(nc.circuit.shape());
  return {j.dump(2) + "\n"};
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--semiring", f.semiring, "zmod:<n> | zp:<p> | sat:<n> | nat | bool");
  app->add_option("--circuit", f.circuit, "circuit file (.dsl or .json)");
  app->add_option("--name", f.name, "circuit to use from the file");
  app->add_option("--format", f.format, "input format")->check(CLI::IsMember({"dsl", "json"}));
  app->add_option("--emit", f.emit, "output format for circuits")->check(CLI::IsMember({"dsl", "json"}));
  app->add_option("--budget", f.budget, "maximum number of enumerated tuples");
  app->add_option("--seed", f.seed, "seed for randomised steps");
  app->add_option("--out", f.out, "write output to this file");
  app->add_flag("--pretty", f.pretty, "human-readable output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Differentiable polynomial circuits over commutative semirings", "polycirc"};
  app.require_subcommand(1);

  std::function<Result()> action;
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                     std::function<Result()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, f);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  command(&app, "eval", "evaluate a circuit at one input", [&] { return cmd_eval(f); })
      ->add_option("--input", f.input, "comma-separated element codes");
  command(&app, "table", "print the function table as CSV", [&] { return cmd_table(f); });
  command(&app, "rdiff", "emit the reverse derivative", [&] { return cmd_transform(f, reverse); });
  command(&app, "forward", "emit the forward derivative", [&] { return cmd_transform(f, forward); });
  command(&app, "normalize", "polynomial normal form", [&] { return cmd_normalize(f); });
  command(&app, "synth", "synthesise a circuit from a CSV table", [&] { return cmd_synth(f); })
      ->add_option("--table", f.table, "function table CSV");
  command(&app, "check", "parse and shape-check a circuit file", [&] { return cmd_check(f); });

  CLI::App* train_cmd = command(&app, "train", "reverse-derivative ascent", [&] { return cmd_train(f); });
  train_cmd->add_option("--data", f.data, "dataset CSV");
  train_cmd->add_option("--params", f.params, "number of leading parameter wires");
  train_cmd->add_option("--epochs", f.epochs, "passes over the dataset");
  train_cmd->add_option("--init", f.init, "initial parameters, comma-separated");
  train_cmd->add_option("--error-map", f.error_map, "circuit in the same file computing the change");
  train_cmd->add_flag("--shuffle", f.shuffle, "seeded sample order per epoch");

  CLI::App* verify = app.add_subcommand("verify", "check reverse derivative laws");
  verify->require_subcommand(1);
  command(verify, "axioms", "additivity, linearity and symmetry laws",
          [&] { return cmd_verify_axioms(f); });
  command(verify, "extension", "check a built-in generator extension",
          [&] { return cmd_verify_extension(f); })
      ->add_option("--ext", f.ext, "negate | compare | squared-change | zero-map")
      ->required();
  command(verify, "presentation", "check the defining equations",
          [&] { return cmd_verify_presentation(f); });
  CLI::App* pres = command(verify, "preservation", "check laws for f, g and their composites",
                           [&] { return cmd_verify_preservation(f); });
  pres->add_option("--f", f.f, "first circuit")->required();
  pres->add_option("--g", f.g, "second circuit")->required();

  CLI::App* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  command(demo, "wrap-around", "shared-parameter gradient update", [&] { return cmd_demo(f); });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Result r = action();
    if (!r.text.empty() && r.text.back() != '\n') r.text += '\n';
    if (f.out.empty()) {
      out << r.text;
    } else {
      std::ofstream file(f.out, std::ios::binary);
      if (!(file << r.text)) throw IoError("cannot write '" + f.out + "'");
    }
    return r.ok ? kExitOk : kExitDomain;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    ojson j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.what();
    err << j.dump() << "\n";
    return kExitDomain;
  } catch (const IoError& e) {
    ojson j;
    j["error"] = "IoError";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return kExitDomain;
  }
}

}  // namespace polycirc::cli
