// Copyright 2026 The procmat developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "procmat/procmat.hpp"

namespace {

using namespace procmat;

// Exit codes: 0 success/affirmative, 1 usage error, 2 malformed input,
// 3 negative verdict (invalid process, noncovariant, bound exceeded).
constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kBadInput = 2;
constexpr int kNegativeVerdict = 3;

struct BadInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw BadInputError("malformed JSON in " + what);
  return j;
}

double resolve_tolerance(const std::optional<double>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TOLERANCE")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw BadInputError("TOLERANCE environment variable is not a number");
    }
  }
  return kDefaultTol;
}

// A process argument is a builtin name or a path ('-' for stdin). Returns
// the process plus an input-echo object for the report.
std::pair<ProcessMatrix, Json> load_process(const std::string& spec, int d) {
  if (auto builtin = builtin_process(spec, d))
    return {*builtin, Json{{"name", spec}, {"builtin", true}}};
  const std::string text = read_stream_or_file(spec);
  try {
    Operator op = operator_from_json(parse_json(text, spec));
    return {ProcessMatrix(std::move(op)),
            Json{{"name", spec}, {"fnv1a64", fnv1a64_hex(text)}}};
  } catch (const std::invalid_argument& e) {
    throw BadInputError(std::string("process input: ") + e.what());
  }
}

Operator load_operator(const std::string& spec) {
  const std::string text = read_stream_or_file(spec);
  try {
    return operator_from_json(parse_json(text, spec));
  } catch (const std::invalid_argument& e) {
    throw BadInputError(std::string("operator input: ") + e.what());
  }
}

std::pair<Witness, Json> load_witness(const std::string& spec) {
  if (spec == "ocb")
    return {ocb_witness(), Json{{"name", "ocb"}, {"builtin", true}}};
  const std::string text = read_stream_or_file(spec);
  try {
    Operator op = operator_from_json(parse_json(text, spec));
    return {Witness(std::move(op), 1.0),
            Json{{"name", spec}, {"fnv1a64", fnv1a64_hex(text)}}};
  } catch (const std::invalid_argument& e) {
    throw BadInputError(std::string("witness input: ") + e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json make_report(const std::string& verb, Json inputs, Json results) {
  return Json{{"verb", verb},
              {"version", version()},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)}};
}

Json validity_to_json(const ValidityReport& rep) {
  return Json{{"valid", rep.valid()},
              {"psd", rep.psd},
              {"trace_ok", rep.trace_ok},
              {"c1", rep.c1},
              {"c2", rep.c2},
              {"c3", rep.c3},
              {"min_eigenvalue", rep.min_eigenvalue},
              {"trace_residual", rep.trace_residual},
              {"residuals", Json{{"c1", rep.r1}, {"c2", rep.r2},
                                 {"c3", rep.r3}}}};
}

int run(int argc, char** argv) {
  CLI::App app{"process-matrix toolkit: build, certify, twirl, decompose, "
               "witness and simulate bipartite processes"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);
  app.set_version_flag("--version", std::string("procmat ") + version());

  std::optional<double> tol_flag;
  app.add_option("--tolerance", tol_flag,
                 "residual tolerance (overrides TOLERANCE env; default 1e-9)");

  // builtin
  auto* cmd_builtin = app.add_subcommand(
      "builtin", "emit a named canonical process as Operator JSON");
  std::string builtin_name;
  int builtin_d = 2;
  cmd_builtin
      ->add_option("name", builtin_name,
                   "one of: fixed-order-ab, fixed-order-ba, ocb, qs-marginal")
      ->required();
  cmd_builtin->add_option("--d", builtin_d, "local dimension (default 2)");

  // validate
  auto* cmd_validate = app.add_subcommand(
      "validate", "check PSD, normalization and causality constraints");
  std::string validate_input = "-";
  cmd_validate->add_option("input", validate_input,
                           "operator JSON file, or - for stdin");

  // twirl
  auto* cmd_twirl =
      app.add_subcommand("twirl", "emit the wire twirl of a process");
  std::string twirl_input = "-";
  cmd_twirl->add_option("input", twirl_input,
                        "builtin name, operator JSON file, or -");

  // covariance-check
  auto* cmd_cov = app.add_subcommand(
      "covariance-check", "test invariance under the independent wire twirl");
  std::string cov_input = "-";
  cmd_cov->add_option("input", cov_input,
                      "builtin name, operator JSON file, or -");

  // decompose
  auto* cmd_dec = app.add_subcommand(
      "decompose", "convex decomposition over the four definite-order vertices");
  std::string dec_input = "-";
  bool dec_verify = false;
  cmd_dec->add_option("input", dec_input,
                      "builtin name, operator JSON file, or -");
  cmd_dec->add_flag("--verify", dec_verify,
                    "recompose from the weights and check the residual");

  // witness-split
  auto* cmd_split = app.add_subcommand(
      "witness-split", "split a witness into benchmark and resource parts");
  std::string split_witness_spec = "ocb";
  cmd_split->add_option("--witness", split_witness_spec,
                        "'ocb' or operator JSON file (scale 1)");

  // score
  auto* cmd_score = app.add_subcommand(
      "score", "evaluate a witness score and its benchmark/resource parts");
  std::string score_witness_spec = "ocb";
  std::string score_process_spec;
  cmd_score->add_option("--witness", score_witness_spec,
                        "'ocb' or operator JSON file (scale 1)");
  cmd_score
      ->add_option("--process", score_process_spec,
                   "builtin name, operator JSON file, or -")
      ->required();

  // simulate
  auto* cmd_sim = app.add_subcommand(
      "simulate", "evaluate a causal game through the generalized Born rule");
  std::string sim_process_spec, sim_strategy_spec = "ocb",
                                sim_game_spec = "ocb";
  cmd_sim
      ->add_option("--process", sim_process_spec,
                   "builtin name, operator JSON file, or -")
      ->required();
  cmd_sim->add_option("--strategy", sim_strategy_spec,
                      "'ocb' or strategy JSON file");
  cmd_sim->add_option("--game", sim_game_spec, "'ocb' or game JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  const double tol = resolve_tolerance(tol_flag);

  if (cmd_builtin->parsed()) {
    auto process = builtin_process(builtin_name, builtin_d);
    if (!process) {
      std::cerr << "unknown builtin process '" << builtin_name << "'\n";
      return kUsageError;
    }
    if (builtin_name == "ocb" && builtin_d != 2) {
      std::cerr << "builtin ocb is defined for d = 2 only\n";
      return kUsageError;
    }
    emit(operator_to_json(process->op()));
    return kOk;
  }

  if (cmd_validate->parsed()) {
    auto [process, echo] = load_process(validate_input, 2);
    const ValidityReport rep = validate(process, tol);
    emit(make_report("validate", Json{{"process", echo}},
                     validity_to_json(rep)));
    return rep.valid() ? kOk : kNegativeVerdict;
  }

  if (cmd_twirl->parsed()) {
    const ProcessMatrix process = load_process(twirl_input, 2).first;
    emit(operator_to_json(wire_twirl(process).op()));
    return kOk;
  }

  if (cmd_cov->parsed()) {
    auto [process, echo] = load_process(cov_input, 2);
    const double residual = covariance_residual(process);
    const bool covariant = residual <= tol;
    emit(make_report("covariance-check", Json{{"process", echo}},
                     Json{{"covariant", covariant},
                          {"residual", residual},
                          {"tolerance", tol}}));
    return covariant ? kOk : kNegativeVerdict;
  }

  if (cmd_dec->parsed()) {
    auto [process, echo] = load_process(dec_input, 2);
    std::optional<SeparableDecomposition> maybe_dec;
    try {
      maybe_dec = decompose(process, tol);
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kNegativeVerdict;
    }
    const SeparableDecomposition& dec = *maybe_dec;
    const ProcessMatrix rebuilt = recompose(dec);
    const double residual = (rebuilt.op() - process.op()).max_abs();
    Json results{
        {"coefficients", Json{{"alpha", dec.coefficients.alpha},
                              {"beta", dec.coefficients.beta},
                              {"gamma", dec.coefficients.gamma},
                              {"delta", dec.coefficients.delta},
                              {"d", dec.coefficients.d}}},
        {"weights", dec.weights},
        {"vertex_names", vertex_names()},
        {"reconstruction_residual", residual}};
    emit(make_report("decompose", Json{{"process", echo}}, results));
    if (dec_verify && residual > 1e-10) {
      std::cerr << "decompose --verify: reconstruction residual " << residual
                << " exceeds 1e-10\n";
      return kNegativeVerdict;
    }
    return kOk;
  }

  if (cmd_split->parsed()) {
    auto [witness, echo] = load_witness(split_witness_spec);
    const WitnessSplit split = split_witness(witness);
    const double perp_residual =
        wire_twirl(split.m_perp,
                   WireAssignment::canonical(witness.d()))
            .max_abs();
    emit(make_report(
        "witness-split", Json{{"witness", echo}},
        Json{{"m_g", operator_to_json(split.m_g)},
             {"m_perp", operator_to_json(split.m_perp)},
             {"scale", split.scale},
             {"residuals",
              Json{{"sum", (split.m_g + split.m_perp - witness.m()).max_abs()},
                   {"twirled_m_perp", perp_residual}}}}));
    return kOk;
  }

  if (cmd_score->parsed()) {
    auto [witness, wecho] = load_witness(score_witness_spec);
    auto [process, pecho] = load_process(score_process_spec, witness.d());
    const ScoreReport rep = score(witness, process);
    const WitnessSplit split = split_witness(witness);
    const BenchmarkResult bench = covariant_benchmark(split, witness.d());
    const bool exceeds = rep.total > bench.value + tol;
    emit(make_report(
        "score", Json{{"witness", wecho}, {"process", pecho}},
        Json{{"total", rep.total},
             {"benchmark_part", rep.benchmark_part},
             {"resource_part", rep.resource_part},
             {"covariant_benchmark", bench.value},
             {"benchmark_vertex", vertex_names()[bench.vertex]},
             {"noncovariance", rep.noncovariance},
             {"noncovariance_raw", rep.noncovariance_raw},
             {"exceeds_benchmark", exceeds}}));
    return exceeds ? kNegativeVerdict : kOk;
  }

  if (cmd_sim->parsed()) {
    auto [process, pecho] = load_process(sim_process_spec, 2);
    Strategy strategy;
    Json secho, gecho;
    if (sim_strategy_spec == "ocb") {
      strategy = ocb_strategy();
      secho = Json{{"name", "ocb"}, {"builtin", true}};
    } else {
      const std::string text = read_stream_or_file(sim_strategy_spec);
      try {
        strategy = strategy_from_json(parse_json(text, sim_strategy_spec));
      } catch (const std::exception& e) {
        throw BadInputError(std::string("strategy input: ") + e.what());
      }
      secho = Json{{"name", sim_strategy_spec}, {"fnv1a64", fnv1a64_hex(text)}};
    }
    GameSpec game;
    if (sim_game_spec == "ocb") {
      game = ocb_game();
      gecho = Json{{"name", "ocb"}, {"builtin", true}};
    } else {
      const std::string text = read_stream_or_file(sim_game_spec);
      try {
        game = game_from_json(parse_json(text, sim_game_spec));
      } catch (const std::exception& e) {
        throw BadInputError(std::string("game input: ") + e.what());
      }
      gecho = Json{{"name", sim_game_spec}, {"fnv1a64", fnv1a64_hex(text)}};
    }

    Json tables = Json::array();
    for (std::size_t x = 0; x < strategy.alice.size(); ++x)
      for (std::size_t y = 0; y < strategy.bob.size(); ++y) {
        const ProbabilityTable table =
            born(process, strategy.alice[x], strategy.bob[y], tol);
        tables.push_back(Json{{"x", x},
                              {"y", y},
                              {"probs", table.p},
                              {"clamped", table.clamped}});
      }
    const double success = game_success(process, strategy, game, tol);
    emit(make_report("simulate",
                     Json{{"process", pecho},
                          {"strategy", secho},
                          {"game", gecho}},
                     Json{{"tables", tables}, {"success", success}}));
    return kOk;
  }

  std::cerr << "no subcommand given\n";
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BadInputError& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  }
}
