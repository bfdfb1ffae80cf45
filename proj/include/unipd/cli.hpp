#pragma once

#include "unipd/harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace unipd::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
  std::string kind;  // "qt" | "mc"
  std::uint64_t seed = 0;
  // qt
  int qubits = 0;
  Index measurements = 0;
  // mc
  Index rows = 0;
  Index cols = 0;
  Index rank = 0;
  double sample_fraction = 0.0;
  double noise = 0.0;
  std::string formulation = "ball";  // "ball" | "parameter-free"
  double kappa = 0.0;                // 0: nuclear norm of the ground truth
};

ProblemInstance instantiate(const GeneratorSpec& spec);

/// Problem file: either a generator spec or explicit descriptors plus an
/// operator payload (dense array, sparse triplets, sampling indices,
/// tensor ensemble, composition) and offset b.
ProblemInstance load_problem_file(const std::string& path);
void write_generator_problem_file(const std::string& path,
                                  const GeneratorSpec& spec);
void write_problem_file(const std::string& path, const ProblemInstance& prob);

struct RunConfig {
  // problem source: exactly one of the three
  std::string problem_file;
  std::optional<GeneratorSpec> generator;
  std::string ratings_train;
  std::string ratings_test;
  char ratings_delimiter = '\t';
  std::string ratings_formulation = "parameter-free";
  double ratings_kappa = 0.0;

  std::vector<std::string> solvers;  // unipd | acc-unipd | fw-harmonic | fw-linesearch
  SolverConfig solver;
  std::string output_dir = ".";
  bool record_timing = false;  // real elapsed_s values break byte-identity
  std::string reference = "none";  // "none" | "auto"
  double reference_accuracy = 1e-6;

  ProblemInstance load_problem() const;
};

/// Parses a run config; UNIPD_SEED in the environment overrides the seed.
RunConfig parse_run_config(const std::string& path);

void write_trace_csv(const std::string& path, const Trace& trace,
                     const std::optional<double>& f_star, bool record_timing);

SolveResult dispatch_solver(const std::string& name,
                            const ProblemInstance& prob,
                            const SolverConfig& cfg);

/// CLI entry point (verbs: solve, gen, check).
/// Exit codes: 0 success, 1 solver failure, 2 configuration failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace unipd::cli
