#pragma once

// Command surface shared by the `fringelab` executable, the Python module and
// the tests: analytic tables, simulation campaigns, oracle runs and
// convergence reports, plus their CSV/JSON renderings.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fringelab/errors.hpp"
#include "fringelab/tree.hpp"
#include "fringelab/weight_family.hpp"

namespace fringelab {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { Analytic, Simulate, Oracle, Converge, Sample };
enum class Model { Gw, Bst, Rrt };
enum class OutputFormat { Json, Csv };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

/// Comma-separated sizes; an item may be a range "a..b". Throws ConfigError.
std::vector<std::uint64_t> parse_n_list(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  Command command = Command::Analytic;
  Model model = Model::Gw;
  std::optional<std::string> family;
  std::vector<std::uint64_t> n_list;
  std::size_t ell_max = 2;
  std::uint64_t replicas = 1;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-10;
  OutputFormat format = OutputFormat::Csv;
  std::string out;      // empty: stdout
  bool timing = false;  // include wall time in JSON reports

  /// Model/family consistency and per-command requirements.
  void validate() const;
  /// Canonical law for model=gw; throws for other models.
  CanonicalLaw law() const;
  std::string family_label() const;
};

/// Analytic p*_ell for ell = 0..ell_max: gw through the tilted recursion,
/// bst/rrt through the continuous-time quadratures at tolerance `tol`.
std::vector<double> analytic_limits(Model model, const std::optional<CanonicalLaw>& law, std::size_t ell_max,
                                    double tol);

struct AnalyticRow {
  std::size_t ell = 0;
  double limit = 0.0;
  double level = 0.0;  // c_ell = p*_{ell-1} - p*_ell
};

struct AnalyticTable {
  Model model = Model::Gw;
  std::string family;
  std::vector<AnalyticRow> rows;
};

AnalyticTable run_analytic(const RunConfig& config);

/// Per-replica protection proportions: result[r][ell], ell = 0..max_level,
/// replica r drawn with Seed{seed, r}.
std::vector<std::vector<double>> simulate_replicas(Model model, const std::optional<CanonicalLaw>& law,
                                                   std::uint64_t n, std::uint64_t replicas, std::uint64_t seed,
                                                   std::size_t max_level);

struct SimRow {
  std::size_t ell = 0;
  double estimate = 0.0;  // mean of per-replica proportions
  double limit = 0.0;
  double gap = 0.0;       // |estimate - limit|
  double sd = 0.0;        // across-replica standard deviation
  double se = 0.0;        // sd / sqrt(replicas)
  double radius = 0.0;    // 3 * se
};

struct SimReport {
  Model model = Model::Gw;
  std::string family;
  std::uint64_t n = 0;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::vector<SimRow> rows;  // ell = 1..ell_max
  double wall_seconds = 0.0;
};

SimReport run_simulate(const RunConfig& config);

struct OracleRecord {
  Model model = Model::Gw;
  std::string family;
  std::uint64_t n = 0;
  std::size_t ell = 0;
  double value = 0.0;
  bool exact = false;
  std::string fraction;
};

std::vector<OracleRecord> run_oracle(const RunConfig& config);

/// Largest n the exhaustive oracle handles for the model.
std::uint64_t oracle_limit(Model model);

struct ConvergeRow {
  std::uint64_t n = 0;
  std::size_t ell = 0;
  double estimate = 0.0;
  double limit = 0.0;
  double gap = 0.0;
  double se = 0.0;
  std::uint64_t replicas = 0;  // 0 for exact oracle rows
  bool exact = false;
};

struct ConvergeReport {
  Model model = Model::Gw;
  std::string family;
  std::uint64_t seed = 0;
  std::vector<ConvergeRow> rows;
};

/// Oracle values up to the model's enumeration guard, simulation above it.
ConvergeReport run_converge(const RunConfig& config);

struct Corpus {
  std::string header;
  std::vector<Tree> trees;
};

/// `replicas` trees of size n, replica r drawn with Seed{seed, r}.
Corpus run_sample(const RunConfig& config);

void write_corpus(std::ostream& os, const Corpus& corpus);
/// Reads a corpus; the first line must start with '#'. Throws ParseError.
Corpus read_corpus(std::istream& is);

std::string render(const AnalyticTable& table, OutputFormat format);
std::string render(const SimReport& report, OutputFormat format, bool timing = false);
std::string render(const std::vector<OracleRecord>& records, OutputFormat format);
std::string render(const ConvergeReport& report, OutputFormat format);

/// Exit codes: 0 ok, 2 parse/config error, 3 infeasible size, 4 numerical
/// non-convergence (including an exhausted rejection budget).
int exit_code_for(const std::exception& e);

/// Full command-line entry point used by the executable.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fringelab
