#include "fringelab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fringelab/ct_analytic.hpp"
#include "fringelab/gw_analytic.hpp"
#include "fringelab/oracle.hpp"
#include "fringelab/samplers.hpp"

namespace fringelab {

namespace {

using json = nlohmann::ordered_json;

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::uint64_t parse_size(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("bad size '" + std::string(text) + "'");
  return v;
}

void require_feasible(const CanonicalLaw& law, std::uint64_t n) {
  if (!is_feasible_size(law, n))
    throw InfeasibleSize("no tree with n=" + std::to_string(n) + " nodes for family " + law.family().spec() + ": " +
                         feasibility_rule(law));
}

std::optional<CanonicalLaw> law_for(const RunConfig& config) {
  if (config.model != Model::Gw) return std::nullopt;
  return config.law();
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Gw: return "gw";
    case Model::Bst: return "bst";
    case Model::Rrt: return "rrt";
  }
  return "";
}

Model parse_model(std::string_view text) {
  if (text == "gw") return Model::Gw;
  if (text == "bst") return Model::Bst;
  if (text == "rrt") return Model::Rrt;
  throw ConfigError("unknown model '" + std::string(text) + "' (expected gw, bst or rrt)");
}

std::vector<std::uint64_t> parse_n_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_size(item.substr(0, dots));
      const auto hi = parse_size(item.substr(dots + 2));
      if (hi < lo) throw ConfigError("empty range '" + std::string(item) + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_size(item));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (model == Model::Gw && !family) throw ConfigError("model gw requires --family");
  if (model != Model::Gw && family) throw ConfigError("model " + std::string(to_string(model)) + " takes no --family");
  if (ell_max < 1) throw ConfigError("--ell-max must be >= 1");
  if (model != Model::Gw && !(tol >= 1e-10)) throw ConfigError("--tol must be >= 1e-10 for quadrature models");
  for (auto n : n_list)
    if (n < 1) throw ConfigError("tree sizes must be >= 1");
  switch (command) {
    case Command::Analytic: break;
    case Command::Simulate:
    case Command::Sample:
      if (n_list.size() != 1) throw ConfigError("this command needs exactly one size (--n)");
      if (replicas < 1) throw ConfigError("--replicas must be >= 1");
      break;
    case Command::Oracle:
      if (n_list.empty()) throw ConfigError("oracle needs --n or --n-list");
      break;
    case Command::Converge:
      if (n_list.empty()) throw ConfigError("converge needs a non-empty --n-list");
      if (!std::is_sorted(n_list.begin(), n_list.end()) ||
          std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end())
        throw ConfigError("--n-list must be strictly ascending");
      if (replicas < 1) throw ConfigError("--replicas must be >= 1");
      break;
  }
}

CanonicalLaw RunConfig::law() const {
  if (!family) throw ConfigError("model gw requires --family");
  return CanonicalLaw(WeightFamily::parse(*family));
}

std::string RunConfig::family_label() const {
  if (model != Model::Gw || !family) return "";
  return WeightFamily::parse(*family).spec();
}

std::vector<double> analytic_limits(Model model, const std::optional<CanonicalLaw>& law, std::size_t ell_max,
                                    double tol) {
  std::vector<double> limits{1.0};
  for (std::size_t ell = 1; ell <= ell_max; ++ell) {
    switch (model) {
      case Model::Gw:
        if (!law) throw ConfigError("model gw requires a family");
        limits.push_back(ell_protected_limit(*law, ell));
        break;
      case Model::Bst: limits.push_back(bst_ell_limit(ell, tol)); break;
      case Model::Rrt: limits.push_back(rrt_ell_limit(ell, tol)); break;
    }
  }
  return limits;
}

AnalyticTable run_analytic(const RunConfig& config) {
  config.validate();
  AnalyticTable table;
  table.model = config.model;
  table.family = config.family_label();
  const auto limits = analytic_limits(config.model, law_for(config), config.ell_max, config.tol);
  for (std::size_t ell = 1; ell <= config.ell_max; ++ell)
    table.rows.push_back({ell, limits[ell], limits[ell - 1] - limits[ell]});
  return table;
}

std::vector<std::vector<double>> simulate_replicas(Model model, const std::optional<CanonicalLaw>& law,
                                                   std::uint64_t n, std::uint64_t replicas, std::uint64_t seed,
                                                   std::size_t max_level) {
  if (model == Model::Gw) {
    if (!law) throw ConfigError("model gw requires a family");
    require_feasible(*law, n);
  }
  std::vector<std::vector<double>> out;
  out.reserve(replicas);
  for (std::uint64_t r = 0; r < replicas; ++r) {
    const Seed s{seed, r};
    ProtectionStats stats;
    switch (model) {
      case Model::Gw: stats = protection_stats(sample_conditioned_gw(*law, n, s), max_level); break;
      case Model::Bst: stats = protection_stats(sample_bst(n, s), max_level); break;
      case Model::Rrt: stats = protection_stats(sample_rrt(n, s), max_level); break;
    }
    out.push_back(stats.proportions());
  }
  return out;
}

SimReport run_simulate(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto law = law_for(config);
  SimReport report;
  report.model = config.model;
  report.family = config.family_label();
  report.n = config.n_list.front();
  report.replicas = config.replicas;
  report.seed = config.seed;

  const auto samples = simulate_replicas(config.model, law, report.n, config.replicas, config.seed, config.ell_max);
  const auto limits = analytic_limits(config.model, law, config.ell_max, config.tol);
  const auto r = static_cast<double>(config.replicas);
  for (std::size_t ell = 1; ell <= config.ell_max; ++ell) {
    SimRow row;
    row.ell = ell;
    double sum = 0.0;
    for (const auto& s : samples) sum += s[ell];
    row.estimate = sum / r;
    if (config.replicas >= 2) {
      double ss = 0.0;
      for (const auto& s : samples) ss += (s[ell] - row.estimate) * (s[ell] - row.estimate);
      row.sd = std::sqrt(ss / (r - 1.0));
      row.se = row.sd / std::sqrt(r);
      row.radius = 3.0 * row.se;
    }
    row.limit = limits[ell];
    row.gap = std::abs(row.estimate - row.limit);
    report.rows.push_back(row);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::uint64_t oracle_limit(Model model) {
  switch (model) {
    case Model::Gw: return oracle::kMaxTreeSize;
    case Model::Bst: return oracle::kMaxBstSize;
    case Model::Rrt: return oracle::kMaxRrtSize;
  }
  return 0;
}

namespace {

std::vector<oracle::OracleValue> oracle_profile(const RunConfig& config, std::uint64_t n) {
  switch (config.model) {
    case Model::Gw: {
      const auto family = WeightFamily::parse(*config.family);
      require_feasible(CanonicalLaw(family), n);
      return oracle::exact_expected_profile(family, n, config.ell_max);
    }
    case Model::Bst: return oracle::exact_bst_profile(n, config.ell_max);
    case Model::Rrt: return oracle::exact_rrt_profile(n, config.ell_max);
  }
  return {};
}

}  // namespace

std::vector<OracleRecord> run_oracle(const RunConfig& config) {
  config.validate();
  std::vector<OracleRecord> records;
  const auto family = config.family_label();
  for (auto n : config.n_list) {
    const auto values = oracle_profile(config, n);
    for (std::size_t ell = 1; ell <= config.ell_max; ++ell)
      records.push_back({config.model, family, n, ell, values[ell].value, values[ell].exact, values[ell].fraction});
  }
  return records;
}

ConvergeReport run_converge(const RunConfig& config) {
  config.validate();
  const auto law = law_for(config);
  ConvergeReport report;
  report.model = config.model;
  report.family = config.family_label();
  report.seed = config.seed;
  const auto limits = analytic_limits(config.model, law, config.ell_max, config.tol);
  for (auto n : config.n_list) {
    if (law) require_feasible(*law, n);
    if (n <= oracle_limit(config.model)) {
      const auto values = oracle_profile(config, n);
      for (std::size_t ell = 1; ell <= config.ell_max; ++ell)
        report.rows.push_back({n, ell, values[ell].value, limits[ell], std::abs(values[ell].value - limits[ell]), 0.0,
                               0, values[ell].exact});
      continue;
    }
    const auto samples = simulate_replicas(config.model, law, n, config.replicas, config.seed, config.ell_max);
    const auto r = static_cast<double>(config.replicas);
    for (std::size_t ell = 1; ell <= config.ell_max; ++ell) {
      double sum = 0.0;
      for (const auto& s : samples) sum += s[ell];
      const double mean = sum / r;
      double se = 0.0;
      if (config.replicas >= 2) {
        double ss = 0.0;
        for (const auto& s : samples) ss += (s[ell] - mean) * (s[ell] - mean);
        se = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
      }
      report.rows.push_back({n, ell, mean, limits[ell], std::abs(mean - limits[ell]), se, config.replicas, false});
    }
  }
  return report;
}

Corpus run_sample(const RunConfig& config) {
  config.validate();
  const auto law = law_for(config);
  const auto n = config.n_list.front();
  if (law) require_feasible(*law, n);
  Corpus corpus;
  const auto family = config.family_label();
  corpus.header = "# model=" + std::string(to_string(config.model)) + " family=" + (family.empty() ? "-" : family) +
                  " n=" + std::to_string(n) + " seed=" + std::to_string(config.seed) +
                  " replicas=" + std::to_string(config.replicas);
  for (std::uint64_t r = 0; r < config.replicas; ++r) {
    const Seed s{config.seed, r};
    switch (config.model) {
      case Model::Gw: corpus.trees.push_back(sample_conditioned_gw(*law, n, s)); break;
      case Model::Bst: corpus.trees.push_back(binary_to_tree(sample_bst(n, s))); break;
      case Model::Rrt: corpus.trees.push_back(sample_rrt(n, s)); break;
    }
  }
  return corpus;
}

void write_corpus(std::ostream& os, const Corpus& corpus) {
  os << corpus.header << '\n';
  for (const auto& t : corpus.trees) os << canonical_encoding(t) << '\n';
}

Corpus read_corpus(std::istream& is) {
  Corpus corpus;
  if (!std::getline(is, corpus.header) || corpus.header.empty() || corpus.header.front() != '#')
    throw ParseError("corpus must start with a '#' header line");
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      corpus.trees.push_back(decode_tree(line));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

json family_json(const std::string& family) { return family.empty() ? json(nullptr) : json(family); }

}  // namespace

std::string render(const AnalyticTable& table, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back({{"ell", r.ell}, {"limit", r.limit}, {"level", r.level}});
    json doc{{"model", to_string(table.model)}, {"family", family_json(table.family)}, {"rows", rows}};
    return doc.dump(2) + "\n";
  }
  std::string out = "model,family,ell,limit,level\n";
  for (const auto& r : table.rows)
    out += std::string(to_string(table.model)) + "," + table.family + "," + std::to_string(r.ell) + "," +
           number(r.limit) + "," + number(r.level) + "\n";
  return out;
}

std::string render(const SimReport& report, OutputFormat format, bool timing) {
  if (format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& r : report.rows)
      rows.push_back({{"ell", r.ell},
                      {"estimate", r.estimate},
                      {"limit", r.limit},
                      {"gap", r.gap},
                      {"sd", r.sd},
                      {"se", r.se},
                      {"radius", r.radius}});
    json doc{{"model", to_string(report.model)},
             {"family", family_json(report.family)},
             {"n", report.n},
             {"replicas", report.replicas},
             {"seed", report.seed},
             {"rows", rows}};
    if (timing) doc["wall_seconds"] = report.wall_seconds;
    return doc.dump(2) + "\n";
  }
  std::string out = "model,family,n,ell,estimate,limit,gap,se,replicas,seed\n";
  for (const auto& r : report.rows)
    out += std::string(to_string(report.model)) + "," + report.family + "," + std::to_string(report.n) + "," +
           std::to_string(r.ell) + "," + number(r.estimate) + "," + number(r.limit) + "," + number(r.gap) + "," +
           number(r.se) + "," + std::to_string(report.replicas) + "," + std::to_string(report.seed) + "\n";
  return out;
}

std::string render(const std::vector<OracleRecord>& records, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json doc = json::array();
    for (const auto& r : records) {
      json rec{{"model", to_string(r.model)}, {"family", family_json(r.family)}, {"n", r.n}, {"ell", r.ell},
               {"value", r.value},            {"exact", r.exact}};
      if (r.exact) rec["fraction"] = r.fraction;
      doc.push_back(rec);
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "model,family,n,ell,value,exact,fraction\n";
  for (const auto& r : records)
    out += std::string(to_string(r.model)) + "," + r.family + "," + std::to_string(r.n) + "," + std::to_string(r.ell) +
           "," + number(r.value) + "," + (r.exact ? "true" : "false") + "," + r.fraction + "\n";
  return out;
}

std::string render(const ConvergeReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& r : report.rows)
      rows.push_back({{"n", r.n},
                      {"ell", r.ell},
                      {"estimate", r.estimate},
                      {"limit", r.limit},
                      {"gap", r.gap},
                      {"se", r.se},
                      {"replicas", r.replicas},
                      {"exact", r.exact}});
    json doc{{"model", to_string(report.model)}, {"family", family_json(report.family)}, {"seed", report.seed},
             {"rows", rows}};
    return doc.dump(2) + "\n";
  }
  std::string out = "model,family,n,ell,estimate,limit,gap,se,replicas,seed\n";
  for (const auto& r : report.rows)
    out += std::string(to_string(report.model)) + "," + report.family + "," + std::to_string(r.n) + "," +
           std::to_string(r.ell) + "," + number(r.estimate) + "," + number(r.limit) + "," + number(r.gap) + "," +
           number(r.se) + "," + std::to_string(r.replicas) + "," + std::to_string(report.seed) + "\n";
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InfeasibleSize*>(&e)) return 3;
  if (dynamic_cast<const NoConvergence*>(&e) || dynamic_cast<const NoCriticalPoint*>(&e) ||
      dynamic_cast<const RejectionBudgetExceeded*>(&e))
    return 4;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const SizeTooLarge*>(&e) || dynamic_cast<const DegenerateWeights*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e))
    return 2;
  return 1;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct RawOptions {
  std::string model = "gw";
  std::string family;
  std::optional<std::uint64_t> n;
  std::string n_list;
  std::size_t ell_max = 2;
  std::uint64_t replicas = 1;
  std::optional<std::uint64_t> seed;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
  bool timing = false;
};

void add_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--model", raw.model, "Tree model: gw, bst or rrt")->capture_default_str();
  cmd->add_option("--family", raw.family,
                  "Weight family for gw: ordered | cayley | motzkin | full-dary:<d> | dary:<d> | weights:<w0>,<w1>,...");
  cmd->add_option("--n", raw.n, "Tree size");
  cmd->add_option("--n-list", raw.n_list, "Comma-separated sizes; items may be ranges a..b");
  cmd->add_option("--ell-max", raw.ell_max, "Largest protection level reported")->capture_default_str();
  cmd->add_option("--replicas", raw.replicas, "Independent trees per size")->capture_default_str();
  cmd->add_option("--seed", raw.seed, "Master seed (default: $FRINGELAB_SEED or 1)");
  cmd->add_option("--tol", raw.tol, "Quadrature tolerance for bst/rrt limits")->capture_default_str();
  cmd->add_option("--format", raw.format, "Output format: csv or json")->capture_default_str();
  cmd->add_option("--out", raw.out, "Output file (default: stdout)");
}

RunConfig to_config(Command command, const RawOptions& raw) {
  RunConfig config;
  config.command = command;
  config.model = parse_model(raw.model);
  if (!raw.family.empty()) {
    WeightFamily::parse(raw.family);
    config.family = raw.family;
  }
  if (raw.n) config.n_list.push_back(*raw.n);
  if (!raw.n_list.empty()) {
    auto more = parse_n_list(raw.n_list);
    config.n_list.insert(config.n_list.end(), more.begin(), more.end());
  }
  config.ell_max = raw.ell_max;
  config.replicas = raw.replicas;
  if (raw.seed) {
    config.seed = *raw.seed;
  } else if (const char* env = std::getenv("FRINGELAB_SEED"); env && *env) {
    try {
      config.seed = parse_size(env);
    } catch (const ConfigError&) {
      throw ConfigError("FRINGELAB_SEED must be an unsigned integer");
    }
  }
  config.tol = raw.tol;
  if (raw.format == "csv")
    config.format = OutputFormat::Csv;
  else if (raw.format == "json")
    config.format = OutputFormat::Json;
  else
    throw ConfigError("unknown format '" + raw.format + "' (expected csv or json)");
  config.out = raw.out;
  config.timing = raw.timing;
  config.validate();
  return config;
}

}  // namespace

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Protected nodes and fringe subtrees in random trees"};
  app.require_subcommand(1);
  RawOptions raw;
  auto* analytic = app.add_subcommand("analytic", "Limiting ell-protected proportions");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo protected proportions at one size");
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact expectations by exhaustive enumeration");
  auto* converge = app.add_subcommand("converge", "Exact/simulated proportions over a size list");
  auto* sample = app.add_subcommand("sample", "Emit a corpus of random trees");
  for (auto* cmd : {analytic, simulate, oracle_cmd, converge, sample}) add_options(cmd, raw);
  simulate->add_flag("--timing", raw.timing, "Include wall time in JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (analytic->parsed()) {
      const auto config = to_config(Command::Analytic, raw);
      text = render(run_analytic(config), config.format);
    } else if (simulate->parsed()) {
      const auto config = to_config(Command::Simulate, raw);
      text = render(run_simulate(config), config.format, config.timing);
    } else if (oracle_cmd->parsed()) {
      const auto config = to_config(Command::Oracle, raw);
      text = render(run_oracle(config), config.format);
    } else if (converge->parsed()) {
      const auto config = to_config(Command::Converge, raw);
      text = render(run_converge(config), config.format);
    } else {
      const auto config = to_config(Command::Sample, raw);
      std::ostringstream os;
      write_corpus(os, run_sample(config));
      text = os.str();
    }
    if (raw.out.empty()) {
      out << text;
    } else {
      std::ofstream file(raw.out, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + raw.out + "'");
      file << text;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace fringelab
