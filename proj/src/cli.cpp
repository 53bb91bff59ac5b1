#include "rankshift/cli.hpp"

#include "rankshift/dynamics.hpp"
#include "rankshift/io.hpp"
#include "rankshift/nclemma.hpp"
#include "rankshift/pressure.hpp"
#include "rankshift/search.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace rankshift::cli {

using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Shape shape_param(const json& params, const char* key) {
  return Shape(params.at(key).get<std::vector<std::size_t>>());
}

json shape_json(const Shape& s) { return std::vector<std::size_t>(s.coords().begin(), s.coords().end()); }

void require_rank(const MatrixFamily& family, const Shape& s, const char* what) {
  if (s.rank() != family.rank())
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " " + to_string(s) + " has rank " +
                                              std::to_string(s.rank()) + ", family has rank " +
                                              std::to_string(family.rank()));
}

struct Context {
  const json& config;
  const json& params;
  Budget budget;
  double log_scale = 1.0; ///< nats -> display base

  double show(double nats) const { return nats * log_scale; }
  json show(const std::vector<double>& nats) const {
    json out = json::array();
    for (double v : nats) out.push_back(show(v));
    return out;
  }

  MatrixFamily family() const {
    if (config.at("family").is_null()) throw UsageError("this command needs -f FAMILY");
    return io::load_family(config.at("family").get<std::string>());
  }
  MatrixFamily valid_family() const {
    auto f = family();
    f.require_valid();
    return f;
  }
};

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string labels_text(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.labels().size(); ++i) s += (i ? " " : "") + std::to_string(w.labels()[i]);
  return s;
}

// Each command fills `result` and may return CSV text.
struct CommandOutput {
  json result;
  std::string csv;
  int exit_code = 0;
};

CommandOutput cmd_validate(const Context& ctx) {
  const auto family = ctx.family();
  return {io::report_to_json(*family.report()), "", family.is_valid() ? 0 : 1};
}

CommandOutput cmd_words(const Context& ctx) {
  const auto family = ctx.valid_family();
  const Shape shape = shape_param(ctx.params, "shape");
  require_rank(family, shape, "shape");
  std::optional<Letter> origin;
  if (!ctx.params.at("origin").is_null()) {
    const auto symbol = ctx.params.at("origin").get<std::string>();
    if (auto idx = family.alphabet().index_of(symbol))
      origin = *idx;
    else
      throw Error(ErrorCode::InvalidArgument, "origin '" + symbol + "' is not in the alphabet");
  }
  const BigCount total = word_count(family, shape, ctx.budget);
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  if (!ctx.params.at("limit").is_null()) limit = ctx.params.at("limit").get<std::size_t>();
  BigCount planned = total;
  if (BigCount(limit) < planned) planned = BigCount(limit);
  require_enumeration_budget(ctx.budget, planned, shape, "words");

  const auto words = enumerate_words(family, shape, origin, limit);
  CommandOutput out;
  json list = json::array();
  out.csv = "index,labels\n";
  for (std::size_t i = 0; i < words.size(); ++i) {
    list.push_back(io::word_to_json(words[i]));
    out.csv += std::to_string(i) + "," + labels_text(words[i]) + "\n";
  }
  out.result = {{"shape", shape_json(shape)},
                {"total_count", to_decimal(total)},
                {"emitted", words.size()},
                {"words", list}};
  return out;
}

CommandOutput cmd_count_check(const Context& ctx) {
  const auto family = ctx.valid_family();
  const Shape max_shape = shape_param(ctx.params, "max_shape");
  require_rank(family, max_shape, "max-shape");
  const auto report = count_oracle_check(family, max_shape, ctx.budget);
  CommandOutput out;
  json rows = json::array();
  out.csv = "shape,enumerated,formula,match\n";
  for (const auto& r : report.rows) {
    rows.push_back({{"shape", shape_json(r.shape)},
                    {"enumerated", to_decimal(r.enumerated)},
                    {"formula", to_decimal(r.formula)},
                    {"match", r.match}});
    out.csv += "\"" + to_string(r.shape) + "\"," + to_decimal(r.enumerated) + "," + to_decimal(r.formula) + "," +
               (r.match ? "true" : "false") + "\n";
  }
  out.result = {{"all_match", report.all_match}, {"rows", rows}};
  out.exit_code = report.all_match ? 0 : 1;
  return out;
}

std::string sequence_csv(const std::vector<double>& seq, const std::vector<double>& diffs, const Context& ctx) {
  std::string csv = "n,a_n,b_n\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    csv += std::to_string(i + 1) + "," + csv_num(ctx.show(seq[i])) + ",";
    if (i < diffs.size()) csv += csv_num(ctx.show(diffs[i]));
    csv += "\n";
  }
  return csv;
}

CommandOutput cmd_entropy(const Context& ctx) {
  const auto family = ctx.valid_family();
  const Shape p = shape_param(ctx.params, "p");
  require_rank(family, p, "p");
  const auto mode = ctx.params.at("mode").get<std::string>();
  CommandOutput out;
  std::optional<double> exact;
  if (mode != "bowen") {
    exact = entropy_exact(family, p, ctx.budget);
    out.result["exact"] = ctx.show(*exact);
  }
  if (mode != "exact") {
    const auto k = ctx.params.at("k").get<std::size_t>();
    const auto n_max = ctx.params.at("n_max").get<std::size_t>();
    const auto seq = bowen_entropy_estimate(family, p, k, n_max, ctx.budget);
    out.result["sequence"] = ctx.show(seq.sequence);
    out.result["diffs"] = ctx.show(seq.diffs);
    out.result["estimate"] = ctx.show(seq.estimate);
    out.result["exact_counts"] = seq.exact_counts;
    if (exact) out.result["abs_error"] = ctx.show(std::abs(seq.estimate - *exact));
    out.csv = sequence_csv(seq.sequence, seq.diffs, ctx);
  } else {
    out.csv = "exact\n" + csv_num(ctx.show(*exact)) + "\n";
  }
  return out;
}

CommandOutput cmd_action_entropy(const Context& ctx) {
  const auto family = ctx.valid_family();
  const auto k = ctx.params.at("k").get<std::size_t>();
  CommandOutput out;
  json values = json::array();
  out.csv = "n,value\n";
  for (const auto& nj : ctx.params.at("n")) {
    const auto n = nj.get<std::size_t>();
    const double v = ctx.show(action_entropy_estimate(family, k, n, ctx.budget));
    values.push_back({{"n", n}, {"value", v}});
    out.csv += std::to_string(n) + "," + csv_num(v) + "\n";
  }
  out.result = {{"k", k}, {"values", values}};
  return out;
}

CommandOutput cmd_pressure(const Context& ctx) {
  const auto family = ctx.valid_family();
  const Shape p = shape_param(ctx.params, "p");
  require_rank(family, p, "p");
  const auto k = ctx.params.at("k").get<std::size_t>();
  const auto n_max = ctx.params.at("n_max").get<std::size_t>();
  const auto method =
      ctx.params.at("method") == "enumerate" ? PartitionMethod::Enumerate : PartitionMethod::Transfer;
  const Potential f = ctx.params.at("potential").is_null()
                          ? Potential::constant(0.0)
                          : io::load_potential(ctx.params.at("potential").get<std::string>(), family.rank());
  const auto seq = pressure_estimate(family, f, p, k, n_max, method, ctx.budget);
  CommandOutput out;
  out.result = {{"sequence", ctx.show(seq.sequence)},
                {"diffs", ctx.show(seq.diffs)},
                {"estimate", ctx.show(seq.estimate)},
                {"birkhoff_terms", "n+1"},
                {"normalization", "1/n"}};
  if (ctx.params.at("oracle").get<bool>()) {
    if (f.window() != 0)
      throw Error(ErrorCode::InvalidArgument, "the oracle needs a potential of window 0 (a function of x(0))");
    std::vector<double> g;
    for (Letter a = 0; a < family.size(); ++a) g.push_back(f.value(std::span<const Letter>(&a, 1)));
    const double oracle = pressure_oracle_vertex(family, g, p, ctx.budget);
    out.result["oracle"] = ctx.show(oracle);
    out.result["abs_error"] = ctx.show(std::abs(seq.estimate - oracle));
  }
  out.csv = sequence_csv(seq.sequence, seq.diffs, ctx);
  return out;
}

CommandOutput cmd_lemma_check(const Context& ctx) {
  const auto family = ctx.valid_family();
  const Shape p = shape_param(ctx.params, "p");
  const Shape max_shape = shape_param(ctx.params, "max_shape");
  require_rank(family, p, "p");
  require_rank(family, max_shape, "max-shape");
  std::optional<Shape> m;
  if (!ctx.params.at("m").is_null()) {
    m = shape_param(ctx.params, "m");
    require_rank(family, *m, "m");
  }
  const auto reports = verify_lemma(family, p, max_shape, m, ctx.budget);
  CommandOutput out;
  bool passed = true;
  std::size_t failures = 0;
  json list = json::array();
  out.csv = "u,w,m,patterns,nonempty,cells,dimension,partial_isometries\n";
  for (const auto& r : reports) {
    json fails = json::array();
    for (const auto& f : r.failures) {
      json contributions = json::array();
      for (const auto& [nu, gamma] : f.contributions)
        contributions.push_back({{"nu", io::word_to_json(nu)}, {"gamma", io::word_to_json(gamma)}});
      fails.push_back({{"kappa", io::word_to_json(f.kappa)},
                       {"lambda", io::word_to_json(f.lambda)},
                       {"contributions", contributions},
                       {"reason", f.reason}});
    }
    passed = passed && r.all_partial_isometries;
    failures += r.failures.size();
    list.push_back({{"u", io::word_to_json(r.u)},
                    {"w", io::word_to_json(r.w)},
                    {"m", shape_json(r.m)},
                    {"n", shape_json(r.n)},
                    {"pattern_count", r.pattern_count},
                    {"nonempty_patterns", r.nonempty_patterns},
                    {"total_cells", r.total_cells},
                    {"dimension", r.dimension},
                    {"partial_isometries", r.all_partial_isometries},
                    {"failures", fails}});
    out.csv += "\"" + labels_text(r.u) + "\",\"" + labels_text(r.w) + "\",\"" + to_string(r.m) + "\"," +
               std::to_string(r.pattern_count) + "," + std::to_string(r.nonempty_patterns) + "," +
               std::to_string(r.total_cells) + "," + std::to_string(r.dimension) + "," +
               (r.all_partial_isometries ? "true" : "false") + "\n";
  }
  out.result = {{"passed", passed}, {"pairs", reports.size()}, {"failures", failures}, {"reports", list}};
  out.exit_code = passed ? 0 : 1;
  return out;
}

CommandOutput cmd_search_gap(const Context& ctx) {
  const auto& params = ctx.params;
  SearchOptions options;
  options.rank = params.at("rank").get<std::size_t>();
  options.canonicalize = params.at("canonicalize").get<bool>();
  options.threads = ctx.config.at("threads").get<unsigned>();
  options.max_candidates = ctx.budget.max_enumeration_work;
  GapSearchResult res;
  if (params.at("exhaustive").get<bool>()) {
    res = exhaustive_search(params.at("size").get<std::size_t>(), options);
  } else {
    RandomSearchOptions random;
    random.alphabet_size = params.at("size").get<std::size_t>();
    random.density = params.at("density").get<double>();
    random.trials = params.at("trials").get<std::uint64_t>();
    random.seed = ctx.config.at("seed").get<std::uint64_t>();
    random.tensor_controls = params.at("tensor_controls").get<std::uint64_t>();
    res = random_search(random, options);
  }
  const auto& s = res.summary;
  CommandOutput out;
  json records = json::array();
  for (const auto& r : res.records) {
    json mats = json::array();
    for (const auto& m : r.matrices) {
      json rows = json::array();
      for (std::size_t a = 0; a < m.rows(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
        rows.push_back(row);
      }
      mats.push_back(rows);
    }
    records.push_back({{"fingerprint", r.fingerprint},
                       {"alphabet_size", r.alphabet_size},
                       {"matrices", mats},
                       {"factor_radii", r.factor_radii},
                       {"product_radius", r.product_radius},
                       {"gap", ctx.show(r.gap)},
                       {"provenance", r.provenance}});
  }
  out.result = {{"summary",
                 {{"candidates", s.candidates},
                  {"valid", s.valid},
                  {"emitted", s.emitted},
                  {"min_gap", ctx.show(s.min_gap)},
                  {"max_gap", ctx.show(s.max_gap)},
                  {"zero_gaps", s.zero_gaps},
                  {"histogram", s.histogram}}},
                {"records", records}};
  out.csv = gap_records_csv(res.records);
  return out;
}

CommandOutput dispatch(const Context& ctx) {
  const auto command = ctx.config.at("command").get<std::string>();
  if (command == "validate") return cmd_validate(ctx);
  if (command == "words") return cmd_words(ctx);
  if (command == "count-check") return cmd_count_check(ctx);
  if (command == "entropy") return cmd_entropy(ctx);
  if (command == "action-entropy") return cmd_action_entropy(ctx);
  if (command == "pressure") return cmd_pressure(ctx);
  if (command == "lemma-check") return cmd_lemma_check(ctx);
  if (command == "search-gap") return cmd_search_gap(ctx);
  throw UsageError("unknown command '" + command + "'");
}

std::string dump(const json& doc) { return io::round_floats(doc).dump(2) + "\n"; }

double log_scale_for(const std::string& base) {
  if (base == "2") return 1.0 / std::log(2.0);
  if (base == "10") return 1.0 / std::log(10.0);
  if (base == "e") return 1.0;
  throw UsageError("--log-base must be e, 2 or 10");
}

} // namespace

Outcome execute(const json& config) {
  const auto command = config.at("command").get<std::string>();
  Budget budget;
  budget.max_enumeration_work = config.at("budget").at("max_work").get<std::uint64_t>();
  budget.max_exact_digits = config.at("budget").at("max_digits").get<std::uint64_t>();
  const Context ctx{config, config.at("params"), budget, log_scale_for(config.at("log_base").get<std::string>())};
  const bool csv = config.at("format") == "csv";
  Outcome outcome;
  try {
    auto out = dispatch(ctx);
    json doc = {{"command", command}, {"config", config}, {"log_base", config.at("log_base")}, {"result", out.result}};
    outcome.exit_code = out.exit_code;
    if (csv && !out.csv.empty()) {
      outcome.body = out.csv;
      json side = doc;
      side.erase("result");
      if (out.result.contains("summary")) side["summary"] = out.result.at("summary");
      outcome.sidecar = dump(side);
    } else {
      outcome.body = dump(doc);
    }
  } catch (const Error& e) {
    outcome.exit_code = 1;
    outcome.error = true;
    outcome.body = dump({{"command", command},
                         {"config", config},
                         {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}});
  }
  return outcome;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  f << text;
}

int emit(const Outcome& outcome, const std::optional<std::string>& out_path) {
  if (!out_path || outcome.error) {
    std::cout << outcome.body;
    return outcome.exit_code;
  }
  write_file(*out_path, outcome.body);
  if (!outcome.sidecar.empty()) write_file(*out_path + ".json", outcome.sidecar);
  return outcome.exit_code;
}

json shape_value(const std::string& text) { return shape_json(parse_shape(text)); }

} // namespace

int run(int argc, char** argv) {
  CLI::App app{"Rank-r subshifts of finite type: counting, entropy, pressure, pattern checks, gap search"};
  app.require_subcommand(1);

  std::string family_path, out_path, format = "json", log_base = "e";
  unsigned threads = 1;
  std::uint64_t max_work = Budget{}.max_enumeration_work;
  std::uint64_t max_digits = Budget{}.max_exact_digits;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, bool needs_family) {
    auto* opt = sub->add_option("-f,--family", family_path, "Matrix-family JSON file");
    if (needs_family) opt->required();
    sub->add_option("--out", out_path, "Output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--log-base", log_base, "Display base for logarithms")->check(CLI::IsMember({"e", "2", "10"}));
    sub->add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-work", max_work, "Enumeration budget (words x box volume)");
    sub->add_option("--max-digits", max_digits, "Largest exact integer size in decimal digits");
  };

  auto* validate = app.add_subcommand("validate", "Check the family conditions");
  common(validate, true);

  std::string shape_text, origin;
  std::optional<std::size_t> limit;
  auto* words = app.add_subcommand("words", "Enumerate words of one shape");
  common(words, true);
  words->add_option("--shape", shape_text, "Shape, e.g. 2,1")->required();
  words->add_option("--origin", origin, "Fix the letter at the origin");
  words->add_option("--limit", limit, "Emit at most this many words");

  std::string max_shape_text = "";
  auto* count = app.add_subcommand("count-check", "Compare enumeration with <e, M^l e>");
  common(count, true);
  count->add_option("--max-shape", max_shape_text, "Check every l <= this shape")->required();

  std::string p_text, mode = "both", m_text, potential, method = "transfer";
  std::size_t k = 1, n_max = 40;
  auto* entropy = app.add_subcommand("entropy", "Entropy of T^p");
  common(entropy, true);
  entropy->add_option("--p", p_text, "Direction p")->required();
  entropy->add_option("--k", k, "Scale index (k̄ >= p)");
  entropy->add_option("--n-max", n_max, "Longest orbit segment");
  entropy->add_option("--mode", mode, "exact, bowen or both")->check(CLI::IsMember({"exact", "bowen", "both"}));

  std::vector<std::size_t> action_n{10, 100};
  auto* action = app.add_subcommand("action-entropy", "Cube-normalized entropy of the Z_+^r action");
  common(action, true);
  action->add_option("--k", k, "Scale index");
  action->add_option("--n", action_n, "Window sizes")->expected(1, -1);

  bool oracle = false;
  auto* pressure = app.add_subcommand("pressure", "Topological pressure of T^p");
  common(pressure, true);
  pressure->add_option("--p", p_text, "Direction p")->required();
  pressure->add_option("--k", k, "Scale index");
  pressure->add_option("--n-max", n_max, "Longest orbit segment");
  pressure->add_option("--potential", potential, "Potential JSON (default f = 0)");
  pressure->add_flag("--oracle", oracle, "Compare with log r(D_g M^p)");
  pressure->add_option("--method", method, "transfer or enumerate")
      ->check(CLI::IsMember({"transfer", "enumerate"}));

  auto* lemma = app.add_subcommand("lemma-check", "Partial-isometry check of the T patterns");
  common(lemma, true);
  lemma->add_option("--p", p_text, "Direction p")->required();
  lemma->add_option("--max-shape", max_shape_text, "Largest generator shape")->required();
  lemma->add_option("--m", m_text, "Override m (must dominate p + n)");

  bool exhaustive = false, canonicalize = false;
  std::size_t size = 2, rank = 2;
  double density = 0.5;
  std::uint64_t trials = 1000, tensor_controls = 0;
  auto* search = app.add_subcommand("search-gap", "Sweep families for the spectral-radius gap");
  common(search, false);
  search->add_flag("--exhaustive", exhaustive, "Every tuple over |B| = size");
  search->add_option("--size", size, "Alphabet size");
  search->add_option("--rank", rank, "Number of matrices");
  search->add_option("--seed", seed, "Random seed");
  search->add_option("--density", density, "Bernoulli density");
  search->add_option("--trials", trials, "Random trials");
  search->add_flag("--canonicalize", canonicalize, "Deduplicate up to alphabet permutation");
  search->add_option("--tensor-controls", tensor_controls, "Inject tensor-product pairs");

  std::string result_path;
  auto* rerun = app.add_subcommand("rerun", "Replay the config embedded in a result file");
  rerun->add_option("-f,--file", result_path, "Result JSON")->required();
  rerun->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::optional<std::string> out;
  if (!out_path.empty()) out = out_path;

  try {
    json config;
    if (rerun->parsed()) {
      const json doc = io::read_json_file(result_path);
      if (!doc.contains("config")) throw UsageError(result_path + " has no embedded config");
      config = doc.at("config");
    } else {
      auto* sub = app.get_subcommands().front();
      json params = json::object();
      const std::string name = sub->get_name();
      if (sub->count("--format") == 0 && out && out->ends_with(".csv")) format = "csv";
      if (name == "words") {
        params = {{"shape", shape_value(shape_text)},
                  {"origin", origin.empty() ? json(nullptr) : json(origin)},
                  {"limit", limit ? json(*limit) : json(nullptr)}};
      } else if (name == "count-check") {
        params = {{"max_shape", shape_value(max_shape_text)}};
      } else if (name == "entropy") {
        params = {{"p", shape_value(p_text)}, {"k", k}, {"n_max", n_max}, {"mode", mode}};
      } else if (name == "action-entropy") {
        params = {{"k", k}, {"n", action_n}};
      } else if (name == "pressure") {
        params = {{"p", shape_value(p_text)},
                  {"k", k},
                  {"n_max", n_max},
                  {"potential", potential.empty() ? json(nullptr) : json(potential)},
                  {"oracle", oracle},
                  {"method", method}};
      } else if (name == "lemma-check") {
        params = {{"p", shape_value(p_text)},
                  {"max_shape", shape_value(max_shape_text)},
                  {"m", m_text.empty() ? json(nullptr) : shape_value(m_text)}};
      } else if (name == "search-gap") {
        params = {{"exhaustive", exhaustive}, {"size", size},         {"rank", rank},
                  {"density", density},       {"trials", trials},     {"canonicalize", canonicalize},
                  {"tensor_controls", tensor_controls}};
      }
      const bool uses_family = name != "search-gap";
      config = {{"command", name},
                {"family", uses_family ? json(family_path) : json(nullptr)},
                {"params", params},
                {"format", format},
                {"out", out ? json(*out) : json(nullptr)},
                {"budget", {{"max_work", max_work}, {"max_digits", max_digits}}},
                {"seed", seed},
                {"threads", threads},
                {"log_base", log_base}};
    }
    return emit(execute(config), out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError && !rerun->parsed()) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
    std::cout << dump({{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}});
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "usage error: malformed config: " << e.what() << "\n";
    return 2;
  }
}

} // namespace rankshift::cli
