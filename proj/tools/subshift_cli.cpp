// SPDX-License-Identifier: Apache-2.0
//
// subshift: command-line front end. Every subcommand writes its CSV series
// and JSON report into --out; JSON reports embed the configuration.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subshift/language.hpp"
#include "subshift/laplacian.hpp"
#include "subshift/metrics.hpp"
#include "subshift/report.hpp"
#include "subshift/skeleton.hpp"
#include "subshift/spec_parse.hpp"
#include "subshift/tree.hpp"
#include "subshift/zeta.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace subshift;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_invariant = 3;

struct Config {
  std::string command;
  std::string spec_text;
  std::string delta_text = "harmonic";
  std::size_t depth = 0;
  std::string schedule_text;
  std::uint64_t seed = 0;
  double rho = 2.0;
  std::string measure = "uniform";
  bool pb = false;
  std::string pb_mode = "single";
  std::string choice = "canonical";
  std::string out = ".";
  std::string format;  // empty: both
  double s_min = 0.2, s_max = 3.0, s_step = 0.05;
  double r_conv = 0.7, r_div = 0.95;
  double bounded_growth = 0.01, unbounded_growth = 0.25;
  std::size_t max_window = std::size_t{1} << 20;

  bool csv() const { return format.empty() || format == "csv"; }
  bool want_json() const { return format.empty() || format == "json"; }
};

json config_json(const Config& c, const SubshiftSpec& spec, const DeltaSequence* delta) {
  json j{{"command", c.command},
         {"spec", c.spec_text},
         {"spec_normalized", describe(spec)},
         {"depth", c.depth},
         {"seed", c.seed},
         {"version", SUBSHIFT_VERSION},
         {"edge_length_convention", edge_length_convention}};
  if (delta) j["delta"] = delta->describe();
  if (!c.schedule_text.empty()) j["schedule"] = c.schedule_text;
  if (c.command == "laplacian") {
    j["rho"] = c.rho;
    j["measure"] = c.measure;
    j["pb"] = c.pb;
    j["pb_mode"] = c.pb_mode;
  }
  if (c.command == "tree") j["choice"] = c.choice;
  if (c.command == "zeta") {
    j["s_grid"] = {{"min", c.s_min}, {"max", c.s_max}, {"step", c.s_step}};
    j["thresholds"] = {{"convergent_ratio", c.r_conv}, {"divergent_ratio", c.r_div}};
  }
  if (c.command == "lipschitz") {
    j["thresholds"] = {{"bounded_growth", c.bounded_growth}, {"unbounded_growth", c.unbounded_growth}};
  }
  return j;
}

void write_file(const Config& c, const std::string& name, const std::string& content) {
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (fs::path(c.out) / name).string());
  f << content;
}

void write_json(const Config& c, const std::string& name, const json& j) {
  if (c.want_json()) write_file(c, name, j.dump(2) + "\n");
}

void write_csv(const Config& c, const std::string& name, const std::string& content) {
  if (c.csv()) write_file(c, name, content);
}

std::vector<std::size_t> parse_schedule(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const auto v = std::stoull(item, &pos);
    if (pos != item.size() || v == 0) throw std::invalid_argument("schedule: bad depth '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw std::invalid_argument("schedule: depths must increase");
  }
  if (out.empty()) throw std::invalid_argument("schedule: empty");
  return out;
}

json optional_number(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

int cmd_lang(const Config& c) {
  const auto spec = parse_spec(c.spec_text);
  TableOptions opts;
  opts.max_window = c.max_window;
  // One extra level so that g(n) and right-special counts reach n = depth.
  const auto table = LanguageTable::build(spec, c.depth + 1, opts);
  write_csv(c, "language.csv", language_csv(table));

  json report{{"config", config_json(c, spec, nullptr)}};
  report["stabilized"] = table.fully_stabilized();
  report["right_extendable"] = table.right_extendable();
  if (auto dead = table.dead_end()) report["dead_end"] = std::string(*dead);
  report["language"] = language_json(table);

  const auto rep = repulsiveness_estimates(table, c.depth);
  auto estimate_json = [](const RepulsivenessEstimate& e) {
    json w = json::array();
    for (const auto& [small, big] : e.witnesses) w.push_back({{"w", small}, {"W", big}});
    return json{{"value", std::isinf(e.value) ? json("inf") : json(e.value)}, {"witnesses", w}};
  };
  report["repulsiveness"] = {{"depth", rep.depth},
                             {"ell", estimate_json(rep.all)},
                             {"ell_R", estimate_json(rep.right_special)}};
  json rep_json = json::array();
  for (std::size_t n = 1; n < c.depth; ++n) {
    const auto r = repetitivity_estimate(table, n);
    rep_json.push_back({{"n", n}, {"R", r ? json(*r) : json("not-found")}});
  }
  report["repetitivity"] = rep_json;
  write_json(c, "lang.json", report);
  return 0;
}

int cmd_tree(const Config& c) {
  const auto spec = parse_spec(c.spec_text);
  const auto delta = parse_delta(c.delta_text);
  const auto table = LanguageTable::build(spec, c.depth);
  const auto tree = MichonTree::build(table);
  ChoiceFunction::Policy policy = ChoiceFunction::Canonical{};
  if (c.choice == "random") policy = ChoiceFunction::SeededRandom{c.seed};
  const auto tau = choice_function(tree, policy);
  const auto graph = approximation_graph(tree, tau, delta);
  if (!graph.connected()) throw InvariantViolation("approximation graph is disconnected");
  write_csv(c, "graph.csv", graph_csv(graph));
  json report{{"config", config_json(c, spec, &delta)},
              {"tree", tree_json(tree)},
              {"graph", {{"vertices", graph.vertex_count()}, {"edges", graph.edges.size()}}}};
  write_json(c, "tree.json", report);
  return 0;
}

int cmd_lipschitz(const Config& c) {
  const auto spec = parse_spec(c.spec_text);
  const auto delta = parse_delta(c.delta_text);
  const auto schedule = c.schedule_text.empty()
                            ? doubling_schedule(std::max<std::size_t>(1, c.depth / 32), c.depth)
                            : parse_schedule(c.schedule_text);
  TableOptions opts;
  opts.max_window = c.max_window;

  std::ostringstream csv;
  csv << "N,C,W,C_witness,stabilized\n";
  json series = json::array();
  std::vector<double> Cs, Ws;
  for (std::size_t N : schedule) {
    bool stable = true;
    const auto skeleton = skeleton_for(spec, N, opts, &stable);
    const auto lip = lipschitz_estimate(skeleton, delta);
    const auto cont = continuity_witness(skeleton, delta);
    Cs.push_back(lip.C);
    Ws.push_back(cont.W);
    csv << N << ',' << format_number(lip.C) << ',' << format_number(cont.W) << ','
        << lip.witness_word << ',' << (stable ? 1 : 0) << '\n';
    json per_level = json::array();
    for (const auto& [m, value] : lip.per_level) per_level.push_back({m, value});
    series.push_back({{"N", N},
                      {"C", lip.C},
                      {"W", cont.W},
                      {"witness_word", lip.witness_word},
                      {"witness_path", lip.witness_path},
                      {"W_witness_path", cont.witness_path},
                      {"stabilized", stable},
                      {"per_level_series", per_level},
                      {"tail_bound", optional_number(truncation_tail(delta, N))}});
  }
  write_csv(c, "lipschitz.csv", csv.str());

  const TrendPolicy policy{c.bounded_growth, c.unbounded_growth};
  json verdict;
  if (schedule.size() >= 2) {
    const std::size_t k = schedule.size() - 1;
    verdict["C"] = {{"bounded_trend", trend_name(classify_trend(Cs[k - 1], Cs[k], policy))},
                    {"last_growth", relative_growth(Cs[k - 1], Cs[k])}};
    verdict["W"] = {{"bounded_trend", trend_name(classify_trend(Ws[k - 1], Ws[k], policy))},
                    {"last_growth", relative_growth(Ws[k - 1], Ws[k])}};
  } else {
    verdict["C"] = {{"bounded_trend", "undecided"}};
    verdict["W"] = {{"bounded_trend", "undecided"}};
  }
  json report{{"config", config_json(c, spec, &delta)},
              {"family", delta.describe()},
              {"series", series},
              {"verdict", verdict},
              {"continuity_formal", !delta.summable()}};
  write_json(c, "lipschitz.json", report);
  return 0;
}

int cmd_zeta(const Config& c) {
  const auto spec = parse_spec(c.spec_text);
  const auto delta = parse_delta(c.delta_text);
  const auto schedule = c.schedule_text.empty()
                            ? doubling_schedule(std::max<std::size_t>(1, c.depth / 64), c.depth)
                            : parse_schedule(c.schedule_text);
  TableOptions opts;
  opts.max_window = c.max_window;
  bool stable = true;
  const auto skeleton = skeleton_for(spec, schedule.back(), opts, &stable);
  const auto partials =
      zeta_partials(skeleton, delta, uniform_grid(c.s_min, c.s_max, c.s_step), schedule);
  write_csv(c, "zeta.csv", zeta_csv(partials));

  AbscissaOptions aopts{c.r_conv, c.r_div};
  const auto brackets = abscissa_estimate(partials, aopts);
  json bj = json::object();
  std::optional<double> s0_low;
  for (const auto& b : brackets) {
    json classes = json::array();
    for (std::size_t i = 0; i < partials.s.size(); ++i) {
      classes.push_back({{"s", partials.s[i]}, {"class", class_name(b.classes[i])}});
    }
    bj[variant_name(b.variant)] = {{"applicable", b.applicable},
                                   {"largest_divergent", optional_number(b.divergent)},
                                   {"smallest_convergent", optional_number(b.convergent)},
                                   {"estimate", optional_number(b.estimate())},
                                   {"width", optional_number(b.width())},
                                   {"classes", classes}};
    if (b.variant == ZetaVariant::low) s0_low = b.estimate();
  }

  json exponents;
  try {
    const auto [P, g] = complexity_from_skeleton(skeleton);
    ExponentOptions eopts;
    eopts.series = aopts;
    const auto e = exponent_estimates(P, g, schedule.back(), eopts);
    exponents = {{"N", e.N},
                 {"beta_lower", e.beta_lower},
                 {"beta_upper", e.beta_upper},
                 {"super_polynomial", e.super_polynomial},
                 {"eta_lower", optional_number(e.eta_lower)},
                 {"eta_lower_at_boundary", e.eta_lower_at_boundary},
                 {"eta_upper", optional_number(e.eta_upper)}};
    if (s0_low) {
      exponents["chain_tolerance"] = 0.1;
      exponents["chain_holds"] = exponent_chain_holds(e, *s0_low, 0.1);
    }
  } catch (const InsufficientData& ex) {
    exponents = {{"error", "insufficient-data"}, {"message", ex.what()}};
  }

  json report{{"config", config_json(c, spec, &delta)},
              {"stabilized", stable},
              {"depths", partials.depths},
              {"abscissa", bj},
              {"exponents", exponents}};
  write_json(c, "zeta.json", report);
  return 0;
}

CylinderMeasure measure_for(const Config& c, const MichonTree& tree) {
  if (c.measure == "uniform") return CylinderMeasure::uniform(tree);
  if (c.measure == "random") return CylinderMeasure::random(tree, c.seed);
  // A file of "word weight" lines; missing words get uniform weights.
  std::ifstream in(c.measure);
  if (!in) throw std::invalid_argument("measure: cannot read '" + c.measure + "'");
  std::vector<double> w(tree.size(), 0.0);
  for (NodeId v = 1; v < tree.size(); ++v) {
    w[v] = 1.0 / static_cast<double>(tree.child_count(tree.parent(v)));
  }
  std::string word;
  double weight = 0;
  while (in >> word >> weight) {
    const auto v = tree.find(word);
    if (!v) throw std::invalid_argument("measure: '" + word + "' is not a tree word");
    w[*v] = weight;
  }
  return CylinderMeasure::from_weights(tree, std::move(w));
}

int cmd_laplacian(const Config& c) {
  const auto spec = parse_spec(c.spec_text);
  const auto delta = parse_delta(c.delta_text);
  const auto table = LanguageTable::build(spec, c.depth);
  const auto tree = MichonTree::build(table);
  const auto mu = measure_for(c, tree);
  const Density rho{c.rho, {}};
  const auto M = assemble_laplacian(tree, mu, rho, delta);
  const auto inv = check_invariants(M);
  const auto spec_values = spectrum(M);

  write_csv(c, "matrix.csv", matrix_csv(M));
  write_csv(c, "spectrum.csv", spectrum_csv(spec_values));
  write_json(c, "matrix_index.json", matrix_index_json(M));

  json report{{"config", config_json(c, spec, &delta)},
              {"size", M.labels.size()},
              {"invariants",
               {{"max_row_sum", inv.max_row_sum},
                {"max_mu_asymmetry", inv.max_asymmetry},
                {"max_entry", inv.max_entry}}},
              {"spectrum",
               {{"min", spec_values.eigenvalues.empty() ? 0.0 : spec_values.eigenvalues.front()},
                {"max", spec_values.eigenvalues.empty() ? 0.0 : spec_values.eigenvalues.back()},
                {"trace", spec_values.trace}}}};
  if (c.pb) {
    PairSelection sel;
    sel.mode = c.pb_mode == "nu" ? PairSelection::Mode::nu_average : PairSelection::Mode::single;
    const auto PB = assemble_pb_laplacian(tree, mu, rho, delta, sel);
    const auto pb_inv = check_invariants(PB);
    const auto pb_spec = spectrum(PB);
    write_csv(c, "pb_matrix.csv", matrix_csv(PB));
    write_csv(c, "pb_spectrum.csv", spectrum_csv(pb_spec));
    report["pb"] = {{"mode", c.pb_mode},
                    {"max_abs_difference", (PB.M - M.M).cwiseAbs().maxCoeff()},
                    {"max_row_sum", pb_inv.max_row_sum},
                    {"max_mu_asymmetry", pb_inv.max_asymmetry}};
  }
  write_json(c, "laplacian.json", report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral triples on one-sided subshifts"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub, std::size_t default_depth, bool with_delta) {
    c.depth = default_depth;
    sub->add_option("--spec", c.spec_text, "full:K | window:W | subst:a=ab,b=a | sturmian:cf=...")
        ->required();
    sub->add_option("--depth", c.depth, "Truncation depth N")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--format", c.format, "csv or json (default both)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "64-bit seed");
    sub->add_option("--max-window", c.max_window, "Cap on the generating window length");
    if (with_delta) sub->add_option("--delta", c.delta_text, "exp | harmonic | geometric:q | powerlog:a,b | table:FILE");
  };

  auto* lang = app.add_subcommand("lang", "Language, complexity, repulsiveness, repetitivity");
  auto* tree = app.add_subcommand("tree", "Michon tree and approximation graph exports");
  auto* lip = app.add_subcommand("lipschitz", "Lipschitz constant C(N) and continuity witness W(N)");
  auto* zeta = app.add_subcommand("zeta", "Zeta partial sums, abscissa brackets, exponents");
  auto* lap = app.add_subcommand("laplacian", "Averaged Laplacian and its spectrum");

  // Defaults differ per subcommand; each callback below re-applies its own
  // default unless the option was given.
  common(lang, 16, false);
  common(tree, 6, true);
  common(lip, 1024, true);
  common(zeta, 1024, true);
  common(lap, 3, true);
  tree->add_option("--choice", c.choice, "canonical | random")->check(CLI::IsMember({"canonical", "random"}));
  for (auto* sub : {lip, zeta}) sub->add_option("--schedule", c.schedule_text, "Comma-separated depths");
  lip->add_option("--bounded-growth", c.bounded_growth);
  lip->add_option("--unbounded-growth", c.unbounded_growth);
  zeta->add_option("--s-min", c.s_min);
  zeta->add_option("--s-max", c.s_max);
  zeta->add_option("--s-step", c.s_step);
  zeta->add_option("--r-convergent", c.r_conv);
  zeta->add_option("--r-divergent", c.r_div);
  lap->add_option("--rho", c.rho, "Exponent s of rho(delta) = delta^s");
  lap->add_option("--measure", c.measure, "uniform | random | FILE of 'word weight' lines");
  lap->add_flag("--pb", c.pb, "Also assemble the restricted-pair Laplacian");
  lap->add_option("--pb-mode", c.pb_mode, "single | nu")->check(CLI::IsMember({"single", "nu"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid;
  }

  const std::pair<CLI::App*, std::size_t> defaults[] = {
      {lang, 16}, {tree, 6}, {lip, 1024}, {zeta, 1024}, {lap, 3}};
  for (const auto& [sub, depth] : defaults) {
    if (sub->parsed()) {
      c.command = sub->get_name();
      if (sub->count("--depth") == 0) c.depth = depth;
    }
  }

  try {
    if (c.command == "lang") return cmd_lang(c);
    if (c.command == "tree") return cmd_tree(c);
    if (c.command == "lipschitz") return cmd_lipschitz(c);
    if (c.command == "zeta") return cmd_zeta(c);
    return cmd_laplacian(c);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return exit_invariant;
  } catch (const InsufficientData& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::length_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return exit_invariant;
  }
}
