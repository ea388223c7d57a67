// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "subshift/language.hpp"
#include "subshift/laplacian.hpp"
#include "subshift/metrics.hpp"
#include "subshift/skeleton.hpp"
#include "subshift/spec_parse.hpp"
#include "subshift/tree.hpp"
#include "subshift/zeta.hpp"

#ifndef SUBSHIFT_CLI_PATH
#error "SUBSHIFT_CLI_PATH must name the subshift executable"
#endif

using namespace subshift;
namespace fs = std::filesystem;

namespace {

// The four reference instances: full shifts on 2 and 3 letters, Fibonacci,
// and the Sturmian subshift with mu_i = i.
const std::vector<std::string> reference_specs{"full:2", "full:3", "sturmian:cf=1", "sturmian:mu=linear:1:0"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

MichonTree tree_of(const std::string& spec, std::size_t N) {
  return MichonTree::build(LanguageTable::build(parse_spec(spec), N));
}

Outcome ac1() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  const auto delta = DeltaSequence::harmonic();
  double worst = 0;
  std::size_t pairs = 0;
  for (const auto& spec : reference_specs) {
    const auto tree = tree_of(spec, 10);
    const auto tau = choice_function(tree, ChoiceFunction::SeededRandom{rng()});
    const auto graph = approximation_graph(tree, tau, delta);
    const NodeId first_leaf = tree.leaf(0);
    for (int k = 0; k < 200; ++k) {
      const NodeId x = tau.representative(static_cast<NodeId>(rng() % tree.size()));
      NodeId y = x;
      while (y == x) y = tau.representative(static_cast<NodeId>(rng() % tree.size()));
      const double closed = spectral_distance(tree, tau, delta, x, y);
      const double dijkstra = graph_distance(graph, x - first_leaf, y - first_leaf);
      worst = std::max(worst, std::abs(closed - dijkstra));
      ++pairs;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-12 && secs < 10,
          "max |closed form - Dijkstra| = " + fmt(worst) + " over " + std::to_string(pairs) + " pairs, " +
              fmt(secs) + " s"};
}

Outcome ac2() {
  const auto start = std::chrono::steady_clock::now();
  const auto delta = DeltaSequence::harmonic();
  bool ok = true;
  std::size_t evaluated = 0;
  std::string mode;
  for (const auto& spec : reference_specs) {
    const auto tree = tree_of(spec, 4);
    const auto internal = oracle::internal_nodes(tree);
    double log_count = 0;
    for (auto v : internal) log_count += std::log2(static_cast<double>(tree.child_count(v)));
    const std::size_t L = tree.leaf_count();
    std::vector<double> lo(L * L, HUGE_VAL), hi(L * L, -HUGE_VAL);
    if (log_count <= 20) {
      // every choice function on the whole tree
      oracle::for_each_selection(tree, internal, [&](const std::vector<NodeId>& sel) {
        const auto tau = ChoiceFunction::from_selection(tree, sel);
        for (std::size_t i = 0; i < L; ++i) {
          for (std::size_t j = i + 1; j < L; ++j) {
            const double d = spectral_distance(tree, tau, delta, tree.leaf(i), tree.leaf(j));
            lo[i * L + j] = std::min(lo[i * L + j], d);
            hi[i * L + j] = std::max(hi[i * L + j], d);
            ++evaluated;
          }
        }
      });
      mode += spec + ": 2^" + fmt(log_count) + " functions; ";
    } else {
      // d_s^tau(xi, eta) only reads tau on the two paths; enumerate those
      // choices exhaustively, everything else fixed.
      for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = i + 1; j < L; ++j) {
          std::set<NodeId> on_paths;
          for (NodeId w : {tree.leaf(i), tree.leaf(j)}) {
            for (NodeId c = w; c != tree.root(); c = tree.parent(c)) on_paths.insert(tree.parent(c));
          }
          const std::vector<NodeId> nodes(on_paths.begin(), on_paths.end());
          oracle::for_each_selection(tree, nodes, [&](const std::vector<NodeId>& sel) {
            const auto tau = ChoiceFunction::from_selection(tree, sel);
            const double d = spectral_distance(tree, tau, delta, tree.leaf(i), tree.leaf(j));
            lo[i * L + j] = std::min(lo[i * L + j], d);
            hi[i * L + j] = std::max(hi[i * L + j], d);
            ++evaluated;
          });
        }
      }
      mode += spec + ": path-restricted (2^" + fmt(log_count) + " total); ";
    }
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = i + 1; j < L; ++j) {
        ok = ok && lo[i * L + j] == inf_spectral_distance(tree, delta, tree.leaf(i), tree.leaf(j)) &&
             lo[i * L + j] == ultrametric_distance(tree.word(tree.leaf(i)), tree.word(tree.leaf(j)), delta);
        ok = ok && hi[i * L + j] == sup_spectral_distance(tree, delta, tree.leaf(i), tree.leaf(j));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && secs < 30, mode + std::to_string(evaluated) + " evaluations, " + fmt(secs) + " s"};
}

const std::vector<std::string> all_specs{"full:2",
                                         "full:3",
                                         "sturmian:cf=1",
                                         "sturmian:mu=linear:1:0",
                                         "sturmian:cf=2",
                                         "sturmian:cf=1,2",
                                         "sturmian:cf=3,1,2",
                                         "sturmian:mu=pow2",
                                         "subst:a=ab,b=ba",
                                         "subst:a=ab,b=aa",
                                         "subst:a=abc,b=ac,c=b"};

Outcome ac3() {
  const double bound = 1 / (std::exp(1.0) - 1) + 1e-9;
  double worst = 0;
  std::string arg;
  for (const auto& spec : all_specs) {
    const auto C = lipschitz_estimate(skeleton_for(parse_spec(spec), 4096), DeltaSequence::exponential()).C;
    if (C >= worst) {
      worst = C;
      arg = spec;
    }
  }
  return {worst <= bound, "max C(4096) = " + fmt(worst) + " (" + arg + ") against 1/(e-1) = " +
                              fmt(1 / (std::exp(1.0) - 1)) + ", " + std::to_string(all_specs.size()) + " specs"};
}

struct Series {
  std::vector<std::size_t> N;
  std::vector<double> C, W;
};

Series order_series(const std::string& spec, const DeltaSequence& delta, std::size_t last) {
  Series s;
  for (std::size_t N : doubling_schedule(last / 32, last)) {
    const auto skel = skeleton_for(parse_spec(spec), N);
    s.N.push_back(N);
    s.C.push_back(lipschitz_estimate(skel, delta).C);
    s.W.push_back(continuity_witness(skel, delta).W);
  }
  return s;
}

Outcome ac4() {
  const auto start = std::chrono::steady_clock::now();
  const auto h = DeltaSequence::harmonic();
  const std::size_t N = 8192;
  const auto fib = order_series("sturmian:cf=1", h, N);
  const auto pow2 = order_series("sturmian:mu=pow2", h, N);
  const std::size_t k = fib.N.size() - 1;
  const double fib_growth = relative_growth(fib.C[k - 1], fib.C[k]);
  const double pow2_growth = relative_growth(pow2.W[k - 1], pow2.W[k]);
  const auto fib_verdict = classify_trend(fib.C[k - 1], fib.C[k]);
  const auto pow2_verdict = classify_trend(pow2.W[k - 1], pow2.W[k]);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {fib_growth < 0.01 && pow2_growth > 0.25 && secs < 60,
          "fibonacci C: " + fmt(fib.C[k - 1]) + " -> " + fmt(fib.C[k]) + " (growth " + fmt(100 * fib_growth) +
              "%, " + trend_name(fib_verdict) + "); mu_i=2^i W: " + fmt(pow2.W[k - 1]) + " -> " +
              fmt(pow2.W[k]) + " (growth " + fmt(100 * pow2_growth) + "%, " + trend_name(pow2_verdict) +
              "); N=" + std::to_string(N) + ", " + fmt(secs) + " s"};
}

Outcome ac5() {
  const auto h = DeltaSequence::harmonic();
  const TableOptions defaults;
  const auto construction = divergent_construction(h, defaults.max_window / 8);
  SubshiftSpec spec = construction.cf;
  // Largest depth whose table still stabilizes under the default window cap.
  std::size_t N = 16;
  for (std::size_t cand = 32; cand <= (std::size_t{1} << 16); cand *= 2) {
    bool stable = false;
    (void)skeleton_for(spec, cand, defaults, &stable);
    if (!stable) break;
    N = cand;
  }
  const auto W = continuity_witness(skeleton_for(spec, N), h);
  const auto W16 = continuity_witness(skeleton_for(spec, N / 16), h);

  // direct summation along the path with suffix block u_i^{mu_i}
  const auto stages = characteristic_stages(construction.cf, N);
  double block_sum = 0;
  for (const auto& st : stages) {
    double s = 0;
    for (std::uint64_t j = 1; j <= st.coefficient && j * st.period_length < N; ++j) s += h[j * st.period_length];
    block_sum = std::max(block_sum, s);
  }
  std::string mu;
  for (auto m : construction.cf.prefix) mu += (mu.empty() ? "" : ",") + std::to_string(m);
  return {W.W > 2 * W16.W,
          "mu = (" + mu + (construction.last_stage_truncated ? ", truncated" : "") + "), N = " +
              std::to_string(N) + ": W(N) = " + fmt(W.W) + ", W(N/16) = " + fmt(W16.W) +
              ", best single-block sum = " + fmt(block_sum)};
}

Outcome ac6() {
  const std::vector<std::vector<std::uint64_t>> periods{{1}, {2}, {1, 2}, {3, 1, 2}, {2, 1, 1, 3}};
  const std::size_t N = 512;
  bool ok = true;
  std::string detail;
  for (const auto& period : periods) {
    std::string text = "sturmian:cf=";
    for (std::size_t i = 0; i < period.size(); ++i) text += (i ? "," : "") + std::to_string(period[i]);
    const auto table = LanguageTable::build(parse_spec(text), N + 1);
    // independent window by literal substitution steps
    std::vector<std::uint64_t> mu;
    std::string window;
    while (window.size() < (std::size_t{1} << 15)) {
      mu.push_back(period[mu.size() % period.size()]);
      if (mu.size() % 2 == 1) window = oracle::characteristic_by_steps(mu);
    }
    const auto counts = oracle::hashed_counts(std::string_view(window).substr(window.size() - (1 << 15)), N + 1);
    std::size_t bad = 0;
    for (std::size_t n = 0; n <= N; ++n) {
      const bool good = table.count(n + 1) - table.count(n) == 1 && right_special_words(table, n).size() == 1 &&
                        counts.P[n + 1] - counts.P[n] == 1 && counts.right_special[n] == 1 &&
                        counts.P[n] == table.count(n);
      bad += !good;
    }
    ok = ok && bad == 0 && table.fully_stabilized();
    detail += text + (bad ? " FAILS at " + std::to_string(bad) + " lengths; " : " ok; ");
  }
  return {ok, detail + "n = 0.." + std::to_string(N)};
}

Outcome ac7() {
  const auto grid = uniform_grid(0.2, 3.0, 0.05);
  std::size_t violations = 0, points = 0;
  double binary_defect = 0;
  for (const auto& spec : all_specs) {
    const auto skel = skeleton_for(parse_spec(spec), 4096);
    bool binary = true;
    for (std::uint32_t v = 0; v < skel.size(); ++v) binary = binary && skel.node(v).branching <= 1;
    for (const auto& delta : {DeltaSequence::harmonic(), DeltaSequence::geometric(0.5)}) {
      const auto p = zeta_partials(skel, delta, grid, doubling_schedule(64, 4096));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < p.depths.size(); ++k) {
          ++points;
          const auto z = p.at(ZetaVariant::full, i, k), zl = p.at(ZetaVariant::low, i, k),
                     zp = p.at(ZetaVariant::pb, i, k);
          violations += !(zp <= zl && zl <= z);
          if (binary && z > 0) binary_defect = std::max(binary_defect, static_cast<double>(std::abs(z - zl) / z));
        }
      }
    }
  }
  return {violations == 0 && binary_defect <= 1e-12,
          std::to_string(violations) + " ordering violations over " + std::to_string(points) +
              " points; max relative |Z - Z_low| on binary specs = " + fmt(binary_defect)};
}

Outcome ac8() {
  const auto grid = uniform_grid(0.2, 3.0, 0.05);
  const auto schedule = doubling_schedule(64, 4096);
  const auto fib = abscissa_estimate(
      zeta_partials(skeleton_for(parse_spec("sturmian:cf=1"), 4096), DeltaSequence::harmonic(), grid, schedule));
  const auto full = abscissa_estimate(
      zeta_partials(BranchingSkeleton::full_shift(2, 4096), DeltaSequence::geometric(0.5), grid, schedule));
  const auto& bf = fib[static_cast<std::size_t>(ZetaVariant::full)];
  const auto& bb = full[static_cast<std::size_t>(ZetaVariant::full)];
  auto contains_one = [](const AbscissaBracket& b) {
    return b.divergent && b.convergent && *b.divergent <= 1.0 + 1e-12 && *b.convergent >= 1.0 - 1e-12 &&
           *b.divergent < *b.convergent;
  };
  auto show = [](const AbscissaBracket& b) {
    return "[" + (b.divergent ? fmt(*b.divergent) : std::string("open")) + ", " +
           (b.convergent ? fmt(*b.convergent) : std::string("open")) + "]";
  };
  const bool ok = contains_one(bf) && bf.width() && *bf.width() <= 0.2 + 1e-12 && contains_one(bb);
  return {ok, "fibonacci/harmonic " + show(bf) + ", full:2/2^-n " + show(bb)};
}

Outcome ac9() {
  std::mt19937_64 rng(9);
  const double rhos[] = {0.0, 1.0, 2.0};
  double row = 0, asym = 0, neg = 0, oracle_gap = 0, kernel = 0, scale = 0, relative = 0;
  std::size_t configs = 0;
  while (configs < 50) {
    const auto& spec = reference_specs[rng() % reference_specs.size()];
    const std::size_t N = 1 + rng() % 8;
    const auto tree = tree_of(spec, N);
    // dense Dirichlet-form oracle is quartic in the leaf count
    if (tree.leaf_count() > 256) continue;
    ++configs;
    const bool uniform = rng() % 2;
    const auto mu = uniform ? CylinderMeasure::uniform(tree) : CylinderMeasure::random(tree, rng());
    const Density rho{rhos[rng() % 3], {}};
    const auto delta = DeltaSequence::harmonic();
    const auto M = assemble_laplacian(tree, mu, rho, delta);
    const auto inv = check_invariants(M);
    row = std::max(row, inv.max_row_sum);
    scale = std::max(scale, inv.max_entry);
    relative = std::max(relative, inv.max_row_sum / inv.max_entry);
    asym = std::max(asym, inv.max_asymmetry);
    kernel = std::max(kernel, (M.M * Eigen::VectorXd::Ones(M.M.rows())).cwiseAbs().maxCoeff());
    const auto s = spectrum(M);
    neg = std::min(neg, s.eigenvalues.front());
    const auto D = assemble_from_dirichlet_form(tree, mu, rho, delta);
    oracle_gap = std::max(oracle_gap, (M.M - D.M).cwiseAbs().maxCoeff());
  }
  const bool ok = row <= 1e-12 && asym <= 1e-12 && neg >= -1e-10 && kernel <= 1e-12 && oracle_gap <= 1e-10;
  return {ok, "50 configs: max row sum " + fmt(row) + ", max mu-asymmetry " + fmt(asym) + ", min eigenvalue " +
                  fmt(neg) + ", max |M 1| " + fmt(kernel) + ", max |formula - form| " + fmt(oracle_gap) +
                  "; largest entry " + fmt(scale) + ", max row sum / largest entry " + fmt(relative)};
}

Outcome ac10() {
  double gap = 0;
  const auto tree = tree_of("sturmian:cf=1", 8);
  for (int m = 0; m < 2; ++m) {
    const auto mu = m ? CylinderMeasure::random(tree, 3) : CylinderMeasure::uniform(tree);
    const auto full = assemble_laplacian(tree, mu, Density{}, DeltaSequence::harmonic());
    for (auto mode : {PairSelection::Mode::single, PairSelection::Mode::nu_average}) {
      PairSelection sel;
      sel.mode = mode;
      const auto pb = assemble_pb_laplacian(tree, mu, Density{}, DeltaSequence::harmonic(), sel);
      gap = std::max(gap, (pb.M - full.M).cwiseAbs().maxCoeff());
    }
  }
  const auto two = tree_of("full:2", 1);
  const auto s = spectrum(assemble_laplacian(two, CylinderMeasure::uniform(two), Density{2.0, {}},
                                             DeltaSequence::harmonic()));
  const double err = std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[1] - 4.0));
  return {gap <= 1e-12 && err <= 1e-12 && s.eigenvalues.size() == 2,
          "fibonacci max |PB - full| = " + fmt(gap) + "; 2x2 spectrum {" + fmt(s.eigenvalues[0]) + ", " +
              fmt(s.eigenvalues[1]) + "}"};
}

Outcome ac11() {
  bool order = true;
  for (const auto& spec : all_specs) {
    for (std::size_t N : {8, 16, 32, 64}) {
      if (spec == "full:2" && N > 16) continue;
      if (spec == "full:3" && N > 8) continue;
      const auto t = LanguageTable::build(parse_spec(spec), N);
      const auto r = repulsiveness_estimates(t, N);
      order = order && r.all.value <= r.right_special.value;
    }
  }
  bool full_exact = true;
  for (std::size_t N : {2, 4, 8, 16}) {
    const auto t = LanguageTable::build(FullShiftSpec{2}, N);
    full_exact = full_exact && repulsiveness_estimates(t, N).all.value == 1.0 / static_cast<double>(N - 1);
  }
  std::vector<double> fib;
  LanguageTable t64 = LanguageTable::build(parse_spec("sturmian:cf=1"), 65);
  for (std::size_t N : {16, 32, 64}) fib.push_back(repulsiveness_estimates(t64, N).right_special.value);
  std::vector<std::set<std::string>> levels(65), special(65);
  for (std::size_t n = 0; n <= 64; ++n) {
    for (auto w : t64.words(n)) levels[n].emplace(w);
    for (auto w : right_special_words(t64, n)) special[n].emplace(w);
  }
  const double brute = oracle::repulsiveness(levels, 64, &special);
  const auto deep = LanguageTable::build(parse_spec("sturmian:cf=1"), 2049);
  const double far = repulsiveness_estimates(deep, 2048).right_special.value;
  const bool stable = fib[0] == fib[1] && fib[1] == fib[2] && fib[2] > 0 && std::isfinite(fib[2]);
  return {order && full_exact && stable && fib[2] == brute,
          std::string("ordering ") + (order ? "holds" : "violated") + "; full shift 1/(N-1) " +
              (full_exact ? "exact" : "mismatch") + "; fibonacci l_R(16,32,64) = " + fmt(fib[0]) + ", " +
              fmt(fib[1]) + ", " + fmt(fib[2]) + " (2048: " + fmt(far) + "), brute force at 64 " + fmt(brute)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome ac12() {
  const std::vector<std::string> runs{
      "lang --spec sturmian:cf=2,1 --depth 24",
      "tree --spec full:3 --depth 3 --choice random --seed 77",
      "lipschitz --spec sturmian:cf=1 --depth 2048",
      "zeta --spec sturmian:cf=1 --depth 1024",
      "laplacian --spec full:3 --depth 3 --measure random --seed 5 --pb --pb-mode nu"};
  const fs::path root = fs::temp_directory_path() / ("subshift-acceptance-" + std::to_string(::getpid()));
  std::size_t files = 0;
  bool ok = true;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::vector<std::map<std::string, std::string>> outputs;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / (std::to_string(r) + "_" + std::to_string(rep));
      const std::string cmd = std::string(SUBSHIFT_CLI_PATH) + " " + runs[r] + " --out " + dir.string();
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        continue;
      }
      std::map<std::string, std::string> contents;
      for (const auto& e : fs::directory_iterator(dir)) contents[e.path().filename().string()] = slurp(e.path());
      outputs.push_back(std::move(contents));
    }
    ok = ok && outputs.size() == 2 && outputs[0] == outputs[1] && !outputs[0].empty();
    if (!outputs.empty()) files += outputs[0].size();
  }
  fs::remove_all(root);
  return {ok, std::to_string(runs.size()) + " commands run twice, " + std::to_string(files) +
                  " output files compared byte for byte"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form spectral distance equals the graph metric", ac1},
      {"exhaustive choice functions attain d and the supremum closed form", ac2},
      {"exponential delta keeps C(N) below 1/(e-1)", ac3},
      {"order dichotomy between Fibonacci and mu_i = 2^i", ac4},
      {"adaptive construction makes W(N) outgrow 2 W(N/16)", ac5},
      {"Sturmian complexity and right-special uniqueness", ac6},
      {"zeta ordering Z_PB <= Z_low <= Z", ac7},
      {"abscissa brackets contain 1", ac8},
      {"Laplacian invariants on random configurations", ac9},
      {"restricted-pair equivalence and the 2x2 spectrum", ac10},
      {"repulsiveness estimators", ac11},
      {"CLI determinism", ac12}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << "AC" << (i + 1) << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << " [" << fmt(secs) << " s]" << std::endl;
  }
  return failed;
}
