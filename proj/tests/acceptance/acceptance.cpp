// Acceptance gate: one [PASS]/[FAIL] line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dap/agreement.hpp"
#include "dap/analysis.hpp"
#include "dap/divpol.hpp"
#include "dap/experiments.hpp"
#include "dap/generators.hpp"
#include "dap/io.hpp"
#include "dap/manifest.hpp"
#include "oracles.hpp"

using namespace dap;

namespace {

using Clock = std::chrono::steady_clock;

const std::string kSource = DAP_SOURCE_DIR;

// Tolerances.
constexpr double kSlack = 1e-9;
constexpr double kRoundingHalfWidth = 0.005;
constexpr double kClusteringTolerance = 0.05;
constexpr double kOutDivTolerance = 0.05;
constexpr double kStochasticFloor = 0.03;
constexpr double kStdMultiplier = 3.0;
constexpr double kTableSeconds = 300.0;
constexpr double kPairRelTolerance = 1e-12;
constexpr double kCentralTolerance = 1e-12;
constexpr double kPartyTolerance = 1e-12;
constexpr double kEqualLengthTolerance = 1e-10;
constexpr double kLemmaTolerance = 1e-12;
constexpr double kOuterOracleTolerance = 1e-9;
constexpr double kFlatSpread = 0.05;
constexpr double kSteepSpread = 0.15;
constexpr double kResampleSeconds = 600.0;
constexpr double kMaxDistortion = 1.05;
constexpr double kExtremeFraction = 0.05;
constexpr double kMapSeconds = 1800.0;
constexpr double kMinComplementarity = 0.85;
constexpr double kFuzzSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ------------------------------------------------------------- criterion 1

struct Cell {
  double value;
  double std;
};

// Rows of the reference table; columns av, cntr, pair, pcc, jacc, pcc+,
// cntr-div, pcc-div, out-div, cntr-pol, pcc-pol, pair-pol.
const std::array<std::array<Cell, 12>, 14> kReference = {{
    {{{1.00, 0.00}, {1.00, 0.00}, {1.00, 0.00}, {1.00, 0.00}, {1.00, 0.00}, {1.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}}},
    {{{0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.50, 0.00}, {0.50, 0.00}, {0.20, 0.00}, {0.25, 0.02}, {0.10, 0.00}, {1.00, 0.00}, {1.00, 0.00}, {1.00, 0.00}}},
    {{{0.09, 0.01}, {0.08, 0.01}, {0.01, 0.00}, {0.02, 0.00}, {0.35, 0.01}, {0.10, 0.01}, {0.66, 0.02}, {0.82, 0.01}, {0.29, 0.00}, {0.25, 0.10}, {0.17, 0.01}, {0.24, 0.01}}},
    {{{0.33, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.33, 0.00}, {0.33, 0.00}, {0.33, 0.00}, {0.31, 0.01}, {0.13, 0.00}, {0.33, 0.00}, {0.50, 0.00}, {0.63, 0.00}}},
    {{{0.50, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.25, 0.00}, {0.25, 0.00}, {0.47, 0.04}, {0.40, 0.00}, {0.15, 0.00}, {0.25, 0.00}, {0.33, 0.00}, {0.43, 0.00}}},
    {{{0.33, 0.00}, {0.24, 0.00}, {0.10, 0.00}, {0.11, 0.00}, {0.56, 0.00}, {0.56, 0.00}, {0.15, 0.00}, {0.18, 0.00}, {0.09, 0.00}, {0.76, 0.00}, {0.89, 0.00}, {0.99, 0.00}}},
    {{{0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.39, 0.00}, {0.25, 0.00}, {0.46, 0.00}, {0.57, 0.01}, {0.22, 0.00}, {0.50, 0.00}, {0.33, 0.00}, {0.58, 0.00}}},
    {{{0.97, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.00, 0.00}, {0.02, 0.00}, {0.02, 0.00}, {0.97, 0.00}, {0.97, 0.00}, {0.63, 0.01}, {0.02, 0.00}, {0.02, 0.00}, {0.01, 0.00}}},
    {{{0.50, 0.00}, {0.49, 0.00}, {0.33, 0.00}, {0.50, 0.00}, {0.51, 0.00}, {0.50, 0.00}, {0.41, 0.00}, {0.32, 0.00}, {0.18, 0.00}, {0.01, 0.00}, {0.14, 0.00}, {0.47, 0.00}}},
    {{{0.21, 0.01}, {0.20, 0.02}, {0.06, 0.00}, {0.15, 0.02}, {0.33, 0.01}, {0.17, 0.02}, {0.89, 0.01}, {0.77, 0.03}, {0.26, 0.00}, {0.00, 0.02}, {0.05, 0.00}, {0.39, 0.01}}},
    {{{0.50, 0.01}, {0.49, 0.01}, {0.26, 0.01}, {0.25, 0.01}, {0.51, 0.00}, {0.30, 0.00}, {0.41, 0.01}, {0.50, 0.00}, {0.19, 0.00}, {0.07, 0.01}, {0.26, 0.02}, {0.45, 0.01}}},
    {{{0.10, 0.01}, {0.10, 0.01}, {0.02, 0.00}, {0.02, 0.00}, {0.34, 0.01}, {0.07, 0.00}, {0.81, 0.01}, {0.91, 0.00}, {0.29, 0.00}, {0.07, 0.01}, {0.05, 0.00}, {0.18, 0.00}}},
    {{{0.49, 0.01}, {0.00, 0.00}, {0.02, 0.00}, {0.02, 0.00}, {0.16, 0.00}, {0.07, 0.00}, {0.97, 0.00}, {0.90, 0.00}, {0.31, 0.00}, {0.01, 0.01}, {0.05, 0.00}, {0.16, 0.00}}},
    {{{0.08, 0.01}, {0.06, 0.01}, {0.01, 0.00}, {0.09, 0.02}, {0.31, 0.01}, {0.15, 0.03}, {0.96, 0.01}, {0.83, 0.03}, {0.27, 0.00}, {0.00, 0.01}, {0.04, 0.00}, {0.37, 0.01}}},
}};

const std::array<IndexId, 12> kTableColumns = {
    IndexId::av_agr,   IndexId::cntr_agr, IndexId::pair_agr, IndexId::pcc_agr,  IndexId::jacc_agr, IndexId::pccplus_agr,
    IndexId::cntr_div, IndexId::pcc_div,  IndexId::out_div,  IndexId::cntr_pol, IndexId::pcc_pol,  IndexId::pair_pol,
};

bool is_clustering(IndexId id) {
  return id == IndexId::cntr_div || id == IndexId::pcc_div || id == IndexId::cntr_pol || id == IndexId::pcc_pol;
}

bool is_stochastic_row(std::size_t row) { return row == 2 || row >= 9; }

double tolerance(std::size_t row, IndexId id, double reported_std) {
  if (id == IndexId::out_div) {
    return is_stochastic_row(row) ? std::max(kStdMultiplier * reported_std, kOutDivTolerance) : kOutDivTolerance;
  }
  if (is_clustering(id)) {
    return is_stochastic_row(row) ? std::max(kStdMultiplier * reported_std, kClusteringTolerance)
                                  : kClusteringTolerance;
  }
  return is_stochastic_row(row) ? std::max(kStdMultiplier * reported_std, kStochasticFloor) : kRoundingHalfWidth;
}

Outcome criterion_table() {
  setenv("APPROVAL_DAP_THREADS", "1", 1);
  const auto start = Clock::now();
  const auto manifest = load_manifest(kSource + "/data/manifests/compass.json");
  std::vector<CultureSpec> specs;
  for (const auto& item : expand(manifest)) {
    auto s = *item.spec;
    s.label = item.label;
    specs.push_back(std::move(s));
  }
  const auto table = index_table(specs, manifest.samples, manifest.seed, kTableColumns);
  const double secs = seconds_since(start);
  unsetenv("APPROVAL_DAP_THREADS");

  if (table.rows.size() != kReference.size()) return {false, "expected 14 rows"};
  int bad = 0;
  double worst_ratio = 0.0;
  std::ostringstream misses;
  for (std::size_t r = 0; r < kReference.size(); ++r) {
    for (std::size_t c = 0; c < kTableColumns.size(); ++c) {
      const auto ref = kReference[r][c];
      const double got = table.rows[r].mean[c];
      const double tol = tolerance(r, kTableColumns[c], ref.std);
      const double diff = std::abs(got - ref.value);
      worst_ratio = std::max(worst_ratio, diff / tol);
      if (diff > tol + kSlack) {
        ++bad;
        misses << " " << table.rows[r].label << "/" << to_string(kTableColumns[c]) << "=" << fmt("%.4f", got)
               << " vs " << fmt("%.2f", ref.value);
      }
    }
  }
  std::ostringstream detail;
  detail << "168 cells, " << bad << " outside tolerance, worst |diff|/tol " << fmt("%.3f", worst_ratio)
         << ", table time " << fmt("%.1f", secs) << "s" << misses.str();
  return {bad == 0 && secs <= kTableSeconds, detail.str()};
}

// ------------------------------------------------------------- criteria 2-7

// Random election, every fifth one pushed to an almost degenerate saturation.
Election random_case(Rng& rng, std::size_t max_m, std::size_t max_n, int t) {
  const auto m = 1 + rng.below(max_m);
  const auto n = 1 + rng.below(max_n);
  if (t % 5 == 4) {
    std::vector<Ballot> ballots(n, Ballot(m));
    const bool fill = rng.bernoulli(0.5);
    for (auto& b : ballots) {
      if (fill) b = b.complement();
    }
    const auto flips = 1 + rng.below(2);
    for (std::uint64_t f = 0; f < flips; ++f) {
      auto& b = ballots[rng.below(n)];
      const auto j = rng.below(m);
      b.set(j, !b.test(j));
    }
    return Election(m, std::move(ballots));
  }
  return oracle::random_election(m, n, rng.uniform(), rng);
}

bool degenerate(const Election& e) {
  const auto t = e.total_approvals();
  return t == 0 || t == e.num_voters() * e.num_candidates();
}

Outcome criterion_pair() {
  Rng rng(derive_seed(2025, {2}));
  int checked = 0, bad = 0, t = 0;
  double worst = 0.0;
  while (checked < 500) {
    const auto e = random_case(rng, 30, 30, t++);
    if (degenerate(e)) continue;
    ++checked;
    const double fast = pair_agr(e), slow = pair_agr_naive(e);
    const double err = std::abs(fast - slow) / std::max(1.0, std::abs(slow));
    worst = std::max(worst, err);
    if (err > kPairRelTolerance) ++bad;
  }
  return {bad == 0, std::to_string(checked) + " elections, max relative error " + fmt("%.2e", worst)};
}

Outcome criterion_central() {
  Rng rng(derive_seed(2025, {3}));
  int checked = 0, bad = 0, t = 0;
  double worst = 0.0;
  while (checked < 500) {
    const auto e = random_case(rng, 30, 30, t++);
    if (degenerate(e)) continue;
    ++checked;
    const double err = std::abs(cntr_agr(e) - cntr_agr_closed_form(e));
    worst = std::max(worst, err);
    if (err > kCentralTolerance) ++bad;
  }
  return {bad == 0, std::to_string(checked) + " elections, max error " + fmt("%.2e", worst)};
}

Outcome criterion_k_party() {
  double worst = 0.0;
  for (std::size_t size : {60u, 120u}) {
    for (std::size_t k = 2; k <= 6; ++k) {
      const auto e = gen_k_party(size, size, k);
      worst = std::max(worst, std::abs(pcc_agr(e)));
      worst = std::max(worst, std::abs(pccplus_agr(e) - 1.0 / static_cast<double>(k)));
    }
  }
  return {worst <= kPartyTolerance, "k = 2..6 at 60 and 120, max error " + fmt("%.2e", worst)};
}

Outcome criterion_equal_length() {
  Rng rng(derive_seed(2025, {5}));
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto m = 3 + rng.below(38);
    const auto n = 1 + rng.below(40);
    const auto e = oracle::fixed_length_election(m, n, m / 3, rng);
    worst = std::max(worst, std::abs(pcc_agr(e) - pair_agr(e)));
  }
  const auto tri = gen_triangle(60);
  const double pcc = std::round(pcc_agr(tri) * 100) / 100, pair = std::round(pair_agr(tri) * 100) / 100;
  const bool triangle_ok = pcc == 0.50 && pair == 0.33;
  return {worst <= kEqualLengthTolerance && triangle_ok,
          "200 elections, max |pcc-pair| " + fmt("%.2e", worst) + "; Triangle pcc " + fmt("%.2f", pcc) + " pair " +
              fmt("%.2f", pair)};
}

Outcome criterion_ranges() {
  Rng rng(derive_seed(2025, {6}));
  int bad = 0;
  double lo = 1.0, hi = 0.0;
  for (int t = 0; t < 2000; ++t) {
    Election e = [&] {
      switch (t % 4) {
        case 0:
          return random_case(rng, 40, 40, 4);
        case 1: {
          const auto m = 3 + rng.below(38);
          return oracle::fixed_length_election(m, 1 + rng.below(40), rng.below(m + 1), rng);
        }
        default:
          return oracle::random_election(1 + rng.below(40), 1 + rng.below(40), rng.uniform(), rng);
      }
    }();
    OuterDiversityConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    for (double v : {pcc_agr(e), out_div(e, cfg)}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (!(v >= 0.0 && v <= 1.0)) ++bad;
    }
  }
  return {bad == 0, "2000 elections, observed range [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]"};
}

Outcome criterion_outer_oracles() {
  double lemma = 0.0;
  int lemma_cases = 0;
  for (std::size_t m = 1; m <= 10; ++m) {
    for (int qi = 0; qi <= 10; ++qi) {
      const double approved = qi * static_cast<double>(m) / 10.0;
      if (std::abs(approved - std::round(approved)) > 1e-9) continue;
      for (int pi = 0; pi <= 10; ++pi) {
        const double p = pi / 10.0, q = qi / 10.0;
        const double brute = oracle::ham_single_to_unc(m, p, static_cast<std::size_t>(std::lround(approved)));
        lemma = std::max(lemma, std::abs(ham_single_to_unc(p, q) - brute));
        ++lemma_cases;
      }
    }
  }

  double outer = 0.0;
  int outer_cases = 0;
  OuterDiversityConfig cfg;
  cfg.mode = OuterDiversityMode::exact;
  for (std::size_t m = 1; m <= 4; ++m) {
    const std::uint32_t ballots = 1u << m;
    for (std::size_t n = 1; n <= 3; ++n) {
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= ballots;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> masks(n);
        auto rest = code;
        for (auto& mask : masks) {
          mask = static_cast<std::uint32_t>(rest % ballots);
          rest /= ballots;
        }
        const auto e = oracle::from_masks(m, masks);
        outer = std::max(outer, std::abs(out_div(e, cfg) - oracle::out_div_dual(oracle::to_matrix(e))));
        ++outer_cases;
      }
    }
  }
  return {lemma <= kLemmaTolerance && outer <= kOuterOracleTolerance,
          std::to_string(lemma_cases) + " (m, p, q) cases max error " + fmt("%.2e", lemma) + "; " +
              std::to_string(outer_cases) + " elections max out_div error " + fmt("%.2e", outer)};
}

// ------------------------------------------------------------- criterion 8

double max_column_spread(const ResamplingMatrix& r) {
  double worst = 0.0;
  for (std::size_t j = 0; j < r.phis.size(); ++j) {
    double lo = 1.0, hi = 0.0;
    for (const auto& row : r.values) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

Outcome criterion_resampling() {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (auto id : {IndexId::pair_agr, IndexId::pcc_agr, IndexId::pccplus_agr}) {
    const double s = max_column_spread(resampling_experiment(id, 60, 60, 10, 2025));
    ok = ok && s <= kFlatSpread;
    detail << to_string(id) << " " << fmt("%.3f", s) << ", ";
  }
  for (auto id : {IndexId::av_agr, IndexId::jacc_agr}) {
    const double s = max_column_spread(resampling_experiment(id, 60, 60, 10, 2025));
    ok = ok && s >= kSteepSpread;
    detail << to_string(id) << " " << fmt("%.3f", s) << ", ";
  }
  const double secs = seconds_since(start);
  detail << "max column spreads; time " << fmt("%.1f", secs) << "s";
  return {ok && secs <= kResampleSeconds, detail.str()};
}

// ------------------------------------------------------------- criteria 9-10

struct MapRun {
  std::vector<ManifestItem> items;
  ElectionMap map;
  double seconds = 0.0;
};

const MapRun& synthetic_map() {
  static const MapRun run = [] {
    const auto start = Clock::now();
    MapRun r;
    const auto manifest = load_manifest(kSource + "/data/manifests/synthetic_map.json");
    r.items = expand(manifest);
    std::vector<Election> elections;
    for (const auto& item : r.items) elections.push_back(materialize(item));
    r.map = build_map(elections, manifest.seed, manifest.features);
    r.seconds = seconds_since(start);
    return r;
  }();
  return run;
}

Outcome criterion_map() {
  const auto& run = synthetic_map();
  const auto& d = run.map.distances;
  const auto find = [&](const std::string& label) {
    for (std::size_t i = 0; i < run.items.size(); ++i) {
      if (run.items[i].label == label && run.items[i].group == "compass") return i;
    }
    throw std::runtime_error("compass election '" + label + "' missing from the manifest");
  };
  const std::array<std::size_t, 3> ext = {find("1/3-ID"), find("1/2-IC"), find("2-Party")};

  std::vector<double> all;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) all.push_back(d(i, j));
  }
  bool extremes_ok = true;
  std::ostringstream detail;
  detail << run.items.size() << " elections, distortion " << fmt("%.4f", run.map.embedding.distortion)
         << "; extreme pairs in top";
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      const double v = d(ext[a], ext[b]);
      const auto above = std::count_if(all.begin(), all.end(), [&](double x) { return x > v; });
      const double frac = static_cast<double>(above) / static_cast<double>(all.size());
      extremes_ok = extremes_ok && frac < kExtremeFraction;
      detail << " " << fmt("%.2f%%", 100 * frac);
    }
  }
  detail << "; time " << fmt("%.1f", run.seconds) << "s";
  return {run.map.embedding.distortion <= kMaxDistortion && extremes_ok && run.seconds <= kMapSeconds, detail.str()};
}

Outcome criterion_complementarity() {
  const std::vector<double> x = {0.1, 0.7, 0.3, 0.45, 0.9, 0.05};
  const bool same_zero = complementarity(x, x, x) == 0.0;

  const std::vector<double> a = {0.5, 0.25, 0.75, 0.125, 0.0, 1.0};
  const std::vector<double> b = {0.25, 0.5, 0.0, 0.625, 0.5, 0.0};
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = 1.0 - a[i] - b[i] + 0.25;
  const bool constant_one = complementarity(a, b, c) == 1.0;

  const auto& run = synthetic_map();
  std::vector<double> agr, div, pol;
  for (const auto& f : run.map.features) {
    agr.push_back(f.agr);
    div.push_back(f.div);
    pol.push_back(f.pol);
  }
  const double corpus = complementarity(agr, div, pol);
  return {same_zero && constant_one && corpus > kMinComplementarity,
          std::string("cmpl(x,x,x)=0 ") + (same_zero ? "yes" : "no") + ", constant sum gives 1 " +
              (constant_one ? "yes" : "no") + ", pcc triple on synthetic corpus " + fmt("%.4f", corpus)};
}

// ------------------------------------------------------------- criterion 11

Outcome criterion_kendall() {
  Rng rng(derive_seed(2025, {11}));
  int bad = 0, ties = 0;
  for (int t = 0; t < 50; ++t) {
    const auto n = 2 + rng.below(199);
    const auto levels = t % 2 == 0 ? 2 + rng.below(10) : 1000000;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.below(levels)) / 7.0;
      y[i] = static_cast<double>(rng.below(levels)) / 3.0 + (rng.bernoulli(0.3) ? x[i] : 0.0);
    }
    if (t % 2 == 0) ++ties;
    const double fast = kendall_tau_b(x, y), slow = oracle::kendall_tau_b(x, y);
    const bool same = std::isnan(slow) ? std::isnan(fast) : fast == slow;
    if (!same) ++bad;
  }
  return {bad == 0, "50 column pairs (" + std::to_string(ties) + " with heavy ties), " + std::to_string(bad) +
                        " mismatches"};
}

// ------------------------------------------------------------- criterion 12

struct Golden {
  const char* file;
  bool valid;
  std::size_t line;  // expected ParseError line for invalid files
};

const Golden kGolden[] = {
    {"valid.pb", true, 0},          {"reordered.pb", true, 0},         {"quoted.pb", true, 0},
    {"undeclared.pb", false, 11},   {"missing_votes.pb", false, 0},    {"malformed_row.pb", false, 7},
    {"cumulative.pb", false, 3},    {"duplicate_section.pb", false, 4}, {"unterminated_quote.pb", false, 3},
};

Outcome criterion_pabulib() {
  int golden_bad = 0;
  std::ostringstream misses;
  for (const auto& g : kGolden) {
    const auto text = read_file(kSource + "/tests/data/pabulib/" + g.file);
    try {
      parse_pabulib(text);
      if (!g.valid) {
        ++golden_bad;
        misses << " " << g.file << " accepted";
      }
    } catch (const ParseError& e) {
      if (g.valid || e.line() != g.line) {
        ++golden_bad;
        misses << " " << g.file << " line " << e.line();
      }
    }
  }
  const auto valid = parse_pabulib(read_file(kSource + "/tests/data/pabulib/valid.pb"));
  if (valid.num_candidates() != 3 || valid.ballot(0).to_string() != "101") {
    ++golden_bad;
    misses << " valid.pb content";
  }

  std::vector<std::string> seeds;
  for (const auto& g : kGolden) seeds.push_back(read_file(kSource + "/tests/data/pabulib/" + g.file));
  Rng rng(derive_seed(2025, {12}));
  const auto start = Clock::now();
  std::uint64_t runs = 0, accepted = 0, rejected = 0, other = 0;
  const std::string alphabet = "\n\r;,\"\t PROJECTSVOTESMETAproject_idvotevote_typeapproval0123456789\xef\xbb\xbf";
  while (seconds_since(start) < kFuzzSeconds) {
    std::string text;
    if (rng.below(8) == 0) {
      const auto len = rng.below(400);
      for (std::uint64_t i = 0; i < len; ++i) text.push_back(static_cast<char>(rng.below(256)));
    } else {
      text = seeds[rng.below(seeds.size())];
      const auto edits = 1 + rng.below(12);
      for (std::uint64_t k = 0; k < edits; ++k) {
        const auto pos = rng.below(text.size() + 1);
        switch (rng.below(4)) {
          case 0:
            text.insert(text.begin() + static_cast<long>(pos), alphabet[rng.below(alphabet.size())]);
            break;
          case 1:
            if (pos < text.size()) text.erase(pos, 1 + rng.below(6));
            break;
          case 2:
            if (pos < text.size()) text[pos] = static_cast<char>(rng.below(256));
            break;
          default: {
            const auto& donor = seeds[rng.below(seeds.size())];
            const auto from = rng.below(donor.size());
            text.insert(pos, donor.substr(from, 1 + rng.below(40)));
          }
        }
      }
    }
    ++runs;
    try {
      parse_pabulib(text);
      ++accepted;
    } catch (const ParseError&) {
      ++rejected;
    } catch (...) {
      ++other;
    }
  }
  std::ostringstream detail;
  detail << sizeof(kGolden) / sizeof(kGolden[0]) << " golden files, " << golden_bad << " mismatches" << misses.str()
         << "; fuzz " << runs << " inputs (" << accepted << " accepted, " << rejected << " ParseError, " << other
         << " other exceptions)";
  return {golden_bad == 0 && other == 0, detail.str()};
}

}  // namespace

int main() {
  report(1, "index table matches the reference values", criterion_table);
  report(2, "pair_agr equals the pairwise-sum definition", criterion_pair);
  report(3, "cntr_agr equals its per-candidate closed form", criterion_central);
  report(4, "k-Party gives pcc_agr = 0 and pccplus_agr = 1/k", criterion_k_party);
  report(5, "pcc_agr equals pair_agr for equal-length ballots; Triangle counterexample", criterion_equal_length);
  report(6, "pcc_agr and out_div stay in [0, 1]", criterion_ranges);
  report(7, "distance to the weighted universe matches exhaustive oracles", criterion_outer_oracles);
  report(8, "resampling saturation-independence verdicts", criterion_resampling);
  report(9, "synthetic map distortion and compass extremes", criterion_map);
  report(10, "complementarity properties and corpus value", criterion_complementarity);
  report(11, "Kendall tau-b equals the pair-count definition", criterion_kendall);
  report(12, "Pabulib golden files and parser fuzzing", criterion_pabulib);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
