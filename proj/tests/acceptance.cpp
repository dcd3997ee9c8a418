// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oracles.hpp"
#include "rankscreen/bandit.hpp"
#include "rankscreen/baselines.hpp"
#include "rankscreen/evalbench.hpp"
#include "rankscreen/rankstat.hpp"
#include "rankscreen/screen.hpp"
#include "rankscreen/simgen.hpp"

using namespace rankscreen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int report(int id, const std::string& title, const Check& c) {
  const bool pass = c.failures.empty();
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
  std::string d = c.detail.str();
  while (!d.empty() && (d.back() == ' ' || d.back() == ';')) d.pop_back();
  if (!d.empty()) std::cout << " [" << d << "]";
  std::cout << '\n';
  for (const auto& f : c.failures) std::cout << "    " << f << '\n';
  std::cout.flush();
  return pass ? 0 : 1;
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// 1. fast estimators against pairwise-counting oracles
Check oracle_equivalence() {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(3, 50);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = size(rng);
    const auto x = testing::distinct_values(n, rng);
    auto y = trial % 2 ? testing::tied_values(n, rng) : testing::distinct_values(n, rng);
    while (std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) y = testing::tied_values(n, rng);
    const auto yr = compute_y_ranks(y);
    auto s = derive_stream(SeedSpec{1}, StreamPurpose::kTieBreak, static_cast<std::uint64_t>(trial), 0);
    const double eo = std::abs(chatterjee_omega(x, yr, s) - testing::brute_omega(x, y));
    const double ex = std::abs(chatterjee_xi(x, yr, s) - testing::brute_xi(x, y));
    worst = std::max({worst, eo, ex});
  }
  const double elapsed = seconds_since(t0);
  c.expect(worst <= 1e-12, "max deviation " + fmt(worst) + " > 1e-12");
  c.expect(elapsed < 10.0, "runtime " + fmt(elapsed) + " s >= 10 s");
  c.detail << "max |diff| " << fmt(worst) << ", " << fmt(elapsed) << " s";
  return c;
}

// 2. closed forms
Check closed_forms() {
  Check c;
  for (std::size_t n = 2; n <= 100; ++n) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 1.0);
    const auto yr = compute_y_ranks(v);
    auto s = derive_stream(SeedSpec{}, StreamPurpose::kTieBreak, 0, 0);
    const double nd = static_cast<double>(n);
    const double xi = chatterjee_xi(v, yr, s);
    const double om = chatterjee_omega(v, yr, s);
    c.expect(xi == (nd - 2.0) / (nd + 1.0), "xi at n=" + std::to_string(n) + " is " + fmt(xi, 17));
    c.expect(om == (nd * nd - 1.0) / (6.0 * nd * nd), "omega at n=" + std::to_string(n) + " is " + fmt(om, 17));
  }
  const std::vector<double> x{1, 2, 3};
  const std::vector<double> y{3, 2, 1};
  auto s = derive_stream(SeedSpec{}, StreamPurpose::kTieBreak, 0, 0);
  const double dec = chatterjee_omega(x, compute_y_ranks(y), s);
  c.expect(dec == -2.0 / 27.0, "decreasing n=3 omega is " + fmt(dec, 17));
  c.detail << "n = 2..100 exact";
  return c;
}

std::vector<Method> bandits(std::initializer_list<double> alphas) {
  std::vector<Method> m;
  for (double a : alphas) m.push_back({MethodKind::kBanditCrSis, a});
  return m;
}

const MethodReport& find(const BenchReport& r, const std::string& label) {
  for (const auto& m : r.methods) {
    if (m.method == label) return m;
  }
  throw std::logic_error("no method " + label);
}

void describe(Check& c, const BenchReport& r) {
  for (const auto& m : r.methods) {
    c.detail << m.method << ": med S " << m.s_quantiles[2] << ", P_d1 " << m.proportions[0] << "; ";
  }
}

// 3. Model 1a
Check model_1a() {
  Check c;
  const auto t0 = Clock::now();
  auto methods = bandits({0.15, 0.25, 0.35});
  methods.insert(methods.begin(), Method{MethodKind::kCrSis, 0.0});
  const auto r = run_replicates(make_model_spec(ModelId::k1a, 1500, 2000, {}), methods, 50, SeedSpec{101});
  check_report(r);
  for (const auto& m : r.methods) {
    c.expect(m.proportions[0] >= 0.98, m.method + " P_d1 = " + fmt(m.proportions[0]));
    c.expect(m.s_quantiles[2] == 5.0, m.method + " median S = " + fmt(m.s_quantiles[2]));
  }
  describe(c, r);
  c.detail << fmt(seconds_since(t0)) << " s";
  return c;
}

// 4. Model 1b
Check model_1b() {
  Check c;
  const std::vector<Method> methods{{MethodKind::kCrSis, 0.0}, {MethodKind::kSis, 0.0}};
  const auto r = run_replicates(make_model_spec(ModelId::k1b, 1500, 2000, {}), methods, 50, SeedSpec{202});
  check_report(r);
  const double cr = find(r, "cr-sis").proportions[0];
  const double sis = find(r, "sis").proportions[0];
  c.expect(cr >= 0.95, "cr-sis P_d1 = " + fmt(cr));
  c.expect(sis <= 0.30, "sis P_d1 = " + fmt(sis));
  describe(c, r);
  return c;
}

// 5. Models 2c and 2d
Check models_2c_2d() {
  Check c;
  for (ModelId id : {ModelId::k2c, ModelId::k2d}) {
    const std::string name(model_name(id));
    std::vector<Method> methods{{MethodKind::kCrSis, 0.0}, {MethodKind::kBanditCrSis, 0.15}};
    const auto r = run_replicates(make_model_spec(id, 1500, 2000, {}), methods, 50, SeedSpec{303});
    check_report(r);
    const auto& cr = find(r, "cr-sis");
    const auto& bandit = find(r, "bandit-cr-sis(0.15)");
    c.expect(cr.s_quantiles[2] == 4.0, name + " cr-sis median S = " + fmt(cr.s_quantiles[2]));
    c.expect(cr.proportions[0] >= 0.95, name + " cr-sis P_d1 = " + fmt(cr.proportions[0]));
    c.expect(bandit.proportions[0] >= 0.95, name + " bandit P_d1 = " + fmt(bandit.proportions[0]));
    c.detail << name << " ";
    describe(c, r);

    const std::vector<Method> small{{MethodKind::kCrSis, 0.0}, {MethodKind::kDcSis, 0.0}};
    const auto rs = run_replicates(make_model_spec(id, 300, 500, {}), small, 20, SeedSpec{404});
    check_report(rs);
    const double cr_med = find(rs, "cr-sis").s_quantiles[2];
    const double dc_med = find(rs, "dc-sis").s_quantiles[2];
    c.expect(dc_med > cr_med, name + " reduced scale: dc-sis median " + fmt(dc_med) + " <= cr-sis " + fmt(cr_med));
    c.detail << name << " n=300: dc-sis med S " << dc_med << " vs cr-sis " << cr_med << "; ";
  }
  return c;
}

// 6. bandit with alpha0 = 0 reproduces full screening
Check bandit_full_equivalence() {
  Check c;
  std::mt19937_64 rng(606);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng() % 498;
    const std::size_t p = 2 + rng() % 199;
    const std::size_t d = 1 + rng() % std::min<std::size_t>(20, p - 1);
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < p; ++j) cols.push_back(testing::distinct_values(n, rng));
    const auto data = DataMatrix::from_columns(cols);
    std::vector<double> yv(n);
    std::normal_distribution<double> normal;
    for (std::size_t i = 0; i < n; ++i) yv[i] = data(i, 0) + data(i, p - 1) + normal(rng);
    const ResponseVector y(yv);
    const SeedSpec seed{static_cast<std::uint64_t>(trial)};
    const auto b = bandit_cr_sis(data, y, BanditConfig{d, 0.0, 1.1, seed});
    const auto f = cr_sis(data, y, ScreenConfig{HardThreshold{d}, seed});
    if (std::set<FeatureIndex>(b.selected.begin(), b.selected.end()) !=
        std::set<FeatureIndex>(f.selected.begin(), f.selected.end())) {
      ++mismatches;
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " of 100 instances differ");
  c.detail << "100 instances, " << mismatches << " mismatches";
  return c;
}

// 7. elimination arithmetic
Check elimination_arithmetic() {
  Check c;
  std::vector<std::size_t> trace{2000};
  while (trace.back() > 20) trace.push_back(median_keep_count(trace.back(), 20));
  const std::vector<std::size_t> expected{2000, 1010, 515, 267, 143, 81, 50, 35, 27, 23, 21, 20};
  c.expect(trace == expected, "median_keep_count recurrence differs");

  // the same trace from a real run
  std::mt19937_64 rng(707);
  std::vector<std::vector<double>> cols;
  for (int j = 0; j < 2000; ++j) cols.push_back(testing::distinct_values(40, rng));
  const auto data = DataMatrix::from_columns(cols);
  const ResponseVector y(testing::distinct_values(40, rng));
  const auto res = bandit_cr_sis(data, y, BanditConfig{20, 0.35, 1.1, {}});
  std::vector<std::size_t> run{2000};
  for (const auto& r : res.trace) run.push_back(r.survivors);
  c.expect(run == expected, "bandit_cr_sis survivor trace differs");

  c.expect(subsample_size(10000, 1.0) == 199, "subsample_size(10000, 1) = " + std::to_string(subsample_size(10000, 1.0)));
  for (std::size_t n : {std::size_t{2}, std::size_t{10}, std::size_t{1000000}}) {
    c.expect(subsample_size(n, 0.0) == n, "subsample_size(" + std::to_string(n) + ", 0) != n");
  }
  c.detail << res.trace.size() << " rounds";
  return c;
}

double median_time(const std::function<void()>& fn, int repeats) {
  std::vector<double> t;
  for (int k = 0; k < repeats; ++k) {
    const auto t0 = Clock::now();
    fn();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

// 8. timing direction
Check timing() {
  Check c;
  {
    const auto sim = simulate(make_model_spec(ModelId::k1a, 100000, 500, SeedSpec{808}));
    const double full = median_time([&] { cr_sis(sim.x, sim.y, ScreenConfig{HardThreshold{20}, {}}); }, 5);
    const double bandit = median_time([&] { bandit_cr_sis(sim.x, sim.y, BanditConfig{20, 0.35, 1.1, {}}); }, 5);
    const double ratio = bandit / full;
    c.expect(ratio < 0.5, "bandit / cr-sis time ratio " + fmt(ratio));
    c.detail << "n=1e5: cr-sis " << fmt(full) << " s, bandit " << fmt(bandit) << " s, ratio " << fmt(ratio) << "; ";
  }
  double previous = 0.0;
  c.detail << "cr-sis along n:";
  for (std::size_t n : {12500u, 25000u, 50000u, 100000u}) {
    const auto sim = simulate(make_model_spec(ModelId::k1a, n, 500, SeedSpec{809}));
    const double t = median_time([&] { cr_sis(sim.x, sim.y, ScreenConfig{HardThreshold{20}, {}}); }, 5);
    c.expect(t > previous, "cr-sis time not increasing at n=" + std::to_string(n));
    c.detail << ' ' << fmt(t);
    previous = t;
  }
  return c;
}

// 9. property suites
Check properties() {
  Check c;
  std::mt19937_64 rng(909);
  std::normal_distribution<double> normal;
  int invariance_breaks = 0;
  int bound_breaks = 0;
  int identity_breaks = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 200;
    std::vector<double> x(n), y(n), x2(n), y2(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(rng);
      y[i] = trial % 2 ? std::round(3.0 * std::cos(x[i]) + normal(rng)) : x[i] * x[i] + normal(rng);
      x2[i] = std::exp(x[i]);
      y2[i] = y[i] * y[i] * y[i] + 2.0;
    }
    const auto yr = compute_y_ranks(y);
    const auto yr2 = compute_y_ranks(y2);
    auto s1 = derive_stream(SeedSpec{}, StreamPurpose::kTieBreak, 0, 0);
    auto s2 = derive_stream(SeedSpec{}, StreamPurpose::kTieBreak, 0, 0);
    const double om = chatterjee_omega(x, yr, s1);
    if (om != chatterjee_omega(x2, yr2, s2)) ++invariance_breaks;
    if (yr.sum_l_term > 0 && chatterjee_xi(x, yr, s1) != chatterjee_xi(x2, yr2, s2)) ++invariance_breaks;
    if (!(om < 0.25 + 1.0 / (2.0 * static_cast<double>(n)))) ++bound_breaks;
    const auto d = testing::distinct_values(n, rng);
    const std::uint64_t nn = n;
    if (6 * compute_y_ranks(d).sum_l_term != nn * nn * nn - nn) ++identity_breaks;
  }
  c.expect(invariance_breaks == 0, std::to_string(invariance_breaks) + " monotone-invariance breaks");
  c.expect(bound_breaks == 0, std::to_string(bound_breaks) + " omega bound breaks");
  c.expect(identity_breaks == 0, std::to_string(identity_breaks) + " denominator identity breaks");

  const std::vector<double> a{1, 2, 3};
  const double dc = distance_correlation_sq(a, std::vector<double>{1, 3, 2});
  const double pe = abs_pearson(a, std::vector<double>{1, 2, 4});
  c.expect(std::abs(dc - 0.7) < 1e-12, "dCor^2 hand case = " + fmt(dc, 17));
  c.expect(std::abs(pe - std::sqrt(27.0 / 28.0)) < 1e-12, "Pearson hand case = " + fmt(pe, 17));

  const auto sim = simulate(make_model_spec(ModelId::k2a, 800, 300, SeedSpec{910}));
  std::vector<FeatureIndex> all(300);
  std::iota(all.begin(), all.end(), FeatureIndex{0});
  const auto base_scores = batch_omega(sim.x, sim.y, all, 800, SeedSpec{3}, 0);
  const auto base_bandit = bandit_cr_sis(sim.x, sim.y, BanditConfig{10, 0.35, 1.1, SeedSpec{3}});
  int thread_breaks = 0;
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4, 8}) {
    omp_set_num_threads(threads);
    if (batch_omega(sim.x, sim.y, all, 800, SeedSpec{3}, 0) != base_scores) ++thread_breaks;
    if (!(bandit_cr_sis(sim.x, sim.y, BanditConfig{10, 0.35, 1.1, SeedSpec{3}}) == base_bandit)) ++thread_breaks;
  }
  omp_set_num_threads(saved);
#endif
  c.expect(thread_breaks == 0, std::to_string(thread_breaks) + " thread-count dependent results");
  c.detail << "500 instances; threads 1,2,4,8";
  return c;
}

}  // namespace

int main() {
  int failed = 0;
  failed += report(1, "oracle equivalence", oracle_equivalence());
  failed += report(2, "closed forms", closed_forms());
  failed += report(3, "Model 1a, CR-SIS and bandit", model_1a());
  failed += report(4, "Model 1b, CR-SIS vs SIS", model_1b());
  failed += report(5, "Models 2c and 2d", models_2c_2d());
  failed += report(6, "bandit with alpha0 = 0 matches CR-SIS", bandit_full_equivalence());
  failed += report(7, "elimination arithmetic", elimination_arithmetic());
  failed += report(8, "timing direction", timing());
  failed += report(9, "property suites", properties());
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
