#include <doctest.h>

#include <cmath>

#include "softrgg/error.hpp"
#include "softrgg/montecarlo.hpp"

using namespace srgg;

namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.length = 200.0;
  c.boundary = BoundaryMode::Line;
  c.connection = ConnectionFunction::waxman(1.0);
  c.axis = SweepAxis::MeanDegree;
  c.values = {3.0, 4.0, 5.0, 6.0, 7.0};
  c.trials_per_point = 300;
  c.master_seed = 42;
  c.record = {false, true};
  return c;
}

bool same(const ProportionEstimate& a, const ProportionEstimate& b) {
  return a.successes == b.successes && a.trials == b.trials && a.p == b.p && a.lo == b.lo && a.hi == b.hi;
}

}  // namespace

TEST_CASE("Wilson interval examples") {
  auto [lo0, hi0] = wilson_interval(0, 100);
  CHECK(lo0 == 0.0);
  CHECK(hi0 == doctest::Approx(0.0370).epsilon(1e-3));
  auto [lo, hi] = wilson_interval(50, 100);
  CHECK(0.5 * (lo + hi) == doctest::Approx(0.5));
  CHECK(0.5 * (hi - lo) == doctest::Approx(0.096).epsilon(0.01));
  CHECK(wilson_interval(100, 100).second == 1.0);
  const auto p = estimate_proportion(1000, 2000);
  CHECK(p.half_width() == doctest::Approx(0.022).epsilon(0.02));
  CHECK_THROWS_AS(wilson_interval(5, 4), InvalidParameter);
  CHECK_THROWS_AS(wilson_interval(0, 0), InvalidParameter);
  for (std::uint64_t s = 0; s <= 30; ++s) {
    const auto e = estimate_proportion(s, 30);
    CHECK(e.lo <= e.p);
    CHECK(e.p <= e.hi);
    CHECK(e.lo >= 0.0);
    CHECK(e.hi <= 1.0);
  }
}

TEST_CASE("sweep configuration is validated") {
  auto c = small_config();
  c.values = {};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.values = {2.0, 1.0};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.values = {1.0, 1.0};
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = small_config();
  c.trials_per_point = 0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  CHECK(parse_sweep_axis("link_range") == SweepAxis::LinkRange);
  CHECK_THROWS_AS(parse_sweep_axis("speed"), InvalidParameter);
}

TEST_CASE("point resolution per axis") {
  auto c = small_config();
  const auto p = resolve_point(c, 2);
  CHECK(p.mean_degree == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(mean_degree(p.connection, c.length, c.boundary) == doctest::Approx(5.0).epsilon(1e-8));

  c.axis = SweepAxis::LinkRange;
  c.values = {0.5, 2.0};
  CHECK(resolve_point(c, 1).r_c_used == doctest::Approx(2.0));

  c.axis = SweepAxis::Gamma;
  c.values = {0.5};
  const auto g = resolve_point(c, 0);
  CHECK(g.r_c_used == doctest::Approx(0.5 * std::log(200.0)));
}

TEST_CASE("trials are reproducible and handle empty realizations") {
  auto c = small_config();
  const auto p = resolve_point(c, 0);
  const auto a = run_trial(c, p, 17), b = run_trial(c, p, 17);
  CHECK(a.n_points == b.n_points);
  CHECK(a.n_edges == b.n_edges);
  CHECK(a.diagnosis.gap_indices == b.diagnosis.gap_indices);

  c.length = 0.01;
  c.axis = SweepAxis::LinkRange;
  c.values = {1.0};
  const auto tiny = resolve_point(c, 0);
  bool saw_empty = false;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto o = run_trial(c, tiny, t);
    if (o.n_points == 0) {
      saw_empty = true;
      CHECK(o.diagnosis.is_connected);
      CHECK(o.diagnosis.n_isolated == 0);
      CHECK(o.diagnosis.n_uncrossed_gaps == 0);
    }
  }
  CHECK(saw_empty);
}

TEST_CASE("hard trials disconnect exactly at uncrossed gaps") {
  auto c = small_config();
  c.connection = ConnectionFunction::hard(1.0);
  c.record = {false, false};
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    const auto p = resolve_point(c, i);
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto d = run_trial(c, p, t).diagnosis;
      REQUIRE(d.is_connected == (d.n_uncrossed_gaps == 0));
    }
  }
}

TEST_CASE("sweep results do not depend on the worker count") {
  const auto c = small_config();
  const auto one = run_sweep(c, 1);
  const auto eight = run_sweep(c, 8);
  REQUIRE(one.points.size() == eight.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    const auto& a = one.points[i].empirical;
    const auto& b = eight.points[i].empirical;
    CHECK(same(a.p_dis, b.p_dis));
    CHECK(same(a.p_iso, b.p_iso));
    CHECK(same(a.p_ucg, b.p_ucg));
    CHECK(same(a.p_iso_or_ucg, b.p_iso_or_ucg));
    CHECK(a.mean_n_iso == b.mean_n_iso);
    CHECK(a.var_n_iso == b.var_n_iso);
    CHECK(one.points[i].n_iso_per_trial == eight.points[i].n_iso_per_trial);
  }
}

TEST_CASE("aggregation invariants") {
  const auto r = run_sweep(small_config(), 2);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& e = r.points[i].empirical;
    CHECK(e.p_iso_or_ucg.successes <= e.p_iso.successes + e.p_ucg.successes);
    CHECK(e.p_iso_or_ucg.successes >= std::max(e.p_iso.successes, e.p_ucg.successes));
    CHECK(e.disconnected_multi_node >= e.isolated_multi_node);
    for (const auto* p : {&e.p_dis, &e.p_iso, &e.p_ucg, &e.p_iso_or_ucg, &e.p_split}) {
      CHECK(p->p >= 0.0);
      CHECK(p->p <= 1.0);
    }
    // Unbiased variance recomputed from the stored per-trial counts.
    double m = 0.0, s = 0.0;
    for (auto v : r.points[i].n_iso_per_trial) m += v;
    m /= r.points[i].n_iso_per_trial.size();
    for (auto v : r.points[i].n_iso_per_trial) s += (v - m) * (v - m);
    CHECK(e.mean_n_iso == doctest::Approx(m));
    CHECK(e.var_n_iso == doctest::Approx(s / (r.points[i].n_iso_per_trial.size() - 1)));
    if (i > 0) {
      const auto& prev = r.points[i - 1].empirical;
      CHECK(e.p_dis.p <= prev.p_dis.p + prev.p_dis.half_width() + e.p_dis.half_width());
      CHECK(e.p_iso.p <= prev.p_iso.p + prev.p_iso.half_width() + e.p_iso.half_width());
      CHECK(e.p_ucg.p <= prev.p_ucg.p + prev.p_ucg.half_width() + e.p_ucg.half_width());
    }
  }
}

TEST_CASE("infeasible points are recorded and the sweep continues") {
  auto c = small_config();
  c.connection = ConnectionFunction::waxman(1.0, 0.01);
  c.values = {1.0, 5.0};
  c.trials_per_point = 10;
  const auto r = run_sweep(c, 1);
  CHECK_FALSE(r.points[0].error.has_value());
  REQUIRE(r.points[1].error.has_value());
}

TEST_CASE("mean isolated count at the threshold on the torus") {
  SweepConfig c;
  c.length = 1000.0;
  c.boundary = BoundaryMode::Torus;
  c.values = {std::log(1000.0)};
  c.trials_per_point = 3000;
  c.master_seed = 5;
  c.record = {false, false};
  const auto r = run_sweep(c, 1);
  const auto& p = r.points[0];
  CHECK(p.theory.expected_isolated == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(p.empirical.mean_n_iso - 1.0) < 3 * p.empirical.se_mean_n_iso);
}

TEST_CASE("Poisson comparison table") {
  SweepConfig c;
  c.length = 300.0;
  c.boundary = BoundaryMode::Torus;
  c.values = {2.0, std::log(300.0), 14.0};
  c.trials_per_point = 1000;
  c.record = {false, false};
  const auto rows = compare_theory(run_sweep(c, 1));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].poisson_p_iso == doctest::Approx(1.0));
  CHECK(rows[0].abs_gap < 0.01);
  CHECK(rows[2].abs_gap < 0.01);
  CHECK(rows[1].poisson_p_iso == doctest::Approx(1 - std::exp(-1.0)));
  for (const auto& row : rows) CHECK(row.abs_gap == doctest::Approx(std::abs(row.empirical_p_iso - row.poisson_p_iso)));
}
