#include <doctest.h>

#include <cmath>

#include "support/reference.hpp"
#include "tdjcm/algebra.hpp"
#include "tdjcm/oracle.hpp"
#include "tdjcm/states.hpp"

using namespace tdjcm;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

QuantumState random_state(testref::Rng& rng, int n_max) {
  QuantumState st;
  st.n_max = n_max;
  st.u.resize(n_max + 1);
  st.v.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    st.u[n] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    st.v[n] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  }
  const double nn = std::sqrt(st.norm_sq());
  for (auto& a : st.u) a /= nn;
  for (auto& a : st.v) a /= nn;
  return st;
}

// Poisson tail beyond N, summed in long double
double poisson_tail(double n_bar, int n_max) {
  long double w = std::exp((long double)-n_bar);
  long double cum = w;
  for (int n = 1; n <= n_max; ++n) {
    w *= n_bar / n;
    cum += w;
  }
  return (double)(1.0L - cum);
}
}  // namespace

TEST_SUITE_BEGIN("states");

TEST_CASE("number-state construction") {
  const QuantumState st = make_number_state(3, 1.0, 0.0, 5);
  CHECK(st.u[3] == cplx(1.0));
  CHECK(st.norm_sq() == doctest::Approx(1.0));
  const QuantumState low = make_number_state(0, 0.0, 1.0, 2);
  CHECK(low.v[0] == cplx(1.0));
  const QuantumState sup = make_number_state(1, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 4);
  CHECK(sup.norm_sq() == doctest::Approx(1.0));
  CHECK(inversion(sup) == doctest::Approx(0.0));

  CHECK_THROWS_AS(make_number_state(3, 1.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_number_state(1, 0.9, 0.1, 4), std::invalid_argument);
}

TEST_CASE("coherent-state construction") {
  const QuantumState st = make_coherent_state(10.0, true, 1e-12);
  CHECK(st.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.n_max >= 35);
  CHECK(st.n_max <= 46);
  CHECK(poisson_tail(10.0, st.n_max) < 1e-12);
  CHECK(poisson_tail(10.0, st.n_max - 1) >= 1e-12);  // smallest such cut
  for (const cplx& a : st.u) {
    CHECK(a.imag() == 0.0);
    CHECK(a.real() >= 0.0);
  }

  const QuantumState weak = make_coherent_state(0.01, true, 1e-12);
  CHECK(std::norm(weak.u[0]) == doctest::Approx(std::exp(-0.01)).epsilon(1e-10));

  const QuantumState ground = make_coherent_state(2.0, false, 1e-10);
  CHECK(inversion(ground) == doctest::Approx(-1.0));
}

TEST_CASE("inversion extremes") {
  CHECK(inversion(make_number_state(2, 1.0, 0.0, 4)) == doctest::Approx(1.0));
  CHECK(inversion(make_number_state(2, 0.0, 1.0, 4)) == doctest::Approx(-1.0));
}

TEST_CASE("evolve: identity, low states, full transfer") {
  const ModelSpec model = make_standard_jcm(1.0, 1.8);
  const PulseParams pulse{2.0, 1.0, -9.0};

  SUBCASE("identity at t0") {
    testref::Rng rng(5);
    const QuantumState st0 = random_state(rng, 4);
    const QuantumState ev = evolve(model, pulse, st0, -9.0);
    for (int n = 0; n <= 4; ++n) {
      CHECK(std::abs(ev.u[n] - st0.u[n]) < 1e-12);
      CHECK(std::abs(ev.v[n] - st0.v[n]) < 1e-12);
    }
  }

  SUBCASE("low state phase only") {
    const QuantumState st0 = make_number_state(0, 0.0, 1.0, 2);
    const QuantumState ev = evolve(model, pulse, st0, 3.0);
    CHECK(std::abs(std::abs(ev.v[0]) - 1.0) < 1e-12);
    const cplx want = std::exp(cplx(0.0, 0.5 * 1.8 * 12.0));  // -(r(0)-s(0)) dt
    CHECK(std::abs(ev.v[0] - want) < 1e-12);
  }

  SUBCASE("resonant full-pulse population transfer |3,up> -> |4,down>") {
    const ModelSpec res = make_standard_jcm(1.0, 1.0);
    const PulseParams full{1.2, 1.0, -60.0};
    const QuantumState st0 = make_number_state(3, 1.0, 0.0, 3);
    const QuantumState ev = evolve(res, full, st0, 60.0);
    REQUIRE(ev.n_max == 4);  // grows by m
    const double want = std::pow(std::sin(2.0 * kPi * 1.2 * 2.0), 2);
    CHECK(std::norm(ev.v[4]) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("engine equivalence on random states") {
  testref::Rng rng(909090);
  const OdeSettings st{1e-10, 1e-12, 4'000'000};
  for (int trial = 0; trial < 12; ++trial) {
    const ModelSpec model = make_standard_jcm(1.0, 1.0 + rng.uniform(-4.0, 4.0));
    const PulseParams pulse{rng.uniform(0.2, 10.0), 1.0, -10.0};
    const QuantumState st0 = random_state(rng, 8);
    const double t = -10.0 + rng.uniform(0.0, 40.0);
    const QuantumState a = evolve(model, pulse, st0, t, Engine::analytic);
    const QuantumState o = evolve(model, pulse, st0, t, Engine::ode, &st);
    REQUIRE(a.n_max == o.n_max);
    for (int n = 0; n <= a.n_max; ++n) {
      CHECK(std::abs(a.u[n] - o.u[n]) < 1e-7);
      CHECK(std::abs(a.v[n] - o.v[n]) < 1e-7);
    }
  }
}

TEST_CASE("analytic engine conserves norm and subspace probabilities") {
  testref::Rng rng(1618);
  for (int trial = 0; trial < 8; ++trial) {
    const ModelSpec model = make_standard_jcm(1.0, 1.0 + rng.uniform(-2.0, 2.0));
    const PulseParams pulse{rng.uniform(0.2, 8.0), 1.0, -10.0};
    const QuantumState st0 = random_state(rng, 7);
    const QuantumState ev = evolve(model, pulse, st0, rng.uniform(-9.0, 25.0));
    CHECK(std::abs(ev.norm_sq() - 1.0) < 1e-9);
    for (int delta = 1; delta <= 8; ++delta) {
      const double before =
          std::norm(st0.u[delta - 1]) + ((delta <= 7) ? std::norm(st0.v[delta]) : 0.0);
      const double after = std::norm(ev.u[delta - 1]) + std::norm(ev.v[delta]);
      CHECK(std::abs(after - before) < 1e-9);
    }
  }
}

TEST_CASE("general inversion formula equals evolve-and-measure") {
  testref::Rng rng(271828);
  for (int trial = 0; trial < 6; ++trial) {
    const ModelSpec model = make_standard_jcm(1.0, 1.0 + rng.uniform(-2.0, 2.0));
    const PulseParams pulse{rng.uniform(0.3, 6.0), 1.0, -10.0};
    const QuantumState st0 = random_state(rng, 5);
    std::vector<double> times;
    for (double t = -10.0; t <= 20.0; t += 2.4) times.push_back(t);
    const TimeSeries ts = inversion_series_general(model, pulse, st0, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double direct = inversion(evolve(model, pulse, st0, times[k]));
      CHECK(std::abs(ts.values[k] - direct) < 1e-9);
    }
  }
  // degenerate cases from the operation contract
  const ModelSpec model = make_standard_jcm(1.0, 1.3);
  const PulseParams pulse{2.0, 1.0, -8.0};
  const QuantumState low = make_number_state(0, 0.0, 1.0, 3);
  const TimeSeries ts = inversion_series_general(model, pulse, low, {-8.0, 0.0, 5.0});
  for (double v : ts.values) CHECK(v == doctest::Approx(-1.0));

  // lambda0 = 0 freezes populations even with u-v cross terms present
  QuantumState cross;
  cross.n_max = 3;
  cross.u.assign(4, cplx(0.0));
  cross.v.assign(4, cplx(0.0));
  cross.u[2] = std::sqrt(0.5);
  cross.v[3] = cplx(0.0, std::sqrt(0.5));
  const PulseParams off{0.0, 1.0, -8.0};
  const TimeSeries flat = inversion_series_general(model, off, cross, {-8.0, 1.0, 9.0});
  for (double v : flat.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("number-state inversion series") {
  const ModelSpec model = make_standard_jcm(1.0, 1.0);
  SUBCASE("no coupling, excited atom: constant +1") {
    const PulseParams off{0.0, 1.0, -10.0};
    const TimeSeries ts = inversion_series_number(model, off, 3, 1.0, {-10.0, 0.0, 10.0});
    for (double v : ts.values) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("ground atom in the vacuum: constant -1 (low state)") {
    const PulseParams pulse{4.0, 1.0, -10.0};
    const TimeSeries ts = inversion_series_number(model, pulse, 0, 0.0, {-10.0, 0.0, 10.0});
    for (double v : ts.values) CHECK(v == doctest::Approx(-1.0));
  }
  SUBCASE("resonance closed form: 1 - 2 sin^2(sqrt(n+1) Theta)") {
    const PulseParams pulse{5.0, 1.0, -10.0};
    std::vector<double> times;
    for (double t = -10.0; t <= 20.0; t += 0.37) times.push_back(t);
    const TimeSeries ts = inversion_series_number(model, pulse, 3, 1.0, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double want =
          1.0 - 2.0 * std::pow(std::sin(2.0 * pulse_area(pulse, times[k])), 2);
      CHECK(std::abs(ts.values[k] - want) < 1e-9);
    }
    // matches evolve-and-measure as well (no cross terms for a number state)
    const QuantumState st0 = make_number_state(3, 1.0, 0.0, 3);
    for (std::size_t k = 0; k < times.size(); k += 10) {
      const double direct = inversion(evolve(model, pulse, st0, times[k]));
      CHECK(std::abs(ts.values[k] - direct) < 1e-9);
    }
    // levelling out once sech(t/2tau) has truly died off
    const TimeSeries tail =
        inversion_series_number(model, pulse, 3, 1.0, {34.0, 34.5, 35.0});
    CHECK(std::abs(tail.values[2] - tail.values[0]) < 1e-6);
  }
  SUBCASE("contract violations") {
    const ModelSpec m2 = make_kerr_jcm(1.0, 2.0, 0.0, 2);
    const PulseParams pulse{1.0, 1.0, -5.0};
    CHECK_THROWS_AS(inversion_series_number(m2, pulse, 1, 1.0, {0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(inversion_series_number(model, pulse, 1, 1.0, {1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(inversion_series_number(model, pulse, 1, 1.0, {-20.0, 0.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("coherent-state inversion series") {
  const ModelSpec model = make_standard_jcm(1.0, 1.0);
  SUBCASE("no coupling: constant +1") {
    const PulseParams off{0.0, 1.0, -10.0};
    const TimeSeries ts =
        inversion_series_coherent(model, off, 10.0, {-10.0, 0.0, 10.0}, 1e-12);
    for (double v : ts.values) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("matches evolve-and-measure") {
    const PulseParams pulse{5.0, 1.0, -10.0};
    std::vector<double> times{-9.0, -5.0, -2.0, 0.0, 0.9, 1.5, 3.0, 8.0};
    const TimeSeries ts = inversion_series_coherent(model, pulse, 10.0, times, 1e-12);
    const QuantumState st0 = make_coherent_state(10.0, true, 1e-12);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double direct = inversion(evolve(model, pulse, st0, times[k]));
      CHECK(std::abs(ts.values[k] - direct) < 1e-8);
    }
  }
  SUBCASE("rejects m != 1") {
    const ModelSpec m2 = make_kerr_jcm(1.0, 2.0, 0.0, 2);
    CHECK_THROWS_AS(
        inversion_series_coherent(m2, PulseParams{1, 1, -5}, 5.0, {0.0, 1.0}, 1e-12),
        std::invalid_argument);
  }
}

TEST_CASE("evolve-based series agrees with the closed forms and the ode engine") {
  const ModelSpec model = make_standard_jcm(1.0, 1.5);
  const PulseParams pulse{3.0, 1.0, -10.0};
  std::vector<double> times{-10.0, -4.0, -1.0, 0.5, 2.0, 7.0};
  const QuantumState st0 = make_number_state(2, std::sqrt(0.7), std::sqrt(0.3), 4);
  const TimeSeries an =
      inversion_series_state(model, pulse, st0, times, Engine::analytic);
  const TimeSeries gen = inversion_series_general(model, pulse, st0, times);
  const OdeSettings st{1e-10, 1e-12, 4'000'000};
  const TimeSeries od =
      inversion_series_state(model, pulse, st0, times, Engine::ode, &st);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(an.values[k] - gen.values[k]) < 1e-10);
    CHECK(std::abs(an.values[k] - od.values[k]) < 1e-7);
    const double direct = inversion(evolve(model, pulse, st0, times[k]));
    CHECK(std::abs(an.values[k] - direct) < 1e-12);
  }
}

TEST_CASE("evolve matches direct integration of the full Schroedinger equation") {
  // third route: integrate i d/dt (u_n, v_{n+m}) with the raw matrix elements
  // of the Hamiltonian (diagonal energies included, no interaction picture),
  // which checks the assembled phase factors, not just the populations
  testref::Rng rng(60601);
  for (const ModelSpec& model :
       {make_standard_jcm(1.0, 1.7), make_kerr_jcm(1.0, 2.3, 0.04, 2)}) {
    const PulseParams pulse{2.5, 1.0, -8.0};
    const int n_max = 5;
    QuantumState st0 = random_state(rng, n_max);
    for (double t : {-3.0, 1.2, 9.0}) {
      const QuantumState ev = evolve(model, pulse, st0, t);
      const OdeSettings st{1e-11, 1e-13, 8'000'000};
      const int m = model.m;
      for (int n = 0; n <= n_max; ++n) {
        const int delta = n + m;
        const double e_up = model.r(n) + model.s(n);
        const double e_dn = model.r(delta) - model.s(delta);
        const double g0 = pulse.lambda0 * std::sqrt(model.chi(delta));
        auto rhs = [&](double tt, const ode::Vec2& y, ode::Vec2& dy) {
          const double g = g0 / std::cosh(tt / (2.0 * pulse.tau));
          dy[0] = cplx(0.0, -1.0) * (e_up * y[0] + g * y[1]);
          dy[1] = cplx(0.0, -1.0) * (g * y[0] + e_dn * y[1]);
        };
        ode::Vec2 y{st0.u[n], (delta <= n_max) ? st0.v[delta] : cplx(0.0)};
        y = ode::integrate_rk45(rhs, y, pulse.t0, t, st);
        CHECK(std::abs(ev.u[n] - y[0]) < 1e-7);
        CHECK(std::abs(ev.v[delta] - y[1]) < 1e-7);
      }
      // one-dimensional low states: bare phase of the diagonal energy
      for (int l = 0; l < m; ++l) {
        const cplx want =
            std::exp(cplx(0.0, -(model.r(l) - model.s(l)) * (t - pulse.t0))) * st0.v[l];
        CHECK(std::abs(ev.v[l] - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("detuning suppresses the Rabi oscillation amplitude (fig-1 subspace)") {
  // single subspace Delta = 4, lambda0 tau = 5: max_t |f|^2 non-increasing in |delta_eff|
  const PulseParams pulse{5.0, 1.0, -10.0};
  double prev = 2.0;
  for (double dbt : {0.0, 0.25, 0.5, 1.0}) {
    const ModelSpec model = make_standard_jcm(1.0, 1.0 + 2.0 * dbt);
    SubspaceTrajectory traj(model, pulse, 4);
    double peak = 0.0;
    for (double t = -10.0; t <= 20.0; t += 5e-4)
      peak = std::max(peak, std::norm(traj.at(t).f));
    CHECK(peak <= prev + 1e-9);
    prev = peak;
  }
}

TEST_SUITE_END();
