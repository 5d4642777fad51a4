#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "korteweg/error.hpp"
#include "korteweg/time_integration.hpp"
#include "random_states.hpp"

using namespace korteweg;

namespace {

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

State1D smooth_state_1d(std::size_t n) {
  const Grid1D g(n);
  State1D s{Field1D(n), Field1D(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * std::numbers::pi * g.center(i);
    s.rho[i] = 1.0 + 0.3 * std::sin(x);
    s.mom[i] = 0.2 * std::cos(x) * s.rho[i];
  }
  return s;
}

State2D smooth_state_2d(std::size_t n) {
  const Grid2D g(n);
  State2D s{Field2D(n), Field2D(n), Field2D(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 2.0 * std::numbers::pi * g.center(i), y = 2.0 * std::numbers::pi * g.center(j);
      s.rho(i, j) = 1.0 + 0.25 * std::sin(x) * std::cos(y);
      s.mom_x(i, j) = 0.1 * std::cos(y);
      s.mom_y(i, j) = -0.15 * std::sin(x + y);
    }
  }
  return s;
}

}  // namespace

TEST(ComputeDt, Examples) {
  EXPECT_NEAR(compute_dt(2.0, 1.0, 4.0, 6.0, 0.7), 0.7 / 12.0, 1e-15);
  EXPECT_NEAR(compute_dt(1.0, 0.1, 0.01, 0.001, 0.7), 0.7 / 12.0, 1e-15);
  EXPECT_NEAR(compute_dt(1.0, 0.01, 0.0, 0.0, 0.7), 0.007, 1e-15);
  // Pure capillarity scaling: dt ~ h^3.
  EXPECT_NEAR(compute_dt(0.0, 0.1, 0.0, 1.0, 1.0), 1e-3, 1e-15);
  // Only alpha differs: the step ratio is the alpha ratio.
  EXPECT_NEAR(compute_dt(1.3, 0.02, 0.01, 0.001, 20.0) / compute_dt(1.3, 0.02, 0.01, 0.001, 0.7), 20.0 / 0.7, 1e-13);
}

TEST(ComputeDt, FromStateAndSystem) {
  const Grid1D g(10);
  const State1D s{Field1D(10, 1.0), Field1D(10, 0.0)};
  const SchemeParams p{0.01, 0.02};
  const PressureModel m = PressureModel::isothermal(1.0);
  // lambda = 1/2, h = 0.1: rate = 5 + 2 + 10 = 17.
  EXPECT_NEAR(compute_dt(s, m, p, g, 0.7), 0.7 / 17.0, 1e-15);
  const Scheme1D scheme(m, p, g);
  EXPECT_NEAR(compute_dt(scheme, scheme.pack(s), 0.7), 0.7 / 17.0, 1e-15);
}

TEST(ComputeDt, Contracts) {
  EXPECT_THROW(compute_dt(0.0, 0.1, 0.0, 0.0, 0.7), ContractError);
  EXPECT_THROW(compute_dt(1.0, 0.0, 0.0, 0.0, 0.7), ContractError);
  EXPECT_THROW(compute_dt(1.0, 0.1, -1.0, 0.0, 0.7), ContractError);
  EXPECT_THROW(compute_dt(1.0, 0.1, 0.0, 0.0, 0.0), ContractError);
}

TEST(TimeParams, DefaultsAndValidation) {
  EXPECT_EQ(TimeParams::default_alpha(Integrator::explicit_euler), 0.7);
  EXPECT_EQ(TimeParams::default_alpha(Integrator::implicit_euler), 20.0);
  TimeParams t;
  EXPECT_NO_THROW(t.validate());
  t.t_end = -1.0;
  EXPECT_THROW(t.validate(), ContractError);
  t.t_end = 1.0;
  t.newton.max_iter = 0;
  EXPECT_THROW(t.validate(), ContractError);
}

TEST(StepExplicit, ConstantStateIsFixed) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.1, 0.1}, Grid1D(8));
  const std::vector<double> w = scheme.pack(State1D{Field1D(8, 1.4), Field1D(8, 0.0)});
  EXPECT_EQ(step_explicit(scheme, w, 0.01, nullptr, 0.0), w);
}

TEST(StepExplicit, ZeroStepIsIdentity) {
  std::mt19937_64 rng(3);
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(9));
  const std::vector<double> w = scheme.pack(korteweg::testing::random_state_1d(rng, 9));
  EXPECT_EQ(step_explicit(scheme, w, 0.0, nullptr, 0.0), w);
}

TEST(StepExplicit, EqualsStatePlusDtTimesRhs) {
  std::mt19937_64 rng(5);
  const Grid1D g(7);
  const State1D s = korteweg::testing::random_state_1d(rng, 7);
  const PressureModel m = PressureModel::quadratic(0.5);
  const SchemeParams p{0.02, 0.05};
  const Scheme1D scheme(m, p, g);
  const double dt = 1e-4;
  const std::vector<double> next = step_explicit(scheme, scheme.pack(s), dt, nullptr, 0.0);
  const Rhs1D r = rhs_1d(s, m, p, g);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_NEAR(next[i], s.rho[i] + dt * r.d_rho[i], 1e-15);
    EXPECT_NEAR(next[7 + i], s.mom[i] + dt * r.d_mom[i], 1e-14);
  }
}

TEST(StepExplicit, ForcingEvaluatedAtStartOfStep) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{}, Grid1D(4));
  const std::vector<double> w = scheme.pack(State1D{Field1D(4, 1.0), Field1D(4, 0.0)});
  double seen = -1.0;
  const Forcing f = [&](double t, std::span<double> out) {
    seen = t;
    std::fill(out.begin(), out.end(), 2.0);
  };
  const std::vector<double> next = step_explicit(scheme, w, 0.25, &f, 0.5);
  EXPECT_EQ(seen, 0.5);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(next[k], 1.5);
  for (std::size_t k = 4; k < 8; ++k) EXPECT_DOUBLE_EQ(next[k], 0.5);
}

TEST(StepExplicit, RejectsNegativeDensity) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{}, Grid1D(4));
  const std::vector<double> w = scheme.pack(State1D{Field1D({1.0, 0.1, 1.0, 1.0}), Field1D({1.0, 0.0, -1.0, 0.0})});
  EXPECT_THROW(step_explicit(scheme, w, 10.0, nullptr, 0.0), PositivityError);
  EXPECT_THROW(step_explicit(scheme, w, -1.0, nullptr, 0.0), ContractError);
}

TEST(StepImplicit, ZeroStepIsIdentity) {
  std::mt19937_64 rng(7);
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(9));
  const std::vector<double> w = scheme.pack(korteweg::testing::random_state_1d(rng, 9));
  NewtonReport rep{-1, -1.0};
  EXPECT_EQ(step_implicit(scheme, w, 0.0, nullptr, 0.0, {}, &rep), w);
  EXPECT_EQ(rep.iterations, 0);
}

TEST(StepImplicit, SteadyStateConvergesImmediately) {
  const Scheme2D scheme(PressureModel::isothermal(1.0), SchemeParams{0.1, 0.1}, Grid2D(6));
  const std::vector<double> w = scheme.pack(State2D{Field2D(6, 0.8), Field2D(6, 0.0), Field2D(6, 0.0)});
  NewtonReport rep;
  const std::vector<double> next = step_implicit(scheme, w, 0.5, nullptr, 0.5, {}, &rep);
  EXPECT_LE(rep.iterations, 1);
  EXPECT_LE(max_diff(next, w), 1e-12);
}

TEST(StepImplicit, SolvesTheImplicitEquation) {
  for (int dim : {1, 2}) {
    std::unique_ptr<SemiDiscreteSystem> scheme;
    std::vector<double> w;
    if (dim == 1) {
      auto s = std::make_unique<Scheme1D>(PressureModel::quadratic(1.0), SchemeParams{0.001, 0.01}, Grid1D(32));
      w = s->pack(smooth_state_1d(32));
      scheme = std::move(s);
    } else {
      auto s = std::make_unique<Scheme2D>(PressureModel::isothermal(1.0), SchemeParams{0.001, 0.01}, Grid2D(12));
      w = s->pack(smooth_state_2d(12));
      scheme = std::move(s);
    }
    const double dt = compute_dt(*scheme, w, 20.0);
    NewtonReport rep;
    const std::vector<double> next = step_implicit(*scheme, w, dt, nullptr, dt, {}, &rep);
    std::vector<double> f(w.size());
    scheme->rhs(next, f);
    double res = 0.0, wmax = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      res = std::max(res, std::abs(next[k] - w[k] - dt * f[k]));
      wmax = std::max(wmax, std::abs(w[k]));
    }
    EXPECT_LE(res, 1e-10 * (1.0 + wmax)) << "dim " << dim;
    EXPECT_GE(rep.iterations, 1);
    EXPECT_LE(rep.iterations, 10);
  }
}

TEST(StepImplicit, AgreesWithExplicitToSecondOrderPerStep) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(24));
  const std::vector<double> w = scheme.pack(smooth_state_1d(24));
  const NewtonParams tight{50, 1e-14, 1e-15};
  double prev = 0.0;
  std::vector<double> ratios;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    const double d = max_diff(step_implicit(scheme, w, dt, nullptr, dt, tight),
                              step_explicit(scheme, w, dt, nullptr, 0.0));
    if (prev > 0.0) ratios.push_back(prev / d);
    prev = d;
  }
  for (double r : ratios) EXPECT_NEAR(r, 4.0, 0.3);
}

TEST(StepImplicit, ForcingEvaluatedAtEndOfStep) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{}, Grid1D(4));
  const std::vector<double> w = scheme.pack(State1D{Field1D(4, 1.0), Field1D(4, 0.0)});
  double seen = -1.0;
  const Forcing f = [&](double t, std::span<double> out) {
    seen = t;
    std::fill(out.begin(), out.begin() + 4, 1.0);
    std::fill(out.begin() + 4, out.end(), 0.0);
  };
  const std::vector<double> next = step_implicit(scheme, w, 0.1, &f, 0.7);
  EXPECT_EQ(seen, 0.7);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(next[k], 1.1, 1e-12);
}

TEST(ImplicitEulerSolver, ColouringIsIndependentOfGridSize) {
  for (std::size_t n : {16u, 64u}) {
    const Scheme1D s1(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(n));
    EXPECT_LE(ImplicitEulerSolver(s1).colors(), 2u * 10u) << n;
    const Scheme2D s2(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid2D(n));
    EXPECT_LE(ImplicitEulerSolver(s2).colors(), 3u * 60u) << n;
  }
}

TEST(ImplicitEulerSolver, ReportsFailureAsConvergenceError) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(16));
  const std::vector<double> w = scheme.pack(smooth_state_1d(16));
  ImplicitEulerSolver solver(scheme, NewtonParams{1, 1e-300, 1e-300});
  EXPECT_THROW(solver.step(w, 0.05, nullptr, 0.05), ConvergenceError);
}

TEST(Integrate, ZeroEndTime) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(8));
  TimeParams t;
  t.t_end = 0.0;
  const std::vector<double> w = scheme.pack(smooth_state_1d(8));
  const IntegrationResult r = integrate(scheme, w, t);
  EXPECT_EQ(r.steps, 0u);
  EXPECT_EQ(r.state, w);
  ASSERT_EQ(r.record.rows.size(), 1u);
  EXPECT_EQ(r.record.rows[0].t, 0.0);
}

TEST(Integrate, LandsExactlyOnEndTime) {
  const Scheme1D scheme(PressureModel::isothermal(1.0), SchemeParams{0.01, 0.01}, Grid1D(16));
  TimeParams t;
  t.t_end = 0.013;
  std::size_t calls = 0;
  IntegrationOptions opt;
  opt.on_step = [&](const StepInfo& info) {
    EXPECT_EQ(info.step, calls);
    ++calls;
  };
  opt.record_every = 1000;
  const IntegrationResult r = integrate(scheme, scheme.pack(smooth_state_1d(16)), t, opt);
  EXPECT_EQ(r.t, 0.013);
  EXPECT_EQ(calls, r.steps + 1);
  ASSERT_EQ(r.record.rows.size(), 2u);
  EXPECT_EQ(r.record.rows.back().t, 0.013);
  EXPECT_GT(r.record.rows.back().dt, 0.0);
  // Every step obeys the CFL bound.
  const double h = 1.0 / 16.0;
  const double dt_max = 0.7 / (0.5 / h + 0.01 / (h * h) + 0.01 / (h * h * h));
  EXPECT_GE(static_cast<double>(r.steps), 0.013 / (1.2 * dt_max));
}

TEST(Integrate, ConservesMassAndMomentum) {
  for (Integrator integ : {Integrator::explicit_euler, Integrator::implicit_euler}) {
    const Scheme2D scheme(PressureModel::isothermal(1.0), SchemeParams{0.001, 0.01}, Grid2D(10));
    TimeParams t;
    t.integrator = integ;
    t.alpha = TimeParams::default_alpha(integ);
    t.t_end = 0.05;
    const IntegrationResult r = integrate(scheme, scheme.pack(smooth_state_2d(10)), t);
    const auto& first = r.record.rows.front();
    for (const auto& row : r.record.rows) {
      EXPECT_NEAR(row.mass, first.mass, 1e-9);
      EXPECT_NEAR(row.momentum[0], first.momentum[0], 1e-9);
      EXPECT_NEAR(row.momentum[1], first.momentum[1], 1e-9);
    }
    EXPECT_GT(r.steps, 0u);
  }
}

TEST(Integrate, EnergyDecaysForExplicitSmoothFlow) {
  const Scheme1D scheme(PressureModel::quadratic(1.0), SchemeParams{0.001, 0.01}, Grid1D(64));
  TimeParams t;
  t.t_end = 0.1;
  const IntegrationResult r = integrate(scheme, scheme.pack(smooth_state_1d(64)), t);
  for (std::size_t k = 1; k < r.record.rows.size(); ++k) {
    EXPECT_LE(r.record.rows[k].energy, r.record.rows[k - 1].energy + 1e-12);
  }
}
