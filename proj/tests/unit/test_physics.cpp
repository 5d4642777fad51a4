#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "korteweg/error.hpp"
#include "korteweg/physics.hpp"
#include "random_states.hpp"

using namespace korteweg;

TEST(Pressure, QuadraticValues) {
  const PressureModel q = PressureModel::quadratic(9.81 / 2.0);
  EXPECT_DOUBLE_EQ(q.pressure(1.0), 4.905);
  EXPECT_DOUBLE_EQ(q.potential(1.0), 4.905);
  EXPECT_DOUBLE_EQ(PressureModel::quadratic(1.0).derivative(2.0), 4.0);
}

TEST(Pressure, IsothermalValues) {
  const PressureModel m = PressureModel::isothermal(1.0);
  EXPECT_DOUBLE_EQ(m.pressure(1.0), 1.0);
  EXPECT_DOUBLE_EQ(m.potential(1.0), 0.0);
  EXPECT_DOUBLE_EQ(m.potential_derivative(1.0), 1.0);
}

TEST(Pressure, RejectsNonPositiveCoefficient) {
  EXPECT_THROW(PressureModel::quadratic(0.0), ContractError);
  EXPECT_THROW(PressureModel::isothermal(-1.0), ContractError);
  EXPECT_THROW(builtin_pressure(PressureKind::quadratic, -2.0), ContractError);
}

TEST(Pressure, PotentialSolvesDefiningEquation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.01, 10.0);
  for (const PressureModel& m : {PressureModel::quadratic(0.7), PressureModel::isothermal(2.5)}) {
    for (int k = 0; k < 10000; ++k) {
      const double r = d(rng);
      ASSERT_LE(std::abs(m.potential_derivative(r) * r - m.potential(r) - m.pressure(r)),
                1e-10 * (1.0 + std::abs(m.pressure(r))));
      // P' agrees with a central difference of P.
      const double e = 1e-5 * r;
      const double fd = (m.potential(r + e) - m.potential(r - e)) / (2.0 * e);
      ASSERT_NEAR(fd * r - m.potential(r), m.pressure(r), 1e-8 * (1.0 + m.pressure(r)));
      ASSERT_GT(m.derivative(r), 0.0);
    }
  }
}

TEST(Pressure, StringForm) {
  EXPECT_EQ(PressureModel::isothermal(1.0).to_string(), "isothermal:1");
  EXPECT_EQ(PressureModel::quadratic(4.905).to_string(), "quadratic:4.9050000000000002");
}

TEST(Lambda, OneDimensional) {
  const State1D s{Field1D({1.0, 1.0}), Field1D({0.5, -1.5})};
  EXPECT_DOUBLE_EQ(global_lambda(s, PressureModel::isothermal(1.0)), 1.25);
  const State1D rest{Field1D(5, 3.0), Field1D(5, 0.0)};
  EXPECT_DOUBLE_EQ(global_lambda(rest, PressureModel::isothermal(1.0)), 0.5);
}

TEST(Lambda, TwoDimensionalUsesEuclideanSpeed) {
  const State2D s{Field2D(1, 1.0), Field2D(1, 3.0), Field2D(1, 4.0)};
  EXPECT_DOUBLE_EQ(global_lambda(s, PressureModel::isothermal(4.0)), 3.5);
}

TEST(Lambda, PermutationInvariantAndMonotone) {
  std::mt19937_64 rng(17);
  const PressureModel m = PressureModel::quadratic(1.3);
  for (int k = 0; k < 200; ++k) {
    State1D s = korteweg::testing::random_state_1d(rng, 9);
    const double base = global_lambda(s, m);
    State1D p = s;
    std::rotate(p.rho.values().begin(), p.rho.values().begin() + 4, p.rho.values().end());
    std::rotate(p.mom.values().begin(), p.mom.values().begin() + 4, p.mom.values().end());
    EXPECT_DOUBLE_EQ(global_lambda(p, m), base);
    s.mom[3] *= 2.0;
    EXPECT_GE(global_lambda(s, m), base);
  }
}

TEST(Energy, ConstantStates) {
  const Grid1D g(6);
  const State1D rest{Field1D(6, 1.0), Field1D(6, 0.0)};
  EXPECT_DOUBLE_EQ(discrete_energy(rest, PressureModel::isothermal(1.0), 3.0, g).total, 0.0);
  const State1D moving{Field1D(6, 1.0), Field1D(6, 2.0)};
  EXPECT_DOUBLE_EQ(discrete_energy(moving, PressureModel::quadratic(1.0), 0.4, g).total, 3.0);
}

TEST(Energy, TwoCellGradient) {
  // gradient term per cell 1/2 (2)^2 = 2; P = rho^2 gives 1 and 4.
  const State1D s{Field1D({1.0, 2.0}), Field1D({0.0, 0.0})};
  const Energy1D e = discrete_energy(s, PressureModel::quadratic(1.0), 1.0, Grid1D(2));
  EXPECT_DOUBLE_EQ(e.per_cell[0], 3.0);
  EXPECT_DOUBLE_EQ(e.per_cell[1], 6.0);
  EXPECT_DOUBLE_EQ(e.total, 4.5);
}

TEST(Energy, TwoDimensionalReducesToRows) {
  std::mt19937_64 rng(3);
  const std::size_t n = 5;
  const State1D row = korteweg::testing::random_state_1d(rng, n);
  State2D s{Field2D(n), Field2D(n), Field2D(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      s.rho(i, j) = row.rho[i];
      s.mom_x(i, j) = row.mom[i];
    }
  }
  const PressureModel m = PressureModel::isothermal(1.5);
  EXPECT_NEAR(discrete_energy(s, m, 0.3, Grid2D(n)).total, discrete_energy(row, m, 0.3, Grid1D(n)).total, 1e-13);
}

TEST(Energy, ShiftInvariant) {
  std::mt19937_64 rng(21);
  const PressureModel m = PressureModel::quadratic(2.0);
  for (int k = 0; k < 50; ++k) {
    const State1D s = korteweg::testing::random_state_1d(rng, 11);
    State1D p = s;
    std::rotate(p.rho.values().begin(), p.rho.values().begin() + 3, p.rho.values().end());
    std::rotate(p.mom.values().begin(), p.mom.values().begin() + 3, p.mom.values().end());
    EXPECT_NEAR(discrete_energy(s, m, 0.1, Grid1D(11)).total, discrete_energy(p, m, 0.1, Grid1D(11)).total,
                1e-12);
  }
}

TEST(Energy, RejectsNonPositiveDensity) {
  const State1D s{Field1D({1.0, 0.0}), Field1D({0.0, 0.0})};
  EXPECT_THROW(discrete_energy(s, PressureModel::isothermal(1.0), 0.0, Grid1D(2)), PositivityError);
}

TEST(EntropyVariables, ConstantState) {
  const State1D s{Field1D(4, 1.0), Field1D(4, 0.0)};
  const EntropyVariables1D v = entropy_variables(s, PressureModel::isothermal(1.0), 1.0, Grid1D(4));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(v.v_rho[i], 1.0);
    EXPECT_DOUBLE_EQ(v.v_u[i], 0.0);
  }
}

TEST(EntropyVariables, AlternatingDensity) {
  const State1D s{Field1D({2.0, 3.0, 2.0, 3.0}), Field1D(4, 0.0)};
  const EntropyVariables1D v = entropy_variables(s, PressureModel::quadratic(1.0), 1.0, Grid1D(4));
  const double expected[] = {-28.0, 38.0, -28.0, 38.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(v.v_rho[i], expected[i]);
}

TEST(EntropyVariables, NoCapillarityGivesEulerVariables) {
  std::mt19937_64 rng(8);
  const PressureModel m = PressureModel::isothermal(2.0);
  const State1D s = korteweg::testing::random_state_1d(rng, 7);
  const EntropyVariables1D v = entropy_variables(s, m, 0.0, Grid1D(7));
  for (std::size_t i = 0; i < 7; ++i) {
    const double u = s.mom[i] / s.rho[i];
    EXPECT_DOUBLE_EQ(v.v_u[i], u);
    EXPECT_NEAR(v.v_rho[i], m.potential_derivative(s.rho[i]) - 0.5 * u * u, 1e-14);
  }
}

TEST(EntropyVariables, TwoDimensionalIncludesCapillarity) {
  std::mt19937_64 rng(9);
  const std::size_t n = 4;
  const Grid2D g(n);
  const State2D s = korteweg::testing::random_state_2d(rng, n);
  const PressureModel m = PressureModel::quadratic(1.0);
  const EntropyVariables2D v = entropy_variables(s, m, 0.25, g);
  const double h2 = g.h() * g.h();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long a = static_cast<long long>(i), b = static_cast<long long>(j);
      const double lap = (s.rho.at(a + 1, b) + s.rho.at(a - 1, b) + s.rho.at(a, b + 1) + s.rho.at(a, b - 1) -
                          4.0 * s.rho(i, j)) / h2;
      const double u = s.mom_x(i, j) / s.rho(i, j), w = s.mom_y(i, j) / s.rho(i, j);
      EXPECT_NEAR(v.v_rho(i, j), 2.0 * s.rho(i, j) - 0.5 * (u * u + w * w) - 0.25 * lap, 1e-12);
      EXPECT_DOUBLE_EQ(v.v_v(i, j), w);
    }
  }
}

TEST(State, Validation) {
  EXPECT_THROW((State1D{Field1D({1.0, -1.0}), Field1D(2)}.validate()), PositivityError);
  EXPECT_THROW((State1D{Field1D({1.0, NAN}), Field1D(2)}.validate()), ContractError);
  EXPECT_THROW((State1D{Field1D({1.0, 1.0}), Field1D({0.0, INFINITY})}.validate()), ContractError);
  EXPECT_THROW((State1D{Field1D(3, 1.0), Field1D(2)}.validate()), ContractError);
  EXPECT_THROW((SchemeParams{-1.0, 0.0}.validate()), ContractError);
}
