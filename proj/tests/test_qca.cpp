#include "dotsim/qca.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace dotsim;
using namespace dotsim::qca;

double ket_norm2(const CellKet& k) {
    double s = 0.0;
    for (const auto& c : k) {
        s += std::norm(c);
    }
    return s;
}

TEST(CellKet, HalfCouplingUnitDecay) {
    const auto k = cell_ket(CellState{{1.0, 0.0}, {0.0, 0.0}, 0.5, 1.0});
    // w = ½e^{-1}
    EXPECT_NEAR(std::norm(k[TT]), 0.18393972058572117, 1e-15);
    EXPECT_NEAR(k[TT].real(), 0.4288819424803534, 1e-15);
    EXPECT_NEAR(k[TB].real(), 0.9033605478513431, 1e-15);
    EXPECT_EQ(k[BT], complex(0.0, 0.0));
    EXPECT_EQ(k[BB], complex(0.0, 0.0));
}

TEST(CellKet, FullyCoupledLimit) {
    const complex top(0.6, 0.0), bottom(0.0, 0.8);
    const auto k = cell_ket(CellState{top, bottom, 1.0, 3.0});
    EXPECT_EQ(k[TT], complex(0.0, 0.0));
    EXPECT_EQ(k[BB], complex(0.0, 0.0));
    EXPECT_EQ(k[TB], top);
    EXPECT_EQ(k[BT], bottom);
    EXPECT_EQ(polarization(CellState{top, bottom, 1.0, 3.0}), std::norm(top) - std::norm(bottom));
}

TEST(CellKet, DecoupledCellHasEqualWeights) {
    const auto k = cell_ket(CellState{{1.0, 0.0}, {0.0, 0.0}, 0.0, 1.0});
    EXPECT_NEAR(std::abs(k[TT]), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(k[TB]), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(polarization(CellState{{1.0, 0.0}, {0.0, 0.0}, 0.0, 1.0}), 0.0);
}

TEST(CellKet, NormalizedAndFactorizedForRandomCells) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g;
    for (int i = 0; i < 10000; ++i) {
        complex t(g(rng), g(rng)), b(g(rng), g(rng));
        const double n = std::sqrt(std::norm(t) + std::norm(b));
        t /= n;
        b /= n;
        const double eta = u(rng);
        const double tau = 0.01 + 10.0 * u(rng);
        const auto k = cell_ket(CellState{t, b, eta, tau});
        ASSERT_NEAR(ket_norm2(k), 1.0, 1e-12);
        // TT·BB = TB·BT·w/(1−w): rows proportional to (aT, aB)
        const double w = 0.5 * decay_factor(eta, tau);
        ASSERT_NEAR(std::abs(k[TT] * k[BB] * (1.0 - w) - k[TB] * k[BT] * w), 0.0, 1e-12);
        const double p = polarization(CellState{t, b, eta, tau});
        ASSERT_LE(std::abs(p), 1.0 + 1e-12);
    }
}

TEST(Polarization, OracleValue) {
    EXPECT_NEAR(polarization(CellState{{1.0, 0.0}, {0.0, 0.0}, 0.5, 1.0}), 0.6321205588285577, 1e-15);
    EXPECT_NEAR(polarization(CellState{{0.0, 0.0}, {0.0, 1.0}, 0.5, 1.0}), -0.6321205588285577, 1e-15);
}

TEST(Polarization, GrowsWithCoupling) {
    double previous = -1.0;
    for (int i = 0; i <= 100; ++i) {
        const double eta = i / 100.0;
        const double p = polarization(CellState{{1.0, 0.0}, {0.0, 0.0}, eta, 1.0});
        EXPECT_GE(p, previous);
        previous = p;
    }
    EXPECT_EQ(previous, 1.0);
}

TEST(Polarization, RejectsInvalidCells) {
    EXPECT_THROW(polarization(CellState{{1.0, 0.0}, {0.1, 0.0}, 0.5, 1.0}), Error);
    EXPECT_THROW(polarization(CellState{{1.0, 0.0}, {0.0, 0.0}, 1.5, 1.0}), Error);
    EXPECT_THROW(polarization(CellState{{1.0, 0.0}, {0.0, 0.0}, 0.5, 0.0}), Error);
}

TEST(Readout, BitsAndDeadZone) {
    EXPECT_EQ(bit_from_polarization(1.0), 0);
    EXPECT_EQ(bit_from_polarization(-1.0), 1);
    EXPECT_EQ(bit_from_polarization(0.06), 0);
    try {
        bit_from_polarization(0.05);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IndeterminatePolarization);
    }
    EXPECT_THROW(bit_from_polarization(-0.01), Error);
    EXPECT_EQ(bit_from_polarization(0.01, 0.0), 0);
}

TEST(Majority, SymmetricUnderPermutation) {
    for (int bits = 0; bits < 8; ++bits) {
        const double a = polarization_from_bit(bits & 1);
        const double b = polarization_from_bit((bits >> 1) & 1);
        const double c = polarization_from_bit((bits >> 2) & 1);
        const double m = majority(a, b, c);
        EXPECT_EQ(m, majority(b, a, c));
        EXPECT_EQ(m, majority(c, b, a));
        EXPECT_EQ(m, majority(a, c, b));
        EXPECT_EQ(std::abs(m), 1.0);
    }
}

TEST(Majority, ControlZeroIsAndControlOneIsOr) {
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double pa = polarization_from_bit(a), pb = polarization_from_bit(b);
            EXPECT_EQ(bit_from_polarization(majority(pa, pb, polarization_from_bit(0))), a & b);
            EXPECT_EQ(bit_from_polarization(majority(pa, pb, polarization_from_bit(1))), a | b);
        }
    }
}

TEST(CellFromTrajectory, MapsTopToRightDot) {
    Trajectory traj;
    traj.times = {0.0};
    traj.p_left = {0.36};
    traj.p_right = {0.64};
    traj.amplitudes = {AmplitudeState{{0.6, 0.0}, {0.0, 0.8}}};
    const auto cell = cell_from_trajectory(traj, 0.9, 1.0);
    EXPECT_EQ(cell.top, complex(0.0, 0.8));
    EXPECT_EQ(cell.bottom, complex(0.6, 0.0));
    EXPECT_THROW(cell_from_trajectory(Trajectory{}, 0.9, 1.0), Error);
}

TEST(CellFromTrajectory, TanhTransferEndsInBottomDot) {
    Scenario sc;
    sc.params = SystemParams::create(1.0, 0.0, 10.0, 2.4);
    sc.envelope = TanhRise{2.0};
    sc.initial = RightDot{};
    sc.t_end = 30.0;
    const auto traj = integrate(sc);
    const auto cell = cell_from_trajectory(traj, 1.0, 1.0);
    EXPECT_GE(std::norm(cell.bottom), 0.9);
    EXPECT_LT(polarization(cell), -0.8);
}

}  // namespace
