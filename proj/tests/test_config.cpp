#include "dotsim/cli/config.hpp"

#include <gtest/gtest.h>

#include <string>

namespace {

using namespace dotsim;
using namespace dotsim::cli;

const std::string kScenarioDir = DOTSIM_SCENARIO_DIR;

RunConfig from_file(Command c, const std::string& name, const std::vector<std::string>& overrides = {}) {
    return parse_config(c, load_settings(kScenarioDir + "/" + name, overrides));
}

ErrorKind kind_of(Command c, const std::string& text, const std::vector<std::string>& overrides = {}) {
    try {
        parse_config(c, settings_from_text(text, overrides));
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ErrorKind::InvalidArgument;
}

const EchoedSetting* echoed(const RunConfig& cfg, const std::string& key) {
    for (const auto& s : cfg.settings) {
        if (s.key == key) {
            return &s;
        }
    }
    return nullptr;
}

TEST(Config, ConstantDriveScenarioFile) {
    const auto cfg = from_file(Command::Simulate, "fig2.cfg");
    const auto& sc = cfg.scenario;
    EXPECT_EQ(sc.params.k, 1.0);
    EXPECT_EQ(sc.params.omega_coulomb, 1.9);
    EXPECT_EQ(sc.params.rabi_ratio, 5.05);
    EXPECT_EQ(sc.params.omega_drive, 10.0);
    EXPECT_TRUE(std::holds_alternative<ConstantEnvelope>(sc.envelope));
    EXPECT_TRUE(std::holds_alternative<LeftDot>(sc.initial));
    EXPECT_EQ(sc.formulation, Formulation::Amplitude);
    EXPECT_EQ(sc.t_end, 50.0);
    EXPECT_EQ(sc.dt, 1e-3);
    EXPECT_FALSE(cfg.window.has_value());
    ASSERT_NE(echoed(cfg, "omega_coulomb"), nullptr);
    EXPECT_EQ(echoed(cfg, "omega_coulomb")->origin, Origin::File);
    ASSERT_NE(echoed(cfg, "k"), nullptr);
    EXPECT_EQ(echoed(cfg, "k")->origin, Origin::Default);
}

TEST(Config, TanhScenarioFile) {
    const auto cfg = from_file(Command::Simulate, "fig5.cfg");
    const auto* rise = std::get_if<TanhRise>(&cfg.scenario.envelope);
    ASSERT_NE(rise, nullptr);
    EXPECT_EQ(rise->tau, 2.0);
    EXPECT_TRUE(std::holds_alternative<RightDot>(cfg.scenario.initial));
    EXPECT_EQ(cfg.scenario.t_end, 30.0);
}

TEST(Config, TanhDefaultsToFifteenRiseTimes) {
    const auto cfg =
        parse_config(Command::Simulate, settings_from_text("omega_coulomb = 0\nrabi_ratio = 2.4\nenvelope = tanh\ntau = 3\n"));
    EXPECT_EQ(cfg.scenario.t_end, 45.0);
    const auto flat = parse_config(Command::Simulate, settings_from_text("omega_coulomb = 0\nrabi_ratio = 2.4\n"));
    EXPECT_EQ(flat.scenario.t_end, 50.0);
}

TEST(Config, CustomInitialState) {
    const auto cfg = from_file(Command::Bench, "fig2_bench.cfg");
    const auto* s = std::get_if<AngleState>(&cfg.scenario.initial);
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->alpha, 0.7853981633974483);
    EXPECT_EQ(s->phi, 0.0);
    EXPECT_EQ(cfg.scenario.sample_stride, 100u);
    EXPECT_EQ(cfg.repeats, 5);
}

TEST(Config, EmptyFileListsMissingKeys) {
    try {
        parse_config(Command::Simulate, settings_from_text(""));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingKey);
        const std::string what = e.what();
        EXPECT_NE(what.find("omega_coulomb"), std::string::npos);
        EXPECT_NE(what.find("rabi_ratio"), std::string::npos);
    }
    EXPECT_EQ(kind_of(Command::Simulate, "omega_coulomb = 0\nrabi_ratio = 1\nenvelope = tanh\n"),
              ErrorKind::MissingKey);
    EXPECT_EQ(kind_of(Command::Simulate, "omega_coulomb = 0\nrabi_ratio = 1\ninitial = custom\n"),
              ErrorKind::MissingKey);
    EXPECT_EQ(kind_of(Command::Sweep, "omega_coulomb = 0\nrabi_ratio = 1\n"), ErrorKind::MissingKey);
    EXPECT_EQ(kind_of(Command::Qca, "eta = 1\n"), ErrorKind::MissingKey);
}

TEST(Config, UnknownAndMisplacedKeys) {
    const std::string base = "omega_coulomb = 0\nrabi_ratio = 1\n";
    EXPECT_EQ(kind_of(Command::Simulate, base + "omgea_drive = 3\n"), ErrorKind::UnknownKey);
    EXPECT_EQ(kind_of(Command::Simulate, base + "repeats = 4\n"), ErrorKind::UnknownKey);
    EXPECT_EQ(kind_of(Command::Compare, base + "window_start = 1\n"), ErrorKind::UnknownKey);
    EXPECT_EQ(kind_of(Command::Qca, "netlist = x.qca\nrabi_ratio = 1\n"), ErrorKind::UnknownKey);
    EXPECT_EQ(kind_of(Command::Simulate, base, {"bogus=1"}), ErrorKind::UnknownKey);
}

TEST(Config, TypeMismatches) {
    const std::string base = "omega_coulomb = 0\nrabi_ratio = 1\n";
    EXPECT_EQ(kind_of(Command::Simulate, "omega_coulomb = strong\nrabi_ratio = 1\n"), ErrorKind::TypeMismatch);
    EXPECT_EQ(kind_of(Command::Simulate, base + "dt = 1e-3x\n"), ErrorKind::TypeMismatch);
    EXPECT_EQ(kind_of(Command::Simulate, base + "sample_stride = 2.5\n"), ErrorKind::TypeMismatch);
    EXPECT_EQ(kind_of(Command::Simulate, base + "envelope = square\n"), ErrorKind::TypeMismatch);
    EXPECT_EQ(kind_of(Command::Sweep, base + "sweep_axis1 = omega_coulomb 1, 2\n"), ErrorKind::TypeMismatch);
    EXPECT_EQ(kind_of(Command::Sweep, base + "sweep_axis1 = k: 1, 2\n"), ErrorKind::UnknownAxisParameter);
}

TEST(Config, OverridesWinAndAreEchoed) {
    const auto cfg = from_file(Command::Simulate, "fig2.cfg", {"omega_coulomb=0.9", "t_end=5"});
    EXPECT_EQ(cfg.scenario.params.omega_coulomb, 0.9);
    EXPECT_EQ(cfg.scenario.t_end, 5.0);
    EXPECT_EQ(echoed(cfg, "omega_coulomb")->origin, Origin::Flag);
    EXPECT_EQ(echoed(cfg, "rabi_ratio")->origin, Origin::File);

    const auto flags_only = parse_config(Command::Simulate, load_settings(std::nullopt, {"omega_coulomb=1", "rabi_ratio=2"}));
    EXPECT_EQ(flags_only.scenario.params.rabi_ratio, 2.0);
}

TEST(Config, CommentsAndBlankLines) {
    const auto cfg = parse_config(Command::Simulate,
                                  settings_from_text("# header\n\n  omega_coulomb = 1.5   # inline\nrabi_ratio=3\n"));
    EXPECT_EQ(cfg.scenario.params.omega_coulomb, 1.5);
    EXPECT_EQ(cfg.scenario.params.rabi_ratio, 3.0);
    EXPECT_EQ(kind_of(Command::Simulate, "omega_coulomb 1\n"), ErrorKind::TypeMismatch);
}

TEST(Config, SweepAndWindow) {
    const auto cfg = from_file(Command::Sweep, "sweep_coulomb.cfg", {"window_start=10", "window_end=40"});
    ASSERT_EQ(cfg.axes.size(), 1u);
    EXPECT_EQ(cfg.axes[0].parameter, AxisParameter::OmegaCoulomb);
    EXPECT_EQ(cfg.axes[0].values, (std::vector<double>{0.9, 1.9}));
    ASSERT_TRUE(cfg.window.has_value());
    EXPECT_EQ(cfg.window->t_start, 10.0);
    EXPECT_EQ(cfg.window->t_end, 40.0);
}

TEST(Config, QcaFiles) {
    const auto plain = from_file(Command::Qca, "fig9_qca.cfg");
    EXPECT_EQ(plain.netlist_path, "fig9_and_or.qca");
    EXPECT_TRUE(plain.netlist_from_file);
    EXPECT_EQ(plain.control_source, ControlSource::Bit0);
    EXPECT_FALSE(plain.scenario_used);

    const auto sim = from_file(Command::Qca, "fig9_transfer.cfg");
    EXPECT_EQ(sim.control_source, ControlSource::Simulate);
    EXPECT_TRUE(sim.scenario_used);
    EXPECT_TRUE(std::holds_alternative<RightDot>(sim.scenario.initial));

    EXPECT_EQ(kind_of(Command::Qca, "netlist = x.qca\neta = 2\n"), ErrorKind::InvalidArgument);
}

TEST(Config, CommandNames) {
    EXPECT_EQ(parse_command("simulate"), Command::Simulate);
    EXPECT_EQ(parse_command("qca"), Command::Qca);
    EXPECT_THROW(parse_command("run"), Error);
}

}  // namespace
