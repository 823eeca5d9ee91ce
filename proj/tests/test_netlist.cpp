#include "dotsim/netlist.hpp"

#include <gtest/gtest.h>

#include <string>

namespace {

using namespace dotsim;
using namespace dotsim::qca;

const std::string kAndOr = R"(# majority gate with a control input
input a
input b
input c
maj m a b c   # trailing comment
probe out m
)";

ErrorKind kind_of(const std::string& text) {
    try {
        parse_netlist(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return ErrorKind::InvalidArgument;
}

TEST(Netlist, ParsesNodesAndComments) {
    const Netlist net = parse_netlist(kAndOr);
    ASSERT_EQ(net.nodes().size(), 5u);
    EXPECT_EQ(net.ids_of(NodeKind::Input), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(net.ids_of(NodeKind::Probe), std::vector<std::string>{"out"});
    const Node* m = net.find("m");
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->kind, NodeKind::Majority);
    EXPECT_EQ(m->inputs, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(m->line, 5);
    EXPECT_EQ(net.find("nope"), nullptr);
}

TEST(Netlist, ForwardReferencesAreOrdered) {
    const Netlist net = parse_netlist("probe p m\nmaj m a b one\ninput a\ninput b\nfixed one 1\n");
    std::vector<std::size_t> position(net.nodes().size());
    for (std::size_t i = 0; i < net.order().size(); ++i) {
        position[net.order()[i]] = i;
    }
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        for (const auto& in : net.nodes()[i].inputs) {
            EXPECT_LT(position[net.index_of(in)], position[i]);
        }
    }
}

TEST(Netlist, SyntaxErrors) {
    EXPECT_EQ(kind_of("gate x a\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("input\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("input a\nmaj m a a\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("fixed f 2\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("input a\ninput a\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("probe p ghost\n"), ErrorKind::NetlistSyntax);
    EXPECT_EQ(kind_of("input a\nprobe p a\nprobe q p\n"), ErrorKind::NetlistSyntax);
    EXPECT_THROW(load_netlist("/nonexistent/dir/x.qca"), Error);
}

TEST(Netlist, CyclesAreRejected) {
    EXPECT_EQ(kind_of("input a\nmaj m a n a\nmaj n m a a\n"), ErrorKind::CycleDetected);
    EXPECT_EQ(kind_of("input a\nmaj m a a m\n"), ErrorKind::CycleDetected);
}

TEST(Circuit, UnassignedInputIsReported) {
    const Netlist net = parse_netlist(kAndOr);
    try {
        eval_circuit(net, {{"a", 1}, {"b", 0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnassignedInput);
    }
    EXPECT_THROW(eval_circuit(net, {{"a", 1}, {"b", 0}, {"c", 2}}), Error);
    EXPECT_THROW(eval_circuit(net, {{"a", 1}, {"b", 0}, {"c", 0}, {"m", 1}}), Error);
}

TEST(Circuit, FullTruthTableIsMajority) {
    const Netlist net = parse_netlist(kAndOr);
    const auto table = truth_table(net, std::nullopt);
    ASSERT_EQ(table.rows.size(), 8u);
    EXPECT_EQ(table.input_ids, (std::vector<std::string>{"a", "b", "c"}));
    for (std::size_t r = 0; r < 8; ++r) {
        const auto& row = table.rows[r];
        const int a = row.inputs.at("a"), b = row.inputs.at("b"), c = row.inputs.at("c");
        EXPECT_EQ(a, static_cast<int>((r >> 2) & 1U));
        EXPECT_EQ(c, static_cast<int>(r & 1U));
        ASSERT_EQ(row.outputs.size(), 1u);
        EXPECT_EQ(row.outputs[0].first, "out");
        EXPECT_EQ(row.outputs[0].second, majority_bit(a, b, c));
    }
}

TEST(Circuit, ControlCellSelectsAndOrOr) {
    const Netlist net = parse_netlist(kAndOr);
    const CellState zero{{1.0, 0.0}, {0.0, 0.0}, 1.0, 1.0};
    const CellState one{{0.0, 0.0}, {1.0, 0.0}, 1.0, 1.0};
    const auto and_table = truth_table(net, ControlCell{"c", zero});
    const auto or_table = truth_table(net, ControlCell{"c", one});
    ASSERT_EQ(and_table.rows.size(), 4u);
    EXPECT_EQ(and_table.input_ids, (std::vector<std::string>{"a", "b"}));
    for (std::size_t r = 0; r < 4; ++r) {
        const int a = and_table.rows[r].inputs.at("a"), b = and_table.rows[r].inputs.at("b");
        EXPECT_EQ(and_table.rows[r].outputs[0].second, a & b);
        EXPECT_EQ(or_table.rows[r].outputs[0].second, a | b);
    }
}

TEST(Circuit, PartiallyCoupledControlStillDecides) {
    const Netlist net = parse_netlist(kAndOr);
    // P = 1 − e^{-1} ≈ 0.63, well outside the dead zone
    const CellState weak{{1.0, 0.0}, {0.0, 0.0}, 0.5, 1.0};
    const auto out = eval_circuit(net, {{"a", 1}, {"b", 0}}, ControlCell{"c", weak});
    EXPECT_EQ(out[0].second, 0);
}

TEST(Circuit, DecoupledControlIsIndeterminate) {
    const Netlist net = parse_netlist(kAndOr);
    const CellState decoupled{{1.0, 0.0}, {0.0, 0.0}, 0.0, 1.0};
    try {
        truth_table(net, ControlCell{"c", decoupled});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IndeterminatePolarization);
    }
}

TEST(Circuit, ControlMustBeAnInput) {
    const Netlist net = parse_netlist(kAndOr);
    const CellState zero{{1.0, 0.0}, {0.0, 0.0}, 1.0, 1.0};
    EXPECT_THROW(eval_circuit(net, {{"a", 1}, {"b", 0}, {"c", 0}}, ControlCell{"m", zero}), Error);
}

TEST(Circuit, ScenarioNetlistLoads) {
    const Netlist net = load_netlist(std::string(DOTSIM_SCENARIO_DIR) + "/fig9_and_or.qca");
    EXPECT_EQ(truth_table(net, std::nullopt).rows.size(), 8u);
}

}  // namespace
