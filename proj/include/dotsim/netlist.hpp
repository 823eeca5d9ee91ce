// Line-oriented QCA netlists and their topological evaluation.
//
//   input <id>
//   fixed <id> <0|1>
//   maj   <id> <in1> <in2> <in3>
//   probe <id> <in>
//
// '#' starts a comment. References may point forward; cycles are rejected.

#pragma once

#include "dotsim/error.hpp"
#include "dotsim/qca.hpp"

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dotsim::qca {

enum class NodeKind { Input, Fixed, Majority, Probe };

struct Node {
    std::string id;
    NodeKind kind{NodeKind::Input};
    std::vector<std::string> inputs;
    int fixed_bit{0};
    int line{0};
};

class Netlist {
public:
    Netlist() = default;

    explicit Netlist(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!index_.emplace(nodes_[i].id, i).second) {
                throw Error(ErrorKind::NetlistSyntax,
                            "line " + std::to_string(nodes_[i].line) + ": duplicate id '" + nodes_[i].id + "'");
            }
        }
        for (const Node& n : nodes_) {
            const std::size_t want = n.kind == NodeKind::Majority ? 3 : n.kind == NodeKind::Probe ? 1 : 0;
            if (n.inputs.size() != want) {
                throw Error(ErrorKind::NetlistSyntax, "node '" + n.id + "' needs " + std::to_string(want) + " inputs");
            }
            for (const auto& in : n.inputs) {
                auto it = index_.find(in);
                if (it == index_.end()) {
                    throw Error(ErrorKind::NetlistSyntax, "node '" + n.id + "' references unknown '" + in + "'");
                }
                if (nodes_[it->second].kind == NodeKind::Probe) {
                    throw Error(ErrorKind::NetlistSyntax, "node '" + n.id + "' reads from probe '" + in + "'");
                }
            }
        }
        order_ = topological_order();
    }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<std::size_t>& order() const noexcept { return order_; }

    const Node* find(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &nodes_[it->second];
    }

    std::size_t index_of(const std::string& id) const { return index_.at(id); }

    std::vector<std::string> ids_of(NodeKind kind) const {
        std::vector<std::string> out;
        for (const auto& n : nodes_) {
            if (n.kind == kind) {
                out.push_back(n.id);
            }
        }
        return out;
    }

private:
    // Kahn's algorithm, stable with respect to declaration order.
    std::vector<std::size_t> topological_order() const {
        const std::size_t n = nodes_.size();
        std::vector<std::size_t> pending(n, 0);
        std::vector<std::vector<std::size_t>> readers(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& in : nodes_[i].inputs) {
                const std::size_t src = index_.at(in);
                readers[src].push_back(i);
                ++pending[i];
            }
        }
        std::vector<std::size_t> ready;
        for (std::size_t i = n; i-- > 0;) {
            if (pending[i] == 0) {
                ready.push_back(i);
            }
        }
        std::vector<std::size_t> order;
        order.reserve(n);
        while (!ready.empty()) {
            const std::size_t i = ready.back();
            ready.pop_back();
            order.push_back(i);
            for (std::size_t r : readers[i]) {
                if (--pending[r] == 0) {
                    ready.push_back(r);
                }
            }
        }
        if (order.size() != n) {
            std::string stuck;
            for (std::size_t i = 0; i < n; ++i) {
                if (pending[i] != 0) {
                    stuck += (stuck.empty() ? "" : ", ") + nodes_[i].id;
                }
            }
            throw Error(ErrorKind::CycleDetected, "netlist has a cycle through: " + stuck);
        }
        return order;
    }

    std::vector<Node> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::size_t> order_;
};

inline Netlist parse_netlist(std::istream& in) {
    std::vector<Node> nodes;
    std::string raw;
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::NetlistSyntax, "line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        Node node;
        node.line = line_no;
        const std::string& kw = tok[0];
        if (kw == "input") {
            if (tok.size() != 2) fail("expected 'input <id>'");
            node.kind = NodeKind::Input;
        } else if (kw == "fixed") {
            if (tok.size() != 3 || (tok[2] != "0" && tok[2] != "1")) fail("expected 'fixed <id> <0|1>'");
            node.kind = NodeKind::Fixed;
            node.fixed_bit = tok[2] == "1" ? 1 : 0;
        } else if (kw == "maj") {
            if (tok.size() != 5) fail("expected 'maj <id> <in1> <in2> <in3>'");
            node.kind = NodeKind::Majority;
            node.inputs.assign(tok.begin() + 2, tok.end());
        } else if (kw == "probe") {
            if (tok.size() != 3) fail("expected 'probe <id> <in>'");
            node.kind = NodeKind::Probe;
            node.inputs.push_back(tok[2]);
        } else {
            fail("unknown node kind '" + kw + "'");
        }
        node.id = tok[1];
        nodes.push_back(std::move(node));
    }
    return Netlist(std::move(nodes));
}

inline Netlist parse_netlist(const std::string& text) {
    std::istringstream in(text);
    return parse_netlist(in);
}

inline Netlist load_netlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::NetlistSyntax, "cannot open netlist '" + path + "'");
    }
    return parse_netlist(in);
}

// An input node whose polarization is taken from a simulated cell.
struct ControlCell {
    std::string node_id;
    CellState cell;
};

using BitAssignment = std::map<std::string, int>;
using ProbeReadout = std::vector<std::pair<std::string, int>>;

/// Evaluates the netlist in topological order. Plain inputs and fixed cells
/// are saturated (P = ±1); the control node carries polarization(cell).
/// Returns one bit per probe, in declaration order.
inline ProbeReadout eval_circuit(const Netlist& net, const BitAssignment& inputs,
                                 const std::optional<ControlCell>& control = std::nullopt,
                                 double threshold = kDefaultThreshold) {
    if (control) {
        const Node* node = net.find(control->node_id);
        if (node == nullptr || node->kind != NodeKind::Input) {
            throw Error(ErrorKind::NetlistSyntax, "control '" + control->node_id + "' is not an input node");
        }
    }
    for (const auto& [id, bit] : inputs) {
        const Node* node = net.find(id);
        if (node == nullptr || node->kind != NodeKind::Input) {
            throw Error(ErrorKind::InvalidArgument, "'" + id + "' is not an input node");
        }
        if (bit != 0 && bit != 1) {
            throw Error(ErrorKind::InvalidArgument, "input '" + id + "' must be 0 or 1");
        }
    }

    const auto& nodes = net.nodes();
    std::vector<double> value(nodes.size(), 0.0);
    auto input_value = [&](const std::string& id) { return value[net.index_of(id)]; };

    for (std::size_t i : net.order()) {
        const Node& n = nodes[i];
        switch (n.kind) {
            case NodeKind::Input:
                if (control && control->node_id == n.id) {
                    value[i] = polarization(control->cell);
                } else if (auto it = inputs.find(n.id); it != inputs.end()) {
                    value[i] = polarization_from_bit(it->second);
                } else {
                    throw Error(ErrorKind::UnassignedInput, "input '" + n.id + "' has no value");
                }
                break;
            case NodeKind::Fixed:
                value[i] = polarization_from_bit(n.fixed_bit);
                break;
            case NodeKind::Majority:
                value[i] = majority(input_value(n.inputs[0]), input_value(n.inputs[1]),
                                    input_value(n.inputs[2]), threshold);
                break;
            case NodeKind::Probe:
                value[i] = input_value(n.inputs[0]);
                break;
        }
    }

    ProbeReadout out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind == NodeKind::Probe) {
            out.emplace_back(nodes[i].id, bit_from_polarization(value[i], threshold));
        }
    }
    return out;
}

struct TruthTableRow {
    BitAssignment inputs;
    ProbeReadout outputs;
};

struct TruthTable {
    std::vector<std::string> input_ids;  // excludes the control node
    std::vector<std::string> probe_ids;
    std::vector<TruthTableRow> rows;
};

// Every combination of the free inputs, first-declared input as the most
// significant bit.
inline TruthTable truth_table(const Netlist& net, const std::optional<ControlCell>& control,
                              double threshold = kDefaultThreshold) {
    TruthTable table;
    for (const auto& id : net.ids_of(NodeKind::Input)) {
        if (!control || control->node_id != id) {
            table.input_ids.push_back(id);
        }
    }
    table.probe_ids = net.ids_of(NodeKind::Probe);
    const std::size_t n = table.input_ids.size();
    if (n > 20) {
        throw Error(ErrorKind::InvalidArgument, "too many free inputs for a truth table");
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        TruthTableRow row;
        for (std::size_t b = 0; b < n; ++b) {
            row.inputs[table.input_ids[b]] = static_cast<int>((mask >> (n - 1 - b)) & 1U);
        }
        row.outputs = eval_circuit(net, row.inputs, control, threshold);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace dotsim::qca
