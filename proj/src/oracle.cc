// Copyright 2026 The ecpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecpsim/oracle.h"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

#include "ecpsim/elements.h"

namespace ecpsim {

namespace {

using namespace modes;

// Ancillas are derived from the amplitudes of the state the node holds; no
// closed form from protocols.cc is consulted while building the tree.

// W basis term with `flipped_party` down, in unlabeled (sorted) form.
Configuration w_config(const std::array<Mode, 3> &m, int flipped_party) {
    std::vector<Electron> electrons;
    for (int k = 0; k < 3; ++k) {
        electrons.push_back({m[static_cast<std::size_t>(k)], k == flipped_party ? Spin::Down : Spin::Up});
    }
    return Configuration(std::move(electrons)).sorted();
}

std::optional<QuantumState> ancilla(Amplitude up, Amplitude down, const Mode &mode) {
    const double norm = std::sqrt(std::norm(up) + std::norm(down));
    if (norm < kPruneThreshold) {
        return std::nullopt;
    }
    return make_single_electron(up / norm, down / norm, mode);
}

struct Expander {
    Protocol protocol;
    IterationSchedule sched;

    // Adds a child for one measurement branch, or books it as pruned.
    OutcomeNode *add_child(OutcomeNode &parent, std::string label, double conditional, QuantumState state) {
        const double p = parent.probability * conditional;
        if (p < kTreePruneMass) {
            parent.pruned_mass += p;
            parent.pruned_conditional += conditional;
            return nullptr;
        }
        OutcomeNode child{.path = parent.path, .probability = p, .state = std::move(state), .children = {}};
        child.conditional = conditional;
        child.path.push_back(std::move(label));
        parent.children.push_back(std::move(child));
        return &parent.children.back();
    }

    static void fail(OutcomeNode &node) { node.terminal = Terminal::Failure; }

    // Hadamard + destructive spin readout of `measured`, with the down
    // outcome sign-corrected on `correct`. `then` continues each branch.
    template <typename Then>
    void erase_spin(OutcomeNode &node, const Mode &measured, const Mode &correct, const std::string &tag, Then then) {
        const auto branches = measure_spin(hadamard(node.state, measured), measured);
        node.children.reserve(branches.size());
        for (const BranchOutcome &b : branches) {
            const bool down = std::get<Spin>(b.label) == Spin::Down;
            QuantumState s = down ? phase_correct(b.post_state, correct) : b.post_state;
            if (OutcomeNode *child = add_child(node, tag + ":" + to_string(b.label), b.probability, std::move(s))) {
                then(*child);
            }
        }
    }

    // Step one, round n, on a W state held in (a1, b1, c1).
    void step1(OutcomeNode &node, int round) {
        const std::array<Mode, 3> w{a1, b1, c1};
        const QuantumState view = forget_electron_labels(node.state);
        const auto anc = ancilla(view.amplitude(w_config(w, 0)), view.amplitude(w_config(w, 1)), a2);
        if (!anc) {
            fail(node);
            return;
        }
        const QuantumState joint = tensor(node.state, *anc);
        const std::string round_tag = "[" + std::to_string(round) + "]";
        if (protocol == Protocol::Ecp1) {
            const auto branches = charge_detect(pbs(joint, PbsPorts(a1, a2, d1, d2)), {d1});
            node.children.reserve(branches.size());
            for (const BranchOutcome &b : branches) {
                OutcomeNode *child = add_child(node, "C1:" + to_string(b.label), b.probability, b.post_state);
                if (!child) {
                    continue;
                }
                if (std::get<ChargeOutcome>(b.label) == ChargeOutcome::ZeroOrTwo) {
                    fail(*child);
                } else {
                    erase_spin(*child, d2, d1, "D1", [&](OutcomeNode &done) { step1_done(done, round); });
                }
            }
            return;
        }
        const auto branches = parity_gate(joint, ParityPorts(a1, a2, d1, d2));
        node.children.reserve(branches.size());
        for (const BranchOutcome &b : branches) {
            OutcomeNode *child = add_child(node, "P1" + round_tag + ":" + to_string(b.label), b.probability, b.post_state);
            if (!child) {
                continue;
            }
            if (std::get<ParityOutcome>(b.label) == ParityOutcome::Even) {
                erase_spin(*child, d2, d1, "D1" + round_tag, [&](OutcomeNode &done) { step1_done(done, round); });
            } else {
                erase_spin(*child, d2, d1, "D1" + round_tag, [&](OutcomeNode &retry) {
                    retry.state = relabel_mode(retry.state, d1, a1);
                    if (round < sched.n_max()) {
                        step1(retry, round + 1);
                    } else {
                        fail(retry);
                    }
                });
            }
        }
    }

    void step1_done(OutcomeNode &node, int round) {
        node.milestone = Milestone::Step1Done;
        node.round = round;
        step2(node, 1);
    }

    // Step two, round m, on a W state held in (d1, b1, c1).
    void step2(OutcomeNode &node, int round) {
        const std::array<Mode, 3> w{d1, b1, c1};
        const QuantumState view = forget_electron_labels(node.state);
        const auto anc = ancilla(view.amplitude(w_config(w, 2)), view.amplitude(w_config(w, 0)), c2);
        if (!anc) {
            fail(node);
            return;
        }
        const QuantumState joint = tensor(node.state, *anc);
        const std::string round_tag = "[" + std::to_string(round) + "]";
        auto succeed = [&](OutcomeNode &leaf) {
            leaf.terminal = Terminal::Success;
            leaf.milestone = Milestone::Step2Done;
            leaf.round = round;
        };
        if (protocol == Protocol::Ecp1) {
            const auto branches = charge_detect(pbs(joint, PbsPorts(c1, c2, e2, e1)), {e2});
            node.children.reserve(branches.size());
            for (const BranchOutcome &b : branches) {
                OutcomeNode *child = add_child(node, "C2:" + to_string(b.label), b.probability, b.post_state);
                if (!child) {
                    continue;
                }
                if (std::get<ChargeOutcome>(b.label) == ChargeOutcome::ZeroOrTwo) {
                    fail(*child);
                } else {
                    erase_spin(*child, e2, e1, "D2", succeed);
                }
            }
            return;
        }
        const auto branches = parity_gate(joint, ParityPorts(c1, c2, e1, e2));
        node.children.reserve(branches.size());
        for (const BranchOutcome &b : branches) {
            OutcomeNode *child = add_child(node, "P2" + round_tag + ":" + to_string(b.label), b.probability, b.post_state);
            if (!child) {
                continue;
            }
            if (std::get<ParityOutcome>(b.label) == ParityOutcome::Even) {
                erase_spin(*child, e2, e1, "D2" + round_tag, succeed);
            } else {
                erase_spin(*child, e2, e1, "D2" + round_tag, [&](OutcomeNode &retry) {
                    retry.state = relabel_mode(retry.state, e1, c1);
                    if (round < sched.m_max()) {
                        step2(retry, round + 1);
                    } else {
                        fail(retry);
                    }
                });
            }
        }
    }
};

template <typename Fn>
void visit(const OutcomeNode &node, Fn &&fn) {
    fn(node);
    for (const OutcomeNode &child : node.children) {
        visit(child, fn);
    }
}

} // namespace

OutcomeNode enumerate_tree(const WCoefficients &c, Protocol protocol, const IterationSchedule &sched) {
    OutcomeNode root{.path = {}, .probability = 1.0, .state = make_w_state(c, {a1, b1, c1}), .children = {}};
    Expander expander{protocol, sched};
    expander.step1(root, 1);
    return root;
}

SuccessCheck success_state_check(const OutcomeNode &root) {
    const QuantumState target = forget_electron_labels(target_state());
    SuccessCheck check;
    visit(root, [&](const OutcomeNode &node) {
        if (node.terminal != Terminal::Success) {
            return;
        }
        ++check.success_leaves;
        if (!equal_up_to_global_phase(forget_electron_labels(node.state), target, 1e-10)) {
            check.passed = false;
        }
    });
    check.vacuous = check.success_leaves == 0;
    return check;
}

TreeMasses tree_masses(const OutcomeNode &root) {
    TreeMasses m;
    std::vector<double> success_by_round;
    auto bump = [](std::vector<double> &v, int round, double p) {
        const auto i = static_cast<std::size_t>(round - 1);
        if (v.size() <= i) {
            v.resize(i + 1, 0.0);
        }
        v[i] += p;
    };
    visit(root, [&](const OutcomeNode &node) {
        m.pruned += node.pruned_mass;
        if (node.milestone == Milestone::Step1Done) {
            bump(m.step1_by_round, node.round, node.probability);
            m.step1_total += node.probability;
        }
        if (node.terminal == Terminal::Success) {
            bump(success_by_round, node.round, node.probability);
            m.success += node.probability;
        } else if (node.terminal == Terminal::Failure) {
            m.failure += node.probability;
        }
    });
    if (m.step1_total > 0.0) {
        for (double p : success_by_round) {
            m.step2_by_round.push_back(p / m.step1_total);
        }
    }
    return m;
}

double max_conservation_violation(const OutcomeNode &root) {
    double worst = 0.0;
    visit(root, [&](const OutcomeNode &node) {
        if (node.terminal != Terminal::Continue) {
            return;
        }
        double sum = node.pruned_mass;
        for (const OutcomeNode &child : node.children) {
            sum += child.probability;
        }
        worst = std::max(worst, std::abs(node.probability - sum));
    });
    return worst;
}

double max_branch_sum_violation(const OutcomeNode &root) {
    double worst = 0.0;
    visit(root, [&](const OutcomeNode &node) {
        if (node.terminal != Terminal::Continue) {
            return;
        }
        double sum = node.pruned_conditional;
        for (const OutcomeNode &child : node.children) {
            sum += child.conditional;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    });
    return worst;
}

std::size_t node_count(const OutcomeNode &root) {
    std::size_t n = 0;
    visit(root, [&](const OutcomeNode &) { ++n; });
    return n;
}

void dump_tree(std::ostream &out, const OutcomeNode &root) {
    visit(root, [&](const OutcomeNode &node) {
        char prob[40];
        std::snprintf(prob, sizeof prob, "%.15g", node.probability);
        out << std::string(2 * node.path.size(), ' ') << (node.path.empty() ? "root" : node.path.back()) << ' '
            << prob;
        if (node.terminal == Terminal::Success) {
            out << " success";
        } else if (node.terminal == Terminal::Failure) {
            out << " failure";
        }
        out << '\n';
    });
}

ClosedForms default_closed_forms() {
    return {ecp1_step1_prob, ecp1_step2_prob, ecp1_total_prob, p_step1_round, p_step2_round};
}

ClosedForms corrupted_closed_forms() {
    ClosedForms forms = default_closed_forms();
    forms.step1_round = [](const WCoefficients &c, int n) {
        // Chain the failure recursion with fourth-power numerators.
        WCoefficients cur = c;
        double chain = 1.0;
        for (int k = 1; k < n; ++k) {
            const double a = cur.alpha_sq(), b = cur.beta_sq(), g = cur.gamma_sq();
            chain *= (a * a + b * b + b * g) / (a + b);
            cur = WCoefficients::normalize(a * a, b * b, b * g);
        }
        return chain * ecp1_step1_prob(cur);
    };
    return forms;
}

namespace {

class DeltaSink {
  public:
    explicit DeltaSink(CrossCheckReport &report) : report_(report) {}

    // Skips quantities whose closed form is undefined for these coefficients.
    template <typename Fn>
    void compare(std::string name, double oracle, Fn closed) {
        double value;
        try {
            value = closed();
        } catch (const DegenerateInputError &) {
            return;
        }
        const double delta = std::abs(oracle - value);
        report_.deltas.push_back({std::move(name), oracle, value, delta});
        report_.max_abs_delta = std::max(report_.max_abs_delta, std::isnan(delta) ? INFINITY : delta);
    }

  private:
    CrossCheckReport &report_;
};

} // namespace

CrossCheckReport crosscheck(const WCoefficients &c, const IterationSchedule &sched, const ClosedForms &forms) {
    CrossCheckReport report;
    DeltaSink sink(report);

    const TreeMasses one = tree_masses(enumerate_tree(c, Protocol::Ecp1, sched));
    sink.compare("ecp1.p_step1", one.step1_total, [&] { return forms.step1(c); });
    if (one.step1_total > 0.0) {
        sink.compare("ecp1.p_step2", one.success / one.step1_total, [&] { return forms.step2(c); });
    }
    sink.compare("ecp1.p_total", one.success, [&] { return forms.total(c); });

    const TreeMasses two = tree_masses(enumerate_tree(c, Protocol::Ecp2, sched));
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (int n = 1; n <= sched.n_max(); ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const double oracle = i < two.step1_by_round.size() ? two.step1_by_round[i] : 0.0;
        sink.compare("ecp2.P1[" + std::to_string(n) + "]", oracle, [&] {
            const double p = forms.step1_round(c, n);
            sum1 += p;
            return p;
        });
    }
    if (two.step1_total > 0.0) {
        for (int m = 1; m <= sched.m_max(); ++m) {
            const auto i = static_cast<std::size_t>(m - 1);
            const double oracle = i < two.step2_by_round.size() ? two.step2_by_round[i] : 0.0;
            sink.compare("ecp2.P2[" + std::to_string(m) + "]", oracle, [&] { return forms.step2_round(c, m); });
        }
    }
    for (int m = 1; m <= sched.m_max(); ++m) {
        try {
            sum2 += forms.step2_round(c, m);
        } catch (const DegenerateInputError &) {
            break;
        }
    }
    sink.compare("ecp2.p_total", two.success, [&] { return sum1 * sum2; });

    report.pass = report.max_abs_delta <= kCrossCheckTolerance;
    return report;
}

WCoefficients sample_coefficients(std::mt19937_64 &rng) {
    std::exponential_distribution<double> exp1(1.0);
    for (;;) {
        const double x = exp1(rng), y = exp1(rng), z = exp1(rng);
        const double s = x + y + z;
        const double a = x / s, b = y / s;
        if (a >= 0.01 && b >= 0.01 && 1.0 - a - b >= 0.01) {
            return WCoefficients::from_squares(a, b);
        }
    }
}

} // namespace ecpsim
