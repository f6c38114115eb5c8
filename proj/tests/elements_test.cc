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

#include "ecpsim/elements.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.h"

using namespace ecpsim;
using ecpsim::kets::ket;

namespace {

QuantumState random_qubit(std::mt19937_64 &rng, const Mode &mode) {
    std::normal_distribution<double> normal;
    const Amplitude u(normal(rng), normal(rng)), d(normal(rng), normal(rng));
    const double n = std::sqrt(std::norm(u) + std::norm(d));
    return make_single_electron(u / n, d / n, mode);
}

double sum_probabilities(const std::vector<BranchOutcome> &branches) {
    double total = 0;
    for (const BranchOutcome &b : branches) {
        total += b.probability;
    }
    return total;
}

const BranchOutcome &branch(const std::vector<BranchOutcome> &branches, const OutcomeLabel &label) {
    for (const BranchOutcome &b : branches) {
        if (b.label == label) {
            return b;
        }
    }
    throw std::runtime_error("missing branch " + to_string(label));
}

// The walkthrough state after the first charge detection.
QuantumState eq6_state(const WCoefficients &c) {
    const double n = std::sqrt(c.alpha_sq() + c.beta_sq());
    const QuantumState joint =
        tensor(make_w_state(c, {"a1", "b1", "c1"}), make_single_electron(c.alpha() / n, c.beta() / n, "a2"));
    return branch(charge_detect(pbs(joint, PbsPorts("a1", "a2", "d1", "d2")), {"d1"}), ChargeOutcome::ExactlyOne)
        .post_state;
}

const PbsPorts kPorts("a", "b", "o1", "o2");

} // namespace

TEST(pbs, transmits_up_from_in_a) {
    const QuantumState out = pbs(make_single_electron(1, 0, "a"), kPorts);
    ASSERT_EQ(out.amplitude(ket({{"o1", 'u'}})), Amplitude(1.0));
}

TEST(pbs, port_table) {
    ASSERT_EQ(pbs(make_single_electron(0, 1, "a"), kPorts).amplitude(ket({{"o2", 'd'}})), Amplitude(1.0));
    ASSERT_EQ(pbs(make_single_electron(1, 0, "b"), kPorts).amplitude(ket({{"o2", 'u'}})), Amplitude(1.0));
    ASSERT_EQ(pbs(make_single_electron(0, 1, "b"), kPorts).amplitude(ket({{"o1", 'd'}})), Amplitude(1.0));
    ASSERT_EQ(pbs(make_single_electron(1, 0, "x"), kPorts).amplitude(ket({{"x", 'u'}})), Amplitude(1.0));
}

TEST(pbs, opposite_spins_bunch_equal_spins_split) {
    const QuantumState odd = pbs(tensor(make_single_electron(1, 0, "a"), make_single_electron(0, 1, "b")), kPorts);
    ASSERT_EQ(odd.terms().begin()->first.occupancy("o1"), 2u);
    const QuantumState even = pbs(tensor(make_single_electron(1, 0, "a"), make_single_electron(1, 0, "b")), kPorts);
    ASSERT_EQ(even.terms().begin()->first.occupancy("o1"), 1u);
    ASSERT_EQ(even.terms().begin()->first.occupancy("o2"), 1u);
}

TEST(pbs, ports_must_be_distinct) { ASSERT_THROW(PbsPorts("a", "b", "a", "c"), std::invalid_argument); }

TEST(charge_detect, single_electron_in_region) {
    const QuantumState s = make_single_electron(0.6, 0.8, "r");
    const auto out = charge_detect(s, {"r"});
    ASSERT_EQ(out.size(), 1u);
    ASSERT_EQ(std::get<ChargeOutcome>(out[0].label), ChargeOutcome::ExactlyOne);
    ASSERT_NEAR(out[0].probability, 1.0, 1e-15);
    ASSERT_TRUE(approx_equal(out[0].post_state, s, 1e-15));
}

TEST(charge_detect, two_electrons_read_as_zero_or_two) {
    Terms t;
    t[ket({{"r", 'u'}, {"r", 'd'}})] = 1.0;
    const auto both = charge_detect(QuantumState(t), {"r"});
    ASSERT_EQ(both.size(), 1u);
    ASSERT_EQ(std::get<ChargeOutcome>(both[0].label), ChargeOutcome::ZeroOrTwo);
    const auto none = charge_detect(make_single_electron(1, 0, "q"), {"z"});
    ASSERT_EQ(std::get<ChargeOutcome>(none[0].label), ChargeOutcome::ZeroOrTwo);
}

TEST(charge_detect, first_step_selection) {
    for (auto [a2, b2] : {std::pair{0.5, 1.0 / 3.0}, {0.2, 0.3}, {0.7, 0.05}}) {
        const WCoefficients c = WCoefficients::from_squares(a2, b2);
        const double n = std::sqrt(a2 + b2);
        const QuantumState joint =
            tensor(make_w_state(c, {"a1", "b1", "c1"}), make_single_electron(c.alpha() / n, c.beta() / n, "a2"));
        const auto out = charge_detect(pbs(joint, PbsPorts("a1", "a2", "d1", "d2")), {"d1"});
        ASSERT_NEAR(sum_probabilities(out), 1.0, 1e-12);
        const BranchOutcome &one = branch(out, ChargeOutcome::ExactlyOne);
        ASSERT_NEAR(one.probability, a2 * (c.gamma_sq() + 2 * b2) / (a2 + b2), 1e-12);
        ASSERT_TRUE(equal_ignoring_electron_order(one.post_state, kets::step1_even_state(c.beta(), c.gamma()),
                                                  1e-12));
        ASSERT_EQ(one.post_state.electron_count(), 4u);
    }
}

TEST(charge_detect, diagnostic_counts) {
    const QuantumState s = pbs(tensor(make_single_electron(std::sqrt(0.5), std::sqrt(0.5), "a"),
                                      make_single_electron(1, 0, "b")),
                               kPorts);
    // a/up and b/down land in o1, the rest in o2.
    const auto counts = charge_count_diagnostic(s, {"o1"});
    ASSERT_NEAR(counts.at(0).probability, 0.5, 1e-15);
    ASSERT_NEAR(counts.at(1).probability, 0.5, 1e-15);
    ASSERT_FALSE(counts.contains(2));
    const auto bunched = charge_count_diagnostic(
        pbs(tensor(make_single_electron(1, 0, "a"), make_single_electron(0, 1, "b")), kPorts), {"o1"});
    ASSERT_NEAR(bunched.at(2).probability, 1.0, 1e-15);
}

TEST(charge_detect, rejects_three_in_region) {
    const QuantumState s = make_w_state(WCoefficients::symmetric(), {"a", "b", "c"});
    ASSERT_THROW(charge_detect(relabel_mode(relabel_mode(s, "b", "a2"), "c", "a3"), {"a", "a2", "a3"}),
                 std::invalid_argument);
}

TEST(parity_gate, basis_inputs) {
    const auto even = parity_gate(tensor(make_single_electron(1, 0, "a"), make_single_electron(1, 0, "b")), "a", "b");
    ASSERT_EQ(even.size(), 1u);
    ASSERT_EQ(std::get<ParityOutcome>(even[0].label), ParityOutcome::Even);
    ASSERT_EQ(even[0].post_state.amplitude(ket({{"a'", 'u'}, {"b'", 'u'}})), Amplitude(1.0));

    const auto odd = parity_gate(tensor(make_single_electron(1, 0, "a"), make_single_electron(0, 1, "b")), "a", "b");
    ASSERT_EQ(odd.size(), 1u);
    ASSERT_EQ(std::get<ParityOutcome>(odd[0].label), ParityOutcome::Odd);
    ASSERT_EQ(odd[0].post_state.amplitude(ket({{"a'", 'u'}, {"b'", 'd'}})), Amplitude(1.0));
}

TEST(parity_gate, product_state_probabilities) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const QuantumState qa = random_qubit(rng, "a"), qb = random_qubit(rng, "b");
        const double ua = std::norm(qa.amplitude(ket({{"a", 'u'}}))), da = 1 - ua;
        const double ub = std::norm(qb.amplitude(ket({{"b", 'u'}}))), db = 1 - ub;
        const auto out = parity_gate(tensor(qa, qb), "a", "b");
        ASSERT_NEAR(branch(out, ParityOutcome::Even).probability, ua * ub + da * db, 1e-12);
        ASSERT_NEAR(branch(out, ParityOutcome::Odd).probability, ua * db + da * ub, 1e-12);
        ASSERT_NEAR(sum_probabilities(out), 1.0, 1e-12);
    }
}

TEST(parity_gate, post_states_are_relabeled_projections) {
    std::mt19937_64 rng(11);
    const QuantumState in = tensor(random_qubit(rng, "a"), random_qubit(rng, "b"));
    const auto out = parity_gate(in, ParityPorts("a", "b", "x", "y"));
    for (bool even : {true, false}) {
        const Projection p = project_and_normalize(in, [&](const Configuration &cfg) {
            return (cfg[0].spin == cfg[1].spin) == even;
        });
        const QuantumState expected = relabel_mode(relabel_mode(p.state, "a", "x"), "b", "y");
        const BranchOutcome &b = branch(out, even ? ParityOutcome::Even : ParityOutcome::Odd);
        ASSERT_TRUE(approx_equal(b.post_state, expected, 1e-12));
    }
}

TEST(parity_gate, agrees_with_pbs_and_charge_detection) {
    std::mt19937_64 rng(2026);
    for (int t = 0; t < 20; ++t) {
        const QuantumState in = tensor(random_qubit(rng, "a"), random_qubit(rng, "b"));
        const double even = branch(parity_gate(in, "a", "b"), ParityOutcome::Even).probability;
        const auto charge = charge_detect(pbs(in, kPorts), {"o1"});
        double one = 0;
        for (const BranchOutcome &b : charge) {
            if (b.label == OutcomeLabel(ChargeOutcome::ExactlyOne)) {
                one = b.probability;
            }
        }
        ASSERT_NEAR(even, one, 1e-12);
    }
}

TEST(parity_gate, needs_one_electron_per_arm) {
    const QuantumState s = tensor(make_single_electron(1, 0, "a"), make_single_electron(1, 0, "c"));
    ASSERT_THROW(parity_gate(s, "a", "b"), std::invalid_argument);
}

TEST(hadamard, maps_up_to_plus) {
    const QuantumState h = hadamard(make_single_electron(1, 0, "m"), "m");
    ASSERT_NEAR(h.amplitude(ket({{"m", 'u'}})).real(), 1 / std::sqrt(2.0), 1e-15);
    ASSERT_NEAR(h.amplitude(ket({{"m", 'd'}})).real(), 1 / std::sqrt(2.0), 1e-15);
    const QuantumState hd = hadamard(make_single_electron(0, 1, "m"), "m");
    ASSERT_NEAR(hd.amplitude(ket({{"m", 'd'}})).real(), -1 / std::sqrt(2.0), 1e-15);
}

TEST(hadamard, is_an_involution) {
    std::mt19937_64 rng(3);
    const QuantumState s = tensor(random_qubit(rng, "m"), random_qubit(rng, "n"));
    ASSERT_TRUE(approx_equal(hadamard(hadamard(s, "m"), "m"), s, 1e-12));
    ASSERT_THROW(hadamard(s, "z"), std::invalid_argument);
}

TEST(hadamard, splits_the_detector_electron_evenly) {
    const QuantumState h = hadamard(eq6_state(WCoefficients::from_squares(0.5, 1.0 / 3.0)), "d2");
    const double up = branch_probability(h, [](const Configuration &c) {
        return c[c.sole_electron_in("d2")].spin == Spin::Up;
    });
    ASSERT_NEAR(up, 0.5, 1e-12);
}

TEST(measure_spin, removes_the_electron) {
    const QuantumState s = tensor(make_single_electron(1, 0, "m"), make_single_electron(0.6, 0.8, "r"));
    const auto out = measure_spin(s, "m");
    ASSERT_EQ(out.size(), 1u);
    ASSERT_EQ(std::get<Spin>(out[0].label), Spin::Up);
    ASSERT_TRUE(approx_equal(out[0].post_state, make_single_electron(0.6, 0.8, "r"), 1e-15));
    ASSERT_EQ(out[0].post_state.electron_count(), 1u);
}

TEST(measure_spin, equal_superposition) {
    const QuantumState s = tensor(make_single_electron(std::sqrt(0.5), std::sqrt(0.5), "m"),
                                  make_single_electron(1, 0, "r"));
    const auto out = measure_spin(s, "m");
    ASSERT_NEAR(branch(out, Spin::Up).probability, 0.5, 1e-15);
    ASSERT_NEAR(branch(out, Spin::Down).probability, 0.5, 1e-15);
}

TEST(measure_spin, first_step_outcomes) {
    const WCoefficients c = WCoefficients::from_squares(0.5, 1.0 / 3.0);
    const auto out = measure_spin(hadamard(eq6_state(c), "d2"), "d2");
    const BranchOutcome &up = branch(out, Spin::Up);
    const BranchOutcome &down = branch(out, Spin::Down);
    ASSERT_NEAR(up.probability, 0.5, 1e-12);
    ASSERT_NEAR(down.probability, 0.5, 1e-12);
    ASSERT_TRUE(equal_ignoring_electron_order(up.post_state, kets::step1_output(c.beta(), c.gamma(), 1), 1e-12));
    ASSERT_TRUE(
        equal_ignoring_electron_order(down.post_state, kets::step1_output(c.beta(), c.gamma(), -1), 1e-12));
}

TEST(measure_spin, needs_the_mode_and_another_electron) {
    ASSERT_THROW(measure_spin(make_single_electron(1, 0, "m"), "z"), std::invalid_argument);
    ASSERT_THROW(measure_spin(make_single_electron(1, 0, "m"), "m"), std::invalid_argument);
}

TEST(phase_correct, flips_only_down) {
    const QuantumState z = phase_correct(make_single_electron(0.6, 0.8, "m"), "m");
    ASSERT_NEAR(z.amplitude(ket({{"m", 'u'}})).real(), 0.6, 1e-15);
    ASSERT_NEAR(z.amplitude(ket({{"m", 'd'}})).real(), -0.8, 1e-15);
}

TEST(phase_correct, is_an_involution) {
    std::mt19937_64 rng(5);
    const QuantumState s = tensor(random_qubit(rng, "m"), random_qubit(rng, "n"));
    ASSERT_TRUE(approx_equal(phase_correct(phase_correct(s, "m"), "m"), s, 0));
}

TEST(phase_correct, repairs_the_down_outcomes) {
    const WCoefficients c = WCoefficients::from_squares(0.2, 0.3);
    const QuantumState phi2 = kets::step1_output(c.beta(), c.gamma(), -1);
    ASSERT_TRUE(approx_equal(phase_correct(phi2, "d1"), kets::step1_output(c.beta(), c.gamma(), 1), 1e-12));

    const QuantumState target = kets::symmetric_output(1);
    ASSERT_TRUE(approx_equal(phase_correct(kets::symmetric_output(-1), "e1"), target, 1e-12));
    // The same ket written with the opposite overall sign.
    const QuantumState flipped_sign = kets::symmetric_output(-1);
    Terms negated;
    for (const auto &[config, amp] : flipped_sign.terms()) {
        negated[config] = -amp;
    }
    const QuantumState corrected = phase_correct(QuantumState(negated), "e1");
    ASSERT_FALSE(approx_equal(corrected, target, 1e-12));
    ASSERT_TRUE(equal_up_to_global_phase(corrected, target, 1e-12));
}

TEST(elements, unitaries_preserve_norm) {
    std::mt19937_64 rng(9);
    const QuantumState s = tensor(tensor(random_qubit(rng, "a"), random_qubit(rng, "b")), random_qubit(rng, "m"));
    ASSERT_NEAR(pbs(s, kPorts).norm_squared(), 1.0, 1e-12);
    ASSERT_NEAR(hadamard(s, "m").norm_squared(), 1.0, 1e-12);
    ASSERT_NEAR(phase_correct(s, "a").norm_squared(), 1.0, 1e-12);
}

TEST(elements, outcome_labels) {
    ASSERT_EQ(to_string(ChargeOutcome::ExactlyOne), "one");
    ASSERT_EQ(to_string(ChargeOutcome::ZeroOrTwo), "zero-or-two");
    ASSERT_EQ(to_string(ParityOutcome::Even), "even");
    ASSERT_EQ(to_string(ParityOutcome::Odd), "odd");
    ASSERT_EQ(to_string(Spin::Up), "up");
    ASSERT_EQ(to_string(Spin::Down), "down");
}
