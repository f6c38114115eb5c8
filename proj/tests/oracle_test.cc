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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "test_support.h"

using namespace ecpsim;
using ecpsim::kets::ket;

namespace {

void for_each_node(const OutcomeNode &node, const std::function<void(const OutcomeNode &)> &fn) {
    fn(node);
    for (const OutcomeNode &child : node.children) {
        for_each_node(child, fn);
    }
}

double leaf_mass(const OutcomeNode &root) {
    double total = 0;
    for_each_node(root, [&](const OutcomeNode &n) {
        if (n.children.empty()) {
            total += n.probability;
        }
        total += n.pruned_mass;
    });
    return total;
}

} // namespace

TEST(oracle, ecp1_symmetric_success_mass) {
    const OutcomeNode root = enumerate_tree(WCoefficients::symmetric(), Protocol::Ecp1, IterationSchedule());
    const TreeMasses m = tree_masses(root);
    EXPECT_NEAR(m.success, 0.25, 1e-12);
    EXPECT_NEAR(m.success + m.failure + m.pruned, 1.0, 1e-12);
    EXPECT_TRUE(success_state_check(root));
}

TEST(oracle, ecp2_symmetric_success_mass) {
    const OutcomeNode root = enumerate_tree(WCoefficients::symmetric(), Protocol::Ecp2, IterationSchedule(3, 3));
    const TreeMasses m = tree_masses(root);
    EXPECT_NEAR(m.success, 49.0 / 64, 1e-12);
    ASSERT_EQ(m.step1_by_round.size(), 3u);
    EXPECT_NEAR(m.step1_by_round[2], 0.125, 1e-12);
    EXPECT_NEAR(m.step2_by_round[1], 0.25, 1e-12);
}

TEST(oracle, leaf_mass_is_conserved) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        const WCoefficients c = sample_coefficients(rng);
        for (Protocol p : {Protocol::Ecp1, Protocol::Ecp2}) {
            const OutcomeNode root = enumerate_tree(c, p, IterationSchedule(4, 4));
            EXPECT_NEAR(leaf_mass(root), 1.0, 1e-12);
            EXPECT_LE(max_conservation_violation(root), 1e-12);
            EXPECT_LE(max_branch_sum_violation(root), 1e-12);
        }
    }
}

TEST(oracle, ecp2_success_mass_is_the_series_product) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 5; ++t) {
        const WCoefficients c = sample_coefficients(rng);
        const IterationSchedule sched(4, 3, 0);
        EXPECT_NEAR(tree_masses(enumerate_tree(c, Protocol::Ecp2, sched)).success, ecp2_run(c, sched).p_total, 1e-10);
    }
}

TEST(oracle, success_leaves_are_the_symmetric_state) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 5; ++t) {
        const SuccessCheck check =
            success_state_check(enumerate_tree(sample_coefficients(rng), Protocol::Ecp2, IterationSchedule(3, 3)));
        EXPECT_TRUE(check.passed);
        EXPECT_FALSE(check.vacuous);
        EXPECT_GT(check.success_leaves, 0u);
    }
}

TEST(oracle, no_gamma_is_vacuous) {
    const SuccessCheck check =
        success_state_check(enumerate_tree(WCoefficients::from_squares(0.5, 0.5), Protocol::Ecp1, IterationSchedule()));
    EXPECT_TRUE(check.passed);
    EXPECT_TRUE(check.vacuous);
}

TEST(oracle, crosscheck_symmetric) {
    const CrossCheckReport r = crosscheck(WCoefficients::symmetric(), IterationSchedule(4, 4));
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.max_abs_delta, 1e-12);
    EXPECT_FALSE(r.deltas.empty());
}

TEST(oracle, crosscheck_random_triples) {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 50; ++t) {
        const CrossCheckReport r = crosscheck(sample_coefficients(rng), IterationSchedule(3, 3));
        EXPECT_TRUE(r.pass) << r.max_abs_delta;
    }
}

TEST(oracle, crosscheck_catches_a_wrong_formula) {
    const CrossCheckReport r =
        crosscheck(WCoefficients::from_squares(0.5, 1.0 / 3.0), IterationSchedule(3, 3), corrupted_closed_forms());
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_abs_delta, 1e-3);
}

TEST(oracle, step1_success_keeps_the_beta_gamma_ratio) {
    const WCoefficients c = WCoefficients::from_squares(0.45, 0.2);
    const double expected = c.beta() / c.gamma();
    int seen = 0;
    for_each_node(enumerate_tree(c, Protocol::Ecp2, IterationSchedule(5, 1)), [&](const OutcomeNode &n) {
        if (n.milestone != Milestone::Step1Done) {
            return;
        }
        const QuantumState s = forget_electron_labels(n.state);
        const double b = std::abs(s.amplitude(ket({{"b1", 'd'}, {"c1", 'u'}, {"d1", 'u'}})));
        const double g = std::abs(s.amplitude(ket({{"b1", 'u'}, {"c1", 'd'}, {"d1", 'u'}})));
        const double d = std::abs(s.amplitude(ket({{"b1", 'u'}, {"c1", 'u'}, {"d1", 'd'}})));
        EXPECT_NEAR(b / g, expected, 1e-12) << n.round;
        EXPECT_NEAR(d, b, 1e-12);
        ++seen;
    });
    EXPECT_EQ(seen, 62); // 2^(n-1) retry paths reach round n, two detector outcomes each
}

TEST(oracle, sampled_coefficients_stay_inside_the_simplex) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        const WCoefficients c = sample_coefficients(rng);
        EXPECT_GE(c.alpha_sq(), 0.01);
        EXPECT_GE(c.beta_sq(), 0.01);
        EXPECT_GE(c.gamma_sq(), 0.01);
    }
}

TEST(oracle, dump_golden) {
    std::ostringstream out;
    dump_tree(out, enumerate_tree(WCoefficients::symmetric(), Protocol::Ecp1, IterationSchedule()));
    EXPECT_EQ(out.str(), "root 1\n"
                         "  C1:one 0.5\n"
                         "    D1:up 0.25\n"
                         "      C2:one 0.125\n"
                         "        D2:up 0.0625 success\n"
                         "        D2:down 0.0625 success\n"
                         "      C2:zero-or-two 0.125 failure\n"
                         "    D1:down 0.25\n"
                         "      C2:one 0.125\n"
                         "        D2:up 0.0625 success\n"
                         "        D2:down 0.0625 success\n"
                         "      C2:zero-or-two 0.125 failure\n"
                         "  C1:zero-or-two 0.5 failure\n");
}

TEST(oracle, ecp2_paths_are_labeled_by_round) {
    const OutcomeNode root = enumerate_tree(WCoefficients::symmetric(), Protocol::Ecp2, IterationSchedule(2, 1));
    std::ostringstream out;
    dump_tree(out, root);
    EXPECT_NE(out.str().find("P1[2]:odd"), std::string::npos);
    EXPECT_NE(out.str().find("D1[2]:down"), std::string::npos);
    EXPECT_NE(out.str().find("P2[1]:even"), std::string::npos);
    EXPECT_GT(node_count(root), 10u);
}
