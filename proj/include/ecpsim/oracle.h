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

// Brute-force verifier. Expands every measurement of a protocol into all of
// its outcomes using only the state and element primitives, then compares the
// resulting masses with the closed forms in protocols.h.

#ifndef ECPSIM_ORACLE_H
#define ECPSIM_ORACLE_H

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ecpsim/protocols.h"
#include "ecpsim/state.h"

namespace ecpsim {

enum class Terminal { Continue, Success, Failure };

/// Marks the node at which a protocol step completed, for per-round sums.
enum class Milestone { None, Step1Done, Step2Done };

struct OutcomeNode {
    std::vector<std::string> path;
    double probability = 1.0; // unconditional
    QuantumState state;
    Terminal terminal = Terminal::Continue;
    Milestone milestone = Milestone::None;
    int round = 0; // round of the step that reached the milestone
    double conditional = 1.0; // probability given the parent
    double pruned_mass = 0.0; // children dropped below kTreePruneMass
    double pruned_conditional = 0.0;
    std::vector<OutcomeNode> children;
};

/// Branches with unconditional probability below this are not expanded.
inline constexpr double kTreePruneMass = 1e-15;

/// Builds the complete outcome tree. ECP1 ignores the schedule; ECP2 runs at
/// most n_max step-one rounds and m_max step-two rounds (the cutoff is not
/// applied, the tree is exact).
OutcomeNode enumerate_tree(const WCoefficients &c, Protocol protocol, const IterationSchedule &sched);

struct SuccessCheck {
    bool passed = true;
    bool vacuous = false; // no success leaf existed
    std::size_t success_leaves = 0;

    explicit operator bool() const { return passed; }
};

/// Every success leaf must be the symmetric W state on (d1, b1, e1) up to a
/// global phase, within 1e-10.
SuccessCheck success_state_check(const OutcomeNode &root);

/// Aggregated masses read off a tree.
struct TreeMasses {
    std::vector<double> step1_by_round;     // unconditional
    std::vector<double> step2_by_round;     // conditional on step one
    double step1_total = 0.0;
    double success = 0.0;
    double failure = 0.0;
    double pruned = 0.0;
};

TreeMasses tree_masses(const OutcomeNode &root);

/// Largest |parent - (sum of children + pruned)| over internal nodes.
double max_conservation_violation(const OutcomeNode &root);

/// Largest |sum of conditional branch probabilities - 1| over every
/// measurement in the tree.
double max_branch_sum_violation(const OutcomeNode &root);

std::size_t node_count(const OutcomeNode &root);

/// One node per line, indented two spaces per level:
/// `<label> <probability %.15g> [success|failure]`.
void dump_tree(std::ostream &out, const OutcomeNode &root);

/// Closed forms under test. Swappable so a corrupted set can prove the
/// cross-check actually detects disagreement.
struct ClosedForms {
    std::function<double(const WCoefficients &)> step1;
    std::function<double(const WCoefficients &)> step2;
    std::function<double(const WCoefficients &)> total;
    std::function<double(const WCoefficients &, int)> step1_round;
    std::function<double(const WCoefficients &, int)> step2_round;
};

ClosedForms default_closed_forms();
/// Same as default_closed_forms with the step-one round formula read with
/// the fourth-power numerators, i.e. a deliberately wrong build.
ClosedForms corrupted_closed_forms();

struct QuantityDelta {
    std::string name;
    double oracle;
    double closed_form;
    double delta;
};

struct CrossCheckReport {
    double max_abs_delta = 0.0;
    std::vector<QuantityDelta> deltas;
    bool pass = true;
};

inline constexpr double kCrossCheckTolerance = 1e-10;

/// Draws (alpha^2, beta^2, gamma^2) uniformly from the simplex, redrawing
/// until every square is at least 0.01 so no step is near-degenerate.
WCoefficients sample_coefficients(std::mt19937_64 &rng);

/// ECP1 tree against ecp1 closed forms, ECP2 tree against each round formula
/// and the truncated series product.
CrossCheckReport crosscheck(const WCoefficients &c, const IterationSchedule &sched,
                            const ClosedForms &forms = default_closed_forms());

} // namespace ecpsim

#endif
