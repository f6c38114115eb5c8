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

#ifndef ECPSIM_ELEMENTS_H
#define ECPSIM_ELEMENTS_H

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ecpsim/state.h"

namespace ecpsim {

/// Spin beam splitter wiring. Up is transmitted and down reflected, so
/// in_a/up and in_b/down leave through out_1 while in_a/down and in_b/up
/// leave through out_2. Equal spins therefore split one per arm and
/// opposite spins bunch into a single arm.
struct PbsPorts {
    Mode in_a;
    Mode in_b;
    Mode out_1;
    Mode out_2;

    PbsPorts(Mode in_a, Mode in_b, Mode out_1, Mode out_2);
};

/// Input and output arms of the complete parity-check gate.
struct ParityPorts {
    Mode in_a;
    Mode in_b;
    Mode out_a;
    Mode out_b;

    ParityPorts(Mode in_a, Mode in_b, Mode out_a, Mode out_b);
};

/// A charge detector only tells occupancy one apart from zero-or-two.
enum class ChargeOutcome { ExactlyOne, ZeroOrTwo };

/// Even parity (up-up, down-down) is reported as C=1, odd as C=0.
enum class ParityOutcome { Even, Odd };

using OutcomeLabel = std::variant<ChargeOutcome, ParityOutcome, Spin>;

std::string to_string(const OutcomeLabel &label);

struct BranchOutcome {
    OutcomeLabel label;
    double probability;
    QuantumState post_state;
};

QuantumState pbs(const QuantumState &state, const PbsPorts &ports);

/// Nondestructive charge measurement on the union of `region`'s modes.
/// Zero-probability outcomes are omitted. Throws if any configuration puts
/// more than two electrons in the region.
std::vector<BranchOutcome> charge_detect(const QuantumState &state, const std::set<Mode> &region);

/// Resolves the exact electron count in `region`. Diagnostics only; the
/// protocols never look at this finer alphabet.
std::map<std::size_t, Projection> charge_count_diagnostic(const QuantumState &state, const std::set<Mode> &region);

/// Nondestructive spin-parity measurement of the electrons in in_a and in_b.
/// Each configuration must hold exactly one electron in each input arm.
std::vector<BranchOutcome> parity_gate(const QuantumState &state, const ParityPorts &ports);
/// Outputs go to `mode_a + "'"` and `mode_b + "'"`.
std::vector<BranchOutcome> parity_gate(const QuantumState &state, const Mode &mode_a, const Mode &mode_b);

QuantumState hadamard(const QuantumState &state, const Mode &mode);

/// Destructive spin measurement: the detected electron is removed from
/// every post-measurement configuration.
std::vector<BranchOutcome> measure_spin(const QuantumState &state, const Mode &mode);

/// Sign flip on the down component of the electron in `mode`.
QuantumState phase_correct(const QuantumState &state, const Mode &mode);

} // namespace ecpsim

#endif
