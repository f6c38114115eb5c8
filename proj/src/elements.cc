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

#include <array>
#include <cmath>

namespace ecpsim {

namespace {

void require_distinct(const std::array<const Mode *, 4> &modes, const char *what) {
    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            if (*modes[i] == *modes[j]) {
                throw std::invalid_argument(std::string(what) + ": port labels must be pairwise distinct");
            }
        }
    }
}

// Row-major 2x2 matrix acting on (up, down).
using SpinMatrix = std::array<Amplitude, 4>;

QuantumState apply_spin_matrix(const QuantumState &state, const Mode &mode, const SpinMatrix &u) {
    Terms out;
    for (const auto &[config, amp] : state.terms()) {
        const std::size_t k = config.sole_electron_in(mode);
        const std::size_t col = config[k].spin == Spin::Up ? 0 : 1;
        for (std::size_t row = 0; row < 2; ++row) {
            const Amplitude entry = u[row * 2 + col];
            if (entry == Amplitude{}) {
                continue;
            }
            Configuration next = config;
            next[k].spin = row == 0 ? Spin::Up : Spin::Down;
            out[next] += entry * amp;
        }
    }
    return QuantumState(std::move(out));
}

std::vector<BranchOutcome> split(const QuantumState &state,
                                 const std::vector<std::pair<OutcomeLabel, Predicate>> &outcomes) {
    std::vector<BranchOutcome> branches;
    for (const auto &[label, keep] : outcomes) {
        if (branch_probability(state, keep) == 0.0) {
            continue;
        }
        auto [p, post] = project_and_normalize(state, keep);
        branches.push_back({label, p, std::move(post)});
    }
    return branches;
}

} // namespace

std::string to_string(const OutcomeLabel &label) {
    struct Visitor {
        std::string operator()(ChargeOutcome c) const { return c == ChargeOutcome::ExactlyOne ? "one" : "zero-or-two"; }
        std::string operator()(ParityOutcome p) const { return p == ParityOutcome::Even ? "even" : "odd"; }
        std::string operator()(Spin s) const { return s == Spin::Up ? "up" : "down"; }
    };
    return std::visit(Visitor{}, label);
}

PbsPorts::PbsPorts(Mode in_a_, Mode in_b_, Mode out_1_, Mode out_2_)
    : in_a(std::move(in_a_)), in_b(std::move(in_b_)), out_1(std::move(out_1_)), out_2(std::move(out_2_)) {
    require_distinct({&in_a, &in_b, &out_1, &out_2}, "PBS");
}

ParityPorts::ParityPorts(Mode in_a_, Mode in_b_, Mode out_a_, Mode out_b_)
    : in_a(std::move(in_a_)), in_b(std::move(in_b_)), out_a(std::move(out_a_)), out_b(std::move(out_b_)) {
    require_distinct({&in_a, &in_b, &out_a, &out_b}, "parity gate");
}

QuantumState pbs(const QuantumState &state, const PbsPorts &ports) {
    Terms out;
    for (const auto &[config, amp] : state.terms()) {
        Configuration next = config;
        for (std::size_t i = 0; i < next.size(); ++i) {
            Electron &e = next[i];
            if (e.mode == ports.in_a) {
                e.mode = e.spin == Spin::Up ? ports.out_1 : ports.out_2;
            } else if (e.mode == ports.in_b) {
                e.mode = e.spin == Spin::Up ? ports.out_2 : ports.out_1;
            }
        }
        out[next] += amp;
    }
    return QuantumState(std::move(out));
}

namespace {

std::size_t count_in(const Configuration &config, const std::set<Mode> &region) {
    std::size_t n = 0;
    for (const Electron &e : config) {
        n += region.contains(e.mode) ? 1 : 0;
    }
    return n;
}

} // namespace

std::vector<BranchOutcome> charge_detect(const QuantumState &state, const std::set<Mode> &region) {
    for (const auto &[config, amp] : state.terms()) {
        if (count_in(config, region) > 2) {
            throw std::invalid_argument("charge detector region holds more than two electrons");
        }
    }
    return split(state, {
                            {ChargeOutcome::ExactlyOne, [&](const Configuration &c) { return count_in(c, region) == 1; }},
                            {ChargeOutcome::ZeroOrTwo, [&](const Configuration &c) { return count_in(c, region) != 1; }},
                        });
}

std::map<std::size_t, Projection> charge_count_diagnostic(const QuantumState &state, const std::set<Mode> &region) {
    std::set<std::size_t> counts;
    for (const auto &[config, amp] : state.terms()) {
        counts.insert(count_in(config, region));
    }
    std::map<std::size_t, Projection> out;
    for (std::size_t n : counts) {
        out.emplace(n, project_and_normalize(state, [&](const Configuration &c) { return count_in(c, region) == n; }));
    }
    return out;
}

std::vector<BranchOutcome> parity_gate(const QuantumState &state, const ParityPorts &ports) {
    Terms even;
    Terms odd;
    for (const auto &[config, amp] : state.terms()) {
        const std::size_t ia = config.sole_electron_in(ports.in_a);
        const std::size_t ib = config.sole_electron_in(ports.in_b);
        if (config.uses_mode(ports.out_a) || config.uses_mode(ports.out_b)) {
            throw std::invalid_argument("parity gate output arm is already occupied");
        }
        Configuration next = config;
        next[ia].mode = ports.out_a;
        next[ib].mode = ports.out_b;
        (config[ia].spin == config[ib].spin ? even : odd).emplace(std::move(next), amp);
    }
    std::vector<BranchOutcome> branches;
    for (auto [label, terms] : {std::pair{ParityOutcome::Even, &even}, std::pair{ParityOutcome::Odd, &odd}}) {
        double p = 0.0;
        for (const auto &[config, amp] : *terms) {
            p += std::norm(amp);
        }
        if (p == 0.0) {
            continue;
        }
        branches.push_back({label, std::min(p, 1.0), QuantumState::normalized(std::move(*terms))});
    }
    return branches;
}

std::vector<BranchOutcome> parity_gate(const QuantumState &state, const Mode &mode_a, const Mode &mode_b) {
    return parity_gate(state, ParityPorts(mode_a, mode_b, Mode(mode_a.name() + "'"), Mode(mode_b.name() + "'")));
}

QuantumState hadamard(const QuantumState &state, const Mode &mode) {
    const double h = 1.0 / std::sqrt(2.0);
    return apply_spin_matrix(state, mode, {h, h, h, -h});
}

QuantumState phase_correct(const QuantumState &state, const Mode &mode) {
    return apply_spin_matrix(state, mode, {1.0, 0.0, 0.0, -1.0});
}

std::vector<BranchOutcome> measure_spin(const QuantumState &state, const Mode &mode) {
    std::array<Terms, 2> by_spin;
    for (const auto &[config, amp] : state.terms()) {
        const std::size_t k = config.sole_electron_in(mode);
        if (config.size() == 1) {
            throw std::invalid_argument("measure_spin: cannot remove the last electron of a state");
        }
        by_spin[config[k].spin == Spin::Up ? 0 : 1][config.without(k)] += amp;
    }
    std::vector<BranchOutcome> branches;
    for (std::size_t s = 0; s < 2; ++s) {
        double p = 0.0;
        for (const auto &[config, amp] : by_spin[s]) {
            p += std::norm(amp);
        }
        if (p == 0.0) {
            continue;
        }
        branches.push_back({s == 0 ? Spin::Up : Spin::Down, std::min(p, 1.0), QuantumState::normalized(std::move(by_spin[s]))});
    }
    return branches;
}

} // namespace ecpsim
