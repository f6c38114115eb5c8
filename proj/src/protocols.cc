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

#include "ecpsim/protocols.h"

#include <algorithm>
#include <cmath>

#include "ecpsim/elements.h"

namespace ecpsim {

std::string to_string(Protocol p) { return p == Protocol::Ecp1 ? "ecp1" : "ecp2"; }

Protocol parse_protocol(const std::string &name) {
    if (name == "ecp1") {
        return Protocol::Ecp1;
    }
    if (name == "ecp2") {
        return Protocol::Ecp2;
    }
    throw std::invalid_argument("unknown protocol '" + name + "' (expected ecp1 or ecp2)");
}

IterationSchedule::IterationSchedule(int n_max, int m_max, double term_cutoff)
    : n_max_(n_max), m_max_(m_max), term_cutoff_(term_cutoff) {
    if (n_max < 1 || m_max < 1) {
        throw std::invalid_argument("iteration counts must be at least 1");
    }
    if (!(term_cutoff >= 0.0)) {
        throw std::invalid_argument("term cutoff must be non-negative");
    }
}

double ecp1_step1_prob(const WCoefficients &c) {
    const double a = c.alpha_sq(), b = c.beta_sq(), g = c.gamma_sq();
    if (a + b == 0.0) {
        throw DegenerateInputError("step one needs alpha^2 + beta^2 > 0");
    }
    return a * (g + 2.0 * b) / (a + b);
}

double ecp1_step2_prob(const WCoefficients &c) {
    const double b = c.beta_sq(), g = c.gamma_sq();
    if (b + g == 0.0) {
        throw DegenerateInputError("step two needs beta^2 + gamma^2 > 0");
    }
    return 3.0 * b * g / ((g + b) * (g + 2.0 * b));
}

double ecp1_total_prob(const WCoefficients &c) { return ecp1_step1_prob(c) * ecp1_step2_prob(c); }

StepProbabilities ecp1_closed_form(const WCoefficients &c) {
    const double p1 = ecp1_step1_prob(c);
    const double p2 = ecp1_step2_prob(c);
    return {p1, p2, p1 * p2};
}

WCoefficients recoeff_step1_failure(const WCoefficients &c) {
    const double alpha = c.alpha_sq(), beta = c.beta_sq(), gamma = c.beta() * c.gamma();
    if (alpha == 0.0 && beta == 0.0 && gamma == 0.0) {
        throw DegenerateInputError("odd-parity branch of step one is empty");
    }
    return WCoefficients::normalize(alpha, beta, gamma);
}

WCoefficients recoeff_step2_failure(const WCoefficients &c) {
    if (std::abs(c.alpha() - c.beta()) > kNormTolerance) {
        throw std::invalid_argument("step-two coefficients must carry equal alpha and beta weights");
    }
    return WCoefficients::normalize(c.beta_sq(), c.beta_sq(), c.gamma_sq());
}

namespace {

// Past this round count the raw powers 2^n are replaced by the normalized
// recursion, which cannot underflow.
constexpr int kMaxClosedFormRound = 40;

// ln(x^(2^k) + y^(2^k)) for x, y >= 0, not both zero.
double log_power_sum(double x, double y, int k) {
    const double hi = std::max(x, y), lo = std::min(x, y);
    return std::ldexp(std::log(hi), k) + std::log1p(std::pow(lo / hi, std::ldexp(1.0, k)));
}

// Probability of the odd branch for a step-one round run on `c`.
double step1_odd_prob(const WCoefficients &c) {
    const double a = c.alpha_sq(), b = c.beta_sq(), g = c.gamma_sq();
    return (a * a + b * b + b * g) / (a + b);
}

// Probability of the odd branch for a step-two round on the (b, b, g) shape.
double step2_odd_prob(const WCoefficients &c) {
    const double b = c.beta_sq(), g = c.gamma_sq();
    return (g * g + 2.0 * b * b) / ((g + 2.0 * b) * (g + b));
}

double p_step1_round_by_recursion(WCoefficients c, int n) {
    double chain = 1.0;
    for (int k = 1; k < n && chain > 0.0; ++k) {
        chain *= step1_odd_prob(c);
        c = recoeff_step1_failure(c);
    }
    return chain > 0.0 ? chain * ecp1_step1_prob(c) : 0.0;
}

double p_step2_round_by_recursion(const WCoefficients &c, int m) {
    WCoefficients cur = WCoefficients::normalize(c.beta(), c.beta(), c.gamma());
    double chain = 1.0;
    for (int k = 1; k < m && chain > 0.0; ++k) {
        chain *= step2_odd_prob(cur);
        cur = recoeff_step2_failure(cur);
    }
    return chain > 0.0 ? chain * ecp1_step2_prob(cur) : 0.0;
}

} // namespace

double p_step1_round(const WCoefficients &c, int n) {
    if (n < 1) {
        throw std::invalid_argument("round index must be at least 1");
    }
    const double a = c.alpha_sq(), b = c.beta_sq(), g = c.gamma_sq();
    if (a + b == 0.0) {
        throw DegenerateInputError("step one needs alpha^2 + beta^2 > 0");
    }
    if (n > kMaxClosedFormRound) {
        return p_step1_round_by_recursion(c, n);
    }
    // a^(2^(n-1)) * b^(2^(n-1)-1) * (g + 2b) / prod_{k<n} (a^(2^k) + b^(2^k))
    if (a == 0.0 || g + 2.0 * b == 0.0) {
        return 0.0;
    }
    if (b == 0.0) {
        return n == 1 ? g : 0.0;
    }
    double log_p = std::ldexp(std::log(a), n - 1) + (std::ldexp(1.0, n - 1) - 1.0) * std::log(b) + std::log(g + 2.0 * b);
    for (int k = 0; k < n; ++k) {
        log_p -= log_power_sum(a, b, k);
    }
    return std::min(std::exp(log_p), 1.0);
}

double p_step2_round(const WCoefficients &c, int m) {
    if (m < 1) {
        throw std::invalid_argument("round index must be at least 1");
    }
    const double b = c.beta_sq(), g = c.gamma_sq();
    if (b + g == 0.0) {
        throw DegenerateInputError("step two needs beta^2 + gamma^2 > 0");
    }
    if (m > kMaxClosedFormRound) {
        return p_step2_round_by_recursion(c, m);
    }
    // 3 (b g)^(2^(m-1)) / ((g + 2b) prod_{k<m} (g^(2^k) + b^(2^k)))
    if (b == 0.0 || g == 0.0) {
        return 0.0;
    }
    double log_p = std::log(3.0) + std::ldexp(std::log(b) + std::log(g), m - 1) - std::log(g + 2.0 * b);
    for (int k = 0; k < m; ++k) {
        log_p -= log_power_sum(g, b, k);
    }
    return std::min(std::exp(log_p), 1.0);
}

QuantumState target_state() { return make_w_state(WCoefficients::symmetric(), {modes::d1, modes::b1, modes::e1}); }

namespace {

// Hadamard on `measured`, detect its spin, and undo the sign of the down
// outcome with a flip on `correct`. Both outcomes must agree afterwards.
QuantumState erase_and_correct(const QuantumState &state, const Mode &measured, const Mode &correct) {
    const auto branches = measure_spin(hadamard(state, measured), measured);
    std::optional<QuantumState> result;
    for (const BranchOutcome &b : branches) {
        QuantumState s = std::get<Spin>(b.label) == Spin::Down ? phase_correct(b.post_state, correct) : b.post_state;
        if (!result) {
            result = std::move(s);
        } else if (!equal_up_to_global_phase(*result, s, 1e-10)) {
            throw std::logic_error("spin-measurement outcomes disagree after phase correction");
        }
    }
    return *result;
}

const BranchOutcome *find_branch(const std::vector<BranchOutcome> &branches, const OutcomeLabel &label) {
    for (const BranchOutcome &b : branches) {
        if (b.label == label) {
            return &b;
        }
    }
    return nullptr;
}

// Ancilla (x|u> + y|d>)/norm; nullopt when both weights vanish.
std::optional<QuantumState> ancilla(Amplitude up, Amplitude down, const Mode &mode) {
    const double norm = std::sqrt(std::norm(up) + std::norm(down));
    if (norm < kPruneThreshold) {
        return std::nullopt;
    }
    return make_single_electron(up / norm, down / norm, mode);
}

Configuration w_term(const std::array<Mode, 3> &m, int flipped_party) {
    std::vector<Electron> electrons;
    for (int k = 0; k < 3; ++k) {
        electrons.push_back({m[static_cast<std::size_t>(k)], k == flipped_party ? Spin::Down : Spin::Up});
    }
    return Configuration(std::move(electrons)).sorted();
}

// Magnitudes of a W state's three amplitudes as coefficients.
WCoefficients coefficients_of(const QuantumState &w, const std::array<Mode, 3> &m) {
    const QuantumState view = forget_electron_labels(w);
    return WCoefficients::normalize(std::abs(view.amplitude(w_term(m, 0))), std::abs(view.amplitude(w_term(m, 1))),
                                    std::abs(view.amplitude(w_term(m, 2))));
}

// Amplitude of a W basis term regardless of electron order.
Amplitude w_amplitude(const QuantumState &w, const std::array<Mode, 3> &m, int flipped_party) {
    return forget_electron_labels(w).amplitude(w_term(m, flipped_party));
}

} // namespace

ProtocolReport ecp1_run(const WCoefficients &c) {
    using namespace modes;
    const StepProbabilities closed = ecp1_closed_form(c);

    ProtocolReport report;
    report.protocol = Protocol::Ecp1;

    // Step one: W(a1, b1, c1) with ancilla (alpha|u> + beta|d>) in a2.
    const QuantumState joint =
        tensor(make_w_state(c, {a1, b1, c1}), *ancilla(c.alpha(), c.beta(), a2));
    const auto c1_branches = charge_detect(pbs(joint, PbsPorts(a1, a2, d1, d2)), {d1});
    const BranchOutcome *one1 = find_branch(c1_branches, ChargeOutcome::ExactlyOne);
    const double p1 = one1 ? one1->probability : 0.0;

    // Step two: ancilla (gamma|u> + beta|d>) in c2; e2 is the monitored arm.
    double p2 = 0.0;
    if (one1) {
        const QuantumState w = erase_and_correct(one1->post_state, d2, d1);
        const QuantumState joint2 = tensor(w, *ancilla(c.gamma(), c.beta(), c2));
        const auto c2_branches = charge_detect(pbs(joint2, PbsPorts(c1, c2, e2, e1)), {e2});
        if (const BranchOutcome *one2 = find_branch(c2_branches, ChargeOutcome::ExactlyOne)) {
            p2 = one2->probability;
            report.final_state = forget_electron_labels(erase_and_correct(one2->post_state, e2, e1));
        }
    }

    report.per_round_step1 = {p1};
    report.per_round_step2 = {p2};
    report.sum_step1 = p1;
    report.sum_step2 = p2;
    report.p_total = p1 * p2;
    // Step two is unreachable when step one never succeeds, so its
    // conditional probability has nothing to be compared against.
    report.closed_form_delta = std::max(std::abs(p1 - closed.p_step1), std::abs(report.p_total - closed.p_total));
    if (one1) {
        report.closed_form_delta = std::max(report.closed_form_delta, std::abs(p2 - closed.p_step2));
    }
    return report;
}

namespace {

// Collects per-round closed forms until n_max or the cutoff. Degenerate
// coefficients give an empty list.
template <typename RoundFn>
std::vector<double> collect_rounds(RoundFn round, int max_rounds, double cutoff) {
    std::vector<double> out;
    try {
        for (int n = 1; n <= max_rounds; ++n) {
            const double p = round(n);
            if (p < cutoff) {
                break;
            }
            out.push_back(p);
        }
    } catch (const DegenerateInputError &) {
        out.clear();
    }
    return out;
}

double sum_of(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s;
}

} // namespace

ProtocolReport ecp2_run(const WCoefficients &c, const IterationSchedule &sched) {
    using namespace modes;
    ProtocolReport report;
    report.protocol = Protocol::Ecp2;
    report.per_round_step1 =
        collect_rounds([&](int n) { return p_step1_round(c, n); }, sched.n_max(), sched.term_cutoff());
    report.per_round_step2 =
        collect_rounds([&](int m) { return p_step2_round(c, m); }, sched.m_max(), sched.term_cutoff());
    report.sum_step1 = sum_of(report.per_round_step1);
    report.sum_step2 = sum_of(report.per_round_step2);
    report.p_total = report.sum_step1 * report.sum_step2;

    double delta = 0.0;
    auto track = [&](double simulated, double closed) { delta = std::max(delta, std::abs(simulated - closed)); };

    // Step one chained through the parity gate, carrying the odd branch.
    const std::array<Mode, 3> w_modes{a1, b1, c1};
    std::optional<QuantumState> step1_success;
    {
        std::optional<WCoefficients> recursed = c;
        QuantumState w = make_w_state(c, w_modes);
        double chain = 1.0;
        for (std::size_t n = 1; n <= report.per_round_step1.size(); ++n) {
            const auto anc = ancilla(w_amplitude(w, w_modes, 0), w_amplitude(w, w_modes, 1), a2);
            if (!anc) {
                break;
            }
            const auto branches = parity_gate(tensor(w, *anc), ParityPorts(a1, a2, d1, d2));
            const BranchOutcome *even = find_branch(branches, ParityOutcome::Even);
            const BranchOutcome *odd = find_branch(branches, ParityOutcome::Odd);
            track(even ? chain * even->probability : 0.0, report.per_round_step1[n - 1]);
            if (even && !step1_success) {
                step1_success = erase_and_correct(even->post_state, d2, d1);
            }
            if (!odd) {
                break;
            }
            chain *= odd->probability;
            w = relabel_mode(erase_and_correct(odd->post_state, d2, d1), d1, a1);
            const WCoefficients simulated = coefficients_of(w, w_modes);
            try {
                recursed = recoeff_step1_failure(*recursed);
            } catch (const DegenerateInputError &) {
                break;
            }
            report.coeff_trace.push_back({1, static_cast<int>(n), *recursed});
            track(simulated.alpha(), recursed->alpha());
            track(simulated.beta(), recursed->beta());
            track(simulated.gamma(), recursed->gamma());
        }
    }

    // Step two chained the same way on c1/c2, starting from the step-one
    // success state (d1, b1, c1).
    if (step1_success) {
        const std::array<Mode, 3> s_modes{d1, b1, c1};
        QuantumState w = *step1_success;
        std::optional<WCoefficients> recursed = coefficients_of(w, s_modes);
        double chain = 1.0;
        for (std::size_t m = 1; m <= report.per_round_step2.size(); ++m) {
            const auto anc = ancilla(w_amplitude(w, s_modes, 2), w_amplitude(w, s_modes, 0), c2);
            if (!anc) {
                break;
            }
            const auto branches = parity_gate(tensor(w, *anc), ParityPorts(c1, c2, e1, e2));
            const BranchOutcome *even = find_branch(branches, ParityOutcome::Even);
            const BranchOutcome *odd = find_branch(branches, ParityOutcome::Odd);
            track(even ? chain * even->probability : 0.0, report.per_round_step2[m - 1]);
            if (even && !report.final_state && report.p_total > 0.0) {
                report.final_state = forget_electron_labels(erase_and_correct(even->post_state, e2, e1));
            }
            if (!odd) {
                break;
            }
            chain *= odd->probability;
            w = relabel_mode(erase_and_correct(odd->post_state, e2, e1), e1, c1);
            const WCoefficients simulated = coefficients_of(w, s_modes);
            try {
                recursed = recoeff_step2_failure(*recursed);
            } catch (const DegenerateInputError &) {
                break;
            }
            report.coeff_trace.push_back({2, static_cast<int>(m), *recursed});
            track(simulated.alpha(), recursed->alpha());
            track(simulated.beta(), recursed->beta());
            track(simulated.gamma(), recursed->gamma());
        }
    }

    report.closed_form_delta = delta;
    return report;
}

} // namespace ecpsim
