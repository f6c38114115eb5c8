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

// Entanglement concentration of a three-electron W state.
//
// Step one (Alice) couples the W electron in a1 to an ancilla in a2 and keeps
// the even-parity part, leaving a W state whose first two weights are equal
// in ratio beta:beta:gamma. Step two (Charlie) repeats the idea on c1/c2 and
// leaves the symmetric W state on d1, b1, e1.
//
// ECP1 uses a spin beam splitter plus a charge detector, which discards the
// odd-parity part. ECP2 replaces them with a complete parity-check gate and
// recycles the odd-parity part: after a Hadamard and spin measurement on the
// ancilla it is again a W state, with weights (alpha^2, beta^2, beta*gamma)
// in step one and (beta^2, beta^2, gamma^2) in step two, up to normalization.

#ifndef ECPSIM_PROTOCOLS_H
#define ECPSIM_PROTOCOLS_H

#include <optional>
#include <string>
#include <vector>

#include "ecpsim/state.h"

namespace ecpsim {

enum class Protocol { Ecp1, Ecp2 };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string &name);

struct StepProbabilities {
    double p_step1;
    double p_step2;
    double p_total;
};

class IterationSchedule {
  public:
    IterationSchedule(int n_max = 3, int m_max = 3, double term_cutoff = 1e-12);

    int n_max() const { return n_max_; }
    int m_max() const { return m_max_; }
    double term_cutoff() const { return term_cutoff_; }

  private:
    int n_max_;
    int m_max_;
    double term_cutoff_;
};

/// Coefficients left behind by a failed round.
struct CoeffTraceEntry {
    int step;  // 1 or 2
    int round; // round that failed
    WCoefficients coeffs;
};

struct ProtocolReport {
    Protocol protocol = Protocol::Ecp1;
    std::vector<double> per_round_step1;
    std::vector<double> per_round_step2;
    double sum_step1 = 0.0;
    double sum_step2 = 0.0;
    double p_total = 0.0;
    /// Symmetric W state on (d1, b1, e1); empty when success is impossible.
    std::optional<QuantumState> final_state;
    std::vector<CoeffTraceEntry> coeff_trace;
    /// Largest |simulated - closed form| over every reported probability.
    double closed_form_delta = 0.0;
};

// Closed forms for ECP1.
double ecp1_step1_prob(const WCoefficients &c);
double ecp1_step2_prob(const WCoefficients &c);
double ecp1_total_prob(const WCoefficients &c);
StepProbabilities ecp1_closed_form(const WCoefficients &c);

/// Coefficients after a failed step-one round: (a^2, b^2, b*g) normalized.
WCoefficients recoeff_step1_failure(const WCoefficients &c);
/// Coefficients after a failed step-two round. The input must have the
/// step-two shape alpha == beta (the two beta-role weights); the output
/// is (b^2, b^2, g^2) normalized.
WCoefficients recoeff_step2_failure(const WCoefficients &c);

/// Unconditional probability that step one first succeeds in round n.
double p_step1_round(const WCoefficients &c, int n);
/// Probability, conditioned on step one having succeeded, that step two
/// first succeeds in round m. Depends on c only through beta/gamma.
double p_step2_round(const WCoefficients &c, int m);

/// Runs ECP1 through the element pipeline; probabilities are the simulated
/// branch weights.
ProtocolReport ecp1_run(const WCoefficients &c);

/// ECP2 with the truncated round series. Per-round values are the closed
/// forms; the rounds are also chained through the element pipeline and the
/// worst disagreement lands in closed_form_delta.
ProtocolReport ecp2_run(const WCoefficients &c, const IterationSchedule &sched);

/// Mode names used by both protocols.
namespace modes {
inline const Mode a1{"a1"}, a2{"a2"}, b1{"b1"}, c1{"c1"}, c2{"c2"};
inline const Mode d1{"d1"}, d2{"d2"}, e1{"e1"}, e2{"e2"};
} // namespace modes

/// The symmetric W state on (d1, b1, e1) that both protocols aim for.
QuantumState target_state();

} // namespace ecpsim

#endif
