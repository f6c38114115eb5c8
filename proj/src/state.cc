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

#include "ecpsim/state.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace ecpsim {

char spin_char(Spin s) { return s == Spin::Up ? 'u' : 'd'; }

Mode::Mode(std::string name) : name_(std::move(name)) {
    if (name_.empty()) {
        throw std::invalid_argument("mode label must be nonempty");
    }
}

Configuration::Configuration(std::vector<Electron> electrons) : electrons_(std::move(electrons)) {
    if (electrons_.empty()) {
        throw std::invalid_argument("a configuration needs at least one electron");
    }
}

std::size_t Configuration::occupancy(const Mode &mode) const {
    return static_cast<std::size_t>(
        std::count_if(electrons_.begin(), electrons_.end(), [&](const Electron &e) { return e.mode == mode; }));
}

std::size_t Configuration::sole_electron_in(const Mode &mode) const {
    std::size_t found = electrons_.size();
    for (std::size_t i = 0; i < electrons_.size(); ++i) {
        if (electrons_[i].mode == mode) {
            if (found != electrons_.size()) {
                throw std::invalid_argument("mode " + mode.name() + " holds more than one electron");
            }
            found = i;
        }
    }
    if (found == electrons_.size()) {
        throw std::invalid_argument("mode " + mode.name() + " holds no electron");
    }
    return found;
}

Configuration Configuration::without(std::size_t index) const {
    std::vector<Electron> rest;
    rest.reserve(electrons_.size() - 1);
    for (std::size_t i = 0; i < electrons_.size(); ++i) {
        if (i != index) {
            rest.push_back(electrons_[i]);
        }
    }
    return Configuration(std::move(rest));
}

Configuration Configuration::sorted() const {
    std::vector<Electron> electrons = electrons_;
    std::sort(electrons.begin(), electrons.end());
    return Configuration(std::move(electrons));
}

Configuration Configuration::concat(const Configuration &tail) const {
    std::vector<Electron> all = electrons_;
    all.insert(all.end(), tail.electrons_.begin(), tail.electrons_.end());
    return Configuration(std::move(all));
}

namespace {

Terms pruned(Terms terms) {
    std::erase_if(terms, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
    return terms;
}

double squared_norm_of(const Terms &terms) {
    double total = 0.0;
    for (const auto &[config, amp] : terms) {
        total += std::norm(amp);
    }
    return total;
}

} // namespace

QuantumState::QuantumState(Terms terms) : terms_(pruned(std::move(terms))) {
    if (terms_.empty()) {
        throw NormalizationError("state has no amplitude above the pruning threshold");
    }
    const std::size_t n = terms_.begin()->first.size();
    for (const auto &[config, amp] : terms_) {
        if (config.size() != n) {
            throw std::invalid_argument("all configurations of a state must have the same electron count");
        }
    }
    const double norm = squared_norm_of(terms_);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw NormalizationError("state is not unit-norm (squared norm " + std::to_string(norm) + ")");
    }
}

QuantumState QuantumState::normalized(Terms terms) {
    terms = pruned(std::move(terms));
    const double norm = squared_norm_of(terms);
    if (terms.empty() || norm <= 0.0) {
        throw EmptyBranchError("branch has zero probability");
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &[config, amp] : terms) {
        amp *= scale;
    }
    return QuantumState(std::move(terms));
}

Amplitude QuantumState::amplitude(const Configuration &config) const {
    auto it = terms_.find(config);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double QuantumState::norm_squared() const { return squared_norm_of(terms_); }

WCoefficients::WCoefficients(double alpha, double beta, double gamma) : alpha_(alpha), beta_(beta), gamma_(gamma) {
    for (double v : {alpha, beta, gamma}) {
        if (!(v >= 0.0 && v <= 1.0 + kNormTolerance)) {
            throw NormalizationError("W coefficients must be real and lie in [0, 1]");
        }
    }
    const double norm = alpha * alpha + beta * beta + gamma * gamma;
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw NormalizationError("W coefficients must satisfy alpha^2 + beta^2 + gamma^2 = 1 (got " +
                                 std::to_string(norm) + ")");
    }
}

WCoefficients WCoefficients::from_squares(double alpha_sq, double beta_sq) {
    if (!(alpha_sq >= 0.0 && beta_sq >= 0.0)) {
        throw NormalizationError("squared coefficients must be non-negative");
    }
    double gamma_sq = 1.0 - alpha_sq - beta_sq;
    if (gamma_sq < 0.0) {
        if (gamma_sq < -kNormTolerance) {
            throw NormalizationError("alpha^2 + beta^2 exceeds 1, so gamma^2 = " + std::to_string(gamma_sq) +
                                     " is negative");
        }
        gamma_sq = 0.0;
    }
    return WCoefficients(std::sqrt(alpha_sq), std::sqrt(beta_sq), std::sqrt(gamma_sq));
}

WCoefficients WCoefficients::normalize(double alpha, double beta, double gamma) {
    const double norm = std::sqrt(alpha * alpha + beta * beta + gamma * gamma);
    if (!(norm > 0.0) || alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
        throw DegenerateInputError("cannot normalize an all-zero or negative coefficient triple");
    }
    return WCoefficients(alpha / norm, beta / norm, gamma / norm);
}

WCoefficients WCoefficients::symmetric() {
    const double c = 1.0 / std::sqrt(3.0);
    return WCoefficients(c, c, c);
}

QuantumState make_w_state(const WCoefficients &coeffs, const std::array<Mode, 3> &modes) {
    if (modes[0] == modes[1] || modes[0] == modes[2] || modes[1] == modes[2]) {
        throw std::invalid_argument("W state modes must be distinct");
    }
    const std::array<double, 3> amps{coeffs.alpha(), coeffs.beta(), coeffs.gamma()};
    Terms terms;
    for (std::size_t flipped_party = 0; flipped_party < 3; ++flipped_party) {
        std::vector<Electron> electrons;
        for (std::size_t k = 0; k < 3; ++k) {
            electrons.push_back({modes[k], k == flipped_party ? Spin::Down : Spin::Up});
        }
        terms.emplace(Configuration(std::move(electrons)), amps[flipped_party]);
    }
    return QuantumState(std::move(terms));
}

QuantumState make_single_electron(Amplitude amp_up, Amplitude amp_down, const Mode &mode) {
    Terms terms;
    terms.emplace(Configuration({{mode, Spin::Up}}), amp_up);
    terms.emplace(Configuration({{mode, Spin::Down}}), amp_down);
    return QuantumState(std::move(terms));
}

namespace {

std::set<Mode> modes_of(const QuantumState &state) {
    std::set<Mode> modes;
    for (const auto &[config, amp] : state.terms()) {
        for (const Electron &e : config) {
            modes.insert(e.mode);
        }
    }
    return modes;
}

} // namespace

QuantumState tensor(const QuantumState &a, const QuantumState &b) {
    const auto modes_a = modes_of(a);
    for (const Mode &m : modes_of(b)) {
        if (modes_a.contains(m)) {
            throw std::invalid_argument("tensor: mode " + m.name() + " appears in both factors");
        }
    }
    Terms terms;
    for (const auto &[ca, amp_a] : a.terms()) {
        for (const auto &[cb, amp_b] : b.terms()) {
            terms.emplace(ca.concat(cb), amp_a * amp_b);
        }
    }
    return QuantumState(std::move(terms));
}

double branch_probability(const QuantumState &state, const Predicate &keep) {
    double total = 0.0;
    for (const auto &[config, amp] : state.terms()) {
        if (keep(config)) {
            total += std::norm(amp);
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

Projection project_and_normalize(const QuantumState &state, const Predicate &keep) {
    Terms kept;
    for (const auto &[config, amp] : state.terms()) {
        if (keep(config)) {
            kept.emplace(config, amp);
        }
    }
    if (kept.empty()) {
        throw EmptyBranchError("post-selection keeps no configuration");
    }
    const double probability = std::clamp(squared_norm_of(kept), 0.0, 1.0);
    return {probability, QuantumState::normalized(std::move(kept))};
}

QuantumState relabel_mode(const QuantumState &state, const Mode &from, const Mode &to) {
    if (from == to) {
        return state;
    }
    Terms terms;
    for (const auto &[config, amp] : state.terms()) {
        if (config.uses_mode(to)) {
            throw std::invalid_argument("relabel: target mode " + to.name() + " already occupied");
        }
        std::vector<Electron> electrons = config.electrons();
        for (Electron &e : electrons) {
            if (e.mode == from) {
                e.mode = to;
            }
        }
        terms.emplace(Configuration(std::move(electrons)), amp);
    }
    return QuantumState(std::move(terms));
}

namespace {

std::string format_real(double v) {
    if (v == 0.0) {
        v = 0.0; // drop the sign of -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

std::string render(const QuantumState &state) {
    std::ostringstream out;
    for (const auto &[config, amp] : state.terms()) {
        out << '(' << format_real(amp.real()) << ',' << format_real(amp.imag()) << ')';
        for (const Electron &e : config) {
            out << " |" << spin_char(e.spin) << ">_" << e.mode.name();
        }
        out << '\n';
    }
    return out.str();
}

namespace {

template <typename Map>
bool maps_close(const Map &a, const Map &b, Amplitude phase, double tol) {
    for (const auto &[key, amp] : a) {
        auto it = b.find(key);
        const Amplitude other = it == b.end() ? Amplitude{} : it->second * phase;
        if (std::abs(amp - other) > tol) {
            return false;
        }
    }
    for (const auto &[key, amp] : b) {
        if (!a.contains(key) && std::abs(amp) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace

bool approx_equal(const QuantumState &a, const QuantumState &b, double tol) {
    return maps_close(a.terms(), b.terms(), Amplitude{1.0}, tol);
}

bool equal_up_to_global_phase(const QuantumState &a, const QuantumState &b, double tol) {
    // <b|a> / |<b|a>| is the phase that best aligns b onto a.
    Amplitude overlap{};
    for (const auto &[config, amp] : a.terms()) {
        overlap += std::conj(b.amplitude(config)) * amp;
    }
    if (std::abs(overlap) < kPruneThreshold) {
        return false;
    }
    return maps_close(a.terms(), b.terms(), overlap / std::abs(overlap), tol);
}

QuantumState forget_electron_labels(const QuantumState &state) {
    Terms terms;
    for (const auto &[config, amp] : state.terms()) {
        terms[config.sorted()] += amp;
    }
    return QuantumState(std::move(terms));
}

bool equal_ignoring_electron_order(const QuantumState &a, const QuantumState &b, double tol) {
    return approx_equal(forget_electron_labels(a), forget_electron_labels(b), tol);
}

} // namespace ecpsim
