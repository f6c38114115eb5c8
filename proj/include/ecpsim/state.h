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

#ifndef ECPSIM_STATE_H
#define ECPSIM_STATE_H

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecpsim {

using Amplitude = std::complex<double>;

/// Squared-norm tolerance used for every unit-norm check.
inline constexpr double kNormTolerance = 1e-12;
/// Amplitudes with magnitude below this are dropped from a state.
inline constexpr double kPruneThreshold = 1e-15;

struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a post-selection keeps no amplitude at all.
struct EmptyBranchError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when protocol coefficients make a closed form or ancilla undefined.
struct DegenerateInputError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Spin : unsigned char { Up, Down };

inline Spin flipped(Spin s) { return s == Spin::Up ? Spin::Down : Spin::Up; }
char spin_char(Spin s);

/// Name of a spatial mode, e.g. "a1" or "e2".
class Mode {
  public:
    explicit Mode(std::string name);
    Mode(const char *name) : Mode(std::string(name)) {}

    const std::string &name() const { return name_; }

    friend bool operator==(const Mode &, const Mode &) = default;
    friend auto operator<=>(const Mode &a, const Mode &b) { return a.name_ <=> b.name_; }

  private:
    std::string name_;
};

/// One labeled electron: where it is and which way its spin points.
struct Electron {
    Mode mode;
    Spin spin;

    friend bool operator==(const Electron &, const Electron &) = default;
    friend auto operator<=>(const Electron &, const Electron &) = default;
};

/// Basis element. Position in the list is the electron's identity; operations
/// may move an electron to another mode or flip its spin but never reorder.
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(std::vector<Electron> electrons);

    std::size_t size() const { return electrons_.size(); }
    const Electron &operator[](std::size_t i) const { return electrons_[i]; }
    Electron &operator[](std::size_t i) { return electrons_[i]; }
    auto begin() const { return electrons_.begin(); }
    auto end() const { return electrons_.end(); }
    const std::vector<Electron> &electrons() const { return electrons_; }

    /// Number of electrons currently in `mode`.
    std::size_t occupancy(const Mode &mode) const;
    /// Index of the unique electron in `mode`; throws unless occupancy is 1.
    std::size_t sole_electron_in(const Mode &mode) const;
    bool uses_mode(const Mode &mode) const { return occupancy(mode) > 0; }

    Configuration without(std::size_t index) const;
    /// Same electrons listed in (mode, spin) order.
    Configuration sorted() const;
    Configuration concat(const Configuration &tail) const;

    friend bool operator==(const Configuration &, const Configuration &) = default;
    friend auto operator<=>(const Configuration &, const Configuration &) = default;

  private:
    std::vector<Electron> electrons_;
};

using Terms = std::map<Configuration, Amplitude>;

/// Unit-norm superposition of configurations with a common electron count.
class QuantumState {
  public:
    /// Prunes tiny amplitudes, then validates shape and unit norm.
    explicit QuantumState(Terms terms);

    /// Like the constructor but rescales to unit norm first. Throws
    /// EmptyBranchError when nothing survives pruning.
    static QuantumState normalized(Terms terms);

    const Terms &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    std::size_t electron_count() const { return terms_.begin()->first.size(); }
    /// Amplitude of `config`, zero when absent.
    Amplitude amplitude(const Configuration &config) const;
    double norm_squared() const;

  private:
    Terms terms_;
};

/// Real, non-negative amplitudes of the three-party W basis
/// alpha|d u u> + beta|u d u> + gamma|u u d>.
class WCoefficients {
  public:
    WCoefficients(double alpha, double beta, double gamma);

    /// Builds from squared magnitudes; gamma^2 = 1 - alpha^2 - beta^2 is
    /// derived and must be non-negative (roundoff within 1e-12 clamps to 0).
    static WCoefficients from_squares(double alpha_sq, double beta_sq);

    /// Rescales an arbitrary non-negative triple to unit norm.
    static WCoefficients normalize(double alpha, double beta, double gamma);

    static WCoefficients symmetric();

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double alpha_sq() const { return alpha_ * alpha_; }
    double beta_sq() const { return beta_ * beta_; }
    double gamma_sq() const { return gamma_ * gamma_; }

  private:
    double alpha_;
    double beta_;
    double gamma_;
};

using Predicate = std::function<bool(const Configuration &)>;

struct Projection {
    double probability;
    QuantumState state;
};

QuantumState make_w_state(const WCoefficients &coeffs, const std::array<Mode, 3> &modes);
QuantumState make_single_electron(Amplitude amp_up, Amplitude amp_down, const Mode &mode);

/// Product state with `a`'s electrons listed first. Mode sets must be disjoint.
QuantumState tensor(const QuantumState &a, const QuantumState &b);

double branch_probability(const QuantumState &state, const Predicate &keep);
Projection project_and_normalize(const QuantumState &state, const Predicate &keep);

/// Renames every occurrence of mode `from` to `to`; `to` must be unused.
QuantumState relabel_mode(const QuantumState &state, const Mode &from, const Mode &to);

/// One line per term in configuration order:
/// `(<re>,<im>) |u>_a1 |d>_b1 ...` with 15 significant digits.
std::string render(const QuantumState &state);

/// Amplitude-wise equality (missing terms count as zero).
bool approx_equal(const QuantumState &a, const QuantumState &b, double tol);
/// Equality after removing the relative global phase of `b` against `a`.
bool equal_up_to_global_phase(const QuantumState &a, const QuantumState &b, double tol);
/// Drops electron identity: every configuration is re-listed in (mode, spin)
/// order. A beam splitter can send electron 1 to d2 in one term and to d1 in
/// another; after the d2 electron is detected the surviving terms list their
/// electrons in different orders even though they describe the same modes.
/// This view lines them up. Throws NormalizationError if two labeled terms
/// collapse onto one configuration and interfere.
QuantumState forget_electron_labels(const QuantumState &state);

/// approx_equal on forget_electron_labels of both sides.
bool equal_ignoring_electron_order(const QuantumState &a, const QuantumState &b, double tol);

} // namespace ecpsim

#endif
