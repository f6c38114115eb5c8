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

#ifndef ECPSIM_SWEEP_H
#define ECPSIM_SWEEP_H

#include <iosfwd>
#include <vector>

#include "ecpsim/protocols.h"

namespace ecpsim {

/// Total success probability of both protocols as alpha^2 varies with
/// beta^2 held fixed.
struct SweepSpec {
    double beta_sq = 1.0 / 3.0;
    double alpha_sq_min = 0.0; // open interval
    double alpha_sq_max = 2.0 / 3.0;
    int points = 200;
    IterationSchedule schedule{};

    /// Throws std::invalid_argument unless points >= 2 and every grid point
    /// leaves gamma^2 > 0.
    void validate() const;
};

struct SweepRow {
    double alpha_sq;
    double p_ecp1;
    double p_ecp2;
};

/// Interior equally spaced grid: min + (max - min) * k / (points + 1) for
/// k = 1..points. Both interval ends are excluded.
std::vector<double> sweep_grid(const SweepSpec &spec);

SweepRow sweep_point(double alpha_sq, double beta_sq, const IterationSchedule &schedule);

/// Rows in grid order. Points are evaluated concurrently.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

/// `alpha_sq,p_ecp1,p_ecp2` header, then one row per point at 15
/// significant digits, LF line endings.
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_sweep_json(std::ostream &out, const std::vector<SweepRow> &rows);

} // namespace ecpsim

#endif
