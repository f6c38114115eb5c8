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

#include "ecpsim/sweep.h"

#include <algorithm>
#include <future>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ecpsim/report_format.h"

namespace ecpsim {

void SweepSpec::validate() const {
    if (points < 2) {
        throw std::invalid_argument("a sweep needs at least 2 points");
    }
    if (!(beta_sq >= 0.0 && beta_sq < 1.0)) {
        throw std::invalid_argument("beta^2 must lie in [0, 1)");
    }
    if (!(alpha_sq_min >= 0.0 && alpha_sq_min < alpha_sq_max)) {
        throw std::invalid_argument("alpha^2 range must satisfy 0 <= min < max");
    }
    const std::vector<double> grid = sweep_grid(*this);
    if (1.0 - grid.back() - beta_sq <= 0.0) {
        throw std::invalid_argument("alpha^2 range leaves gamma^2 <= 0 at the top of the grid");
    }
}

std::vector<double> sweep_grid(const SweepSpec &spec) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(std::max(spec.points, 0)));
    const double span = spec.alpha_sq_max - spec.alpha_sq_min;
    for (int k = 1; k <= spec.points; ++k) {
        grid.push_back(spec.alpha_sq_min + span * k / (spec.points + 1));
    }
    return grid;
}

SweepRow sweep_point(double alpha_sq, double beta_sq, const IterationSchedule &schedule) {
    const WCoefficients c = WCoefficients::from_squares(alpha_sq, beta_sq);
    double p1 = 0.0;
    try {
        p1 = ecp1_total_prob(c);
    } catch (const DegenerateInputError &) {
    }
    return {alpha_sq, p1, ecp2_run(c, schedule).p_total};
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    spec.validate();
    const std::vector<double> grid = sweep_grid(spec);
    std::vector<SweepRow> rows(grid.size());

    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
        const std::size_t end = std::min(grid.size(), begin + chunk);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                rows[i] = sweep_point(grid[i], spec.beta_sq, spec.schedule);
            }
        }));
    }
    for (auto &job : jobs) {
        job.get();
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "alpha_sq,p_ecp1,p_ecp2\n";
    for (const SweepRow &r : rows) {
        out << format_number(r.alpha_sq) << ',' << format_number(r.p_ecp1) << ',' << format_number(r.p_ecp2) << '\n';
    }
}

void write_sweep_json(std::ostream &out, const std::vector<SweepRow> &rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const SweepRow &r : rows) {
        doc.push_back({{"alpha_sq", r.alpha_sq}, {"p_ecp1", r.p_ecp1}, {"p_ecp2", r.p_ecp2}});
    }
    out << doc.dump(2) << '\n';
}

} // namespace ecpsim
