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

// ecpsim: run the concentration protocols, sweep alpha^2, or cross-check the
// closed forms against the exhaustive outcome tree.

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "ecpsim/oracle.h"
#include "ecpsim/protocols.h"
#include "ecpsim/report_format.h"
#include "ecpsim/sweep.h"

namespace {

using namespace ecpsim;

struct ScheduleFlags {
    int n = 3;
    int m = 3;
    double cutoff = 1e-12;

    void add_to(CLI::App &cmd) {
        cmd.add_option("--n", n, "Step-one rounds (ECP2)")->check(CLI::PositiveNumber);
        cmd.add_option("--m", m, "Step-two rounds (ECP2)")->check(CLI::PositiveNumber);
        cmd.add_option("--cutoff", cutoff, "Drop rounds whose probability falls below this")
            ->check(CLI::NonNegativeNumber);
    }

    IterationSchedule schedule() const { return IterationSchedule(n, m, cutoff); }
};

// Writes to --out when given, stdout otherwise.
template <typename Writer>
int emit(const std::string &out_path, Writer write) {
    if (out_path.empty() || out_path == "-") {
        write(std::cout);
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return 2;
    }
    write(file);
    file.close();
    if (!file) {
        std::cerr << "error: failed writing " << out_path << '\n';
        return 2;
    }
    return 0;
}

int verify(std::uint64_t seed, int trials, const IterationSchedule &sched, bool inject_fault) {
    const ClosedForms forms = inject_fault ? corrupted_closed_forms() : default_closed_forms();
    std::vector<std::pair<std::string, WCoefficients>> cases = {
        {"fixture symmetric", WCoefficients::symmetric()},
        {"fixture (1/2, 1/3, 1/6)", WCoefficients::from_squares(0.5, 1.0 / 3.0)},
        {"fixture (0.2, 0.3, 0.5)", WCoefficients::from_squares(0.2, 0.3)},
    };
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        cases.emplace_back("trial " + std::to_string(t), sample_coefficients(rng));
    }

    int failures = 0;
    double worst = 0.0;
    for (const auto &[name, c] : cases) {
        const CrossCheckReport report = crosscheck(c, sched, forms);
        const SuccessCheck leaves = success_state_check(enumerate_tree(c, Protocol::Ecp2, sched));
        worst = std::max(worst, report.max_abs_delta);
        if (!report.pass || !leaves) {
            ++failures;
            std::cout << "FAIL " << name << " (alpha^2=" << format_number(c.alpha_sq())
                      << ", beta^2=" << format_number(c.beta_sq()) << ", gamma^2=" << format_number(c.gamma_sq())
                      << ")" << (leaves ? "" : " success leaves are not the symmetric W state") << '\n';
            write_crosscheck(std::cout, report);
        }
    }
    std::cout << (failures ? "FAIL" : "PASS") << ": " << cases.size() - static_cast<std::size_t>(failures) << '/'
              << cases.size() << " cross-checks within " << format_number(kCrossCheckTolerance)
              << ", max delta " << format_number(worst) << '\n';
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement concentration of three-electron W states"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "Run one protocol and print its report");
    std::string protocol = "ecp1";
    double alpha_sq = 0.0;
    double beta_sq = 0.0;
    std::string format = "csv";
    std::string out_path;
    ScheduleFlags run_sched;
    run->add_option("--protocol", protocol, "Protocol to run")->check(CLI::IsMember({"ecp1", "ecp2"}));
    run->add_option("--alpha-sq", alpha_sq, "|alpha|^2")->required();
    run->add_option("--beta-sq", beta_sq, "|beta|^2 (gamma^2 is derived)")->required();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--out", out_path, "Output file (default stdout)");
    run_sched.add_to(*run);

    // sweep
    auto *sweep = app.add_subcommand("sweep", "Total success probability of both protocols versus alpha^2");
    SweepSpec spec;
    std::string sweep_format = "csv";
    std::string sweep_out;
    ScheduleFlags sweep_sched;
    sweep->add_option("--beta-sq", spec.beta_sq, "Fixed |beta|^2");
    sweep->add_option("--alpha-sq-min", spec.alpha_sq_min, "Lower end of the open alpha^2 interval");
    sweep->add_option("--alpha-sq-max", spec.alpha_sq_max, "Upper end of the open alpha^2 interval");
    sweep->add_option("--points", spec.points, "Grid points")->check(CLI::Range(2, 1000000));
    sweep->add_option("--format", sweep_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_out, "Output file (default stdout)");
    sweep_sched.add_to(*sweep);

    // verify
    auto *ver = app.add_subcommand("verify", "Cross-check closed forms against the exhaustive outcome tree");
    std::uint64_t seed = 42;
    int trials = 50;
    bool inject_fault = false;
    ScheduleFlags verify_sched;
    verify_sched.n = 4;
    verify_sched.m = 4;
    ver->add_option("--seed", seed, "Seed for the random coefficient triples");
    ver->add_option("--trials", trials, "Random triples to check")->check(CLI::PositiveNumber);
    ver->add_flag("--inject-fault", inject_fault, "Check a deliberately wrong step-one round formula (self-test)");
    verify_sched.add_to(*ver);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const WCoefficients c = WCoefficients::from_squares(alpha_sq, beta_sq);
            const ProtocolReport report =
                parse_protocol(protocol) == Protocol::Ecp1 ? ecp1_run(c) : ecp2_run(c, run_sched.schedule());
            return emit(out_path, [&](std::ostream &os) {
                format == "json" ? write_report_json(os, report) : write_report_csv(os, report);
            });
        }
        if (sweep->parsed()) {
            spec.schedule = sweep_sched.schedule();
            const std::vector<SweepRow> rows = run_sweep(spec);
            return emit(sweep_out, [&](std::ostream &os) {
                sweep_format == "json" ? write_sweep_json(os, rows) : write_sweep_csv(os, rows);
            });
        }
        return verify(seed, trials, verify_sched.schedule(), inject_fault);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
