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

#include "ecpsim/report_format.h"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ecpsim {

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? ";" : "") + items[i];
    }
    return out;
}

std::vector<std::string> numbers(const std::vector<double> &values) {
    std::vector<std::string> out;
    for (double v : values) {
        out.push_back(format_number(v));
    }
    return out;
}

std::vector<std::string> state_lines(const std::optional<QuantumState> &state) {
    std::vector<std::string> lines;
    if (state) {
        std::istringstream in(render(*state));
        for (std::string line; std::getline(in, line);) {
            lines.push_back(line);
        }
    }
    return lines;
}

std::string csv_quote(const std::string &field) {
    if (field.find_first_of(",\"") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char ch : field) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

} // namespace

void write_report_csv(std::ostream &out, const ProtocolReport &report) {
    std::vector<std::string> trace;
    for (const CoeffTraceEntry &t : report.coeff_trace) {
        trace.push_back(std::to_string(t.step) + ":" + std::to_string(t.round) + ":" + format_number(t.coeffs.alpha()) +
                        ":" + format_number(t.coeffs.beta()) + ":" + format_number(t.coeffs.gamma()));
    }
    out << "protocol,per_round_step1,per_round_step2,sum_step1,sum_step2,p_total,final_state,coeff_trace,"
           "closed_form_delta\n";
    out << to_string(report.protocol) << ',' << join(numbers(report.per_round_step1)) << ','
        << join(numbers(report.per_round_step2)) << ',' << format_number(report.sum_step1) << ','
        << format_number(report.sum_step2) << ',' << format_number(report.p_total) << ','
        << csv_quote(join(state_lines(report.final_state))) << ',' << join(trace) << ','
        << format_number(report.closed_form_delta) << '\n';
}

void write_report_json(std::ostream &out, const ProtocolReport &report) {
    nlohmann::json trace = nlohmann::json::array();
    for (const CoeffTraceEntry &t : report.coeff_trace) {
        trace.push_back({{"step", t.step},
                         {"round", t.round},
                         {"alpha", t.coeffs.alpha()},
                         {"beta", t.coeffs.beta()},
                         {"gamma", t.coeffs.gamma()}});
    }
    nlohmann::json doc = {
        {"protocol", to_string(report.protocol)},
        {"per_round_step1", report.per_round_step1},
        {"per_round_step2", report.per_round_step2},
        {"sum_step1", report.sum_step1},
        {"sum_step2", report.sum_step2},
        {"p_total", report.p_total},
        {"final_state", state_lines(report.final_state)},
        {"coeff_trace", trace},
        {"closed_form_delta", report.closed_form_delta},
    };
    out << doc.dump(2) << '\n';
}

void write_crosscheck(std::ostream &out, const CrossCheckReport &report) {
    for (const QuantityDelta &d : report.deltas) {
        out << "  " << d.name << " oracle=" << format_number(d.oracle) << " closed=" << format_number(d.closed_form)
            << " delta=" << format_number(d.delta) << '\n';
    }
    out << "  max_abs_delta=" << format_number(report.max_abs_delta) << (report.pass ? " PASS" : " FAIL") << '\n';
}

} // namespace ecpsim
