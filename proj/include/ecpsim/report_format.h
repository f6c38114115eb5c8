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

#ifndef ECPSIM_REPORT_FORMAT_H
#define ECPSIM_REPORT_FORMAT_H

#include <iosfwd>
#include <string>

#include "ecpsim/oracle.h"
#include "ecpsim/protocols.h"

namespace ecpsim {

/// %.15g, with -0 printed as 0.
std::string format_number(double v);

/// Flat record: a header line of field names and one value line. List
/// fields are `;`-separated, the final state is its rendered terms joined
/// by `;`, and the coefficient trace is `step:round:alpha:beta:gamma` items.
void write_report_csv(std::ostream &out, const ProtocolReport &report);
void write_report_json(std::ostream &out, const ProtocolReport &report);

void write_crosscheck(std::ostream &out, const CrossCheckReport &report);

} // namespace ecpsim

#endif
