// Copyright 2026 The swapgame Authors
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

// Report formatting shared by the modules and the command-line tool. All
// numbers are rounded to a fixed number of decimals so repeated runs produce
// byte-identical files.

#pragma once

#include <string>

#include "json.hpp"
#include "swapgame/game.hpp"
#include "swapgame/quantum.hpp"

namespace swapgame {

using Json = nlohmann::ordered_json;

inline constexpr int kReportDecimals = 10;

/// Fixed-point text, e.g. fixed(0.5, 3) == "0.500".
std::string fixed(double value, int decimals = kReportDecimals);

/// Number rounded to `decimals`; non-finite values become null.
Json json_number(double value, int decimals = kReportDecimals);

/// {"re": [[...]], "im": [[...]]}, row-major.
Json matrix_json(const Matrix& m, int decimals = kReportDecimals);

/// Header "x,z,<16 column labels>" then one line per combo.
std::string probability_matrix_csv(const ProbabilityMatrix& pm,
                                   int decimals = kReportDecimals);

Json score_json(const GameScore& s);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace swapgame
