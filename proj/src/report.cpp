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

#include "swapgame/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace swapgame {

std::string fixed(double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  // Avoid "-0.000".
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Json json_number(double value, int decimals) {
  if (!std::isfinite(value)) return nullptr;
  const double scale = std::pow(10.0, decimals);
  double rounded = std::round(value * scale) / scale;
  if (rounded == 0.0) rounded = 0.0;  // drop negative zero
  return rounded;
}

Json matrix_json(const Matrix& m, int decimals) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(json_number(m(r, c).real(), decimals));
      ri.push_back(json_number(m(r, c).imag(), decimals));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string probability_matrix_csv(const ProbabilityMatrix& pm, int decimals) {
  std::ostringstream os;
  os << "x,z";
  for (int col = 0; col < kNumColumns; ++col) {
    os << "," << ProbabilityMatrix::column_label(col);
  }
  os << "\n";
  for (std::size_t r = 0; r < pm.rows.size(); ++r) {
    os << pm.combos[r].x << "," << pm.combos[r].z;
    for (double p : pm.rows[r]) os << "," << fixed(p, decimals);
    os << "\n";
  }
  return os.str();
}

Json score_json(const GameScore& s) {
  Json per_b = Json::object();
  for (BellOutcome b : kBellOutcomes) {
    const auto& v = s.per_b[index_of(b)];
    per_b[std::string(to_string(b))] = v ? json_number(*v) : Json(nullptr);
  }
  return Json{{"per_b", std::move(per_b)}, {"total", json_number(s.total)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace swapgame
