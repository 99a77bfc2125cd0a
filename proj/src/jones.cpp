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

#include "swapgame/jones.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace swapgame {

void WaveplateChainConfig::validate() const {
  if (elements.empty()) throw InvalidInput("waveplate chain is empty");
  for (const ChainElement& e : elements) {
    if (!std::isfinite(e.value)) throw InvalidInput("waveplate chain value is not finite");
  }
}

std::string JonesConvention::describe() const {
  std::ostringstream os;
  os << "retardance " << (retardance_sign > 0 ? "+i" : "-i") << ", angle "
     << (angle_sign > 0 ? "ccw" : "cw") << ", modulator bias "
     << (modulator_bias == 0.0 ? "0" : "pi");
  return os.str();
}

std::vector<JonesConvention> convention_set() {
  std::vector<JonesConvention> out;
  for (double bias : {0.0, std::numbers::pi}) {
    for (int r : {+1, -1}) {
      for (int a : {+1, -1}) out.push_back(JonesConvention{r, a, bias});
    }
  }
  return out;
}

namespace {

Matrix rotation(double theta) {
  Matrix r(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, s, -s, c;
  return r;
}

Matrix retarder(double angle_deg, double retardance, const JonesConvention& conv) {
  const double theta = conv.angle_sign * angle_deg * std::numbers::pi / 180.0;
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = std::polar(1.0, conv.retardance_sign * retardance);
  return rotation(-theta) * d * rotation(theta);
}

}  // namespace

Matrix element_matrix(const ChainElement& e, const JonesConvention& conv) {
  switch (e.kind) {
    case ElementKind::QuarterWave:
      return retarder(e.value, std::numbers::pi / 2.0, conv);
    case ElementKind::HalfWave:
      return retarder(e.value, std::numbers::pi, conv);
    case ElementKind::EighthWave:
      return retarder(e.value, std::numbers::pi / 4.0, conv);
    case ElementKind::PhaseModulator: {
      Matrix p = Matrix::Zero(2, 2);
      p(0, 0) = 1.0;
      p(1, 1) = std::polar(1.0, e.value + conv.modulator_bias);
      return p;
    }
  }
  throw InvalidInput("unknown chain element");
}

Matrix jones_chain(const WaveplateChainConfig& chain, const JonesConvention& conv) {
  chain.validate();
  Matrix u = Matrix::Identity(2, 2);
  for (const ChainElement& e : chain.elements) u = element_matrix(e, conv) * u;
  return u;
}

Matrix measured_observable(const Matrix& u) {
  return u.adjoint() * pauli_matrix(Pauli::Z) * u;
}

SettingMatch verify_setting(const WaveplateChainConfig& chain,
                            const Observable& target, double tol) {
  if (target.dim() != 2 || !target.is_dichotomic()) {
    throw InvalidInput("verify_setting: target must be a dichotomic qubit observable");
  }
  SettingMatch best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const JonesConvention& conv : convention_set()) {
    const Matrix obs = measured_observable(jones_chain(chain, conv));
    for (int sign : {+1, -1}) {
      const double residual = (obs - sign * target.matrix()).norm();
      if (residual < best.residual) {
        best.residual = residual;
        best.sign = sign;
        best.convention = conv;
      }
      if (residual < tol) {
        return SettingMatch{true, residual, sign, conv};
      }
    }
  }
  return best;
}

Observable parse_pauli_target(const std::string& text, int line) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  const std::string suffix = "/sqrt2";
  bool normalized = false;
  if (t.size() > suffix.size() && t.ends_with(suffix)) {
    t.erase(t.size() - suffix.size());
    normalized = true;
  }
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  Matrix m = Matrix::Zero(2, 2);
  int terms = 0;
  int sign = +1;
  for (char ch : t) {
    if (ch == '+') {
      sign = +1;
    } else if (ch == '-') {
      sign = -1;
    } else if (ch == 'X' || ch == 'Y' || ch == 'Z') {
      m += sign * pauli(ch).matrix();
      ++terms;
      sign = +1;
    } else {
      throw ConfigError(line, "cannot parse measurement target '" + text + "'");
    }
  }
  if (terms == 0) throw ConfigError(line, "empty measurement target '" + text + "'");
  if (normalized != (terms == 2)) {
    throw ConfigError(line, "target '" + text + "' must be one Pauli or a pair over sqrt2");
  }
  m /= std::sqrt(static_cast<double>(terms));
  try {
    return Observable::dichotomic(m);
  } catch (const InvalidInput&) {
    throw ConfigError(line, "target '" + text + "' is not a +-1 observable");
  }
}

ChainElement parse_element(const std::string& raw, int line) {
  const std::string text = trim(raw);
  if (text.rfind("PM:", 0) == 0) {
    return ChainElement{ElementKind::PhaseModulator,
                        parse_pi_expression(text.substr(3), line)};
  }
  const auto at = text.find('@');
  if (at == std::string::npos) {
    throw ConfigError(line, "chain element '" + text + "' needs KIND@angle or PM:phase");
  }
  const std::string kind = text.substr(0, at);
  const double angle = parse_double(text.substr(at + 1), line);
  if (kind == "QWP") return ChainElement{ElementKind::QuarterWave, angle};
  if (kind == "HWP") return ChainElement{ElementKind::HalfWave, angle};
  if (kind == "L8") return ChainElement{ElementKind::EighthWave, angle};
  throw ConfigError(line, "unknown chain element kind '" + kind + "'");
}

namespace {

// Shortest text that parses back to the same double.
std::string round_trip(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Modulator phases are written as k*pi/n when they are one.
std::string format_phase(double phase) {
  for (int n = 1; n <= 12; ++n) {
    const double k = phase * n / std::numbers::pi;
    const double kr = std::round(k);
    if (std::abs(k - kr) > 1e-12) continue;
    const long long ki = static_cast<long long>(kr);
    if (ki == 0) return "0";
    std::string out = ki == 1 ? "" : ki == -1 ? "-" : std::to_string(ki);
    out += "pi";
    if (n != 1) out += "/" + std::to_string(n);
    return out;
  }
  return round_trip(phase);
}

}  // namespace

std::string format_element(const ChainElement& e) {
  switch (e.kind) {
    case ElementKind::QuarterWave: return "QWP@" + round_trip(e.value);
    case ElementKind::HalfWave: return "HWP@" + round_trip(e.value);
    case ElementKind::EighthWave: return "L8@" + round_trip(e.value);
    case ElementKind::PhaseModulator: return "PM:" + format_phase(e.value);
  }
  return {};
}

std::vector<SettingRow> load_setting_rows(const ConfigDocument& doc) {
  std::vector<SettingRow> rows;
  for (const ConfigSection& s : doc.sections) {
    const auto words = split_whitespace(s.name);
    if (words.empty() || words[0] != "setting") continue;
    if (words.size() != 3) {
      throw ConfigError(s.line, "expected [setting <party> <index>]");
    }
    const ConfigEntry& target = s.require("target");
    const ConfigEntry& elements = s.require("elements");
    WaveplateChainConfig chain;
    for (const std::string& item : split(elements.value, ',')) {
      chain.elements.push_back(parse_element(item, elements.line));
    }
    try {
      chain.validate();
    } catch (const InvalidInput& err) {
      throw ConfigError(elements.line, err.what());
    }
    std::optional<double> fid;
    if (const ConfigEntry* f = s.find("fidelity")) fid = parse_double(f->value, f->line);
    rows.push_back(SettingRow{words[1],
                              static_cast<int>(parse_integer(words[2], s.line)),
                              target.value, parse_pauli_target(target.value, target.line),
                              std::move(chain), fid});
  }
  return rows;
}

}  // namespace swapgame
