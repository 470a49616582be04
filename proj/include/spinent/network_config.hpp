// Copyright 2026 The spinent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text format for NetworkConfig, one statement per line:
//
//   # comment
//   modes 3
//   squeezer mode=0 r=0.5 quadrature=P
//   beamsplitter i=0 j=1 R=0.5 phase=0
//
// A value of `$r` is replaced by the squeezing passed to the parser.

#ifndef SPINENT_NETWORK_CONFIG_HPP
#define SPINENT_NETWORK_CONFIG_HPP

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "spinent/gaussian.hpp"
#include "spinent/presets.hpp"
#include "spinent/types.hpp"

namespace spinent::io {

namespace detail {

[[noreturn]] inline void fail(int line, const std::string& msg) {
  throw InvalidArgument("network config line " + std::to_string(line) + ": " + msg);
}

inline double number(const std::map<std::string, std::string>& kv, const std::string& key, int line,
                     std::optional<double> r, std::optional<double> fallback = std::nullopt) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    fail(line, "missing '" + key + "'");
  }
  if (it->second == "$r") {
    if (!r) fail(line, "'$r' used but no squeezing value was given");
    return *r;
  }
  try {
    const double v = presets::parse_number(it->second);
    if (!std::isfinite(v)) fail(line, "'" + key + "' is not finite");
    return v;
  } catch (const InvalidArgument&) {
    fail(line, "'" + key + "' is not a number");
  }
}

inline int index(const std::map<std::string, std::string>& kv, const std::string& key, int line) {
  const double v = number(kv, key, line, std::nullopt);
  if (v != std::floor(v) || v < 0) fail(line, "'" + key + "' must be a non-negative integer");
  return static_cast<int>(v);
}

}  // namespace detail

inline gaussian::NetworkConfig parse_network(const std::string& text, std::optional<double> r = std::nullopt) {
  gaussian::NetworkConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_modes = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "modes") {
      int n = 0;
      std::string extra;
      if (!(ls >> n) || n < 1 || (ls >> extra)) detail::fail(line, "expected 'modes <positive integer>'");
      if (have_modes) detail::fail(line, "mode count given twice");
      cfg.modes = n;
      have_modes = true;
      continue;
    }
    if (!have_modes) detail::fail(line, "'modes' must come first");
    std::map<std::string, std::string> kv;
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) detail::fail(line, "expected key=value, got '" + tok + "'");
      if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
        detail::fail(line, "duplicate key '" + tok.substr(0, eq) + "'");
    }
    auto check_keys = [&](std::initializer_list<const char*> allowed) {
      for (const auto& [k, v] : kv) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) detail::fail(line, "unknown key '" + k + "'");
      }
    };
    if (kind == "squeezer") {
      check_keys({"mode", "r", "quadrature"});
      gaussian::Squeezer s;
      s.mode = detail::index(kv, "mode", line);
      s.r = detail::number(kv, "r", line, r);
      const auto q = kv.count("quadrature") ? kv.at("quadrature") : std::string("P");
      if (q == "P") s.quadrature = gaussian::Quadrature::P;
      else if (q == "X") s.quadrature = gaussian::Quadrature::X;
      else detail::fail(line, "quadrature must be X or P");
      if (s.mode >= cfg.modes) detail::fail(line, "mode index out of range");
      cfg.elements.emplace_back(s);
    } else if (kind == "beamsplitter") {
      check_keys({"i", "j", "R", "phase"});
      gaussian::BeamSplitter b;
      b.i = detail::index(kv, "i", line);
      b.j = detail::index(kv, "j", line);
      b.reflectivity = detail::number(kv, "R", line, r);
      b.phase = detail::number(kv, "phase", line, r, 0.0);
      if (b.i >= cfg.modes || b.j >= cfg.modes || b.i == b.j) detail::fail(line, "beam splitter modes invalid");
      if (b.reflectivity < 0.0 || b.reflectivity > 1.0) detail::fail(line, "R must lie in [0, 1]");
      cfg.elements.emplace_back(b);
    } else {
      detail::fail(line, "unknown element '" + kind + "'");
    }
  }
  if (!have_modes) throw InvalidArgument("network config has no 'modes' line");
  return cfg;
}

/// Shortest round-trip decimal form.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string write_network(const gaussian::NetworkConfig& cfg) {
  std::string out = "modes " + std::to_string(cfg.modes) + "\n";
  for (const auto& e : cfg.elements) {
    if (const auto* s = std::get_if<gaussian::Squeezer>(&e)) {
      out += "squeezer mode=" + std::to_string(s->mode) + " r=" + format_number(s->r) +
             " quadrature=" + (s->quadrature == gaussian::Quadrature::X ? "X" : "P") + "\n";
    } else {
      const auto& b = std::get<gaussian::BeamSplitter>(e);
      out += "beamsplitter i=" + std::to_string(b.i) + " j=" + std::to_string(b.j) +
             " R=" + format_number(b.reflectivity) + " phase=" + format_number(b.phase) + "\n";
    }
  }
  return out;
}

}  // namespace spinent::io

#endif  // SPINENT_NETWORK_CONFIG_HPP
