// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "polydg/timestepper.hpp"

namespace polydg {

/// Table-1-style scaling study: the Cartesian product of fine-mesh sizes,
/// coarse ratios, degree pairs, and preconditioner kinds, sharing one base
/// configuration.
struct StudySpec {
  std::vector<int> cells;
  std::vector<int> ratios;                    // powers of two >= 2
  std::vector<std::pair<int, int>> degrees;   // (p, q), q <= p
  std::vector<PrecondKind> kinds;
  SimulationConfig base;                      // T already set to the study horizon
};

using ParsedConfig = std::variant<SimulationConfig, StudySpec>;

/// Parses the flat `section.key = value` format. Values may carry unit
/// suffixes (converted to the internal mV/ms/cm/uF/mS system); '#' starts a
/// comment; unknown keys are errors. Returns a StudySpec when any study.*
/// key is present.
ParsedConfig parse_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text, const std::string& origin);

const char* precond_kind_name(PrecondKind kind);
PrecondKind precond_kind_from(const std::string& name);

}  // namespace polydg
