// Copyright 2026 The fluxctl Authors
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


#pragma once

#include <string>
#include <vector>

#include "fluxctl/dynamics.hpp"

namespace fluxctl::cli {

struct ScenarioFile {
    dynamics::DriveScenario scenario;
    dynamics::PulseShape shape;
};

/// Recognised top-level keys, in documentation order.
const std::vector<std::string> &scenario_keys();

/// Flat JSON object; unknown keys raise InvalidArgument listing the valid ones.
ScenarioFile parse_scenario(const std::string &json_text);
ScenarioFile load_scenario(const std::string &path);

}  // namespace fluxctl::cli
