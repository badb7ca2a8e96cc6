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

#include "json.hpp"

#include "fluxctl/fir.hpp"
#include "fluxctl/iir.hpp"
#include "fluxctl/transfer_function.hpp"

namespace fluxctl::cli {

using ojson = nlohmann::ordered_json;

ojson to_json(const filters::FirFilter &f);
ojson to_json(const filters::IirCorrector &c);
/// Gaussian or bounded-inverse design with a sampled magnitude table.
ojson to_json(const filters::TransferFunction &h, double grid_max_ghz, int grid_points);

filters::FirFilter fir_from_json(const ojson &j);
filters::IirCorrector iir_from_json(const ojson &j);

filters::FirFilter load_fir(const std::string &path);
filters::IirCorrector load_iir(const std::string &path);

}  // namespace fluxctl::cli
