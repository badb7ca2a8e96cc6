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

#include <span>
#include <vector>

#include "fluxctl/iir.hpp"
#include "fluxctl/waveform.hpp"

namespace fluxctl::distortion {

using filters::ExponentialTerm;
using filters::InitialState;

/// Post-edge residual r(t) = sum_k A_k exp(-t / tau_k), as a fraction of the
/// reference amplitude.
struct ExponentialTailModel {
    std::vector<ExponentialTerm> terms;

    void validate() const;
    /// Terms sorted by ascending tau.
    ExponentialTailModel canonical() const;
    double residual(double t_ns) const;
    /// Mean of r over [d, d + window]; window 0 gives r(d).
    double window_average(double d_ns, double window_ns) const;
    double edge_residual() const;
    bool operator==(const ExponentialTailModel &) const = default;
};

/// The tail terms published for the reference device, in canonical order.
ExponentialTailModel reference_flux_line_tail();

struct TailProbeRecord {
    double delay_ns = 0.0;
    double tail_over_ref = 0.0;
    bool operator==(const TailProbeRecord &) const = default;
};

inline constexpr double kDefaultProbeWindowNs = 20.0;
inline constexpr double kDefaultReferenceNs = 2000.0;

/// Unit level that falls at edge_ns and then carries r(t - edge_ns).
/// The grid must be uniform; the returned waveform starts at t_grid[0].
Waveform distorted_step(const ExponentialTailModel &model, std::span<const double> t_grid_ns,
                        double edge_ns);

/// Sampled line response to an arbitrary input: the step-invariant
/// discretisation of 1 - sum A_k exp(-t/tau_k) (the rising-edge response).
Waveform distort(const Waveform &input, const ExponentialTailModel &model,
                 InitialState init = InitialState::Zero);

std::vector<TailProbeRecord> simulate_tail_probe(const ExponentialTailModel &model,
                                                 std::span<const double> delays_ns,
                                                 double probe_window_ns = kDefaultProbeWindowNs);

/// Phase-probe conversion: tail_over_ref = phase / scale.
std::vector<TailProbeRecord> phase_to_tail(std::span<const double> delays_ns,
                                           std::span<const double> phase_rad,
                                           double rad_per_unit_tail);

struct MultiExpOptions {
    /// Probe window the data was taken with; 0 fits instantaneous residuals.
    double probe_window_ns = 0.0;
    int starts = 16;
};

struct MultiExpFit {
    ExponentialTailModel model;         // canonical order
    std::vector<double> amplitude_sigma;
    std::vector<double> tau_sigma;
    double residual_norm = 0.0;
    bool degenerate = false;            // some adjacent tau ratio below 1.5
    int successful_starts = 0;
};

MultiExpFit fit_multi_exponential(std::span<const TailProbeRecord> data, int n_terms,
                                  const MultiExpOptions &opt = {});

struct SingleExpFit {
    double amplitude = 0.0;
    double tau_ns = 0.0;
    double amplitude_sigma = 0.0;
    double tau_sigma = 0.0;
    bool tau_identifiable = true;
    bool negligible = false;   // tau below the threshold
    double residual_norm = 0.0;
};

/// p(d) = a exp(-d / tau). negligible_below_ns defaults to one 20 ns gate.
SingleExpFit fit_single_exponential(std::span<const double> delays_ns,
                                    std::span<const double> phase_rad,
                                    double negligible_below_ns = 20.0);

}  // namespace fluxctl::distortion
