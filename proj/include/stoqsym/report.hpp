// Copyright 2026 The stoqsym Authors
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

// JSON documents for pipeline results. Every rational is written as
// {"exact": "p/q", "value": <double>}; bit strings use the input format.

#ifndef STOQSYM_REPORT_HPP
#define STOQSYM_REPORT_HPP

#include <string>

#include "stoqsym/effective.hpp"

namespace stoqsym {

/// {"qubits", "seed", "reps", "omega", "boundary", "effective_hamiltonian",
///  "class_sizes", "component_size", "energy", "gap", "amplitudes",
///  "probabilities", "visited_count", "solver": {...}}
std::string effective_json(const ComponentResult& result, int indent = 2);

/// {"seed", "shots_requested", "components": [<effective document>...],
///  "approximate_members", "shots": [{"component", "class", "bits"}...]}
std::string sample_json(const SampleReport& report, int n, bool include_shots = true,
                        int indent = 2);

/// Probability table followed by one bit string per shot.
std::string sample_text(const SampleReport& report, int n);

}  // namespace stoqsym

#endif  // STOQSYM_REPORT_HPP
