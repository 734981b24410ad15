/**
 * Copyright 2026 The fanolattice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

#include "fano/lattice.hpp"
#include "fano/statistics.hpp"

namespace fano {

inline constexpr double kDefaultBicThreshold = 1e-8;

/// Relative margin (in units of kappa) kept from the band edges when deciding
/// whether an eigenvalue is embedded in the continuum.
inline constexpr double kBandEdgeMargin = 1e-6;

struct BoundState {
    double energy = 0.0;
    ComplexVector vector;
    /// Probability carried by chain sites (indices >= kChainHead).
    double chain_weight = 0.0;
    /// True when the state sits on a discrete site whose coupling to the chain
    /// is zero, i.e. it is bound because nothing connects it to the continuum.
    bool decoupled_site = false;
};

/**
 * Eigenstates of H embedded in the band (|E - band_center| < band_half_width
 * minus a 1e-6 kappa margin) with chain weight <= threshold, sorted by energy.
 * The Hamiltonian must carry band information, i.e. come from build_hamiltonian.
 */
std::vector<BoundState> detect_bics(const Hamiltonian& hamiltonian,
                                    double threshold = kDefaultBicThreshold);

/// Normalised dressed-state vector proportional to (1/kappa1, -1/kappa2, 0, ...).
/// Requires kappa1, kappa2 > 0.
ComplexVector dressed_state(const LatticeSpec& spec);

/**
 * Long-distance survival from the bound-state projection of the input sites.
 *
 * The decaying part of S(z) vanishes as z grows, leaving the 2x2 block
 * B(z) = sum_b exp(-i E_b z) P_b with P_b(i, j) = <i|b><b|j>. With a single
 * bound energy every functional of B is z-independent. With several distinct
 * energies the record holds the z-average of the quasi-periodic survival.
 * z of the returned record is kAsymptoticZ.
 */
SurvivalRecord asymptotic_survival(const LatticeSpec& spec,
                                   double threshold = kDefaultBicThreshold);

SurvivalRecord asymptotic_survival(const std::vector<BoundState>& bics, ModePair modes = {});

}  // namespace fano
