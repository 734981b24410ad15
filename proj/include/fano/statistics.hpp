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

#include <limits>

#include "fano/lattice.hpp"

namespace fano {

/// Survival probabilities of the two-particle input state at one point.
/// z is +infinity for asymptotic records.
struct SurvivalRecord {
    double z = 0.0;
    double p_boson = 0.0;
    double p_fermion = 0.0;
    double p_classical = 0.0;
    double p_entangled = 0.0;

    bool operator==(const SurvivalRecord&) const = default;
};

inline constexpr double kAsymptoticZ = std::numeric_limits<double>::infinity();

/// The two input (and detected output) modes. Defaults to sites |1>, |2>.
struct ModePair {
    int first = kSite1;
    int second = kSite2;
};

/// Matrix permanent by Ryser's formula with Gray-code subset iteration,
/// O(2^n n). Exact in exact arithmetic. Throws for non-square or empty input.
Complex permanent(const ComplexMatrix& m);

/// S restricted to rows and columns of `modes`.
Eigen::Matrix2cd two_mode_block(const ComplexMatrix& s, ModePair modes = {});

double survival_boson(const Eigen::Matrix2cd& block);
double survival_fermion(const Eigen::Matrix2cd& block);
double survival_classical(const Eigen::Matrix2cd& block);
double survival_entangled(const Eigen::Matrix2cd& block);

double survival_boson(const Propagator& s, ModePair modes = {});
double survival_fermion(const Propagator& s, ModePair modes = {});
double survival_classical(const Propagator& s, ModePair modes = {});

/**
 * Survival of the antisymmetric polarisation-entangled state
 * (a+_{1H} a+_{2V} - a+_{1V} a+_{2H}) / sqrt(2).
 *
 * The state is evolved term by term with a polarisation-independent S over
 * the doubled mode set {modes} x {H, V}, the amplitudes of the four
 * coincidence kets are accumulated, and the overlap with the input is taken.
 * It never calls into the determinant path, so agreement with
 * survival_fermion is a genuine check.
 */
double survival_entangled(const Propagator& s, ModePair modes = {});

/// All four functionals from one 2x2 block.
SurvivalRecord survival_record(double z, const Eigen::Matrix2cd& block);
SurvivalRecord survival_record(const Propagator& s, ModePair modes = {});

}  // namespace fano
