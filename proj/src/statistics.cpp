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

#include "fano/statistics.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace fano {

Complex permanent(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw InvalidParameter("matrix", "permanent requires a square matrix");
    }
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        throw InvalidParameter("matrix", "permanent requires dimension >= 1");
    }
    if (n > 30) {
        throw InvalidParameter("matrix", "permanent dimension above 30 is not supported");
    }

    // Ryser: perm = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} m(i, j),
    // visiting subsets in Gray-code order so each step adds or removes a column.
    ComplexVector row_sums = ComplexVector::Zero(n);
    Complex total(0.0, 0.0);
    std::uint64_t gray = 0;
    const std::uint64_t n_subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < n_subsets; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t flipped = next ^ gray;
        const int col = std::countr_zero(flipped);
        if (next & flipped) {
            row_sums += m.col(col);
        } else {
            row_sums -= m.col(col);
        }
        gray = next;

        Complex product(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            product *= row_sums(i);
        }
        const bool odd = (std::popcount(gray) & 1) != 0;
        total += odd ? -product : product;
    }
    return (n % 2 == 0) ? total : -total;
}

Eigen::Matrix2cd two_mode_block(const ComplexMatrix& s, ModePair modes) {
    const auto in_range = [&](int idx) { return idx >= 0 && idx < s.rows() && idx < s.cols(); };
    if (!in_range(modes.first) || !in_range(modes.second) || modes.first == modes.second) {
        throw InvalidParameter("modes", "must be two distinct indices inside the propagator");
    }
    Eigen::Matrix2cd block;
    block << s(modes.first, modes.first), s(modes.first, modes.second),
        s(modes.second, modes.first), s(modes.second, modes.second);
    return block;
}

double survival_boson(const Eigen::Matrix2cd& b) {
    return std::norm(b(0, 0) * b(1, 1) + b(0, 1) * b(1, 0));
}

double survival_fermion(const Eigen::Matrix2cd& b) {
    return std::norm(b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0));
}

double survival_classical(const Eigen::Matrix2cd& b) {
    return std::norm(b(0, 0) * b(1, 1)) + std::norm(b(0, 1) * b(1, 0));
}

namespace {

enum class Polarisation { H = 0, V = 1 };

// One creation operator a+_{mode, pol}; `mode` indexes the 2x2 block.
struct PolarisedMode {
    int mode;
    Polarisation pol;

    int key() const { return 2 * mode + static_cast<int>(pol); }
};

// Two-photon state in the doubled mode space, stored as amplitudes of the
// normal-ordered kets a+_x a+_y |0> with key(x) < key(y). Only kets with both
// photons in distinct polarised modes enter the antisymmetric input, and the
// kets with photons on the same polarised mode have zero overlap with it.
using TwoPhotonState = std::map<std::pair<int, int>, Complex>;

void add_term(TwoPhotonState& state, Complex amplitude, PolarisedMode x, PolarisedMode y) {
    int kx = x.key();
    int ky = y.key();
    if (kx == ky) {
        return;
    }
    if (kx > ky) {
        std::swap(kx, ky);
    }
    state[{kx, ky}] += amplitude;
}

struct Term {
    Complex amplitude;
    PolarisedMode first;
    PolarisedMode second;
};

}  // namespace

double survival_entangled(const Eigen::Matrix2cd& b) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<Term, 2> input = {{
        {Complex(r, 0.0), {0, Polarisation::H}, {1, Polarisation::V}},
        {Complex(-r, 0.0), {0, Polarisation::V}, {1, Polarisation::H}},
    }};

    TwoPhotonState initial;
    for (const Term& t : input) {
        add_term(initial, t.amplitude, t.first, t.second);
    }

    // a+_{j,p} -> sum_n S(n, j) a+_{n,p}, polarisation untouched.
    TwoPhotonState evolved;
    for (const Term& t : input) {
        for (int n = 0; n < 2; ++n) {
            for (int m = 0; m < 2; ++m) {
                const Complex amp = t.amplitude * b(n, t.first.mode) * b(m, t.second.mode);
                add_term(evolved, amp, {n, t.first.pol}, {m, t.second.pol});
            }
        }
    }

    Complex overlap(0.0, 0.0);
    for (const auto& [ket, amp0] : initial) {
        const auto it = evolved.find(ket);
        if (it != evolved.end()) {
            overlap += std::conj(amp0) * it->second;
        }
    }
    return std::norm(overlap);
}

double survival_boson(const Propagator& s, ModePair modes) {
    return survival_boson(two_mode_block(s.matrix, modes));
}

double survival_fermion(const Propagator& s, ModePair modes) {
    return survival_fermion(two_mode_block(s.matrix, modes));
}

double survival_classical(const Propagator& s, ModePair modes) {
    return survival_classical(two_mode_block(s.matrix, modes));
}

double survival_entangled(const Propagator& s, ModePair modes) {
    return survival_entangled(two_mode_block(s.matrix, modes));
}

SurvivalRecord survival_record(double z, const Eigen::Matrix2cd& block) {
    return {z, survival_boson(block), survival_fermion(block), survival_classical(block),
            survival_entangled(block)};
}

SurvivalRecord survival_record(const Propagator& s, ModePair modes) {
    return survival_record(s.z, two_mode_block(s.matrix, modes));
}

}  // namespace fano
