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

#include "fano/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/SVD>

namespace fano {

std::vector<BoundState> detect_bics(const Hamiltonian& hamiltonian, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidParameter("threshold", "must lie in (0, 1)");
    }
    if (hamiltonian.band_half_width() <= 0.0) {
        throw InvalidParameter("hamiltonian", "carries no band information; use build_hamiltonian");
    }

    const SpectralPropagator spectral(hamiltonian);
    const RealMatrix& vectors = spectral.eigenvectors();
    const RealVector& energies = spectral.eigenvalues();
    const double half_width = hamiltonian.band_half_width();
    const double margin = kBandEdgeMargin * 0.5 * half_width;  // half_width = 2 kappa
    const RealMatrix& h = hamiltonian.matrix();

    // Eigenvalues are grouped into clusters first. A bipartite lattice can have
    // a degenerate pair at the same energy where only one combination is free
    // of the chain, and the solver is free to return any rotation of the pair.
    // Within each cluster the chain-free combinations are the right singular
    // vectors of the chain block with small singular values.
    std::vector<BoundState> found;
    const int dim = spectral.dim();
    int k = 0;
    while (k < dim) {
        int end = k + 1;
        const double tol = 1e-9 * std::max(1.0, std::abs(energies(k)));
        while (end < dim && energies(end) - energies(end - 1) <= tol) ++end;
        const int m = end - k;
        const double energy = energies.segment(k, m).mean();
        const int first = k;
        k = end;
        if (std::abs(energy - hamiltonian.band_center()) >= half_width - margin) {
            continue;
        }

        const RealMatrix cluster = vectors.middleCols(first, m);
        const RealMatrix chain = cluster.bottomRows(dim - kChainHead);
        Eigen::JacobiSVD<RealMatrix> svd(chain, Eigen::ComputeFullV);
        const RealVector& sigma = svd.singularValues();
        for (int j = 0; j < m; ++j) {
            const double chain_weight = j < sigma.size() ? sigma(j) * sigma(j) : 0.0;
            if (chain_weight > threshold) {
                continue;
            }
            RealVector v = cluster * svd.matrixV().col(j);
            v.normalize();
            for (int i = 0; i < v.size(); ++i) {
                if (std::abs(v(i)) > 1e-12) {
                    if (v(i) < 0.0) v = -v;
                    break;
                }
            }

            BoundState state;
            state.energy = m == 1 ? energy : v.dot(h * v);
            state.vector = v.cast<Complex>();
            state.chain_weight = v.tail(dim - kChainHead).squaredNorm();
            for (int site : {kSite1, kSite2}) {
                if (v(site) * v(site) > 1.0 - 1e-12 && h(site, kChainHead) == 0.0) {
                    state.decoupled_site = true;
                }
            }
            found.push_back(std::move(state));
        }
    }
    std::sort(found.begin(), found.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return found;
}

ComplexVector dressed_state(const LatticeSpec& spec) {
    spec.validate();
    if (spec.kappa1 <= 0.0 || spec.kappa2 <= 0.0) {
        throw InvalidParameter(spec.kappa1 <= 0.0 ? "kappa1" : "kappa2",
                               "dressed state requires both side couplings > 0");
    }
    ComplexVector v = ComplexVector::Zero(spec.dim());
    v(kSite1) = 1.0 / spec.kappa1;
    v(kSite2) = -1.0 / spec.kappa2;
    v.normalize();
    return v;
}

namespace {

// A term c * exp(-i w z) of a quasi-periodic amplitude.
struct Harmonic {
    double frequency;
    Complex coefficient;
};

// z-average of |sum_k c_k exp(-i w_k z)|^2 after merging equal frequencies.
double mean_square(std::vector<Harmonic> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Harmonic& a, const Harmonic& b) { return a.frequency < b.frequency; });
    double total = 0.0;
    std::size_t i = 0;
    while (i < terms.size()) {
        Complex group = terms[i].coefficient;
        std::size_t j = i + 1;
        const double tol = 1e-9 * std::max(1.0, std::abs(terms[i].frequency));
        while (j < terms.size() && terms[j].frequency - terms[i].frequency <= tol) {
            group += terms[j].coefficient;
            ++j;
        }
        total += std::norm(group);
        i = j;
    }
    return total;
}

using BilinearForm = std::function<Complex(const Eigen::Matrix2cd&, const Eigen::Matrix2cd&)>;

double averaged(const std::vector<double>& energies, const std::vector<Eigen::Matrix2cd>& projectors,
                const BilinearForm& form) {
    std::vector<Harmonic> terms;
    for (std::size_t b = 0; b < projectors.size(); ++b) {
        for (std::size_t c = 0; c < projectors.size(); ++c) {
            terms.push_back({energies[b] + energies[c], form(projectors[b], projectors[c])});
        }
    }
    return mean_square(std::move(terms));
}

}  // namespace

SurvivalRecord asymptotic_survival(const std::vector<BoundState>& bics, ModePair modes) {
    SurvivalRecord record{kAsymptoticZ, 0.0, 0.0, 0.0, 0.0};
    if (bics.empty()) {
        return record;
    }

    std::vector<double> energies;
    std::vector<Eigen::Matrix2cd> projectors;
    for (const BoundState& b : bics) {
        const Complex u1 = b.vector(modes.first);
        const Complex u2 = b.vector(modes.second);
        Eigen::Matrix2cd p;
        p << u1 * std::conj(u1), u1 * std::conj(u2), u2 * std::conj(u1), u2 * std::conj(u2);
        energies.push_back(b.energy);
        projectors.push_back(p);
    }

    const double lowest = std::min_element(bics.begin(), bics.end(), [](auto& a, auto& b) {
                              return a.energy < b.energy;
                          })->energy;
    const bool single_energy = std::all_of(bics.begin(), bics.end(), [&](const BoundState& b) {
        return std::abs(b.energy - lowest) <= 1e-9 * std::max(1.0, std::abs(lowest));
    });

    if (single_energy) {
        Eigen::Matrix2cd block = Eigen::Matrix2cd::Zero();
        for (const auto& p : projectors) block += p;
        return survival_record(kAsymptoticZ, block);
    }

    record.p_boson = averaged(energies, projectors, [](const auto& x, const auto& y) {
        return x(0, 0) * y(1, 1) + x(0, 1) * y(1, 0);
    });
    record.p_fermion = averaged(energies, projectors, [](const auto& x, const auto& y) {
        return x(0, 0) * y(1, 1) - x(0, 1) * y(1, 0);
    });
    record.p_classical =
        averaged(energies, projectors, [](const auto& x, const auto& y) { return x(0, 0) * y(1, 1); }) +
        averaged(energies, projectors, [](const auto& x, const auto& y) { return x(0, 1) * y(1, 0); });
    // The entangled overlap has the same harmonic content as the determinant.
    record.p_entangled = record.p_fermion;
    return record;
}

SurvivalRecord asymptotic_survival(const LatticeSpec& spec, double threshold) {
    return asymptotic_survival(detect_bics(build_hamiltonian(spec), threshold));
}

}  // namespace fano
