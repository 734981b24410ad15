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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fano {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Mode indices are zero-based: 0 is site |1>, 1 is site |2>, 2.. are the
/// chain sites counted from the head.
inline constexpr int kSite1 = 0;
inline constexpr int kSite2 = 1;
inline constexpr int kChainHead = 2;

/// Number of chain sites in the fabricated device.
inline constexpr int kFaithfulChainLength = 25;

/// Raised when a LatticeSpec (or any other input) violates a hard invariant.
/// `field()` names the offending parameter so front ends can point at it.
class InvalidParameter : public std::invalid_argument {
public:
    InvalidParameter(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/**
 * Physical parameters of the two-site Fano-Anderson lattice.
 *
 * All rates are in mm^-1 and propagation distances in mm. Sites |1> and |2>
 * have on-site detunings eps1 and eps2 and couple with kappa1 and kappa2 to
 * the head of a tight-binding chain of n_chain sites with hopping kappa.
 */
struct LatticeSpec {
    double eps1 = 0.5;
    double eps2 = 0.5;
    double kappa1 = 0.2;
    double kappa2 = 0.2;
    double kappa = 0.5;
    int n_chain = kFaithfulChainLength;
    double chain_energy = 0.0;

    int dim() const noexcept { return n_chain + 2; }

    /// Throws InvalidParameter on a hard violation. Returns human readable
    /// warnings for the advisory regime checks (weak coupling, in-band levels).
    std::vector<std::string> validate() const;

    bool operator==(const LatticeSpec&) const = default;
};

/// Real symmetric coupling matrix in the site basis.
class Hamiltonian {
public:
    explicit Hamiltonian(RealMatrix matrix);

    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    const RealMatrix& matrix() const noexcept { return matrix_; }
    double operator()(int row, int col) const { return matrix_(row, col); }

    /// Band centre and half-width of the chain continuum, recorded when the
    /// matrix comes from build_hamiltonian. Zero half-width otherwise.
    double band_center() const noexcept { return band_center_; }
    double band_half_width() const noexcept { return band_half_width_; }

private:
    friend Hamiltonian build_hamiltonian(const LatticeSpec& spec);

    RealMatrix matrix_;
    double band_center_ = 0.0;
    double band_half_width_ = 0.0;
};

/// Single-particle scattering matrix: S(n, j) is the amplitude on mode n at
/// distance z for unit amplitude on mode j at z = 0.
struct Propagator {
    double z = 0.0;
    ComplexMatrix matrix;

    Complex operator()(int n, int j) const { return matrix(n, j); }
    int dim() const noexcept { return static_cast<int>(matrix.rows()); }
};

Hamiltonian build_hamiltonian(const LatticeSpec& spec);

/**
 * Eigendecomposition H = V diag(lambda) V^T of a Hamiltonian, reusable for
 * any number of propagation distances. Amplitudes follow i da/dz = H a, so
 * S(z) = V exp(-i lambda z) V^T.
 */
class SpectralPropagator {
public:
    explicit SpectralPropagator(const Hamiltonian& hamiltonian);

    int dim() const noexcept { return static_cast<int>(eigenvalues_.size()); }
    const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
    const RealMatrix& eigenvectors() const noexcept { return eigenvectors_; }

    /// Full dim x dim propagator. O(dim^3).
    Propagator at(double z) const;

    /// Single entry S(n, j) at distance z. O(dim).
    Complex entry(int n, int j, double z) const;

    /// 2x2 block of S restricted to rows and columns {a, b}. O(dim).
    Eigen::Matrix2cd block(int a, int b, double z) const;

private:
    RealVector eigenvalues_;
    RealMatrix eigenvectors_;
};

/// S(z) by spectral decomposition. z must be >= 0.
Propagator propagator(const Hamiltonian& hamiltonian, double z);

/// S(z) by classical fixed-step RK4 on dS/dz = -i H S. Verification oracle
/// only; the last step is shortened to land exactly on z.
Propagator propagator_ode(const Hamiltonian& hamiltonian, double z, double step);

/// Chain length that keeps the fastest tight-binding wavefront (2 kappa sites
/// per mm) from reflecting back within z_max: ceil(2 kappa z_max safety) + 2.
int chain_length_for(double z_max, double kappa, double safety = 1.5);

/// max_{ij} |(S^dagger S - I)_{ij}|
double unitarity_defect(const ComplexMatrix& s);

}  // namespace fano
