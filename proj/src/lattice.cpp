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

#include "fano/lattice.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

namespace fano {

namespace {

std::string describe(double value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

void require_finite(const char* field, double value) {
    if (!std::isfinite(value)) {
        throw InvalidParameter(field, "must be finite (got " + describe(value) + ")");
    }
}

}  // namespace

std::vector<std::string> LatticeSpec::validate() const {
    require_finite("eps1", eps1);
    require_finite("eps2", eps2);
    require_finite("kappa1", kappa1);
    require_finite("kappa2", kappa2);
    require_finite("kappa", kappa);
    require_finite("chain_energy", chain_energy);
    if (kappa <= 0.0) {
        throw InvalidParameter("kappa", "must be > 0 (got " + describe(kappa) + ")");
    }
    if (kappa1 < 0.0) {
        throw InvalidParameter("kappa1", "must be >= 0 (got " + describe(kappa1) + ")");
    }
    if (kappa2 < 0.0) {
        throw InvalidParameter("kappa2", "must be >= 0 (got " + describe(kappa2) + ")");
    }
    if (n_chain < 1) {
        throw InvalidParameter("n_chain", "must be >= 1 (got " + std::to_string(n_chain) + ")");
    }

    std::vector<std::string> warnings;
    if (kappa1 >= kappa) {
        warnings.push_back("kappa1 >= kappa: outside the weak-coupling regime");
    }
    if (kappa2 >= kappa) {
        warnings.push_back("kappa2 >= kappa: outside the weak-coupling regime");
    }
    if (std::abs(eps1 - chain_energy) >= 2.0 * kappa) {
        warnings.push_back("eps1 lies outside the chain band (|eps1 - chain_energy| >= 2 kappa)");
    }
    if (std::abs(eps2 - chain_energy) >= 2.0 * kappa) {
        warnings.push_back("eps2 lies outside the chain band (|eps2 - chain_energy| >= 2 kappa)");
    }
    return warnings;
}

Hamiltonian::Hamiltonian(RealMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw InvalidParameter("hamiltonian", "must be a non-empty square matrix");
    }
    if (!matrix_.allFinite()) {
        throw InvalidParameter("hamiltonian", "entries must be finite");
    }
    if (matrix_ != matrix_.transpose()) {
        throw InvalidParameter("hamiltonian", "must be exactly symmetric");
    }
}

Hamiltonian build_hamiltonian(const LatticeSpec& spec) {
    spec.validate();

    const int dim = spec.dim();
    RealMatrix h = RealMatrix::Zero(dim, dim);
    h(kSite1, kSite1) = spec.eps1;
    h(kSite2, kSite2) = spec.eps2;
    h(kSite1, kChainHead) = h(kChainHead, kSite1) = spec.kappa1;
    h(kSite2, kChainHead) = h(kChainHead, kSite2) = spec.kappa2;
    for (int j = kChainHead; j < dim; ++j) {
        h(j, j) = spec.chain_energy;
        if (j + 1 < dim) {
            h(j, j + 1) = h(j + 1, j) = spec.kappa;
        }
    }

    Hamiltonian result(std::move(h));
    result.band_center_ = spec.chain_energy;
    result.band_half_width_ = 2.0 * spec.kappa;
    return result;
}

SpectralPropagator::SpectralPropagator(const Hamiltonian& hamiltonian) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(hamiltonian.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the Hamiltonian did not converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Propagator SpectralPropagator::at(double z) const {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw InvalidParameter("z", "must be finite and >= 0 (got " + describe(z) + ")");
    }
    if (z == 0.0) {
        return {0.0, ComplexMatrix::Identity(dim(), dim())};
    }
    ComplexVector phases(dim());
    for (int k = 0; k < dim(); ++k) {
        phases(k) = std::polar(1.0, -eigenvalues_(k) * z);
    }
    const ComplexMatrix v = eigenvectors_.cast<Complex>();
    return {z, v * phases.asDiagonal() * v.transpose()};
}

Complex SpectralPropagator::entry(int n, int j, double z) const {
    if (z == 0.0) {
        return n == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    }
    Complex sum(0.0, 0.0);
    for (int k = 0; k < dim(); ++k) {
        sum += eigenvectors_(n, k) * eigenvectors_(j, k) * std::polar(1.0, -eigenvalues_(k) * z);
    }
    return sum;
}

Eigen::Matrix2cd SpectralPropagator::block(int a, int b, double z) const {
    Eigen::Matrix2cd out;
    if (z == 0.0) {
        out.setIdentity();
        return out;
    }
    out.setZero();
    for (int k = 0; k < dim(); ++k) {
        const Complex phase = std::polar(1.0, -eigenvalues_(k) * z);
        const double va = eigenvectors_(a, k);
        const double vb = eigenvectors_(b, k);
        out(0, 0) += va * va * phase;
        out(0, 1) += va * vb * phase;
        out(1, 1) += vb * vb * phase;
    }
    out(1, 0) = out(0, 1);
    return out;
}

Propagator propagator(const Hamiltonian& hamiltonian, double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw InvalidParameter("z", "must be finite and >= 0 (got " + describe(z) + ")");
    }
    return SpectralPropagator(hamiltonian).at(z);
}

Propagator propagator_ode(const Hamiltonian& hamiltonian, double z, double step) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw InvalidParameter("z", "must be finite and >= 0 (got " + describe(z) + ")");
    }
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidParameter("step", "must be finite and > 0 (got " + describe(step) + ")");
    }

    const int dim = hamiltonian.dim();
    // -iH as a sparse operator; the lattice Hamiltonian is nearly tridiagonal.
    Eigen::SparseMatrix<Complex> generator =
        (Complex(0.0, -1.0) * hamiltonian.matrix().cast<Complex>()).sparseView();

    ComplexMatrix s = ComplexMatrix::Identity(dim, dim);
    ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);

    const long n_steps = static_cast<long>(std::ceil(z / step - 1e-12));
    double travelled = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double h = std::min(step, z - travelled);
        k1 = generator * s;
        k2 = generator * (s + (0.5 * h) * k1);
        k3 = generator * (s + (0.5 * h) * k2);
        k4 = generator * (s + h * k3);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        travelled += h;
        if (!s.allFinite()) {
            std::ostringstream os;
            os << "RK4 propagation produced non-finite amplitudes at z = " << travelled
               << " (step " << step << ")";
            throw std::runtime_error(os.str());
        }
    }
    return {z, std::move(s)};
}

int chain_length_for(double z_max, double kappa, double safety) {
    if (!(z_max > 0.0) || !std::isfinite(z_max)) {
        throw InvalidParameter("z_max", "must be finite and > 0 (got " + describe(z_max) + ")");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidParameter("kappa", "must be finite and > 0 (got " + describe(kappa) + ")");
    }
    if (!(safety >= 1.0) || !std::isfinite(safety)) {
        throw InvalidParameter("safety", "must be finite and >= 1 (got " + describe(safety) + ")");
    }
    return static_cast<int>(std::ceil(2.0 * kappa * z_max * safety)) + 2;
}

double unitarity_defect(const ComplexMatrix& s) {
    const ComplexMatrix gram = s.adjoint() * s - ComplexMatrix::Identity(s.rows(), s.cols());
    return gram.cwiseAbs().maxCoeff();
}

}  // namespace fano
