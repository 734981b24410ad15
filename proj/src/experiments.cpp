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

#include "fano/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include <omp.h>

namespace fano {

namespace {

void require_grid(const char* field, const std::vector<double>& values, bool nonnegative) {
    if (values.empty()) {
        throw InvalidParameter(field, "grid must not be empty");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidParameter(field, "grid values must be finite");
        }
        if (nonnegative && values[i] < 0.0) {
            throw InvalidParameter(field, "grid values must be >= 0");
        }
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw InvalidParameter(field, "grid must be strictly increasing");
        }
    }
}

// Runs body(i) for i in [0, n) across OpenMP threads. The first exception
// thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_lock;
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> guard(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

SweepPoint evaluate(const LatticeSpec& spec, const SpectralPropagator& spectral, double z) {
    return {spec.eps1, spec.eps2, spec.kappa,
            survival_record(z, spectral.block(kSite1, kSite2, z))};
}

}  // namespace

void SweepConfig::validate() const {
    base.validate();
    require_grid("z_values", z_values, true);
    if (eps2_values) {
        require_grid("eps2_values", *eps2_values, false);
    }
    if (!(safety >= 1.0)) {
        throw InvalidParameter("safety", "must be >= 1");
    }
}

LatticeSpec resolve_lattice(const SweepConfig& cfg, double z_max) {
    LatticeSpec spec = cfg.base;
    switch (cfg.chain) {
        case ChainMode::Faithful:
            spec.n_chain = kFaithfulChainLength;
            break;
        case ChainMode::Converged:
            // z_max = 0 is the limit of the rule: ceil(0) + 2.
            spec.n_chain = z_max > 0.0 ? chain_length_for(z_max, spec.kappa, cfg.safety) : 2;
            break;
        case ChainMode::Explicit:
            break;
    }
    return spec;
}

SweepPoint evaluate_point(const LatticeSpec& spec, double z) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw InvalidParameter("z", "must be finite and >= 0");
    }
    return evaluate(spec, SpectralPropagator(build_hamiltonian(spec)), z);
}

std::vector<SweepPoint> sweep_z(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "sweep_z runs at the base eps2; leave the grid empty");
    }
    const LatticeSpec spec = resolve_lattice(cfg, cfg.z_values.back());
    const SpectralPropagator spectral(build_hamiltonian(spec));

    std::vector<SweepPoint> out(cfg.z_values.size());
    parallel_for(out.size(), [&](std::size_t i) { out[i] = evaluate(spec, spectral, cfg.z_values[i]); });
    return out;
}

std::vector<SweepPoint> sweep_detuning(const SweepConfig& cfg, double z_fixed) {
    cfg.validate();
    if (!cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "detuning sweep needs an eps2 grid");
    }
    if (!(z_fixed > 0.0) || !std::isfinite(z_fixed)) {
        throw InvalidParameter("z", "fixed distance must be finite and > 0");
    }
    const LatticeSpec resolved = resolve_lattice(cfg, z_fixed);
    const std::vector<double>& eps2 = *cfg.eps2_values;

    std::vector<SweepPoint> out(eps2.size());
    parallel_for(out.size(), [&](std::size_t i) {
        LatticeSpec spec = resolved;
        spec.eps2 = eps2[i];
        const SpectralPropagator spectral(build_hamiltonian(spec));
        out[i] = evaluate(spec, spectral, z_fixed);
    });
    return out;
}

SurvivalMap survival_map(const SweepConfig& cfg) {
    cfg.validate();
    if (!cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "map needs an eps2 grid");
    }
    const LatticeSpec resolved = resolve_lattice(cfg, cfg.z_values.back());

    SurvivalMap map{cfg.z_values, *cfg.eps2_values, {}};
    const std::size_t n_z = map.z_values.size();
    const std::size_t n_eps = map.eps2_values.size();
    map.cells.resize(n_z * n_eps);
    parallel_for(n_eps, [&](std::size_t ie) {
        LatticeSpec spec = resolved;
        spec.eps2 = map.eps2_values[ie];
        const SpectralPropagator spectral(build_hamiltonian(spec));
        for (std::size_t iz = 0; iz < n_z; ++iz) {
            map.cells[iz * n_eps + ie] = evaluate(spec, spectral, map.z_values[iz]);
        }
    });
    return map;
}

CountsRecord::CountsRecord(std::uint64_t c_vv, std::uint64_t c_vv_dist, std::uint64_t c_ent,
                           std::uint64_t c_vh_dist, double p_clas)
    : c_vv_(c_vv), c_vv_dist_(c_vv_dist), c_ent_(c_ent), c_vh_dist_(c_vh_dist), p_clas_(p_clas) {
    if (c_vv_dist == 0) {
        throw InvalidParameter("c_vv_dist", "must be > 0");
    }
    if (c_vh_dist == 0) {
        throw InvalidParameter("c_vh_dist", "must be > 0");
    }
    if (!(p_clas >= 0.0 && p_clas <= 1.0)) {
        throw InvalidParameter("p_clas", "must lie in [0, 1]");
    }
}

CountEstimate normalize_counts(const CountsRecord& counts) {
    const double boson_ratio =
        static_cast<double>(counts.c_vv()) / static_cast<double>(counts.c_vv_dist());
    const double fermion_ratio =
        static_cast<double>(counts.c_ent()) / static_cast<double>(counts.c_vh_dist());
    return {boson_ratio * counts.p_clas(), fermion_ratio * counts.p_clas()};
}

}  // namespace fano
