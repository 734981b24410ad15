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

namespace fano::serial {

namespace {

SweepPoint evaluate_full(const LatticeSpec& spec, double z) {
    const Propagator s = propagator(build_hamiltonian(spec), z);
    return {spec.eps1, spec.eps2, spec.kappa, survival_record(s)};
}

}  // namespace

std::vector<SweepPoint> sweep_z(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "sweep_z runs at the base eps2; leave the grid empty");
    }
    const LatticeSpec spec = resolve_lattice(cfg, cfg.z_values.back());
    std::vector<SweepPoint> out;
    out.reserve(cfg.z_values.size());
    for (double z : cfg.z_values) {
        out.push_back(evaluate_full(spec, z));
    }
    return out;
}

std::vector<SweepPoint> sweep_detuning(const SweepConfig& cfg, double z_fixed) {
    cfg.validate();
    if (!cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "detuning sweep needs an eps2 grid");
    }
    if (!(z_fixed > 0.0)) {
        throw InvalidParameter("z", "fixed distance must be > 0");
    }
    LatticeSpec spec = resolve_lattice(cfg, z_fixed);
    std::vector<SweepPoint> out;
    for (double eps2 : *cfg.eps2_values) {
        spec.eps2 = eps2;
        out.push_back(evaluate_full(spec, z_fixed));
    }
    return out;
}

SurvivalMap survival_map(const SweepConfig& cfg) {
    cfg.validate();
    if (!cfg.eps2_values) {
        throw InvalidParameter("eps2_values", "map needs an eps2 grid");
    }
    LatticeSpec spec = resolve_lattice(cfg, cfg.z_values.back());
    SurvivalMap map{cfg.z_values, *cfg.eps2_values, {}};
    for (double z : map.z_values) {
        for (double eps2 : map.eps2_values) {
            spec.eps2 = eps2;
            map.cells.push_back(evaluate_full(spec, z));
        }
    }
    return map;
}

}  // namespace fano::serial
