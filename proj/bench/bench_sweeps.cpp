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

// Wall-clock comparison of the OpenMP sweep kernels against the serial
// reference path. Usage: bench_sweeps [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "fano/experiments.hpp"

namespace {

double seconds(const std::function<void()>& f, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %9.4f s   openmp %9.4f s   speedup %6.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());

    fano::SweepConfig zcfg;
    zcfg.base = {0.5, 0.5, 0.2, 0.2, 0.5, 25, 0.0};
    zcfg.z_values = grid(0.0, 30.0, 601);
    report("sweep_z (601 z)", seconds([&] { fano::serial::sweep_z(zcfg); }, repeats),
           seconds([&] { fano::sweep_z(zcfg); }, repeats));

    fano::SweepConfig dcfg = zcfg;
    dcfg.z_values = {20.0};
    dcfg.eps2_values = grid(0.1, 0.9, 401);
    report("sweep_detuning (401)", seconds([&] { fano::serial::sweep_detuning(dcfg, 20.0); }, repeats),
           seconds([&] { fano::sweep_detuning(dcfg, 20.0); }, repeats));

    // Default heatmap grid: kappa z in [0, 15] x detuning in [-2, 2].
    fano::SweepConfig mcfg;
    mcfg.base = {1.0, 1.0, 0.4, 0.4, 1.0, 25, 0.0};
    mcfg.z_values = grid(0.0, 15.0, 151);
    mcfg.eps2_values = grid(-1.0, 3.0, 161);
    report("survival_map 151x161", seconds([&] { fano::serial::survival_map(mcfg); }, 1),
           seconds([&] { fano::survival_map(mcfg); }, repeats));
    return 0;
}
