#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwgi/hilbert.hpp"

namespace qwgi {

struct EigenPair {
    double e0 = 0, e1 = 0;
    std::vector<double> v0, v1;
    double residual = 0; // max over the two pairs
};

struct LowestTwoOptions {
    double tol = 1e-10;
    std::uint64_t seed = 0x5eedULL;
    // Modest basis with thick restarts: full reorthogonalization makes the
    // cost per cycle quadratic in the basis size, so a small basis with
    // more restarts is much cheaper than a large one.
    int max_basis = 96;
    int max_restarts = 60;
    // Dense diagonalization below this dimension, Krylov iteration above.
    std::uint64_t dense_cap = 2048;
    const std::vector<double>* start_hint = nullptr;
};

// Two smallest eigenpairs of H(s). Dense for small dimensions; otherwise
// thick-restart Lanczos with full reorthogonalization. s = 1 is handled
// directly from the integer diagonal. Throws on non-convergence, carrying
// the best residual in the message.
EigenPair lowest_two(const ScheduleHamiltonian& ham, double s,
                     const LowestTwoOptions& opts = {});

struct SweepPoint {
    double s = 0, e0 = 0, e1 = 0, gap = 0;
    bool degenerate = false;
};

struct SpectralSweep {
    std::vector<SweepPoint> points; // ascending in s, refinement included
    double g_min = 0;
    double s_at_min = 0;
    std::optional<double> epsilon; // set by epsilon_bound
    int degenerate_points = 0;
    // Eigenvectors of the coarse grid, retained when requested.
    std::vector<std::vector<double>> v0s, v1s;
    std::vector<double> coarse_s;
};

struct GapSweepOptions {
    int grid_size = 101;
    bool refine = true;
    bool keep_vectors = false;
    double degeneracy_threshold = 1e-8;
    double refine_bracket = 1e-3;
    LowestTwoOptions solver;
};

// lowest_two on an inclusive [0,1] grid, warm-starting each point from
// its predecessor, plus golden-section refinement around the coarse
// argmin of the gap.
SpectralSweep gap_sweep(const ScheduleHamiltonian& ham, const GapSweepOptions& opts = {});

// max over retained grid points of |<v1| (H_f - H_I) |v0>|, skipping
// degenerate points. Requires keep_vectors; stores the result in sweep.
double epsilon_bound(const ScheduleHamiltonian& ham, SpectralSweep& sweep);

// epsilon / g_min^2, the time scale of the adiabatic condition.
double annealing_time_estimate(const SpectralSweep& sweep,
                               double degeneracy_threshold = 1e-8);

} // namespace qwgi
