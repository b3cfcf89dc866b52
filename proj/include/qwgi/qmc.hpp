#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwgi/encoding.hpp"
#include "qwgi/graph.hpp"
#include "qwgi/hilbert.hpp"
#include "qwgi/rng.hpp"

namespace qwgi {

struct QmcParams {
    int h = 5;          // permutation-trick attempts
    int k = 4;          // restarts per attempt
    int r = 200;        // Trotter replicas
    int m = 250;        // Metropolis moves per schedule step
    double beta = 0;    // 0 selects the default beta = r
    int T = 100;        // integer schedule length
    int burn_in_sweeps = 0; // 0 selects the default 100 * n
    std::uint64_t seed = 1;
    // One "move" is a single-site proposal by default; sweep_moves makes
    // each move a full sweep of r*n proposals.
    bool sweep_moves = false;
    // Relabel only the second graph, as in the prose description, instead
    // of the pseudocode's two independent relabelings.
    bool prose_mode = false;
    bool record_trace = false;

    double effective_beta() const { return beta > 0 ? beta : static_cast<double>(r); }
};

// tau-periodic world-lines: one position per (slice, chain).
struct ReplicaEnsemble {
    int n = 0;
    int r = 0;
    std::vector<int> pos;               // pos[tau * n + c], positions 1..n
    std::vector<std::int32_t> energy;   // cached diagonal energy per slice

    int& at(int tau, int c) { return pos[static_cast<std::size_t>(tau) * n + c]; }
    int at(int tau, int c) const { return pos[static_cast<std::size_t>(tau) * n + c]; }

    static ReplicaEnsemble uniform_start(int n, int r, const PairPenalty& pairs);
    void recompute_energies(const PairPenalty& pairs);
    int zero_cost_slices() const;
};

// exp(dtau * nu / 2 * A_path) entries, the per-chain kinetic kernel, from
// the closed-form sine eigenbasis of the open chain. Entrywise positive
// for nu > 0; the identity at nu = 0.
class KineticKernel {
public:
    KineticKernel() = default;
    KineticKernel(int n, double dtau, double nu);

    double at(int q, int qnew) const { return k_[(q - 1) * n_ + (qnew - 1)]; }
    int n() const { return n_; }

private:
    int n_ = 0;
    std::vector<double> k_;
};

// One single-site Metropolis proposal on a uniform (slice, chain) pair.
// The acceptance ratio couples the site to its two tau-neighbors through
// the kinetic kernel and to its slice through the diagonal energy.
void metropolis_move(ReplicaEnsemble& ens, const KineticKernel& kernel, double nu,
                     double dtau, const PairPenalty& pairs, Rng& rng);

struct QmcOutcome {
    bool solved = false;
    double solving_slice_fraction = 0;
    int attempt_i = 0; // 1-based permutation-trick attempt at success (0 = none)
    int attempt_j = 0; // 1-based restart at success
    int runs_used = 0;
    double wall_ms = 0;
    std::vector<std::int32_t> min_energy_trace; // per schedule step, when recorded
    // Solution of the original instance recovered from a zero-cost slice,
    // mapped back through the attempt's relabeling; only set when the
    // zero-cost configuration is a permutation.
    std::optional<Permutation> solution;
};

// The annealer: h permutation-trick attempts of k restarts each;
// every restart thermalizes toward exp(-beta H_I) and then anneals
// nu = 1 - t/T over integer steps, m Metropolis moves per step. Success
// when at least ceil(r/6) slices sit at zero diagonal energy at t = T.
QmcOutcome qmc_solve(const GiInstance& inst, const QmcParams& params);

// (sigma1(G1), sigma2(G2)); isomorphism class is preserved.
GiInstance permutation_trick(const GiInstance& inst, const Permutation& sigma1,
                             const Permutation& sigma2);

// Maps a solution of the relabeled instance back to the original:
// sigma2^-1 . pi . sigma1.
Permutation permutation_trick_back(const Permutation& pi, const Permutation& sigma1,
                                   const Permutation& sigma2);

struct CampaignRow {
    int n = 0;
    int instance_id = 0;
    int T = 0;
    bool solved = false;
    int runs_used = 0;
    int attempt_i = 0;
    int attempt_j = 0;
    double wall_ms = 0;
};

struct CampaignResult {
    std::vector<CampaignRow> rows; // one row per (instance, ladder T) tried
    std::optional<int> t_n;        // smallest ladder T solving all instances
    std::vector<int> unsolved;     // instance ids unsolved at the largest T
};

// Runs qmc_solve over every instance for each ladder T in turn; stops at
// the first T solving all of them. Instances run in parallel; outputs are
// merged by instance index and independent of the job count.
CampaignResult annealing_time_campaign(const std::vector<GiInstance>& instances,
                                       const QmcParams& base, const std::vector<int>& ladder,
                                       int jobs = 0);

} // namespace qwgi
