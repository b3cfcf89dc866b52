#include "qwgi/qmc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <span>
#include <numbers>
#include <stdexcept>

#include <omp.h>

namespace qwgi {

ReplicaEnsemble ReplicaEnsemble::uniform_start(int n, int r, const PairPenalty& pairs)
{
    ReplicaEnsemble ens;
    ens.n = n;
    ens.r = r;
    const int mid = (n + 2) / 2; // ceil((n+1)/2)
    ens.pos.assign(static_cast<std::size_t>(r) * n, mid);
    ens.recompute_energies(pairs);
    return ens;
}

void ReplicaEnsemble::recompute_energies(const PairPenalty& pairs)
{
    energy.assign(r, 0);
    for (int tau = 0; tau < r; ++tau) {
        std::int32_t e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                e += pairs.at(i, j, at(tau, i), at(tau, j));
        energy[tau] = e;
    }
}

int ReplicaEnsemble::zero_cost_slices() const
{
    int z = 0;
    for (std::int32_t e : energy)
        z += e == 0;
    return z;
}

KineticKernel::KineticKernel(int n, double dtau, double nu) : n_(n)
{
    // K = exp(-dtau * nu * H_chain) with H_chain the -1/2 hopping matrix of
    // the open chain; eigenvalues -cos(k pi/(n+1)), sine eigenvectors.
    k_.assign(static_cast<std::size_t>(n) * n, 0.0);
    const double norm = 2.0 / (n + 1);
    for (int q = 1; q <= n; ++q) {
        for (int p = 1; p <= n; ++p) {
            double acc = 0;
            for (int k = 1; k <= n; ++k) {
                const double lambda = -std::cos(k * std::numbers::pi / (n + 1));
                acc += std::sin(q * k * std::numbers::pi / (n + 1)) *
                       std::sin(p * k * std::numbers::pi / (n + 1)) *
                       std::exp(-dtau * nu * lambda);
            }
            k_[(q - 1) * n_ + (p - 1)] = norm * acc;
        }
    }
}

void metropolis_move(ReplicaEnsemble& ens, const KineticKernel& kernel, double nu, double dtau,
                     const PairPenalty& pairs, Rng& rng)
{
    const int r = ens.r, n = ens.n;
    const int tau = rng.uniform_int(0, r - 1);
    const int c = rng.uniform_int(0, n - 1);
    const int q = ens.at(tau, c);
    const int qnew = rng.uniform_int(1, n);
    if (qnew == q)
        return;

    const int qprev = ens.at((tau + r - 1) % r, c);
    const int qnext = ens.at((tau + 1) % r, c);
    const std::span<const int> slice(&ens.pos[static_cast<std::size_t>(tau) * n],
                                     static_cast<std::size_t>(n));
    const int de = pairs.delta(slice, c, qnew);

    double kin_ratio;
    if (nu <= 0.0) {
        // Identity kernel: world-lines must be tau-aligned for nonzero
        // weight. Compare alignment indicators instead of dividing zeros.
        const int align_new = (qnew == qprev) + (qnew == qnext);
        const int align_old = (q == qprev) + (q == qnext);
        if (align_new < align_old)
            return;
        kin_ratio = align_new > align_old ? 1e300 : 1.0;
    } else {
        kin_ratio = (kernel.at(qprev, qnew) * kernel.at(qnew, qnext)) /
                    (kernel.at(qprev, q) * kernel.at(q, qnext));
    }
    const double ratio = kin_ratio * std::exp(-dtau * (1.0 - nu) * de);
    if (ratio >= 1.0 || rng.uniform01() < ratio) {
        ens.at(tau, c) = qnew;
        ens.energy[tau] += de;
    }
}

GiInstance permutation_trick(const GiInstance& inst, const Permutation& sigma1,
                             const Permutation& sigma2)
{
    if (sigma1.n() != inst.n() || sigma2.n() != inst.n())
        throw std::invalid_argument("permutation_trick: size mismatch");
    return GiInstance(apply_permutation(sigma1, inst.g1), apply_permutation(sigma2, inst.g2));
}

Permutation permutation_trick_back(const Permutation& pi, const Permutation& sigma1,
                                   const Permutation& sigma2)
{
    return compose(sigma2.inverse(), compose(pi, sigma1));
}

namespace {

struct SingleRun {
    bool solved = false;
    double fraction = 0;
    std::optional<FunctionConfig> zero_slice;
    std::vector<std::int32_t> trace;
};

SingleRun run_once(const PairPenalty& pairs, int n, const QmcParams& params, Rng& rng)
{
    const double beta = params.effective_beta();
    const double dtau = beta / params.r;
    ReplicaEnsemble ens = ReplicaEnsemble::uniform_start(n, params.r, pairs);

    // Thermal annealing toward exp(-beta H_I): pure kinetic weight.
    const KineticKernel kinetic_only(n, dtau, 1.0);
    const int burn_sweeps = params.burn_in_sweeps > 0 ? params.burn_in_sweeps : 100 * n;
    const long burn_proposals = static_cast<long>(burn_sweeps) * params.r * n;
    for (long p = 0; p < burn_proposals; ++p)
        metropolis_move(ens, kinetic_only, 1.0, dtau, pairs, rng);

    SingleRun out;
    for (int t = 1; t <= params.T; ++t) {
        const double nu = 1.0 - static_cast<double>(t) / params.T;
        const KineticKernel kernel(n, dtau, nu);
        const long moves = params.sweep_moves
                               ? static_cast<long>(params.m) * params.r * n
                               : static_cast<long>(params.m);
        for (long l = 0; l < moves; ++l)
            metropolis_move(ens, kernel, nu, dtau, pairs, rng);
        if (params.record_trace)
            out.trace.push_back(*std::min_element(ens.energy.begin(), ens.energy.end()));
    }

    const int zero = ens.zero_cost_slices();
    out.fraction = static_cast<double>(zero) / params.r;
    out.solved = zero >= (params.r + 5) / 6; // ceil(r/6)
    if (out.solved) {
        for (int tau = 0; tau < ens.r; ++tau) {
            if (ens.energy[tau] == 0) {
                std::vector<int> q(ens.pos.begin() + static_cast<std::size_t>(tau) * n,
                                   ens.pos.begin() + static_cast<std::size_t>(tau + 1) * n);
                out.zero_slice = FunctionConfig(n, std::move(q));
                break;
            }
        }
    }
    return out;
}

} // namespace

QmcOutcome qmc_solve(const GiInstance& inst, const QmcParams& params)
{
    const auto start = std::chrono::steady_clock::now();
    const int n = inst.n();
    Rng sigma_rng(params.seed);

    QmcOutcome outcome;
    for (int i = 1; i <= params.h; ++i) {
        Permutation sigma1 = Permutation::identity(n);
        Permutation sigma2 = Permutation::identity(n);
        if (i > 1) {
            if (params.prose_mode) {
                sigma2 = random_permutation(n, sigma_rng);
            } else {
                sigma1 = random_permutation(n, sigma_rng);
                sigma2 = random_permutation(n, sigma_rng);
            }
        }
        const GiInstance relabeled = permutation_trick(inst, sigma1, sigma2);
        const PairPenalty pairs(build_2sat(relabeled), true);

        for (int j = 1; j <= params.k; ++j) {
            Rng run_rng(mix_seed(params.seed, static_cast<std::uint64_t>((i - 1) * params.k + j)));
            SingleRun run = run_once(pairs, n, params, run_rng);
            ++outcome.runs_used;
            if (params.record_trace && outcome.min_energy_trace.empty())
                outcome.min_energy_trace = run.trace;
            if (run.solved) {
                outcome.solved = true;
                outcome.solving_slice_fraction = run.fraction;
                outcome.attempt_i = i;
                outcome.attempt_j = j;
                if (run.zero_slice && run.zero_slice->is_permutation()) {
                    const Permutation pi(run.zero_slice->q);
                    outcome.solution = permutation_trick_back(pi, sigma1, sigma2);
                }
                outcome.wall_ms = std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - start)
                                      .count();
                return outcome;
            }
        }
    }
    outcome.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return outcome;
}

CampaignResult annealing_time_campaign(const std::vector<GiInstance>& instances,
                                       const QmcParams& base, const std::vector<int>& ladder,
                                       int jobs)
{
    if (instances.empty())
        throw std::invalid_argument("annealing_time_campaign: no instances");
    CampaignResult result;
    const int nthreads = jobs > 0 ? jobs : omp_get_max_threads();

    for (int T : ladder) {
        std::vector<CampaignRow> rows(instances.size());
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (std::ptrdiff_t id = 0; id < static_cast<std::ptrdiff_t>(instances.size()); ++id) {
            QmcParams p = base;
            p.T = T;
            p.seed = mix_seed(base.seed, static_cast<std::uint64_t>(id) * 1000003ULL +
                                             static_cast<std::uint64_t>(T));
            const QmcOutcome o = qmc_solve(instances[id], p);
            rows[id] = CampaignRow{instances[id].n(), static_cast<int>(id), T, o.solved,
                                   o.runs_used, o.attempt_i, o.attempt_j, o.wall_ms};
        }
        bool all = true;
        for (const CampaignRow& row : rows)
            all = all && row.solved;
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
        if (all) {
            result.t_n = T;
            return result;
        }
        if (T == ladder.back())
            for (const CampaignRow& row : rows)
                if (!row.solved)
                    result.unsolved.push_back(row.instance_id);
    }
    return result;
}

} // namespace qwgi
