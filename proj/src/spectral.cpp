#include "qwgi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "qwgi/blas.hpp"
#include "qwgi/rng.hpp"

namespace qwgi {

namespace {

std::vector<double> random_unit_vector(std::uint64_t dim, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> v(dim);
    for (auto& x : v)
        x = 2.0 * rng.uniform01() - 1.0;
    const double nrm = det_nrm2(std::span<const double>(v));
    scal(1.0 / nrm, v);
    return v;
}

// Rayleigh-Ritz over a growing orthonormal Krylov basis with full (CGS2)
// reorthogonalization and thick restarts keeping the lowest Ritz vectors.
class KrylovLowestTwo {
public:
    KrylovLowestTwo(const ScheduleHamiltonian& ham, double s, const LowestTwoOptions& opts)
        : ham_(ham), s_(s), opts_(opts), dim_(ham.index().dim()),
          B_(Eigen::MatrixXd::Zero(opts.max_basis + 1, opts.max_basis + 1))
    {
    }

    EigenPair solve()
    {
        opts_.max_basis = std::min<int>(opts_.max_basis, static_cast<int>(dim_) - 2);
        std::vector<double> v0;
        if (opts_.start_hint && opts_.start_hint->size() == dim_) {
            v0 = *opts_.start_hint;
            const double nrm = det_nrm2(std::span<const double>(v0));
            if (nrm > 0)
                scal(1.0 / nrm, v0);
            else
                v0 = random_unit_vector(dim_, opts_.seed);
        } else {
            v0 = random_unit_vector(dim_, opts_.seed);
        }
        basis_.push_back(std::move(v0));

        double best_residual = 1e300;
        int applications = 0;
        const int budget = opts_.max_basis * opts_.max_restarts;
        int since_check = 0;
        while (applications < budget) {
            step();
            ++applications;
            ++since_check;
            const int filled = static_cast<int>(basis_.size()) - 1;
            if (filled >= 2 && (since_check >= 8 || filled >= opts_.max_basis)) {
                since_check = 0;
                EigenPair cand = extract(filled);
                best_residual = std::min(best_residual, cand.residual);
                if (cand.residual <= opts_.tol)
                    return cand;
                if (filled >= opts_.max_basis)
                    restart(filled);
            }
        }
        throw std::runtime_error("lowest_two: no convergence at s=" + std::to_string(s_) +
                                 ", best residual " + std::to_string(best_residual));
    }

private:
    void apply(std::span<const double> in, std::span<double> out)
    {
        ham_.apply_h<double>(s_, in, out);
    }

    // One expansion step: apply H to the newest basis vector, project on
    // the whole basis (twice), append the normalized remainder.
    void step()
    {
        const int j = static_cast<int>(basis_.size());
        std::vector<double> w(dim_);
        apply(basis_[j - 1], w);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                const double h = det_dot(std::span<const double>(basis_[i]),
                                         std::span<const double>(w));
                axpy(-h, basis_[i], w);
                B_(i, j - 1) += h;
                if (i != j - 1)
                    B_(j - 1, i) = B_(i, j - 1);
            }
        }
        const double beta = det_nrm2(std::span<const double>(w));
        if (beta > 1e-13) {
            scal(1.0 / beta, w);
        } else {
            // Invariant subspace; continue in a fresh random direction.
            w = random_unit_vector(dim_, mix_seed(opts_.seed, j));
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i < j; ++i)
                    axpy(-det_dot(std::span<const double>(basis_[i]),
                                  std::span<const double>(w)),
                         basis_[i], w);
            scal(1.0 / det_nrm2(std::span<const double>(w)), w);
        }
        basis_.push_back(std::move(w));
    }

    std::vector<double> combine(const Eigen::MatrixXd& C, int m, int col) const
    {
        std::vector<double> y(dim_, 0.0);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(dim_); ++v) {
            double acc = 0;
            for (int i = 0; i < m; ++i)
                acc += C(i, col) * basis_[i][v];
            y[v] = acc;
        }
        return y;
    }

    EigenPair extract(int m)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B_.topLeftCorner(m, m));
        EigenPair pair;
        pair.e0 = es.eigenvalues()(0);
        pair.e1 = es.eigenvalues()(1);
        pair.v0 = combine(es.eigenvectors(), m, 0);
        pair.v1 = combine(es.eigenvectors(), m, 1);
        std::vector<double> r(dim_);
        double worst = 0;
        for (auto [vec, val] : {std::pair{&pair.v0, pair.e0}, std::pair{&pair.v1, pair.e1}}) {
            apply(*vec, r);
            axpy(-val, *vec, r);
            worst = std::max(worst, det_nrm2(std::span<const double>(r)));
        }
        pair.residual = worst;
        return pair;
    }

    void restart(int m)
    {
        const int keep = std::min(10, m - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B_.topLeftCorner(m, m));
        std::vector<std::vector<double>> kept;
        kept.reserve(keep + 1);
        for (int k = 0; k < keep; ++k)
            kept.push_back(combine(es.eigenvectors(), m, k));
        // The newest (still uncoupled) direction continues the recurrence.
        kept.push_back(std::move(basis_.back()));
        basis_ = std::move(kept);

        const Eigen::MatrixXd Ck = es.eigenvectors().leftCols(keep);
        const Eigen::MatrixXd Bk = Ck.transpose() * B_.topLeftCorner(m, m) * Ck;
        B_.setZero();
        B_.topLeftCorner(keep, keep) = Bk;
        // Couplings of the carried-over direction are rebuilt by the next
        // step's full projection; clear its column explicitly.
        for (int i = 0; i <= opts_.max_basis; ++i)
            B_(i, keep) = B_(keep, i) = 0.0;
    }

    const ScheduleHamiltonian& ham_;
    double s_;
    LowestTwoOptions opts_;
    std::uint64_t dim_;
    std::vector<std::vector<double>> basis_;
    Eigen::MatrixXd B_;
};

EigenPair lowest_two_dense(const ScheduleHamiltonian& ham, double s)
{
    const Eigen::MatrixXd H = ham.dense(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    EigenPair pair;
    pair.e0 = es.eigenvalues()(0);
    pair.e1 = es.eigenvalues()(1);
    const auto dim = H.rows();
    pair.v0.assign(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + dim);
    pair.v1.assign(es.eigenvectors().col(1).data(), es.eigenvectors().col(1).data() + dim);
    pair.residual = 0;
    return pair;
}

EigenPair lowest_two_diagonal(const ScheduleHamiltonian& ham)
{
    const auto& diag = ham.diagonal();
    std::uint64_t i0 = 0, i1 = 0;
    std::int32_t best0 = INT32_MAX, best1 = INT32_MAX;
    for (std::uint64_t v = 0; v < diag.size(); ++v) {
        if (diag[v] < best0) {
            best1 = best0;
            i1 = i0;
            best0 = diag[v];
            i0 = v;
        } else if (diag[v] < best1) {
            best1 = diag[v];
            i1 = v;
        }
    }
    EigenPair pair;
    pair.e0 = best0;
    pair.e1 = best1;
    pair.v0.assign(diag.size(), 0.0);
    pair.v1.assign(diag.size(), 0.0);
    pair.v0[i0] = 1.0;
    pair.v1[i1] = 1.0;
    pair.residual = 0;
    return pair;
}

} // namespace

EigenPair lowest_two(const ScheduleHamiltonian& ham, double s, const LowestTwoOptions& opts)
{
    if (s < 0.0 || s > 1.0)
        throw std::invalid_argument("lowest_two: s outside [0,1]");
    if (ham.index().dim() <= opts.dense_cap)
        return lowest_two_dense(ham, s);
    if (s == 1.0)
        return lowest_two_diagonal(ham);
    KrylovLowestTwo solver(ham, s, opts);
    return solver.solve();
}

SpectralSweep gap_sweep(const ScheduleHamiltonian& ham, const GapSweepOptions& opts)
{
    if (opts.grid_size < 2)
        throw std::invalid_argument("gap_sweep: grid_size must be >= 2");
    SpectralSweep sweep;
    std::vector<double> hint;
    for (int i = 0; i < opts.grid_size; ++i) {
        const double s = static_cast<double>(i) / (opts.grid_size - 1);
        LowestTwoOptions lo = opts.solver;
        if (!hint.empty())
            lo.start_hint = &hint;
        EigenPair pair;
        try {
            pair = lowest_two(ham, s, lo);
        } catch (const std::exception& e) {
            throw std::runtime_error("gap_sweep at s=" + std::to_string(s) + ": " + e.what());
        }
        SweepPoint pt{s, pair.e0, pair.e1, pair.e1 - pair.e0,
                      pair.e1 - pair.e0 < opts.degeneracy_threshold};
        sweep.points.push_back(pt);
        sweep.degenerate_points += pt.degenerate;
        hint = pair.v0;
        if (opts.keep_vectors) {
            sweep.coarse_s.push_back(s);
            sweep.v0s.push_back(std::move(pair.v0));
            sweep.v1s.push_back(std::move(pair.v1));
        }
    }

    auto argmin = std::min_element(sweep.points.begin(), sweep.points.end(),
                                   [](const SweepPoint& a, const SweepPoint& b) {
                                       return a.gap < b.gap;
                                   });
    double gmin = argmin->gap;
    double smin = argmin->s;

    if (opts.refine) {
        const std::size_t k = static_cast<std::size_t>(argmin - sweep.points.begin());
        double lo = sweep.points[k > 0 ? k - 1 : 0].s;
        double hi = sweep.points[std::min(k + 1, sweep.points.size() - 1)].s;
        auto eval = [&](double s) {
            LowestTwoOptions lopts = opts.solver;
            if (!hint.empty())
                lopts.start_hint = &hint;
            EigenPair pair = lowest_two(ham, s, lopts);
            hint = pair.v0;
            SweepPoint pt{s, pair.e0, pair.e1, pair.e1 - pair.e0,
                          pair.e1 - pair.e0 < opts.degeneracy_threshold};
            sweep.points.push_back(pt);
            sweep.degenerate_points += pt.degenerate;
            return pt.gap;
        };
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = eval(x1), f2 = eval(x2);
        while (b - a > opts.refine_bracket) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = eval(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = eval(x2);
            }
        }
        std::sort(sweep.points.begin(), sweep.points.end(),
                  [](const SweepPoint& x, const SweepPoint& y) { return x.s < y.s; });
        for (const SweepPoint& pt : sweep.points) {
            if (pt.gap < gmin) {
                gmin = pt.gap;
                smin = pt.s;
            }
        }
    }
    sweep.g_min = gmin;
    sweep.s_at_min = smin;
    return sweep;
}

double epsilon_bound(const ScheduleHamiltonian& ham, SpectralSweep& sweep)
{
    if (sweep.v0s.empty())
        throw std::invalid_argument("epsilon_bound: sweep was not run with keep_vectors");
    const auto& diag = ham.diagonal();
    const std::uint64_t dim = ham.index().dim();
    std::vector<double> w(dim);
    double eps = 0;
    for (std::size_t k = 0; k < sweep.v0s.size(); ++k) {
        // Degenerate points are skipped; the matrix element is ill-defined.
        bool degenerate = false;
        for (const SweepPoint& pt : sweep.points)
            if (pt.s == sweep.coarse_s[k] && pt.degenerate)
                degenerate = true;
        if (degenerate)
            continue;
        // dH/ds = H_f - H_I applied to v0.
        ham.apply_hi<double>(sweep.v0s[k], w);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(dim); ++v)
            w[v] = diag[v] * sweep.v0s[k][v] - w[v];
        eps = std::max(eps, std::abs(det_dot(std::span<const double>(sweep.v1s[k]),
                                             std::span<const double>(w))));
    }
    sweep.epsilon = eps;
    return eps;
}

double annealing_time_estimate(const SpectralSweep& sweep, double degeneracy_threshold)
{
    if (!sweep.epsilon)
        throw std::invalid_argument("annealing_time_estimate: epsilon not computed");
    if (sweep.g_min <= degeneracy_threshold)
        throw std::invalid_argument("annealing_time_estimate: g_min is degenerate");
    return *sweep.epsilon / (sweep.g_min * sweep.g_min);
}

} // namespace qwgi
