#include "qwgi/wstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qwgi {

namespace {

Eigen::MatrixXd chain_hopping(int n)
{
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n - 1; ++j)
        H(j, j + 1) = H(j + 1, j) = -0.5;
    return H;
}

Eigen::MatrixXd pinned_chain(int n, double V, double s)
{
    Eigen::MatrixXd H = s * chain_hopping(n);
    const int mid = (n + 1) / 2; // 1-based
    H(mid - 1, mid - 1) -= (1.0 - s) * V;
    return H;
}

Eigen::VectorXd sine_ground(int n)
{
    Eigen::VectorXd g(n);
    for (int j = 1; j <= n; ++j)
        g(j - 1) = std::sin(j * std::numbers::pi / (n + 1));
    return g / g.norm();
}

} // namespace

double aux_gap_analytic(int n, double V, double s)
{
    if (n < 2 || V <= 0 || s < 0 || s > 1)
        throw std::invalid_argument("aux_gap_analytic: bad arguments");
    const double c1 = std::cos(std::numbers::pi / (n + 1));
    const double c2 = std::cos(2.0 * std::numbers::pi / (n + 1));
    return std::abs(c2 - std::sqrt(c1 * c1 * s * s + (1.0 - s) * (1.0 - s) * V * V));
}

double aux_gap_numeric(int n, double V, double s)
{
    if (n < 2 || V <= 0 || s < 0 || s > 1)
        throw std::invalid_argument("aux_gap_numeric: bad arguments");
    // Free-chain band levels, computed numerically.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> band(chain_hopping(n));
    const double lambda1 = band.eigenvalues()(0); // -cos(pi/(n+1))
    const double lambda2 = band.eigenvalues()(1); // -cos(2 pi/(n+1))

    // Pinned level hybridized with the band bottom.
    Eigen::Matrix2d two_mode;
    const double h = (1.0 - s) * V;
    const double c = s * (-lambda1);
    two_mode << -h, c, c, h;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> bound(two_mode);
    const double e_bound = bound.eigenvalues()(0); // -sqrt(h^2 + c^2)

    return std::abs(lambda2 - e_bound);
}

double chain_gap_exact(int n, double V, double s)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pinned_chain(n, V, s));
    return es.eigenvalues()(1) - es.eigenvalues()(0);
}

PrepResult prepare_chain(const ChainPrepSpec& spec)
{
    if (spec.n < 2 || spec.V <= 0 || spec.T < 0)
        throw std::invalid_argument("prepare_chain: bad spec");
    const int n = spec.n;
    const double dt = spec.dt > 0 ? spec.dt : 0.05 / std::max(1.0, spec.V);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
    psi(spec.midpoint() - 1) = 1.0;
    const Eigen::VectorXd target = sine_ground(n);

    PrepResult out;
    auto fidelity = [&]() {
        const std::complex<double> ov = target.cast<std::complex<double>>().dot(psi);
        return std::norm(ov);
    };
    out.fidelity_trace.emplace_back(0.0, fidelity());

    if (spec.T > 0) {
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(spec.T / dt)));
        const double step_dt = spec.T / static_cast<double>(steps);
        const long record_every = std::max<long>(1, steps / 200);
        for (long k = 0; k < steps; ++k) {
            const double s = (static_cast<double>(k) + 0.5) / static_cast<double>(steps);
            const Eigen::MatrixXd H = pinned_chain(n, spec.V, s);
            // Exact matrix exponential of the small step generator.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            Eigen::VectorXcd phases(n);
            for (int i = 0; i < n; ++i)
                phases(i) = std::exp(std::complex<double>(0.0, -step_dt * es.eigenvalues()(i)));
            psi = es.eigenvectors().cast<std::complex<double>>() *
                  (phases.asDiagonal() *
                   (es.eigenvectors().transpose().cast<std::complex<double>>() * psi));
            if ((k + 1) % record_every == 0 || k + 1 == steps)
                out.fidelity_trace.emplace_back((k + 1) * step_dt, fidelity());
            out.norm_drift = std::max(out.norm_drift, std::abs(psi.norm() - 1.0));
        }
    }
    out.final_fidelity = out.fidelity_trace.back().second;
    out.final_state.assign(psi.data(), psi.data() + n);
    return out;
}

bool ff_ground_check(int n)
{
    if (n < 2)
        throw std::invalid_argument("ff_ground_check: n >= 2 required");
    // Sum of bond projectors: hopping plus diag(deg/2). Each local term
    // h_j = 1/2 (|j> - |j+1>)(<j| - <j+1|) annihilates the uniform vector.
    Eigen::MatrixXd H = chain_hopping(n);
    for (int j = 0; j < n; ++j)
        H(j, j) += (j == 0 || j == n - 1) ? 0.5 : 1.0;

    const Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
    const Eigen::VectorXd residual = H * w; // ground energy is 0
    if (residual.norm() > 1e-12)
        return false;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (std::abs(es.eigenvalues()(0)) > 1e-12)
        return false;

    // Frustration-freeness: <W|h_j|W> equals the minimum eigenvalue (0) of
    // every local term.
    for (int j = 0; j < n - 1; ++j) {
        const double expect =
            0.5 * (w(j) - w(j + 1)) * (w(j) - w(j + 1));
        if (std::abs(expect) > 1e-12)
            return false;
    }
    return true;
}

} // namespace qwgi
