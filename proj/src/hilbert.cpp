#include "qwgi/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwgi {

SectorIndex::SectorIndex(int n) : n_(n)
{
    if (n < 1)
        throw std::invalid_argument("SectorIndex: n must be positive");
    if (n >= 13)
        throw std::invalid_argument(
            "SectorIndex: n=" + std::to_string(n) +
            " refused; the sector dimension n^n does not fit in memory (cap n <= 12)");
    strides_.resize(n + 1);
    strides_[0] = 1;
    for (int c = 1; c <= n; ++c)
        strides_[c] = strides_[c - 1] * static_cast<std::uint64_t>(n);
    dim_ = strides_[n];
}

std::uint64_t SectorIndex::index_of(const FunctionConfig& q) const
{
    if (q.n != n_)
        throw std::invalid_argument("SectorIndex: size mismatch");
    std::uint64_t idx = 0;
    for (int c = 0; c < n_; ++c)
        idx += static_cast<std::uint64_t>(q.q[c] - 1) * strides_[c];
    return idx;
}

FunctionConfig SectorIndex::config_of(std::uint64_t idx) const
{
    std::vector<int> q(n_);
    for (int c = 0; c < n_; ++c) {
        q[c] = static_cast<int>(idx % n_) + 1;
        idx /= n_;
    }
    return FunctionConfig(n_, std::move(q));
}

SectorState::SectorState(int n_) : n(n_)
{
    SectorIndex idx(n_);
    amp.assign(idx.dim(), {0.0, 0.0});
}

double SectorState::norm() const
{
    double s = 0;
    for (const auto& a : amp)
        s += std::norm(a);
    return std::sqrt(s);
}

void SectorState::normalize()
{
    const double nrm = norm();
    if (nrm == 0.0)
        throw std::runtime_error("SectorState: cannot normalize the zero vector");
    for (auto& a : amp)
        a /= nrm;
}

PairPenalty::PairPenalty(const ClauseSet& cs, bool include_column_conflicts) : n_(cs.n)
{
    m_.assign(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0);
    auto bump = [&](int i, int j, int a, int b) {
        m_[((static_cast<std::size_t>(i) * n_ + j) * n_ + (a - 1)) * n_ + (b - 1)] += 1;
    };
    for (const Clause& c : cs.clauses) {
        if (!include_column_conflicts && c.kind == ClauseKind::ColumnConflict)
            continue;
        // Clause violated iff q_{r1} = c1 and q_{r2} = c2; store both orders.
        bump(c.r1 - 1, c.r2 - 1, c.c1, c.c2);
        bump(c.r2 - 1, c.r1 - 1, c.c2, c.c1);
    }
}

int PairPenalty::energy(const FunctionConfig& q) const
{
    int e = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            e += at(i, j, q.q[i], q.q[j]);
    return e;
}

int PairPenalty::delta(std::span<const int> q, int i, int qnew) const
{
    int d = 0;
    for (int j = 0; j < n_; ++j) {
        if (j == i)
            continue;
        d += at(i, j, qnew, q[j]) - at(i, j, q[i], q[j]);
    }
    return d;
}

std::vector<std::int32_t> build_diagonal_serial(const SectorIndex& idx, const PairPenalty& pairs)
{
    const int n = idx.n();
    std::vector<std::int32_t> diag(idx.dim());
    std::vector<int> q(n);
    for (std::uint64_t v = 0; v < idx.dim(); ++v) {
        std::uint64_t rem = v;
        for (int c = 0; c < n; ++c) {
            q[c] = static_cast<int>(rem % n) + 1;
            rem /= n;
        }
        std::int32_t e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                e += pairs.at(i, j, q[i], q[j]);
        diag[v] = e;
    }
    return diag;
}

std::vector<std::int32_t> build_diagonal_parallel(const SectorIndex& idx, const PairPenalty& pairs)
{
    const int n = idx.n();
    const std::int64_t dim = static_cast<std::int64_t>(idx.dim());
    std::vector<std::int32_t> diag(idx.dim());
#pragma omp parallel
    {
        std::vector<int> q(n);
#pragma omp for schedule(static)
        for (std::int64_t v = 0; v < dim; ++v) {
            std::uint64_t rem = static_cast<std::uint64_t>(v);
            for (int c = 0; c < n; ++c) {
                q[c] = static_cast<int>(rem % n) + 1;
                rem /= n;
            }
            std::int32_t e = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    e += pairs.at(i, j, q[i], q[j]);
            diag[v] = e;
        }
    }
    return diag;
}

ScheduleHamiltonian::ScheduleHamiltonian(const GiInstance& inst, int dim_cap_n)
    : inst_(inst), idx_(inst.n())
{
    if (inst.n() > dim_cap_n)
        throw std::invalid_argument(
            "ScheduleHamiltonian: n=" + std::to_string(inst.n()) +
            " exceeds the in-memory diagonal cap n <= " + std::to_string(dim_cap_n));
    const ClauseSet cs = build_2sat(inst);
    pairs_ = PairPenalty(cs, true);
    witness_pairs_ = PairPenalty(cs, false);
    diag_ = build_diagonal_parallel(idx_, pairs_);
    witness_ = build_diagonal_parallel(idx_, witness_pairs_);
    max_diag_ = 0;
    for (std::int32_t d : diag_)
        max_diag_ = std::max(max_diag_, d);
}

double ScheduleHamiltonian::norm_bound() const
{
    // ||H(s)|| <= (1-s)*||H_I|| + s*max_diag <= max(n, max_diag).
    return std::max(static_cast<double>(idx_.n()), static_cast<double>(max_diag_));
}

namespace {

template <typename T>
void apply_hi_entry(const SectorIndex& idx, std::span<const T> in, std::span<T> out,
                    const std::vector<int>* fixed, std::uint64_t v)
{
    const int n = idx.n();
    T acc{};
    std::uint64_t rem = v;
    bool inconsistent = false;
    for (int c = 0; c < n; ++c) {
        const int d = static_cast<int>(rem % n); // 0-based position
        rem /= n;
        if (fixed && (*fixed)[c] != 0) {
            if (d + 1 != (*fixed)[c])
                inconsistent = true;
            continue; // pinned chain does not hop
        }
        const std::uint64_t s = idx.stride(c);
        if (d > 0)
            acc += in[v - s];
        if (d < n - 1)
            acc += in[v + s];
    }
    out[v] = inconsistent ? T{} : T(-0.5) * acc;
}

} // namespace

template <typename T>
void ScheduleHamiltonian::apply_hi_serial(std::span<const T> in, std::span<T> out,
                                          const std::vector<int>* fixed) const
{
    for (std::uint64_t v = 0; v < idx_.dim(); ++v)
        apply_hi_entry(idx_, in, out, fixed, v);
}

template <typename T>
void ScheduleHamiltonian::apply_hi(std::span<const T> in, std::span<T> out,
                                   const std::vector<int>* fixed) const
{
    const std::int64_t dim = static_cast<std::int64_t>(idx_.dim());
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < dim; ++v)
        apply_hi_entry(idx_, in, out, fixed, static_cast<std::uint64_t>(v));
}

template <typename T>
void ScheduleHamiltonian::apply_h(double s, std::span<const T> in, std::span<T> out,
                                  const std::vector<int>* fixed) const
{
    if (s < 0.0 || s > 1.0)
        throw std::invalid_argument("apply_h: schedule parameter outside [0,1]");
    const std::int64_t dim = static_cast<std::int64_t>(idx_.dim());
    const double a = 1.0 - s;
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < dim; ++v) {
        apply_hi_entry(idx_, in, out, fixed, static_cast<std::uint64_t>(v));
        out[v] = T(a) * out[v] + T(s * diag_[v]) * in[v];
    }
}

template void ScheduleHamiltonian::apply_hi<double>(std::span<const double>, std::span<double>,
                                                    const std::vector<int>*) const;
template void ScheduleHamiltonian::apply_hi<std::complex<double>>(
    std::span<const std::complex<double>>, std::span<std::complex<double>>,
    const std::vector<int>*) const;
template void ScheduleHamiltonian::apply_hi_serial<double>(std::span<const double>,
                                                           std::span<double>,
                                                           const std::vector<int>*) const;
template void ScheduleHamiltonian::apply_hi_serial<std::complex<double>>(
    std::span<const std::complex<double>>, std::span<std::complex<double>>,
    const std::vector<int>*) const;
template void ScheduleHamiltonian::apply_h<double>(double, std::span<const double>,
                                                   std::span<double>,
                                                   const std::vector<int>*) const;
template void ScheduleHamiltonian::apply_h<std::complex<double>>(
    double, std::span<const std::complex<double>>, std::span<std::complex<double>>,
    const std::vector<int>*) const;

Eigen::MatrixXd ScheduleHamiltonian::dense(double s) const
{
    const std::uint64_t dim = idx_.dim();
    if (dim > 8192)
        throw std::invalid_argument("dense: dimension too large to materialize");
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> e(dim, 0.0), col(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        e[j] = 1.0;
        apply_h<double>(s, e, col);
        for (std::uint64_t i = 0; i < dim; ++i)
            H(i, j) = col[i];
        e[j] = 0.0;
    }
    return H;
}

std::vector<double> chain_ground_vector(int n)
{
    std::vector<double> g(n);
    double nrm = 0;
    for (int j = 1; j <= n; ++j) {
        g[j - 1] = std::sin(j * std::numbers::pi / (n + 1));
        nrm += g[j - 1] * g[j - 1];
    }
    nrm = std::sqrt(nrm);
    for (double& x : g)
        x /= nrm;
    return g;
}

double chain_ground_energy(int n)
{
    return -std::cos(std::numbers::pi / (n + 1));
}

SectorState hi_ground_state(int n)
{
    return hi_ground_state_masked(n, std::vector<int>(n, 0));
}

SectorState hi_ground_state_masked(int n, const std::vector<int>& fixed)
{
    if (static_cast<int>(fixed.size()) != n)
        throw std::invalid_argument("hi_ground_state_masked: bad mask length");
    SectorIndex idx(n);
    const std::vector<double> g = chain_ground_vector(n);
    SectorState psi(n);
    for (std::uint64_t v = 0; v < idx.dim(); ++v) {
        double a = 1.0;
        std::uint64_t rem = v;
        for (int c = 0; c < n; ++c) {
            const int d = static_cast<int>(rem % n); // 0-based
            rem /= n;
            if (fixed[c] != 0)
                a *= (d + 1 == fixed[c]) ? 1.0 : 0.0;
            else
                a *= g[d];
            if (a == 0.0)
                break;
        }
        psi.amp[v] = a;
    }
    return psi;
}

namespace {

// Full-grid helpers for the unrestricted 2^(n^2) space. Qubit (i,j)
// (1-based) is bit (i-1)*n + (j-1); bit set means the variable is 1.
Eigen::MatrixXd full_grid_hi(int n)
{
    const int nq = n * n;
    const std::size_t dim = std::size_t{1} << nq;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n - 1; ++j) {
                const int p = i * n + j, pnext = i * n + j + 1;
                const bool b1 = (b >> p) & 1, b2 = (b >> pnext) & 1;
                if (b1 != b2) {
                    const std::size_t b2x = b ^ (std::size_t{1} << p) ^ (std::size_t{1} << pnext);
                    H(b2x, b) += -0.5;
                }
            }
        }
    }
    return H;
}

Eigen::VectorXd full_grid_number_op(int n, int row)
{
    const int nq = n * n;
    const std::size_t dim = std::size_t{1} << nq;
    Eigen::VectorXd diag(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int count = 0;
        for (int j = 0; j < n; ++j)
            count += (b >> (row * n + j)) & 1;
        diag(b) = count;
    }
    return diag;
}

} // namespace

bool number_conservation_check(int n)
{
    if (n > 3)
        throw std::invalid_argument("number_conservation_check: n <= 3 only (full 2^(n^2) space)");
    const Eigen::MatrixXd H = full_grid_hi(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd nz = full_grid_number_op(n, i);
        // [diag(N), H](a,b) = (N_a - N_b) H(a,b); must vanish entrywise.
        for (int a = 0; a < H.rows(); ++a)
            for (int b = 0; b < H.cols(); ++b)
                if ((nz(a) - nz(b)) * H(a, b) != 0.0)
                    return false;
    }

    // The restricted block must equal the sector operator entrywise.
    const SectorIndex idx(n);
    std::vector<std::size_t> embed(idx.dim());
    for (std::uint64_t v = 0; v < idx.dim(); ++v) {
        const FunctionConfig q = idx.config_of(v);
        std::size_t b = 0;
        for (int i = 0; i < n; ++i)
            b |= std::size_t{1} << (i * n + (q.q[i] - 1));
        embed[v] = b;
    }
    GiInstance trivial(Graph::empty(n), Graph::empty(n));
    ScheduleHamiltonian ham(trivial);
    const Eigen::MatrixXd Hsector = ham.dense(0.0);
    for (std::uint64_t a = 0; a < idx.dim(); ++a)
        for (std::uint64_t b = 0; b < idx.dim(); ++b)
            if (H(embed[a], embed[b]) != Hsector(a, b))
                return false;
    return true;
}

bool stoquastic_check(double s, const GiInstance& inst)
{
    if (s < 0.0 || s > 1.0)
        throw std::invalid_argument("stoquastic_check: s outside [0,1]");
    ScheduleHamiltonian ham(inst);
    if (ham.index().dim() <= 4096) {
        const Eigen::MatrixXd H = ham.dense(s);
        for (int a = 0; a < H.rows(); ++a)
            for (int b = 0; b < H.cols(); ++b)
                if (a != b && H(a, b) > 0.0)
                    return false;
        return true;
    }
    // Off-diagonals are -(1-s)/2 or 0 by construction.
    return true;
}

} // namespace qwgi
