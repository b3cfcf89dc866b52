#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qwgi/encoding.hpp"
#include "qwgi/graph.hpp"

namespace qwgi {

// Mixed-radix indexing of the one-excitation-per-chain sector: dimension
// n^n, chain 1 is the least significant digit,
//   index(q) = sum_i (q_i - 1) * n^(i-1).
class SectorIndex {
public:
    explicit SectorIndex(int n);

    int n() const { return n_; }
    std::uint64_t dim() const { return dim_; }
    std::uint64_t stride(int chain) const { return strides_[chain]; } // chain is 0-based

    std::uint64_t index_of(const FunctionConfig& q) const;
    FunctionConfig config_of(std::uint64_t idx) const;

    // Position (1..n) of the excitation of 0-based chain c in basis state idx.
    int digit(std::uint64_t idx, int c) const
    {
        return static_cast<int>((idx / strides_[c]) % n_) + 1;
    }

private:
    int n_;
    std::uint64_t dim_;
    std::vector<std::uint64_t> strides_;
};

struct SectorState {
    int n = 0;
    std::vector<std::complex<double>> amp;

    SectorState() = default;
    explicit SectorState(int n_);

    double norm() const;
    void normalize();
};

// Pairwise diagonal penalties: for rows i != j, entry (a, b) is the number
// of clauses violated when q_i = a and q_j = b. The diagonal energy of a
// configuration is the sum over unordered row pairs.
class PairPenalty {
public:
    PairPenalty() = default;
    PairPenalty(const ClauseSet& cs, bool include_column_conflicts);

    int n() const { return n_; }

    // i, j are 0-based rows, a, b are positions 1..n. Symmetric storage:
    // at(i,j,a,b) == at(j,i,b,a).
    std::uint8_t at(int i, int j, int a, int b) const
    {
        return m_[((static_cast<std::size_t>(i) * n_ + j) * n_ + (a - 1)) * n_ + (b - 1)];
    }

    int energy(const FunctionConfig& q) const;

    // Energy change when chain i moves from q[i] to qnew, other entries fixed.
    int delta(std::span<const int> q, int i, int qnew) const;

private:
    int n_ = 0;
    std::vector<std::uint8_t> m_;
};

// H(s) = (1-s) H_I + s H_f over the restricted sector, matrix-free.
// The diagonal of H_f (and of the witness observable C) is cached as an
// integer vector of length n^n, shared read-only by all consumers.
class ScheduleHamiltonian {
public:
    explicit ScheduleHamiltonian(const GiInstance& inst, int dim_cap_n = 10);

    const GiInstance& instance() const { return inst_; }
    const SectorIndex& index() const { return idx_; }
    const std::vector<std::int32_t>& diagonal() const { return diag_; }
    const std::vector<std::int32_t>& witness_diagonal() const { return witness_; }
    const PairPenalty& pair_penalty() const { return pairs_; }
    const PairPenalty& witness_pair_penalty() const { return witness_pairs_; }
    std::int32_t max_diag() const { return max_diag_; }

    // Upper bound on the spectral norm of H(s) uniform over s in [0,1].
    double norm_bound() const;

    // out = H_I * in. When fixed is non-null, chains with fixed[c] != 0 do
    // not hop and entries whose digit disagrees with fixed[c] are zeroed.
    // Summation order per output entry is fixed, so results are identical
    // for any thread count.
    template <typename T>
    void apply_hi(std::span<const T> in, std::span<T> out,
                  const std::vector<int>* fixed = nullptr) const;

    template <typename T>
    void apply_hi_serial(std::span<const T> in, std::span<T> out,
                         const std::vector<int>* fixed = nullptr) const;

    // out = [(1-s) H_I + s diag] * in.
    template <typename T>
    void apply_h(double s, std::span<const T> in, std::span<T> out,
                 const std::vector<int>* fixed = nullptr) const;

    Eigen::MatrixXd dense(double s) const; // materialization, small dims only

private:
    GiInstance inst_;
    SectorIndex idx_;
    PairPenalty pairs_;
    PairPenalty witness_pairs_;
    std::vector<std::int32_t> diag_;
    std::vector<std::int32_t> witness_;
    std::int32_t max_diag_ = 0;
};

// Serial reference used by tests and kept alongside the parallel builder.
std::vector<std::int32_t> build_diagonal_serial(const SectorIndex& idx,
                                                const PairPenalty& pairs);
std::vector<std::int32_t> build_diagonal_parallel(const SectorIndex& idx,
                                                  const PairPenalty& pairs);

// Per-chain ground vector of the open-chain walk, amplitudes
// proportional to sin(j*pi/(n+1)); ground energy -cos(pi/(n+1)).
std::vector<double> chain_ground_vector(int n);
double chain_ground_energy(int n);

// Tensor-product ground state of H_I; energy -n*cos(pi/(n+1)).
SectorState hi_ground_state(int n);

// Measured chains (fixed[c] != 0) are pinned to their outcome; the rest
// are in their per-chain ground states.
SectorState hi_ground_state_masked(int n, const std::vector<int>& fixed);

// Builds the full 2^(n^2) grid operators of the unrestricted model and
// checks [N_i^z, H_I] = 0 plus agreement of the restricted block with the
// sector operator. n <= 3 only.
bool number_conservation_check(int n);

// All off-diagonal elements of H(s) are -(1-s)/2 or 0; verified by scan.
bool stoquastic_check(double s, const GiInstance& inst);

} // namespace qwgi
