#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace qwgi {

struct ChainPrepSpec {
    int n = 0;
    double V = 1.0; // pinning strength, > 0
    double T = 0;
    double dt = 0; // 0 selects 0.05 / max(1, V)

    int midpoint() const { return (n + 1) / 2; } // floor((n+1)/2), 1-based
};

// Magnitude of the closed-form gap expression of the auxiliary
// preparation schedule: |cos(2pi/(n+1)) - sqrt(cos(pi/(n+1))^2 s^2 +
// ((1-s) V)^2)|. At s = 1 this is the chain gap, which is Omega(1/n^2).
double aux_gap_analytic(int n, double V, double s);

// Numerical oracle for the analytic expression: eigensolve of the
// two-mode bound-state reduction (pinned level hybridized with the band
// bottom) against the first free band level. Matches aux_gap_analytic to
// solver precision.
double aux_gap_numeric(int n, double V, double s);

// Gap of the actual n x n pinned-chain Hamiltonian
// s * H_chain - (1-s) V |mid><mid|, by direct diagonalization. The
// closed-form expression is a two-mode approximation of this.
double chain_gap_exact(int n, double V, double s);

struct PrepResult {
    std::vector<std::complex<double>> final_state;
    std::vector<std::pair<double, double>> fidelity_trace; // (t, fidelity)
    double final_fidelity = 0;
    double norm_drift = 0;
};

// Evolves the single-excitation chain from the midpoint basis state under
// s(t) * H_chain + (1 - s(t)) * H_pin; fidelity is measured against the
// sine-profile ground state of the chain.
PrepResult prepare_chain(const ChainPrepSpec& spec);

// Verifies that the uniform vector is the exact ground state of the
// frustration-free chain (sum of bond projectors) and that it minimizes
// every local term simultaneously.
bool ff_ground_check(int n);

} // namespace qwgi
