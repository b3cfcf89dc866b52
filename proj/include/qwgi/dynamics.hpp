#pragma once

#include <optional>
#include <vector>

#include "qwgi/hilbert.hpp"
#include "qwgi/rng.hpp"

namespace qwgi {

struct EvolutionSpec {
    const ScheduleHamiltonian* ham = nullptr;
    double T = 0;
    double dt = 0; // 0 selects the default 0.05 / max(1, max_diag)
    std::vector<double> record_points; // s values; empty selects 101 uniform
    std::vector<int> fixed; // per-chain pinned positions, 0 = free

    void validate_and_fill_defaults();
};

struct TracePoint {
    double s = 0;
    double witness = 0;
    double energy = 0;
    double solution_overlap = 0;
    double norm = 0;
};

struct EvolutionResult {
    SectorState final_state;
    std::vector<TracePoint> trace;
    double norm_drift = 0; // max |norm - 1| along the trajectory
};

// Integrates i dpsi/dt = H(t/T) psi from the (masked) H_I ground state via
// midpoint-evaluated exponential steps, each expanded as a truncated
// Taylor polynomial. Aborts when the norm drifts by more than 1e-6.
EvolutionResult evolve(const EvolutionSpec& spec);

// <psi| C |psi> for the mismatch-only diagonal observable C.
double witness_expectation(const SectorState& psi, const ScheduleHamiltonian& ham);

// Total probability on zero-energy configurations.
double solution_overlap(const SectorState& psi, const ScheduleHamiltonian& ham);

double energy_expectation(const SectorState& psi, const ScheduleHamiltonian& ham, double s);

// Samples the position of chain i (1-based) from its marginal and
// projects; the returned state is renormalized.
std::pair<int, SectorState> measure_position(const SectorState& psi, int chain, Rng& rng);

struct MeasurementOutcome {
    int chain = 0;    // 1-based
    int position = 0; // sampled q_i
    double prob = 0;  // marginal probability of the sampled outcome
};

struct MeasurementRecord {
    std::vector<MeasurementOutcome> outcomes;
    std::optional<Permutation> candidate; // unset when outcomes are not a bijection
    bool verified = false;                // candidate maps g1 onto g2
};

struct ProtocolOptions {
    double dt = 0;
    double rerun_T = 0; // 0 = reuse T for the masked re-runs
};

// Evolve, measure Q_1, re-prepare with measured chains pinned, re-evolve
// under the masked Hamiltonian, and iterate through all chains.
MeasurementRecord sequential_protocol(const ScheduleHamiltonian& ham, double T, Rng& rng,
                                      const ProtocolOptions& opts = {});

} // namespace qwgi
