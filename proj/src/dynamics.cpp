#include "qwgi/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qwgi/blas.hpp"

namespace qwgi {

void EvolutionSpec::validate_and_fill_defaults()
{
    if (!ham)
        throw std::invalid_argument("EvolutionSpec: no Hamiltonian");
    if (T < 0)
        throw std::invalid_argument("EvolutionSpec: negative T");
    if (dt == 0)
        dt = 0.05 / std::max(1.0, static_cast<double>(ham->max_diag()));
    if (dt <= 0)
        throw std::invalid_argument("EvolutionSpec: dt must be positive");
    if (dt * ham->norm_bound() > 0.5)
        throw std::invalid_argument("EvolutionSpec: dt * ||H|| exceeds 0.5");
    if (record_points.empty()) {
        for (int i = 0; i <= 100; ++i)
            record_points.push_back(i / 100.0);
    }
    std::sort(record_points.begin(), record_points.end());
    if (fixed.empty())
        fixed.assign(ham->index().n(), 0);
    if (static_cast<int>(fixed.size()) != ham->index().n())
        throw std::invalid_argument("EvolutionSpec: bad mask length");
}

namespace {

using cvec = std::vector<std::complex<double>>;

// psi <- exp(-i dt H(s)) psi, truncated Taylor series. Terms are added
// until the running term norm falls below 1e-15 * ||psi||.
void exp_step(const ScheduleHamiltonian& ham, double s, double dt, const std::vector<int>* fixed,
              cvec& psi, cvec& term, cvec& scratch)
{
    const double psi_norm = det_nrm2(std::span<const std::complex<double>>(psi));
    const std::complex<double> factor(0.0, -dt);
    term = psi;
    const std::size_t dim = psi.size();
    for (int k = 1; k <= 64; ++k) {
        ham.apply_h<std::complex<double>>(s, term, scratch, fixed);
        const std::complex<double> c = factor / static_cast<double>(k);
        double term_sq = 0;
#pragma omp parallel for schedule(static) reduction(+ : term_sq)
        for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(dim); ++v) {
            term[v] = c * scratch[v];
            psi[v] += term[v];
            term_sq += std::norm(term[v]);
        }
        if (std::sqrt(term_sq) < 1e-15 * psi_norm)
            return;
    }
    throw std::runtime_error("exp_step: Taylor series did not converge; dt too large");
}

} // namespace

double witness_expectation(const SectorState& psi, const ScheduleHamiltonian& ham)
{
    const auto& w = ham.witness_diagonal();
    double e = 0;
#pragma omp parallel for schedule(static) reduction(+ : e)
    for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(w.size()); ++v)
        e += w[v] * std::norm(psi.amp[v]);
    return e;
}

double solution_overlap(const SectorState& psi, const ScheduleHamiltonian& ham)
{
    const auto& d = ham.diagonal();
    double p = 0;
#pragma omp parallel for schedule(static) reduction(+ : p)
    for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(d.size()); ++v)
        if (d[v] == 0)
            p += std::norm(psi.amp[v]);
    return p;
}

double energy_expectation(const SectorState& psi, const ScheduleHamiltonian& ham, double s)
{
    cvec out(psi.amp.size());
    ham.apply_h<std::complex<double>>(s, psi.amp, out);
    return det_dotc(std::span<const std::complex<double>>(psi.amp),
                    std::span<const std::complex<double>>(out))
        .real();
}

EvolutionResult evolve(const EvolutionSpec& spec_in)
{
    EvolutionSpec spec = spec_in;
    spec.validate_and_fill_defaults();
    const ScheduleHamiltonian& ham = *spec.ham;
    const int n = ham.index().n();

    EvolutionResult result;
    SectorState psi = hi_ground_state_masked(n, spec.fixed);
    const bool masked = std::any_of(spec.fixed.begin(), spec.fixed.end(),
                                    [](int f) { return f != 0; });
    const std::vector<int>* fixed = masked ? &spec.fixed : nullptr;

    auto record = [&](double s) {
        TracePoint pt;
        pt.s = s;
        pt.norm = psi.norm();
        pt.witness = witness_expectation(psi, ham);
        pt.energy = energy_expectation(psi, ham, s);
        pt.solution_overlap = solution_overlap(psi, ham);
        result.trace.push_back(pt);
        result.norm_drift = std::max(result.norm_drift, std::abs(pt.norm - 1.0));
        if (std::abs(pt.norm - 1.0) > 1e-6)
            throw std::runtime_error("evolve: norm drift " + std::to_string(pt.norm - 1.0) +
                                     " at s=" + std::to_string(s));
    };

    std::size_t next_record = 0;
    while (next_record < spec.record_points.size() && spec.record_points[next_record] <= 0.0) {
        record(0.0);
        ++next_record;
    }

    if (spec.T > 0) {
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(spec.T / spec.dt)));
        const double dt = spec.T / static_cast<double>(steps);
        cvec term(psi.amp.size()), scratch(psi.amp.size());
        for (long k = 0; k < steps; ++k) {
            const double s_mid = (static_cast<double>(k) + 0.5) / static_cast<double>(steps);
            exp_step(ham, s_mid, dt, fixed, psi.amp, term, scratch);
            const double s_done = static_cast<double>(k + 1) / static_cast<double>(steps);
            while (next_record < spec.record_points.size() &&
                   spec.record_points[next_record] <= s_done + 1e-12) {
                record(s_done);
                ++next_record;
            }
        }
    }
    while (next_record < spec.record_points.size()) {
        record(1.0);
        ++next_record;
    }
    const double final_norm = psi.norm();
    result.norm_drift = std::max(result.norm_drift, std::abs(final_norm - 1.0));
    result.final_state = std::move(psi);
    return result;
}

std::pair<int, SectorState> measure_position(const SectorState& psi, int chain, Rng& rng)
{
    const SectorIndex idx(psi.n);
    const int n = psi.n;
    if (chain < 1 || chain > n)
        throw std::invalid_argument("measure_position: chain out of range");
    std::vector<double> marginal(n, 0.0);
    for (std::uint64_t v = 0; v < idx.dim(); ++v)
        marginal[idx.digit(v, chain - 1) - 1] += std::norm(psi.amp[v]);
    const double total = std::accumulate(marginal.begin(), marginal.end(), 0.0);
    if (total <= 0)
        throw std::runtime_error("measure_position: zero total mass");

    const double u = rng.uniform01() * total;
    int outcome = n;
    double acc = 0;
    for (int q = 1; q <= n; ++q) {
        acc += marginal[q - 1];
        if (u < acc) {
            outcome = q;
            break;
        }
    }
    if (marginal[outcome - 1] <= 0)
        throw std::runtime_error("measure_position: sampled outcome has zero mass");

    SectorState collapsed(n);
    for (std::uint64_t v = 0; v < idx.dim(); ++v)
        collapsed.amp[v] = idx.digit(v, chain - 1) == outcome ? psi.amp[v] : 0.0;
    collapsed.normalize();
    return {outcome, std::move(collapsed)};
}

MeasurementRecord sequential_protocol(const ScheduleHamiltonian& ham, double T, Rng& rng,
                                      const ProtocolOptions& opts)
{
    const int n = ham.index().n();
    MeasurementRecord record;
    std::vector<int> fixed(n, 0);

    for (int chain = 1; chain <= n; ++chain) {
        EvolutionSpec spec;
        spec.ham = &ham;
        spec.T = chain == 1 ? T : (opts.rerun_T > 0 ? opts.rerun_T : T);
        spec.dt = opts.dt;
        spec.fixed = fixed;
        spec.record_points = {1.0}; // observables not needed between rounds
        EvolutionResult run = evolve(spec);
        auto [outcome, collapsed] = measure_position(run.final_state, chain, rng);
        double prob = 0;
        {
            const SectorIndex& idx = ham.index();
            for (std::uint64_t v = 0; v < idx.dim(); ++v)
                if (idx.digit(v, chain - 1) == outcome)
                    prob += std::norm(run.final_state.amp[v]);
        }
        record.outcomes.push_back({chain, outcome, prob});
        fixed[chain - 1] = outcome;
    }

    std::vector<char> seen(n + 1, 0);
    bool bijection = true;
    for (const auto& o : record.outcomes) {
        if (seen[o.position])
            bijection = false;
        seen[o.position] = 1;
    }
    if (bijection) {
        std::vector<int> mapping(n);
        for (const auto& o : record.outcomes)
            mapping[o.chain - 1] = o.position;
        record.candidate = Permutation(mapping);
        record.verified =
            apply_permutation(*record.candidate, ham.instance().g1) == ham.instance().g2;
    }
    return record;
}

} // namespace qwgi
