#include <stdexcept>
#include "doctest.h"

#include <cmath>

#include "qwgi/dynamics.hpp"

using namespace qwgi;

namespace {

const ScheduleHamiltonian& k2_ham()
{
    static const ScheduleHamiltonian ham(GiInstance(Graph::complete(2), Graph::complete(2)));
    return ham;
}

} // namespace

TEST_CASE("spec validation")
{
    EvolutionSpec spec;
    CHECK_THROWS_AS(evolve(spec), std::invalid_argument); // no Hamiltonian

    spec.ham = &k2_ham();
    spec.T = 1;
    spec.dt = 10.0; // dt * ||H|| > 0.5
    CHECK_THROWS_AS(evolve(spec), std::invalid_argument);
}

TEST_CASE("initial overlap and short-time limit, n=2 K2")
{
    EvolutionSpec spec;
    spec.ham = &k2_ham();
    spec.T = 0;
    const EvolutionResult r = evolve(spec);
    // uniform ground state: 1/4 weight on each config, 2 solutions
    CHECK(r.trace.front().solution_overlap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.trace.back().solution_overlap == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.norm_drift < 1e-12);

    spec.T = 1e-4;
    const EvolutionResult s = evolve(spec);
    CHECK(s.trace.back().solution_overlap == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("adiabatic limit reaches the solution subspace, n=2 K2")
{
    EvolutionSpec spec;
    spec.ham = &k2_ham();
    spec.T = 50;
    const EvolutionResult r = evolve(spec);
    CHECK(r.trace.back().solution_overlap >= 0.99);
    CHECK(r.norm_drift < 1e-9);
    // witness expectation decays toward 0 with the overlap
    CHECK(r.trace.back().witness < 0.05);
    // final energy approaches the ground energy 0 of H_f
    CHECK(std::abs(r.trace.back().energy) < 0.1);
}

TEST_CASE("witness observable examples")
{
    // exact solution state of an isomorphic instance -> 0
    {
        const ScheduleHamiltonian& ham = k2_ham();
        SectorState psi(2);
        psi.amp[ham.index().index_of(FunctionConfig(2, {2, 1}))] = 1.0;
        CHECK(witness_expectation(psi, ham) == 0.0);
        CHECK(solution_overlap(psi, ham) == 1.0);
    }
    // |q> with cost 2 -> 2
    {
        const GiInstance inst(Graph(3, {{1, 2}, {2, 3}}), Graph(3, {{1, 3}, {2, 3}}));
        const ScheduleHamiltonian ham(inst);
        SectorState psi(3);
        psi.amp[ham.index().index_of(FunctionConfig(3, {1, 2, 3}))] = 1.0;
        CHECK(cost_f(Permutation::identity(3), inst) == 2);
        CHECK(witness_expectation(psi, ham) == 2.0);
    }
    // all chains at column 1 -> 0 (no column term in the witness)
    {
        const GiInstance inst(Graph::path(3), Graph::path(3));
        const ScheduleHamiltonian ham(inst);
        SectorState psi(3);
        psi.amp[ham.index().index_of(FunctionConfig(3, {1, 1, 1}))] = 1.0;
        CHECK(witness_expectation(psi, ham) == 0.0);
    }
}

TEST_CASE("measure_position")
{
    Rng rng(3);

    // basis state: deterministic outcome, state unchanged
    {
        SectorState psi(2);
        const SectorIndex idx(2);
        psi.amp[idx.index_of(FunctionConfig(2, {2, 1}))] = 1.0;
        auto [outcome, post] = measure_position(psi, 1, rng);
        CHECK(outcome == 2);
        CHECK(post.amp == psi.amp);
    }

    // uniform over {(1,2),(2,1)}: half/half marginal, point mass afterwards
    {
        SectorState psi(2);
        const SectorIndex idx(2);
        const double a = 1.0 / std::sqrt(2.0);
        psi.amp[idx.index_of(FunctionConfig(2, {1, 2}))] = a;
        psi.amp[idx.index_of(FunctionConfig(2, {2, 1}))] = a;
        int seen1 = 0, seen2 = 0;
        for (int t = 0; t < 200; ++t) {
            auto [outcome, post] = measure_position(psi, 1, rng);
            (outcome == 1 ? seen1 : seen2)++;
            // post-measurement marginal of chain 1 is a point mass
            for (std::uint64_t v = 0; v < idx.dim(); ++v)
                if (idx.digit(v, 0) != outcome)
                    CHECK(post.amp[v] == std::complex<double>(0.0));
            CHECK(post.norm() == doctest::Approx(1.0));
        }
        CHECK(seen1 > 60);
        CHECK(seen2 > 60);
    }
}

TEST_CASE("sequential protocol on K2 and on a non-isomorphic pair")
{
    Rng rng(11);
    for (int run = 0; run < 5; ++run) {
        const MeasurementRecord rec = sequential_protocol(k2_ham(), 50, rng);
        REQUIRE(rec.candidate.has_value());
        CHECK(rec.verified);
        CHECK(cost_f(*rec.candidate, k2_ham().instance()) == 0);
        REQUIRE(rec.outcomes.size() == 2);
    }

    const ScheduleHamiltonian bad(GiInstance(Graph::complete(3), Graph::path(3)));
    for (int run = 0; run < 5; ++run) {
        const MeasurementRecord rec = sequential_protocol(bad, 30, rng);
        CHECK(!rec.verified);
    }
}

TEST_CASE("masked evolution keeps the pinned chain fixed")
{
    const GiInstance inst(Graph::path(3), Graph::path(3));
    const ScheduleHamiltonian ham(inst);
    EvolutionSpec spec;
    spec.ham = &ham;
    spec.T = 5;
    spec.fixed = {0, 2, 0};
    const EvolutionResult r = evolve(spec);
    const SectorIndex& idx = ham.index();
    for (std::uint64_t v = 0; v < idx.dim(); ++v)
        if (idx.digit(v, 1) != 2)
            CHECK(std::abs(r.final_state.amp[v]) < 1e-12);
    CHECK(r.norm_drift < 1e-9);
}
