#include <stdexcept>
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "qwgi/hilbert.hpp"
#include "qwgi/rng.hpp"

using namespace qwgi;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> random_state(std::uint64_t dim, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<cplx> psi(dim);
    for (auto& a : psi)
        a = cplx(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    return psi;
}

} // namespace

TEST_CASE("SectorIndex round trips and caps")
{
    const SectorIndex idx(3);
    CHECK(idx.dim() == 27);
    CHECK(idx.stride(0) == 1);
    CHECK(idx.stride(2) == 9);
    for (std::uint64_t v = 0; v < idx.dim(); ++v) {
        const FunctionConfig q = idx.config_of(v);
        CHECK(idx.index_of(q) == v);
        for (int c = 0; c < 3; ++c)
            CHECK(idx.digit(v, c) == q.q[c]);
    }
    CHECK(idx.index_of(FunctionConfig(3, {2, 1, 3})) == 1 + 0 * 3 + 2 * 9);
    CHECK_THROWS_AS(SectorIndex(13), std::invalid_argument);
}

TEST_CASE("apply_hi on basis states, n=2")
{
    const GiInstance k2(Graph::complete(2), Graph::complete(2));
    const ScheduleHamiltonian ham(k2);
    const SectorIndex& idx = ham.index();

    std::vector<cplx> in(idx.dim(), 0.0), out(idx.dim());
    in[idx.index_of(FunctionConfig(2, {1, 1}))] = 1.0;
    ham.apply_hi<cplx>(in, out);
    CHECK(out[idx.index_of(FunctionConfig(2, {2, 1}))] == cplx(-0.5));
    CHECK(out[idx.index_of(FunctionConfig(2, {1, 2}))] == cplx(-0.5));
    CHECK(out[idx.index_of(FunctionConfig(2, {1, 1}))] == cplx(0.0));
    CHECK(out[idx.index_of(FunctionConfig(2, {2, 2}))] == cplx(0.0));
}

TEST_CASE("apply_hi n=1 is zero")
{
    const GiInstance one(Graph::empty(1), Graph::empty(1));
    const ScheduleHamiltonian ham(one);
    std::vector<double> in{1.0}, out{7.0};
    ham.apply_hi<double>(in, out);
    CHECK(out[0] == 0.0);
}

TEST_CASE("apply_hi serial/parallel agreement and hermiticity")
{
    const GiInstance inst(Graph::path(4), Graph::path(4));
    const ScheduleHamiltonian ham(inst);
    const auto psi = random_state(ham.index().dim(), 77);
    std::vector<cplx> a(psi.size()), b(psi.size());
    ham.apply_hi<cplx>(psi, a);
    ham.apply_hi_serial<cplx>(psi, b);
    for (std::size_t v = 0; v < psi.size(); ++v)
        CHECK(a[v] == b[v]); // bitwise: same summation order

    cplx expect = 0;
    for (std::size_t v = 0; v < psi.size(); ++v)
        expect += std::conj(psi[v]) * a[v];
    CHECK(std::abs(expect.imag()) < 1e-12);
}

TEST_CASE("apply_h endpoints and midpoint hand value")
{
    const GiInstance k2(Graph::complete(2), Graph::complete(2));
    const ScheduleHamiltonian ham(k2);
    const SectorIndex& idx = ham.index();
    const auto psi = random_state(idx.dim(), 5);

    std::vector<cplx> hi(psi.size()), h(psi.size());
    ham.apply_hi<cplx>(psi, hi);
    ham.apply_h<cplx>(0.0, psi, h);
    for (std::size_t v = 0; v < psi.size(); ++v)
        CHECK(h[v] == hi[v]);

    ham.apply_h<cplx>(1.0, psi, h);
    for (std::size_t v = 0; v < psi.size(); ++v)
        CHECK(h[v] == cplx(static_cast<double>(ham.diagonal()[v])) * psi[v]);

    // s=1/2 on |(1,2)>: diagonal is 0 there, hops reach (2,2) and (1,1)
    std::vector<cplx> basis(idx.dim(), 0.0), out(idx.dim());
    basis[idx.index_of(FunctionConfig(2, {1, 2}))] = 1.0;
    ham.apply_h<cplx>(0.5, basis, out);
    CHECK(out[idx.index_of(FunctionConfig(2, {1, 2}))] == cplx(0.0));
    CHECK(out[idx.index_of(FunctionConfig(2, {2, 2}))] == cplx(-0.25));
    CHECK(out[idx.index_of(FunctionConfig(2, {1, 1}))] == cplx(-0.25));
}

TEST_CASE("hi ground state")
{
    const SectorState g2 = hi_ground_state(2);
    for (const auto& a : g2.amp)
        CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chain_ground_energy(2) * 2 == doctest::Approx(-1.0));

    const SectorState g3 = hi_ground_state(3);
    const double e3 = 3 * chain_ground_energy(3);
    CHECK(e3 == doctest::Approx(-3 * std::cos(std::numbers::pi / 4)));

    const GiInstance inst(Graph::path(3), Graph::path(3));
    const ScheduleHamiltonian ham(inst);
    std::vector<cplx> out(g3.amp.size());
    ham.apply_hi<cplx>(g3.amp, out);
    for (std::size_t v = 0; v < out.size(); ++v)
        CHECK(std::abs(out[v] - e3 * g3.amp[v]) < 1e-12);

    // per-chain amplitudes proportional to (1, sqrt(2), 1)/2
    const auto cg = chain_ground_vector(3);
    CHECK(cg[0] == doctest::Approx(0.5));
    CHECK(cg[1] == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(cg[2] == doctest::Approx(0.5));
}

TEST_CASE("masked ground state and masked apply")
{
    const int n = 3;
    std::vector<int> fixed{0, 2, 0};
    const SectorState psi = hi_ground_state_masked(n, fixed);
    const SectorIndex idx(n);
    for (std::uint64_t v = 0; v < idx.dim(); ++v)
        if (idx.digit(v, 1) != 2)
            CHECK(psi.amp[v] == cplx(0.0));
    CHECK(psi.norm() == doctest::Approx(1.0));

    // masked H_I keeps the pinned chain fixed: applying it stays in sector
    const GiInstance inst(Graph::path(3), Graph::path(3));
    const ScheduleHamiltonian ham(inst);
    std::vector<cplx> out(idx.dim());
    ham.apply_hi<cplx>(psi.amp, out, &fixed);
    for (std::uint64_t v = 0; v < idx.dim(); ++v)
        if (idx.digit(v, 1) != 2)
            CHECK(out[v] == cplx(0.0));
}

TEST_CASE("PairPenalty matches diag_energy and delta is consistent")
{
    const GiInstance inst = random_instance(6, 3);
    const ClauseSet cs = build_2sat(inst);
    const PairPenalty pairs(cs, true);
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> q(6);
        for (int& x : q)
            x = rng.uniform_int(1, 6);
        const FunctionConfig fc(6, q);
        CHECK(pairs.energy(fc) == diag_energy(fc, cs));

        const int i = rng.uniform_int(0, 5);
        const int qnew = rng.uniform_int(1, 6);
        std::vector<int> q2 = q;
        q2[i] = qnew;
        CHECK(pairs.delta(q, i, qnew) ==
              diag_energy(FunctionConfig(6, q2), cs) - diag_energy(fc, cs));
    }
}

TEST_CASE("diagonal builders agree and witness drops column conflicts")
{
    const GiInstance inst(Graph::path(4), apply_permutation(Permutation({2, 1, 4, 3}), Graph::path(4)));
    const ScheduleHamiltonian ham(inst);
    const auto serial = build_diagonal_serial(ham.index(), ham.pair_penalty());
    CHECK(serial == ham.diagonal());

    // on permutation configs the witness equals cost_f
    std::vector<int> m{1, 2, 3, 4};
    do {
        const FunctionConfig q(4, m);
        const std::uint64_t v = ham.index().index_of(q);
        CHECK(ham.witness_diagonal()[v] == cost_f(Permutation(m), inst));
    } while (std::next_permutation(m.begin(), m.end()));

    // all chains at column 1: every column clause fires, no mismatch clause
    const std::uint64_t ones = ham.index().index_of(FunctionConfig(4, {1, 1, 1, 1}));
    CHECK(ham.witness_diagonal()[ones] == 0);
    CHECK(ham.diagonal()[ones] == 6);
}

TEST_CASE("number conservation and stoquasticity")
{
    CHECK(number_conservation_check(2));
    CHECK(number_conservation_check(3));
    CHECK(stoquastic_check(0.0, GiInstance(Graph::path(3), Graph::path(3))));
    CHECK(stoquastic_check(0.5, GiInstance(Graph::complete(3), Graph::complete(3))));
    CHECK(stoquastic_check(1.0, GiInstance(Graph::path(4), Graph::path(4))));
}

TEST_CASE("dense materialization is symmetric and matches max_diag")
{
    const GiInstance inst(Graph::path(3), Graph::path(3));
    const ScheduleHamiltonian ham(inst);
    const Eigen::MatrixXd H = ham.dense(0.3);
    CHECK((H - H.transpose()).cwiseAbs().maxCoeff() == 0.0);
    double dmax = 0;
    for (std::int32_t d : ham.diagonal())
        dmax = std::max(dmax, static_cast<double>(d));
    CHECK(dmax == static_cast<double>(ham.max_diag()));
    CHECK(ham.norm_bound() >= dmax);
}
