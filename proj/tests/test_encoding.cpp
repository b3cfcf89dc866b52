#include <stdexcept>
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "qwgi/encoding.hpp"

using namespace qwgi;

namespace {

GiInstance p3_pair()
{
    Graph p3(3, {{1, 2}, {2, 3}});
    return GiInstance(p3, p3);
}

} // namespace

TEST_CASE("build_2sat clause counts")
{
    const ClauseSet cs = build_2sat(p3_pair());
    CHECK(cs.clauses.size() == 17);
    CHECK(cs.count(ClauseKind::EdgeMismatchForward) == 4);
    CHECK(cs.count(ClauseKind::EdgeMismatchBackward) == 4);
    CHECK(cs.count(ClauseKind::ColumnConflict) == 9);

    const ClauseSet k2 = build_2sat(GiInstance(Graph::complete(2), Graph::complete(2)));
    CHECK(k2.clauses.size() == 2);
    CHECK(k2.count(ClauseKind::ColumnConflict) == 2);

    // column-conflict count is n * C(n,2) for any instance
    for (int n : {2, 3, 4, 5}) {
        const GiInstance inst(Graph::path(n), Graph::path(n));
        CHECK(build_2sat(inst).count(ClauseKind::ColumnConflict) == n * n * (n - 1) / 2);
    }
}

TEST_CASE("eval_full_formula")
{
    const GiInstance inst = p3_pair();

    GridAssignment zero(3);
    const FormulaEval ev0 = eval_full_formula(zero, inst);
    CHECK(!ev0.satisfied);
    CHECK(ev0.violated == 3); // the three row clauses only

    const GridAssignment planted = FunctionConfig::from_permutation(Permutation::identity(3)).to_grid();
    const FormulaEval ev1 = eval_full_formula(planted, inst);
    CHECK(ev1.satisfied);
    CHECK(ev1.violated == 0);

    GridAssignment column(3);
    column.at(1, 1) = 1;
    column.at(2, 1) = 1;
    column.at(3, 2) = 1;
    CHECK(eval_full_formula(column, inst).violated >= 1);
}

TEST_CASE("diag_energy examples")
{
    const GiInstance inst = p3_pair();
    CHECK(diag_energy(FunctionConfig::from_permutation(Permutation::identity(3)), inst) == 0);
    CHECK(diag_energy(FunctionConfig(3, {1, 1, 1}), inst) == 3);
    CHECK(diag_energy(FunctionConfig(3, {2, 1, 3}), inst) == 2);
    CHECK(diag_energy(FunctionConfig(3, {2, 1, 3}), inst) ==
          cost_f(Permutation({2, 1, 3}), inst));
}

TEST_CASE("diag_energy equals cost_f on all permutations, small n")
{
    for (std::uint64_t seed : {11ull, 12ull}) {
        RandomInstanceOptions opts;
        opts.max_edges_override = 5;
        Graph g(4, {{1, 2}, {2, 3}, {3, 4}, {1, 3}});
        GiInstance inst(g, apply_permutation(Permutation({2, 3, 4, 1}), g));
        (void)seed;
        const ClauseSet cs = build_2sat(inst);
        std::vector<int> m{1, 2, 3, 4};
        do {
            Permutation pi(m);
            CHECK(diag_energy(FunctionConfig::from_permutation(pi), cs) == cost_f(pi, inst));
        } while (std::next_permutation(m.begin(), m.end()));
    }
}

TEST_CASE("FunctionConfig helpers")
{
    CHECK_THROWS_AS(FunctionConfig(3, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionConfig(3, {0, 2, 3}), std::invalid_argument);
    CHECK(FunctionConfig(3, {1, 1, 2}).is_permutation() == false);
    CHECK(FunctionConfig(3, {3, 1, 2}).is_permutation());
    const GridAssignment a = FunctionConfig(3, {2, 1, 3}).to_grid();
    CHECK(a.at(1, 2) == 1);
    CHECK(a.at(1, 1) == 0);
    CHECK(a.at(3, 3) == 1);
}

TEST_CASE("dimacs emission and round trip")
{
    CHECK(var_index(3, 1, 1) == 1);
    CHECK(var_index(3, 2, 1) == 4);
    CHECK(var_index(3, 3, 3) == 9);

    const GiInstance k2(Graph::complete(2), Graph::complete(2));
    const ClauseSet cs = build_2sat(k2);
    std::ostringstream out;
    emit_dimacs(cs, k2, out);
    CHECK(out.str().find("p cnf 4 2") != std::string::npos);

    std::istringstream in(out.str());
    const ClauseSet parsed = parse_dimacs(in);
    REQUIRE(parsed.clauses.size() == cs.clauses.size());
    CHECK(parsed.n == 2);
    for (std::size_t i = 0; i < cs.clauses.size(); ++i)
        CHECK(parsed.clauses[i] == cs.clauses[i]);

    std::ostringstream wout;
    emit_dimacs(cs, k2, wout, true);
    CHECK(wout.str().find("p wcnf 4 2") != std::string::npos);

    // larger round trip
    const GiInstance p3 = p3_pair();
    const ClauseSet cs3 = build_2sat(p3);
    std::ostringstream out3;
    emit_dimacs(cs3, p3, out3);
    std::istringstream in3(out3.str());
    const ClauseSet parsed3 = parse_dimacs(in3);
    REQUIRE(parsed3.clauses.size() == cs3.clauses.size());
    for (std::size_t i = 0; i < cs3.clauses.size(); ++i)
        CHECK(parsed3.clauses[i] == cs3.clauses[i]);
}

TEST_CASE("instance_hash distinguishes instances")
{
    const GiInstance a = p3_pair();
    const GiInstance b(Graph(3, {{1, 2}, {1, 3}}), Graph(3, {{1, 2}, {1, 3}}));
    CHECK(instance_hash(a) == instance_hash(p3_pair()));
    CHECK(instance_hash(a) != instance_hash(b));
}

TEST_CASE("2-sat satisfiability matches isomorphism for n <= 4")
{
    const GiInstance iso(Graph::path(4), apply_permutation(Permutation({4, 3, 2, 1}), Graph::path(4)));
    const GiInstance non(Graph::complete(3), Graph::path(3));

    auto satisfiable_by_permutation = [](const GiInstance& inst) {
        std::vector<int> m(inst.n());
        for (int i = 0; i < inst.n(); ++i)
            m[i] = i + 1;
        const ClauseSet cs = build_2sat(inst);
        do {
            if (diag_energy(FunctionConfig(inst.n(), m), cs) == 0)
                return true;
        } while (std::next_permutation(m.begin(), m.end()));
        return false;
    };
    CHECK(satisfiable_by_permutation(iso));
    CHECK(!satisfiable_by_permutation(non));
}
