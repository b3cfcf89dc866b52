#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwgi/graph.hpp"

namespace qwgi {

enum class ClauseKind : std::uint8_t {
    EdgeMismatchForward,  // {i,j} in E1, {k,l} not in E2
    EdgeMismatchBackward, // {i,j} not in E1, {k,l} in E2
    ColumnConflict,       // same column, distinct rows
};

// A 2-literal clause (!x_{r1,c1} or !x_{r2,c2}). Both literals are negated
// by construction; the clause is violated exactly when both variables are 1.
struct Clause {
    int r1, c1;
    int r2, c2;
    ClauseKind kind;

    bool operator==(const Clause& other) const
    {
        return r1 == other.r1 && c1 == other.c1 && r2 == other.r2 && c2 == other.c2;
    }
};

struct ClauseSet {
    int n = 0;
    std::vector<Clause> clauses;

    int count(ClauseKind kind) const;
};

// Arbitrary assignment to the n x n grid of variables x_{i,j}.
struct GridAssignment {
    int n = 0;
    std::vector<std::uint8_t> bits; // row-major, n*n entries

    explicit GridAssignment(int n_) : n(n_), bits(static_cast<std::size_t>(n_) * n_, 0) {}

    std::uint8_t& at(int i, int j) { return bits[static_cast<std::size_t>(i - 1) * n + (j - 1)]; }
    std::uint8_t at(int i, int j) const { return bits[static_cast<std::size_t>(i - 1) * n + (j - 1)]; }
};

// Exactly-one-per-row assignment: q[i-1] is the column of the 1 in row i.
// This is the restricted configuration space, a function {1..n} -> {1..n}.
struct FunctionConfig {
    int n = 0;
    std::vector<int> q;

    FunctionConfig() = default;
    FunctionConfig(int n_, std::vector<int> q_);

    static FunctionConfig from_permutation(const Permutation& pi);

    bool is_permutation() const;
    GridAssignment to_grid() const;
};

// Variable index used by DIMACS emission: var(i,j) = (i-1)*n + j.
inline int var_index(int n, int i, int j) { return (i - 1) * n + j; }

// The 2-SAT clause list. Each (edge, non-edge) pairing expands into the
// two clauses covering both orientations of the unordered pairs; column
// conflicts cover all columns and row pairs. Deduplicated by
// sorted-literal canonical form.
ClauseSet build_2sat(const GiInstance& inst);

struct FormulaEval {
    bool satisfied = false;
    int violated = 0;
};

// Evaluates the full formula (2-SAT clauses plus the n row clauses) on an
// arbitrary grid assignment, counting violated clauses.
FormulaEval eval_full_formula(const GridAssignment& a, const GiInstance& inst);

// Number of violated 2-SAT clauses under the one-hot assignment induced
// by q; the diagonal energy of the basis state |q> under the potential.
int diag_energy(const FunctionConfig& q, const GiInstance& inst);
int diag_energy(const FunctionConfig& q, const ClauseSet& cs);

void emit_dimacs(const ClauseSet& cs, const GiInstance& inst, std::ostream& out,
                 bool weighted = false);
void emit_dimacs_file(const ClauseSet& cs, const GiInstance& inst,
                      const std::string& path, bool weighted = false);

// Minimal DIMACS reader, used for round-trip checks. Only reads what
// emit_dimacs writes: a header plus 2-literal all-negative clauses.
ClauseSet parse_dimacs(std::istream& in);

// FNV-1a over the canonical edge lists; stamped into emitted files.
std::uint64_t instance_hash(const GiInstance& inst);

} // namespace qwgi
