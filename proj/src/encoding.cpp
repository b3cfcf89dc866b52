#include "qwgi/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qwgi {

int ClauseSet::count(ClauseKind kind) const
{
    int c = 0;
    for (const Clause& cl : clauses)
        c += cl.kind == kind;
    return c;
}

FunctionConfig::FunctionConfig(int n_, std::vector<int> q_) : n(n_), q(std::move(q_))
{
    if (static_cast<int>(q.size()) != n)
        throw std::invalid_argument("FunctionConfig: wrong length");
    for (int v : q)
        if (v < 1 || v > n)
            throw std::invalid_argument("FunctionConfig: entry out of range");
}

FunctionConfig FunctionConfig::from_permutation(const Permutation& pi)
{
    return FunctionConfig(pi.n(), pi.mapping());
}

bool FunctionConfig::is_permutation() const
{
    std::vector<char> seen(n + 1, 0);
    for (int v : q) {
        if (seen[v])
            return false;
        seen[v] = 1;
    }
    return true;
}

GridAssignment FunctionConfig::to_grid() const
{
    GridAssignment a(n);
    for (int i = 1; i <= n; ++i)
        a.at(i, q[i - 1]) = 1;
    return a;
}

namespace {

Clause canonical(int r1, int c1, int r2, int c2, ClauseKind kind)
{
    if (std::tie(r1, c1) > std::tie(r2, c2)) {
        std::swap(r1, r2);
        std::swap(c1, c2);
    }
    return Clause{r1, c1, r2, c2, kind};
}

} // namespace

ClauseSet build_2sat(const GiInstance& inst)
{
    const int n = inst.n();
    ClauseSet cs;
    cs.n = n;

    auto emit_pairing = [&](int i, int j, int k, int l, ClauseKind kind) {
        // Both orientations of the unordered pairs {i,j}, {k,l}.
        cs.clauses.push_back(canonical(i, k, j, l, kind));
        cs.clauses.push_back(canonical(i, l, j, k, kind));
    };

    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const bool e1 = inst.g1.has_edge(i, j);
            for (int k = 1; k <= n; ++k) {
                for (int l = k + 1; l <= n; ++l) {
                    const bool e2 = inst.g2.has_edge(k, l);
                    if (e1 && !e2)
                        emit_pairing(i, j, k, l, ClauseKind::EdgeMismatchForward);
                    else if (!e1 && e2)
                        emit_pairing(i, j, k, l, ClauseKind::EdgeMismatchBackward);
                }
            }
        }
    }
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                cs.clauses.push_back(canonical(i, k, j, k, ClauseKind::ColumnConflict));

    auto key = [](const Clause& c) { return std::tie(c.r1, c.c1, c.r2, c.c2); };
    std::sort(cs.clauses.begin(), cs.clauses.end(),
              [&](const Clause& a, const Clause& b) { return key(a) < key(b); });
    cs.clauses.erase(std::unique(cs.clauses.begin(), cs.clauses.end()), cs.clauses.end());
    return cs;
}

FormulaEval eval_full_formula(const GridAssignment& a, const GiInstance& inst)
{
    if (a.n != inst.n())
        throw std::invalid_argument("eval_full_formula: size mismatch");
    const ClauseSet cs = build_2sat(inst);
    FormulaEval ev;
    for (const Clause& c : cs.clauses)
        ev.violated += a.at(c.r1, c.c1) && a.at(c.r2, c.c2);
    for (int i = 1; i <= a.n; ++i) {
        bool any = false;
        for (int j = 1; j <= a.n; ++j)
            any = any || a.at(i, j);
        ev.violated += !any;
    }
    ev.satisfied = ev.violated == 0;
    return ev;
}

int diag_energy(const FunctionConfig& q, const ClauseSet& cs)
{
    if (q.n != cs.n)
        throw std::invalid_argument("diag_energy: size mismatch");
    int e = 0;
    for (const Clause& c : cs.clauses)
        e += q.q[c.r1 - 1] == c.c1 && q.q[c.r2 - 1] == c.c2;
    return e;
}

int diag_energy(const FunctionConfig& q, const GiInstance& inst)
{
    return diag_energy(q, build_2sat(inst));
}

std::uint64_t instance_hash(const GiInstance& inst)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(inst.n()));
    for (auto [u, v] : inst.g1.edges())
        mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    mix(0xffffffffffffffffULL);
    for (auto [u, v] : inst.g2.edges())
        mix((static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    return h;
}

void emit_dimacs(const ClauseSet& cs, const GiInstance& inst, std::ostream& out, bool weighted)
{
    const int n = cs.n;
    out << "c qwgi 2-sat encoding, var(i,j) = (i-1)*n + j, n = " << n << "\n";
    out << "c instance " << std::hex << instance_hash(inst) << std::dec << "\n";
    out << "c clauses: forward " << cs.count(ClauseKind::EdgeMismatchForward)
        << " backward " << cs.count(ClauseKind::EdgeMismatchBackward) << " column "
        << cs.count(ClauseKind::ColumnConflict) << "\n";
    if (weighted)
        out << "p wcnf " << n * n << " " << cs.clauses.size() << "\n";
    else
        out << "p cnf " << n * n << " " << cs.clauses.size() << "\n";
    for (const Clause& c : cs.clauses) {
        if (weighted)
            out << "1 ";
        out << -var_index(n, c.r1, c.c1) << " " << -var_index(n, c.r2, c.c2) << " 0\n";
    }
}

void emit_dimacs_file(const ClauseSet& cs, const GiInstance& inst, const std::string& path,
                      bool weighted)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("emit_dimacs: cannot open " + path);
    emit_dimacs(cs, inst, out, weighted);
    if (!out)
        throw std::runtime_error("emit_dimacs: write failure on " + path);
}

ClauseSet parse_dimacs(std::istream& in)
{
    ClauseSet cs;
    std::string line;
    int nvars = 0, nclauses = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            ls >> p >> fmt >> nvars >> nclauses;
            cs.n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nvars))));
            continue;
        }
        int a, b, zero;
        ls >> a >> b >> zero;
        if (a >= 0 || b >= 0 || zero != 0)
            throw std::runtime_error("parse_dimacs: unsupported clause line: " + line);
        const int va = -a - 1, vb = -b - 1;
        Clause c{va / cs.n + 1, va % cs.n + 1, vb / cs.n + 1, vb % cs.n + 1,
                 ClauseKind::ColumnConflict};
        c.kind = c.c1 == c.c2 ? ClauseKind::ColumnConflict : ClauseKind::EdgeMismatchForward;
        cs.clauses.push_back(c);
    }
    if (static_cast<int>(cs.clauses.size()) != nclauses)
        throw std::runtime_error("parse_dimacs: clause count mismatch");
    return cs;
}

} // namespace qwgi
