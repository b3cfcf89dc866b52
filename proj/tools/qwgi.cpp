// Command-line harness: instance generation, CNF export, spectral sweeps,
// Schrodinger evolution, the sequential measurement protocol, and annealer
// campaigns. Every command is deterministic given its flags and seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "qwgi/dynamics.hpp"
#include "qwgi/encoding.hpp"
#include "qwgi/io.hpp"
#include "qwgi/qmc.hpp"
#include "qwgi/spectral.hpp"
#include "qwgi/wstate.hpp"

namespace fs = std::filesystem;
using namespace qwgi;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitUnsolved = 4;

// A JSON config file supplies defaults: {"flag-name": value, ...}. Flags
// given explicitly on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            config_path = args[i].substr(9);
    }
    if (config_path.empty())
        return args;

    std::ifstream in(config_path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + config_path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object())
        throw std::invalid_argument("config file must hold a JSON object");

    auto given = [&](const std::string& key) {
        const std::string flag = "--" + key;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0)
                return true;
        return false;
    };
    std::vector<std::string> extra;
    for (auto& [key, value] : j.items()) {
        if (given(key))
            continue;
        if (value.is_boolean()) {
            if (value.get<bool>())
                extra.push_back("--" + key);
        } else if (value.is_string()) {
            extra.push_back("--" + key + "=" + value.get<std::string>());
        } else {
            extra.push_back("--" + key + "=" + value.dump());
        }
    }
    // Insert after the subcommand name so CLI11 attributes them correctly.
    args.insert(args.size() >= 1 ? args.begin() + 1 : args.end(), extra.begin(), extra.end());
    return args;
}

std::string config_stamp(const std::vector<std::string>& args, std::uint64_t seed)
{
    // The stamp identifies the run configuration, so output location and
    // thread count must not change it.
    std::string joined;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--out" || a == "--jobs") {
            ++i; // skip the value too
            continue;
        }
        if (a.rfind("--out=", 0) == 0 || a.rfind("--jobs=", 0) == 0)
            continue;
        joined += a + '\x1f';
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "# config %016llx seed %llu\n",
                  static_cast<unsigned long long>(fnv1a(joined)),
                  static_cast<unsigned long long>(seed));
    return buf;
}

std::ofstream open_out(const std::string& path)
{
    if (const fs::path dir = fs::path(path).parent_path(); !dir.empty())
        fs::create_directories(dir);
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file " + path);
    return out;
}

std::vector<GiInstance> load_instances(const std::string& in)
{
    std::vector<GiInstance> instances;
    if (fs::is_directory(in)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(in))
            if (e.path().extension() == ".json" && e.path().filename() != "manifest.json")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            instances.push_back(load_instance(f.string()));
    } else {
        instances.push_back(load_instance(in));
    }
    if (instances.empty())
        throw std::runtime_error("no instances found under " + in);
    return instances;
}

int cmd_gen(int n, int count, std::uint64_t seed, const std::string& out,
            const std::string& srg, int max_edges, const std::vector<std::string>& args)
{
    fs::create_directories(out);
    std::vector<GiInstance> instances;
    if (!srg.empty()) {
        const SrgFamily fam = load_srg_family(srg);
        instances = srg_instances(fam, count, seed);
    } else {
        RandomInstanceOptions opts;
        if (max_edges > 0)
            opts.max_edges_override = max_edges;
        for (int i = 0; i < count; ++i)
            instances.push_back(random_instance(n, mix_seed(seed, i), opts));
    }

    nlohmann::json manifest;
    manifest["seed"] = seed;
    manifest["config"] = config_stamp(args, seed);
    manifest["files"] = nlohmann::json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof(name), "instance_%03zu.json", i);
        save_instance(instances[i], (fs::path(out) / name).string());
        manifest["files"].push_back(name);
    }
    std::ofstream mout((fs::path(out) / "manifest.json").string());
    mout << manifest.dump(2) << "\n";
    std::cout << "wrote " << instances.size() << " instances to " << out << "\n";
    return 0;
}

int cmd_encode(const std::string& in, const std::string& out, bool weighted)
{
    const GiInstance inst = load_instance(in);
    const ClauseSet cs = build_2sat(inst);
    std::ofstream f = open_out(out);
    emit_dimacs(cs, inst, f, weighted);
    std::cout << "clauses: forward " << cs.count(ClauseKind::EdgeMismatchForward)
              << " backward " << cs.count(ClauseKind::EdgeMismatchBackward) << " column "
              << cs.count(ClauseKind::ColumnConflict) << " total " << cs.clauses.size()
              << "\n";
    return 0;
}

int cmd_spectrum(const std::string& in, int grid, bool refine, bool epsilon,
                 std::uint64_t seed, const std::string& out, bool plot_data,
                 const std::vector<std::string>& args)
{
    const GiInstance inst = load_instance(in);
    const ScheduleHamiltonian ham(inst);
    GapSweepOptions opts;
    opts.grid_size = grid;
    opts.refine = refine;
    opts.keep_vectors = epsilon;
    opts.solver.seed = seed;
    SpectralSweep sweep = gap_sweep(ham, opts);
    if (epsilon)
        epsilon_bound(ham, sweep);

    std::ofstream f = open_out(out);
    f << config_stamp(args, seed);
    if (plot_data) {
        f << "series,x,y\n";
        for (const SweepPoint& p : sweep.points) {
            f << "e0," << format_double(p.s) << "," << format_double(p.e0) << "\n";
            f << "e1," << format_double(p.s) << "," << format_double(p.e1) << "\n";
            f << "gap," << format_double(p.s) << "," << format_double(p.gap) << "\n";
        }
    } else {
        f << "s,e0,e1,gap,degenerate\n";
        for (const SweepPoint& p : sweep.points)
            f << format_double(p.s) << "," << format_double(p.e0) << ","
              << format_double(p.e1) << "," << format_double(p.gap) << ","
              << (p.degenerate ? 1 : 0) << "\n";
    }
    f << "# g_min " << format_double(sweep.g_min) << " at s " << format_double(sweep.s_at_min)
      << "\n";
    std::cout << "g_min " << format_double(sweep.g_min) << " at s "
              << format_double(sweep.s_at_min) << "\n";
    if (sweep.epsilon) {
        f << "# epsilon " << format_double(*sweep.epsilon) << "\n";
        if (sweep.g_min > 1e-8) {
            const double t = annealing_time_estimate(sweep);
            f << "# T_estimate " << format_double(t) << "\n";
            std::cout << "epsilon " << format_double(*sweep.epsilon) << " T_estimate "
                      << format_double(t) << "\n";
        }
    }
    return 0;
}

int cmd_evolve(const std::string& in, std::vector<double> ladder, double dt,
               const std::string& out, bool plot_data, std::uint64_t seed,
               const std::vector<std::string>& args)
{
    const GiInstance inst = load_instance(in);
    const ScheduleHamiltonian ham(inst);
    if (ladder.empty())
        throw std::invalid_argument("evolve: provide at least one --T");
    for (double T : ladder) {
        EvolutionSpec spec;
        spec.ham = &ham;
        spec.T = T;
        spec.dt = dt;
        const EvolutionResult r = evolve(spec);
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_T%g.csv", T);
        std::ofstream f = open_out(out + suffix);
        f << config_stamp(args, seed);
        if (plot_data) {
            f << "series,x,y\n";
            for (const TracePoint& p : r.trace) {
                f << "witness," << format_double(p.s) << "," << format_double(p.witness) << "\n";
                f << "overlap," << format_double(p.s) << ","
                  << format_double(p.solution_overlap) << "\n";
            }
        } else {
            f << "s,witness,energy,solution_overlap,norm\n";
            for (const TracePoint& p : r.trace)
                f << format_double(p.s) << "," << format_double(p.witness) << ","
                  << format_double(p.energy) << "," << format_double(p.solution_overlap)
                  << "," << format_double(p.norm) << "\n";
        }
        f << "# norm_drift " << format_double(r.norm_drift) << "\n";
        std::cout << "T " << T << " final overlap "
                  << format_double(r.trace.back().solution_overlap) << " norm_drift "
                  << format_double(r.norm_drift) << "\n";
    }
    return 0;
}

int cmd_protocol(const std::string& in, double T, int runs, std::uint64_t seed, double dt,
                 const std::string& out, const std::vector<std::string>& args)
{
    const GiInstance inst = load_instance(in);
    const ScheduleHamiltonian ham(inst);
    std::ofstream f = open_out(out);
    f << config_stamp(args, seed);
    f << "run,verified,candidate\n";
    int verified = 0;
    ProtocolOptions opts;
    opts.dt = dt;
    for (int r = 0; r < runs; ++r) {
        Rng rng(mix_seed(seed, r));
        const MeasurementRecord rec = sequential_protocol(ham, T, rng, opts);
        verified += rec.verified;
        f << r << "," << (rec.verified ? 1 : 0) << ",";
        if (rec.candidate) {
            const auto& m = rec.candidate->mapping();
            for (std::size_t i = 0; i < m.size(); ++i)
                f << (i ? " " : "") << m[i];
        } else {
            f << "none";
        }
        f << "\n";
    }
    f << "# verified_rate " << format_double(static_cast<double>(verified) / runs) << "\n";
    std::cout << "verified " << verified << "/" << runs << "\n";
    return 0;
}

int cmd_qmc(const std::string& in, QmcParams params, std::vector<int> ladder, int jobs,
            const std::string& out, const std::vector<std::string>& args)
{
    const std::vector<GiInstance> instances = load_instances(in);
    if (ladder.empty())
        ladder.push_back(params.T);
    const CampaignResult result = annealing_time_campaign(instances, params, ladder, jobs);
    const std::string csv = config_stamp(args, params.seed) + campaign_csv(result);
    if (!out.empty()) {
        std::ofstream f = open_out(out);
        f << csv;
    } else {
        std::cout << csv;
    }
    if (result.t_n)
        std::cout << "all instances solved at T " << *result.t_n << "\n";
    else
        std::cout << result.unsolved.size() << " instances unsolved at the largest ladder T\n";
    return result.t_n ? 0 : kExitUnsolved;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"adiabatic quantum-walk graph-isomorphism simulator suite"};
    app.require_subcommand(1);

    std::vector<std::string> raw(argv + 1, argv + argc);

    // shared flags
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string out;
    std::string config_file;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--jobs", jobs, "worker count (0 = hardware)");
        cmd->add_option("--config", config_file, "JSON file with flag defaults");
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate instance files");
    int gen_n = 6, gen_count = 1, gen_max_edges = 0;
    std::string gen_srg;
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--count", gen_count, "number of instances");
    gen->add_option("--srg", gen_srg, "SRG catalog JSON instead of random instances");
    gen->add_option("--max-edges", gen_max_edges, "override the upper edge-count bound");
    gen->add_option("--out", out, "output directory")->required();
    add_common(gen);

    // encode
    auto* encode = app.add_subcommand("encode", "emit the 2-SAT CNF of an instance");
    std::string enc_in;
    bool enc_weighted = false;
    encode->add_option("--in", enc_in, "instance JSON")->required();
    encode->add_flag("--weighted", enc_weighted, "emit wcnf with unit weights");
    encode->add_option("--out", out, "CNF output path")->required();
    add_common(encode);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "two-level sweep over the schedule");
    std::string spec_in;
    int spec_grid = 101;
    bool spec_refine = true, spec_eps = false, spec_plot = false;
    spectrum->add_option("--in", spec_in, "instance JSON")->required();
    spectrum->add_option("--grid", spec_grid, "grid size");
    spectrum->add_flag("--refine,!--no-refine", spec_refine, "golden-section refinement");
    spectrum->add_flag("--epsilon", spec_eps, "also compute the adiabatic matrix element");
    spectrum->add_flag("--plot-data", spec_plot, "long-format CSV");
    spectrum->add_option("--out", out, "CSV output path")->required();
    add_common(spectrum);

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "Schrodinger evolution traces");
    std::string evo_in;
    std::vector<double> evo_ladder;
    double evo_dt = 0;
    bool evo_plot = false;
    evolve_cmd->add_option("--in", evo_in, "instance JSON")->required();
    evolve_cmd->add_option("--T,--ladder", evo_ladder, "evolution times (repeatable)");
    evolve_cmd->add_option("--dt", evo_dt, "step size (0 = default)");
    evolve_cmd->add_flag("--plot-data", evo_plot, "long-format CSV");
    evolve_cmd->add_option("--out", out, "output file prefix")->required();
    add_common(evolve_cmd);

    // protocol
    auto* protocol = app.add_subcommand("protocol", "sequential measurement protocol");
    std::string proto_in;
    double proto_T = 50, proto_dt = 0;
    int proto_runs = 20;
    protocol->add_option("--in", proto_in, "instance JSON")->required();
    protocol->add_option("--T", proto_T, "evolution time per round");
    protocol->add_option("--runs", proto_runs, "number of seeded runs");
    protocol->add_option("--dt", proto_dt, "step size (0 = default)");
    protocol->add_option("--out", out, "CSV output path")->required();
    add_common(protocol);

    // qmc
    auto* qmc = app.add_subcommand("qmc", "world-line annealer campaign");
    std::string qmc_in, qmc_preset;
    QmcParams params;
    std::vector<int> qmc_ladder;
    qmc->add_option("--in", qmc_in, "instance JSON or directory")->required();
    qmc->add_option("--preset", qmc_preset, "parameter preset: paper | beta-m");
    qmc->set_help_flag("--help", "print help"); // frees the single-letter name for --h
    qmc->add_option("--h", params.h, "relabeling attempts");
    qmc->add_option("--k", params.k, "restarts per attempt");
    qmc->add_option("--r", params.r, "Trotter replicas");
    qmc->add_option("--m", params.m, "moves per schedule step");
    qmc->add_option("--beta", params.beta, "inverse temperature (0 = r)");
    qmc->add_option("--T", params.T, "schedule length");
    qmc->add_option("--burn-in", params.burn_in_sweeps, "thermalization sweeps (0 = 100n)");
    qmc->add_flag("--sweep-moves", params.sweep_moves, "each move is a full r*n sweep");
    qmc->add_flag("--prose-mode", params.prose_mode, "relabel only the second graph");
    qmc->add_option("--ladder", qmc_ladder, "annealing-time ladder (repeatable)");
    qmc->add_option("--out", out, "campaign CSV path (default stdout)");
    add_common(qmc);

    try {
        const std::vector<std::string> expanded = expand_config(raw);
        // CLI11 parses reversed argv
        std::vector<std::string> rargs(expanded.rbegin(), expanded.rend());
        app.parse(rargs);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    if (jobs > 0)
        omp_set_num_threads(jobs);

    try {
        if (gen->parsed())
            return cmd_gen(gen_n, gen_count, seed, out, gen_srg, gen_max_edges, raw);
        if (encode->parsed())
            return cmd_encode(enc_in, out, enc_weighted);
        if (spectrum->parsed())
            return cmd_spectrum(spec_in, spec_grid, spec_refine, spec_eps, seed, out,
                                spec_plot, raw);
        if (evolve_cmd->parsed())
            return cmd_evolve(evo_in, evo_ladder, evo_dt, out, evo_plot, seed, raw);
        if (protocol->parsed())
            return cmd_protocol(proto_in, proto_T, proto_runs, seed, proto_dt, out, raw);
        if (qmc->parsed()) {
            if (qmc_preset == "paper") {
                params.h = 5;
                params.k = 4;
                params.r = 200;
                params.m = 250;
                params.beta = 0; // beta = r
            } else if (qmc_preset == "beta-m") {
                params.h = 5;
                params.k = 4;
                params.r = 200;
                params.m = 250;
                params.beta = 250;
            } else if (!qmc_preset.empty()) {
                std::cerr << "error: unknown preset " << qmc_preset << "\n";
                return kExitConfig;
            }
            return cmd_qmc(qmc_in, params, qmc_ladder, jobs, out, raw);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
