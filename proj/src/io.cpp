#include "qwgi/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qwgi {

namespace {

nlohmann::json edges_to_json(const Graph& g)
{
    nlohmann::json arr = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        arr.push_back({u, v});
    return arr;
}

std::vector<std::pair<int, int>> edges_from_json(const nlohmann::json& arr)
{
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : arr)
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return edges;
}

} // namespace

nlohmann::json instance_to_json(const GiInstance& inst)
{
    nlohmann::json j;
    j["n"] = inst.n();
    j["edges1"] = edges_to_json(inst.g1);
    j["edges2"] = edges_to_json(inst.g2);
    if (inst.planted)
        j["planted"] = inst.planted->mapping();
    else
        j["planted"] = nullptr;
    return j;
}

GiInstance instance_from_json(const nlohmann::json& j)
{
    const int n = j.at("n").get<int>();
    Graph g1(n, edges_from_json(j.at("edges1")));
    Graph g2(n, edges_from_json(j.at("edges2")));
    std::optional<Permutation> planted;
    if (j.contains("planted") && !j.at("planted").is_null())
        planted = Permutation(j.at("planted").get<std::vector<int>>());
    return GiInstance(std::move(g1), std::move(g2), std::move(planted));
}

void save_instance(const GiInstance& inst, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_instance: cannot open " + path);
    out << instance_to_json(inst).dump(2) << "\n";
}

GiInstance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_instance: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return instance_from_json(j);
}

SrgFamily load_srg_family(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_srg_family: cannot open " + path);
    nlohmann::json j;
    in >> j;

    SrgFamily family;
    const auto& params = j.at("params");
    family.n = params.at(0).get<int>();
    family.k = params.at(1).get<int>();
    family.lambda = params.at(2).get<int>();
    family.mu = params.at(3).get<int>();
    for (const auto& edges : j.at("graphs")) {
        Graph g(family.n, edges_from_json(edges));
        if (!check_srg(g, family.k, family.lambda, family.mu))
            throw std::runtime_error("load_srg_family: member of " + path +
                                     " fails the SRG regularity checks");
        family.members.push_back(std::move(g));
    }
    if (family.members.empty())
        throw std::runtime_error("load_srg_family: no graphs in " + path);
    return family;
}

std::string campaign_csv(const CampaignResult& result)
{
    std::string out = "n,instance_id,T,solved,runs_used,attempt_i,attempt_j\n";
    for (const CampaignRow& r : result.rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.instance_id) + "," +
               std::to_string(r.T) + "," + (r.solved ? "1" : "0") + "," +
               std::to_string(r.runs_used) + "," + std::to_string(r.attempt_i) + "," +
               std::to_string(r.attempt_j) + "\n";
    }
    out += "t_n," + (result.t_n ? std::to_string(*result.t_n) : std::string("none")) + "\n";
    out += "unsolved,";
    for (std::size_t i = 0; i < result.unsolved.size(); ++i)
        out += (i ? ";" : "") + std::to_string(result.unsolved[i]);
    out += "\n";
    return out;
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace qwgi
