#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qwgi/graph.hpp"
#include "qwgi/qmc.hpp"

namespace qwgi {

// Instance JSON:
//   {"n": int, "edges1": [[u,v],...], "edges2": [[u,v],...],
//    "planted": [p1,...,pn] | null}
nlohmann::json instance_to_json(const GiInstance& inst);
GiInstance instance_from_json(const nlohmann::json& j);

void save_instance(const GiInstance& inst, const std::string& path);
GiInstance load_instance(const std::string& path);

// SRG catalog file: instance edge-list schema plus "params": [n,k,l,m]
// and "graphs": [edge-list,...]. Members are validated against the SRG
// regularity conditions at load time.
SrgFamily load_srg_family(const std::string& path);

// Fixed-format floating point for byte-stable output files.
std::string format_double(double x);

// Canonical campaign serialization. Deliberately excludes wall-clock
// fields so identical configs produce identical bytes at any job count.
std::string campaign_csv(const CampaignResult& result);

std::uint64_t fnv1a(const std::string& data);

} // namespace qwgi
