#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "letq/diagnosis.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"

#include <json.hpp>

namespace letq {

using Json = nlohmann::ordered_json;

std::string model_name(Model model);
Model parse_model(std::string_view text);
std::string policy_name(const AdversaryPolicy& policy);
AdversaryPolicy parse_policy(std::string_view text, std::uint64_t seed);

// One "label label" line per edge, lexicographically sorted.
std::string edge_list_text(const Topology& topo);
std::vector<Edge> parse_edge_list(std::istream& in, const CubeParams& p);

std::string dot_text(const Topology& topo, bool group_clusters);

Json adjacency_json(const Topology& topo);

Json cut_report_json(const Topology& topo, const CutReport& rep);
Json verify_report_json(const Topology& topo, const VerifyReport& rep);
Json witness_json(const Topology& topo, const GoodNeighborWitness& wit);
Json distinguish_report_json(const Topology& topo, const FaultSet& f1, const FaultSet& f2,
                             const DistinguishReport& rep);
Json syndrome_json(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome);

// Newline-delimited labels; blank lines skipped.
std::vector<std::string> read_label_lines(std::istream& in);

// 64-bit FNV-1a over the outcome bits, rendered as hex.
std::string syndrome_digest(const Syndrome& syndrome);

}  // namespace letq
