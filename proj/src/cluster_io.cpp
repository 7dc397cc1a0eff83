#include "ccd/cluster.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace ccd {

ClusterGraph read_cluster_graph(std::istream& in, const std::vector<std::string>* known) {
    std::vector<std::string> cluster_names;
    std::vector<std::vector<std::string>> cluster_members;
    std::vector<EdgeLine> edges;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#') continue;
        if (first == "cluster") {
            std::string rest;
            std::getline(ss, rest);
            auto colon = rest.find(':');
            if (colon == std::string::npos) throw GraphError("cluster line needs ':' : " + line);
            std::istringstream name_ss(rest.substr(0, colon));
            std::string name;
            if (!(name_ss >> name)) throw GraphError("cluster line without a name: " + line);
            std::istringstream mem_ss(rest.substr(colon + 1));
            std::vector<std::string> members;
            for (std::string m; mem_ss >> m && m[0] != '#';) members.push_back(m);
            if (members.empty()) throw GraphError("cluster " + name + " has no members");
            cluster_names.push_back(name);
            cluster_members.push_back(members);
            continue;
        }
        edges.push_back(*parse_edge_line(line));
    }
    if (cluster_names.empty()) throw GraphError("cluster file declares no clusters");

    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    if (known) {
        labels = *known;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) index.emplace(labels[i], i);
    } else {
        for (const auto& ms : cluster_members)
            for (const auto& m : ms)
                if (index.emplace(m, static_cast<int>(labels.size())).second) labels.push_back(m);
    }
    std::vector<NodeSet> clusters;
    for (const auto& ms : cluster_members) {
        NodeSet c;
        for (const auto& m : ms) {
            auto it = index.find(m);
            if (it == index.end()) throw GraphError("cluster member '" + m + "' is not a known variable");
            c.push_back(it->second);
        }
        clusters.push_back(c);
    }
    ClusterGraph gc(ClusterPartition(static_cast<int>(labels.size()), clusters, cluster_names), labels);
    const auto& p = gc.partition();
    for (const auto& e : edges) {
        auto a = p.find_name(e.a), b = p.find_name(e.b);
        if (!a || !b) throw GraphError("edge refers to an unknown cluster: " + e.a + " / " + e.b);
        if (e.at_a == Mark::Tail && e.at_b == Mark::Arrow)
            gc.add_directed(*a, *b);
        else if (e.at_a == Mark::Arrow && e.at_b == Mark::Tail)
            gc.add_directed(*b, *a);
        else if (e.at_a == Mark::Arrow && e.at_b == Mark::Arrow)
            gc.set_bidirected(*a, *b);
        else
            throw GraphError("cluster edges must be directed or bidirected: " + e.a + " " + edge_arrow(e.at_a, e.at_b) +
                             " " + e.b);
    }
    if (!gc.is_acyclic()) throw InadmissiblePartition("cluster graph has a directed cycle");
    return gc;
}

ClusterGraph read_cluster_file(const std::string& path, const std::vector<std::string>* known) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open cluster file: " + path);
    return read_cluster_graph(in, known);
}

void write_cluster_graph(std::ostream& out, const ClusterGraph& gc) {
    const auto& p = gc.partition();
    for (int c = 0; c < gc.size(); ++c) {
        out << "cluster " << p.name(c) << ":";
        for (int v : p.members(c)) out << ' ' << gc.node_labels()[v];
        out << '\n';
    }
    for (int a = 0; a < gc.size(); ++a)
        for (int b = 0; b < gc.size(); ++b) {
            if (gc.directed(a, b)) out << p.name(a) << " --> " << p.name(b) << '\n';
            if (a < b && gc.bidirected(a, b)) out << p.name(a) << " <-> " << p.name(b) << '\n';
        }
}

}  // namespace ccd
