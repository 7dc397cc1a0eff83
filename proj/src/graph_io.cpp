#include "ccd/graph.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace ccd {

namespace {

struct ArrowToken {
    const char* text;
    Mark at_a;
    Mark at_b;
};

constexpr ArrowToken kTokens[] = {
    {"-->", Mark::Tail, Mark::Arrow},   {"<--", Mark::Arrow, Mark::Tail},   {"<->", Mark::Arrow, Mark::Arrow},
    {"---", Mark::Tail, Mark::Tail},    {"o-o", Mark::Circle, Mark::Circle}, {"o->", Mark::Circle, Mark::Arrow},
    {"<-o", Mark::Arrow, Mark::Circle}, {"o--", Mark::Circle, Mark::Tail},  {"--o", Mark::Tail, Mark::Circle},
};

}  // namespace

std::string edge_arrow(Mark at_a, Mark at_b) {
    for (const auto& t : kTokens)
        if (t.at_a == at_a && t.at_b == at_b) return t.text;
    throw GraphError("unsupported mark pair");
}

std::optional<EdgeLine> parse_edge_line(const std::string& line) {
    std::istringstream ss(line);
    std::string a, arrow, b, extra;
    if (!(ss >> a) || a[0] == '#') return std::nullopt;
    if (!(ss >> arrow >> b) || ((ss >> extra) && extra[0] != '#'))
        throw GraphError("malformed edge line: " + line);
    for (const auto& t : kTokens)
        if (arrow == t.text) return EdgeLine{a, t.at_a, t.at_b, b};
    throw GraphError("unknown edge token '" + arrow + "' in line: " + line);
}

MixedGraph read_edge_list(std::istream& in, const std::vector<std::string>* known) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    if (known) {
        labels = *known;
        for (int i = 0; i < static_cast<int>(labels.size()); ++i) index.emplace(labels[i], i);
    }
    auto intern = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (known) throw GraphError("unknown node label '" + name + "'");
        int id = static_cast<int>(labels.size());
        labels.push_back(name);
        index.emplace(name, id);
        return id;
    };

    std::vector<std::tuple<int, int, Mark, Mark>> pending;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first) || first[0] == '#') continue;
        if (first == "node") {
            std::string name;
            while (ss >> name && name[0] != '#') intern(name);
            continue;
        }
        auto e = parse_edge_line(line);
        int a = intern(e->a), b = intern(e->b);
        pending.emplace_back(a, b, e->at_a, e->at_b);
    }

    MixedGraph g(labels);
    for (auto [a, b, ma, mb] : pending) {
        if (g.adjacent(a, b)) throw GraphError("duplicate edge between " + labels[a] + " and " + labels[b]);
        g.set_edge(a, b, ma, mb);
    }
    return g;
}

MixedGraph read_edge_list_file(const std::string& path, const std::vector<std::string>* known) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_edge_list(in, known);
}

void write_edge_list(std::ostream& out, const MixedGraph& g) {
    for (int i = 0; i < g.size(); ++i) out << "node " << g.label(i) << '\n';
    for (auto [a, b] : g.edges()) {
        Mark ma = g.mark_at(a, b), mb = g.mark_at(b, a);
        // Keep the arrowhead on the right where possible.
        if ((ma == Mark::Arrow && mb != Mark::Arrow) || (ma == Mark::Circle && mb == Mark::Tail)) {
            std::swap(a, b);
            std::swap(ma, mb);
        }
        out << g.label(a) << ' ' << edge_arrow(ma, mb) << ' ' << g.label(b) << '\n';
    }
}

std::string to_edge_list(const MixedGraph& g) {
    std::ostringstream ss;
    write_edge_list(ss, g);
    return ss.str();
}

}  // namespace ccd
