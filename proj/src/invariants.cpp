#include "spohn/invariants.hpp"

#include <sstream>

#include "spohn/model_degree.hpp"

namespace spohn {

std::string kind_name(VarietyKind k) {
    switch (k) {
        case VarietyKind::Spohn: return "Spohn";
        case VarietyKind::SpohnCI: return "SpohnCI";
        case VarietyKind::NashCI: return "NashCI";
        case VarietyKind::GraphicalModel: return "GraphicalModel";
    }
    return "";
}

std::string status_name(EmptinessStatus s) {
    switch (s) {
        case EmptinessStatus::NonEmpty: return "NonEmpty";
        case EmptinessStatus::Empty: return "Empty";
        case EmptinessStatus::Unknown: return "Unknown";
    }
    return "";
}

std::pair<long, Int> spohn_codim_degree(const GameFormat& format) {
    long codim = 0;
    Int deg(1);
    for (int d : format.d) {
        codim += d - 1;
        deg *= d;
    }
    return {codim, deg};
}

long spohn_ci_dimension(const GameFormat& format, const Graph& g) {
    long codim = spohn_codim_degree(format).first;
    return model_dim(g, format) - codim;
}

long nash_ci_dimension(const GameFormat& format, const ClusterStructure& cluster) {
    long dim = 0;
    for (size_t i = 0; i < cluster.components.size(); ++i)
        dim += cluster.state_products[i] - cluster.strategy_sums[i] + cluster.sizes[i] - 1;
    (void)format;
    return dim;
}

RingDesc chow_ring(const ClusterStructure& cluster) {
    return RingDesc(static_cast<int>(cluster.components.size()),
                    std::vector<long>(cluster.state_products.begin(), cluster.state_products.end()));
}

RingPoly chow_class(const GameFormat& format, const ClusterStructure& cluster) {
    RingDesc ring = chow_ring(cluster);
    RingPoly cls = RingPoly::constant(ring, Int(1));
    RingPoly h = hyperplane_sum(ring);
    for (size_t i = 0; i < cluster.components.size(); ++i) {
        if (cluster.sizes[i] == 1) {
            int d = format.d[cluster.components[i][0]];
            cls = cls * hyperplane_sum_excluding(ring, static_cast<int>(i)).pow(d - 1);
        } else {
            RingPoly xi = RingPoly::variable(ring, static_cast<int>(i));
            for (int v : cluster.components[i]) {
                int d = format.d[v];
                RingPoly factor(ring);
                for (int l = 0; l <= d - 1; ++l) factor = factor + xi.pow(l) * h.pow(d - 1 - l);
                cls = cls * factor;
            }
        }
    }
    return cls;
}

Int nash_ci_degree(const GameFormat& format, const ClusterStructure& cluster) {
    RingPoly cls = chow_class(format, cluster);
    if (cls.is_zero()) return Int(0);
    long dim = nash_ci_dimension(format, cluster);
    RingPoly top = cls * hyperplane_sum(cls.ring()).pow(dim);
    ExponentVector e;
    for (long D : cluster.state_products) e.push_back(static_cast<int>(D - 1));
    return top.coefficient(e);
}

Int one_edge_3player_degree(int d1, int d2, int d3) {
    if (d1 < 1 || d2 < 1 || d3 < 1) throw FormatError("strategy counts must be >= 1");
    long m = static_cast<long>(d2) * d3;
    return binomial(m + 1, d1 + 1) - binomial(m - d2 + 1, d1 + 1) - binomial(m - d3 + 1, d1 + 1) +
           binomial(m - d2 - d3 + 1, d1 + 1);
}

bool is_empty_cluster(const GameFormat& format, const ClusterStructure& cluster) {
    long total = 0;
    for (long D : cluster.state_products) total += D - 1;
    for (int ci : cluster.isolated) {
        int d = format.d[cluster.components[ci][0]];
        if (2L * (d - 1) > total) return true;
    }
    return false;
}

bool nash_no_edge_nonempty(const GameFormat& format) {
    long sum = 0;
    for (int d : format.d) sum += d - 1;
    for (int d : format.d)
        if (d - 1 > sum - (d - 1)) return false;
    return true;
}

namespace {

std::string vertex_list(const std::vector<int>& vs) {
    std::string s = "{";
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(vs[i] + 1);
    }
    return s + "}";
}

std::string graph_edges_str(const Graph& g) {
    std::string s = "{";
    auto es = g.edges();
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(es[i].first + 1) + "-" + std::to_string(es[i].second + 1);
    }
    return s + "}";
}

}  // namespace

EmptinessResult general_graph_emptiness(const GameFormat& format, const Graph& g) {
    if (auto cs = try_cluster_structure(g, format)) {
        if (is_empty_cluster(format, *cs))
            return {EmptinessStatus::Empty,
                    {"cluster graph: isolated-vertex inequality violated"}};
        return {EmptinessStatus::NonEmpty, {"cluster graph: isolated-vertex inequality holds"}};
    }

    // Direct nonemptiness rules.
    int dmax = *std::max_element(format.d.begin(), format.d.end());
    auto comps = g.connected_components();
    bool has_isolated = false;
    for (const auto& c : comps)
        if (c.size() == 1) has_isolated = true;
    if (comps.size() == 1)
        return {EmptinessStatus::NonEmpty, {"connected graph"}};
    if (!has_isolated)
        return {EmptinessStatus::NonEmpty, {"no isolated vertex"}};
    for (int v = 0; v < g.vertices(); ++v)
        if (format.d[v] == dmax && g.neighbors_mask(v) != 0)
            return {EmptinessStatus::NonEmpty,
                    {"vertex " + std::to_string(v + 1) + " with maximal d is not isolated"}};

    // Squeeze between cluster graphs.
    Graph sub = cluster_subgraph(g, format);
    auto sub_cs = cluster_structure(sub, format);
    if (!is_empty_cluster(format, sub_cs))
        return {EmptinessStatus::NonEmpty,
                {"nonempty cluster subgraph with edges " + graph_edges_str(sub)}};

    Graph super = cluster_supergraph(g);
    auto super_cs = cluster_structure(super, format);
    if (is_empty_cluster(format, super_cs))
        return {EmptinessStatus::Empty,
                {"empty cluster supergraph with edges " + graph_edges_str(super)}};

    return {EmptinessStatus::Unknown,
            {"cluster subgraph " + graph_edges_str(sub) + " is empty but supergraph " +
             graph_edges_str(super) + " is nonempty"}};
}

VarietyReport variety_report(const GameFormat& format, const Graph& g) {
    VarietyReport rep;
    if (auto cs = try_cluster_structure(g, format)) {
        rep.kind = VarietyKind::NashCI;
        RingPoly cls = chow_class(format, *cs);
        if (cls.is_zero()) {
            rep.status = EmptinessStatus::Empty;
            rep.certificate.push_back("generic Nash CI variety empty: Chow class vanishes");
            rep.certificate.push_back("equivalently the isolated-vertex inequality fails for " +
                                      vertex_list([&] {
                                          std::vector<int> bad;
                                          long total = 0;
                                          for (long D : cs->state_products) total += D - 1;
                                          for (int ci : cs->isolated) {
                                              int d = format.d[cs->components[ci][0]];
                                              if (2L * (d - 1) > total)
                                                  bad.push_back(cs->components[ci][0]);
                                          }
                                          return bad;
                                      }()));
        } else {
            rep.status = EmptinessStatus::NonEmpty;
            rep.dimension = nash_ci_dimension(format, *cs);
            rep.degree = nash_ci_degree(format, *cs);
            rep.chow_class = cls;
            rep.certificate.push_back("generic Nash CI variety: cluster-graph dimension formula");
            rep.certificate.push_back("degree: top Chow coefficient");
        }
        return rep;
    }

    rep.kind = VarietyKind::SpohnCI;
    EmptinessResult er = general_graph_emptiness(format, g);
    rep.status = er.status;
    rep.certificate = er.certificate;
    if (er.status != EmptinessStatus::Empty) {
        rep.dimension = spohn_ci_dimension(format, g);
        rep.certificate.push_back(
            "dimension: dim(M_G) - codim formula (valid when the variety is nonempty)");
    }
    return rep;
}

}  // namespace spohn
