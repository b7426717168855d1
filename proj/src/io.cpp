#include "spohn/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spohn {

namespace {

using nlohmann::json;

Rat rat_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_number_float()) {
        Rat q(v.get<double>());
        q.canonicalize();
        return q;
    }
    throw ParseError("expected a number or \"a/b\" string");
}

json rat_to_json(const Rat& q) {
    if (q.get_den() == 1) {
        if (q.get_num().fits_slong_p()) return json(q.get_num().get_si());
        return json(q.get_num().get_str());
    }
    return json(q.get_str());
}

GameFormat format_from_json(const json& v) {
    if (!v.is_array() || v.empty()) throw ParseError("\"format\" must be a nonempty array");
    std::vector<int> d;
    for (const auto& x : v) d.push_back(x.get<int>());
    return GameFormat(d);
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

}  // namespace

Game parse_game_json(const std::string& text) {
    json j = parse_text(text);
    GameFormat fmt = format_from_json(j.at("format"));
    if (!j.contains("payoffs") || !j["payoffs"].is_array())
        throw ParseError("\"payoffs\" must be an array of arrays");
    std::vector<PayoffTensor> tensors;
    for (const auto& arr : j["payoffs"]) {
        std::vector<Rat> vals;
        for (const auto& v : arr) vals.push_back(rat_from_json(v));
        tensors.emplace_back(fmt, std::move(vals));
    }
    return Game(fmt, std::move(tensors));
}

std::string game_to_json(const Game& game) {
    json j;
    j["format"] = game.format.d;
    json payoffs = json::array();
    for (const auto& t : game.payoffs) {
        json arr = json::array();
        for (const Rat& q : t.values) arr.push_back(rat_to_json(q));
        payoffs.push_back(std::move(arr));
    }
    j["payoffs"] = std::move(payoffs);
    return j.dump(2);
}

MixedProfile<Rat> parse_profile_json(const std::string& text) {
    json j = parse_text(text);
    GameFormat fmt = format_from_json(j.at("format"));
    std::vector<Rat> p;
    for (const auto& v : j.at("p")) p.push_back(rat_from_json(v));
    return MixedProfile<Rat>(fmt, std::move(p));
}

std::string profile_to_json(const MixedProfile<Rat>& p) {
    json j;
    j["format"] = p.format.d;
    json arr = json::array();
    for (const Rat& q : p.p) arr.push_back(rat_to_json(q));
    j["p"] = std::move(arr);
    return j.dump(2);
}

Graph parse_graph_json(const std::string& text) {
    json j = parse_text(text);
    int n = j.at("vertices").get<int>();
    Graph g(n);
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [i,j] pairs");
            g.add_edge(e[0].get<int>() - 1, e[1].get<int>() - 1);
        }
    return g;
}

std::string graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.vertices();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back(json::array({a + 1, b + 1}));
    j["edges"] = std::move(edges);
    return j.dump(2);
}

Graph parse_graph_inline(const std::string& text, int vertices) {
    if (text == "none" || text == "edges:") return empty_graph(vertices);
    if (text == "complete") return complete_graph(vertices);
    const std::string prefix = "edges:";
    if (text.rfind(prefix, 0) != 0)
        throw ParseError("inline graph must be 'none', 'complete', or 'edges:i-j,...' "
                         "(error at position 0 of '" + text + "')");
    Graph g(vertices);
    std::string body = text.substr(prefix.size());
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        size_t dash = item.find('-');
        if (dash == std::string::npos)
            throw ParseError("bad edge '" + item + "' at position " +
                             std::to_string(prefix.size() + pos) + ": expected i-j");
        int a, b;
        try {
            a = std::stoi(item.substr(0, dash));
            b = std::stoi(item.substr(dash + 1));
        } catch (const std::exception&) {
            throw ParseError("bad edge '" + item + "' at position " +
                             std::to_string(prefix.size() + pos));
        }
        g.add_edge(a - 1, b - 1);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return g;
}

std::string report_to_json(const VarietyReport& report) {
    json j;
    j["kind"] = kind_name(report.kind);
    j["status"] = status_name(report.status);
    j["dimension"] = report.dimension ? json(*report.dimension) : json(nullptr);
    j["degree"] = report.degree ? json(report.degree->get_str()) : json(nullptr);
    j["chow_class"] = report.chow_class ? json(report.chow_class->str()) : json(nullptr);
    j["certificate"] = report.certificate;
    return j.dump(2);
}

std::string report_to_json(const VerificationReport& report, const NashReport& nash) {
    json j;
    j["tol"] = report.tol;
    j["totally_mixed"] = report.totally_mixed;
    j["spohn_residuals"] = report.spohn_residuals;
    json ci = json::object();
    for (size_t i = 0; i < report.ci_residuals.size(); ++i)
        ci[report.ci_labels[i]] = report.ci_residuals[i];
    j["ci_residuals"] = std::move(ci);
    j["independence_residual"] = report.independence_residual;
    j["best_response_slack"] = report.best_response_slack;
    j["verdicts"] = {{"dependency", report.verdict_dependency},
                     {"ci", report.verdict_ci},
                     {"nash_totally_mixed", report.verdict_nash},
                     {"nash_classical", nash.verdict_nash}};
    j["product_residual"] = nash.product_residual;
    if (report.refused) {
        j["refused"] = true;
        j["note"] = report.note;
    }
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
}

}  // namespace spohn
