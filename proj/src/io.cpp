#include "srkit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace srkit {

namespace {

using json = nlohmann::json;

[[noreturn]] void syntax(int line, const std::string& msg) {
    throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + msg, line);
}

std::vector<long> parse_ints(const std::string& s, int line) {
    std::vector<long> out;
    const char* p = s.data();
    const char* end = p + s.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        long v = 0;
        auto [q, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (q < end && *q != ' ' && *q != '\t' && *q != '\r'))
            syntax(line, "expected an integer");
        out.push_back(v);
        p = q;
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, std::string("bad JSON: ") + e.what());
    }
}

int get_n(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw Error(ErrorCode::SyntaxError, "JSON object needs an integer \"n\"");
    int n = j["n"].get<int>();
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    return n;
}

AgentId get_id(const json& v, int n) {
    if (!v.is_number_integer()) throw Error(ErrorCode::SyntaxError, "agent ids must be integers");
    int id = v.get<int>();
    if (id < 1 || id > n) throw Error(ErrorCode::InvalidArgument, "agent id out of range: " + std::to_string(id));
    return id - 1;
}

} // namespace

Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long n = -1;
    std::vector<std::vector<AgentId>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto vals = parse_ints(line, lineno);
        if (n < 0) {
            if (vals.size() != 1) syntax(lineno, "first line must hold the agent count");
            n = vals[0];
            if (n < 2) throw Error(ErrorCode::TooSmall, "instance needs at least 2 agents");
            if (n > Instance::kMaxAgents) syntax(lineno, "agent count too large");
            continue;
        }
        if (static_cast<long>(rows.size()) == n) syntax(lineno, "more rows than agents");
        if (static_cast<long>(vals.size()) != n - 1)
            throw Error(ErrorCode::BadLength, "line " + std::to_string(lineno) + ": row has " +
                                                  std::to_string(vals.size()) + " entries, expected " +
                                                  std::to_string(n - 1),
                        lineno);
        std::vector<AgentId> row;
        row.reserve(vals.size());
        for (long v : vals) {
            if (v < 1 || v > n)
                throw Error(ErrorCode::RowNotPermutation,
                            "line " + std::to_string(lineno) + ": agent id out of range", lineno);
            row.push_back(static_cast<AgentId>(v - 1));
        }
        rows.push_back(std::move(row));
    }
    if (n < 0) syntax(lineno, "empty input");
    if (static_cast<long>(rows.size()) != n)
        throw Error(ErrorCode::BadLength, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
    return build_instance(static_cast<int>(n), rows);
}

std::string serialize_instance(const Instance& inst) {
    std::string out = std::to_string(inst.n()) + "\n";
    for (int i = 0; i < inst.n(); ++i) {
        bool first = true;
        for (auto j : inst.row(i)) {
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    f << text;
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

std::string matching_to_json(const Matching& m) {
    nlohmann::ordered_json j;
    j["n"] = m.n();
    j["pairs"] = nlohmann::ordered_json::array();
    for (auto [a, b] : m.pairs()) j["pairs"].push_back({a + 1, b + 1});
    j["unmatched"] = nlohmann::ordered_json::array();
    for (int i = 0; i < m.n(); ++i)
        if (!m.matched(i)) j["unmatched"].push_back(i + 1);
    return j.dump();
}

Matching matching_from_json(const std::string& text) {
    json j = parse_json(text);
    int n = get_n(j);
    if (!j.contains("pairs") || !j["pairs"].is_array())
        throw Error(ErrorCode::SyntaxError, "matching JSON needs a \"pairs\" array");
    Matching m(n);
    for (const auto& pr : j["pairs"]) {
        if (!pr.is_array() || pr.size() != 2) throw Error(ErrorCode::SyntaxError, "each pair needs two ids");
        try {
            m.match(get_id(pr[0], n), get_id(pr[1], n));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidArgument)
                throw Error(ErrorCode::InvalidArgument, "pairs overlap or repeat an agent");
            throw;
        }
    }
    if (j.contains("unmatched")) {
        for (const auto& u : j["unmatched"])
            if (m.matched(get_id(u, n)))
                throw Error(ErrorCode::InvalidArgument, "agent listed as both matched and unmatched");
    }
    return m;
}

std::string partition_to_json(const Partition& p) {
    nlohmann::ordered_json j;
    j["n"] = p.n();
    j["cycles"] = nlohmann::ordered_json::array();
    for (const auto& c : cycles_of(p)) {
        auto cj = nlohmann::ordered_json::array();
        for (AgentId a : c.agents) cj.push_back(a + 1);
        j["cycles"].push_back(cj);
    }
    return j.dump();
}

Partition partition_from_json(const std::string& text) {
    json j = parse_json(text);
    int n = get_n(j);
    if (!j.contains("cycles") || !j["cycles"].is_array())
        throw Error(ErrorCode::SyntaxError, "partition JSON needs a \"cycles\" array");
    std::vector<Cycle> cycles;
    for (const auto& cj : j["cycles"]) {
        if (!cj.is_array() || cj.empty()) throw Error(ErrorCode::SyntaxError, "each cycle must be a non-empty array");
        std::vector<AgentId> agents;
        for (const auto& v : cj) agents.push_back(get_id(v, n));
        cycles.push_back(Cycle{std::move(agents)});
    }
    return Partition::from_cycles(n, cycles);
}

std::string json_kind(const std::string& text) {
    json j = parse_json(text);
    if (j.is_object() && j.contains("cycles")) return "partition";
    if (j.is_object() && j.contains("pairs")) return "matching";
    throw Error(ErrorCode::SyntaxError, "JSON is neither a matching nor a partition");
}

} // namespace srkit
