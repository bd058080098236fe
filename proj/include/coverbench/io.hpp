#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coverbench/errors.hpp"
#include "coverbench/instances.hpp"
#include "coverbench/rational.hpp"
#include "coverbench/reductions.hpp"

namespace coverbench {

// On-disk formats. The two graph-ish formats are line oriented (comments
// start with 'c'); label covers and partition systems are JSON. Emission is
// canonical, so emit(parse(emit(x))) == emit(x) bit for bit.

namespace detail {

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline int parse_id(const std::string& tok, int line, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) parse_fail(line, std::string("bad ") + what);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        parse_fail(line, std::string("bad ") + what);
    }
}

}  // namespace detail

// ============================================================================
// Set-Cover: `p sc <N> <M>` then M lines `s <cost> <e1> <e2> ...`
// ============================================================================

inline std::string emit_set_cover(const SetCoverInstance& sc) {
    std::ostringstream out;
    out << "p sc " << sc.universe_size << " " << sc.sets.size() << "\n";
    for (const auto& s : sc.sets) {
        out << "s " << s.cost.str();
        for (int e : s.members) out << " " << e;
        out << "\n";
    }
    return out.str();
}

inline SetCoverInstance parse_set_cover(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    SetCoverInstance sc;
    bool header = false;
    int expect_sets = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (header) detail::parse_fail(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "sc") detail::parse_fail(lineno, "expected 'p sc N M'");
            sc.universe_size = detail::parse_id(tok[2], lineno, "universe size");
            expect_sets = detail::parse_id(tok[3], lineno, "set count");
            header = true;
        } else if (tok[0] == "s") {
            if (!header) detail::parse_fail(lineno, "set line before header");
            if (tok.size() < 2) detail::parse_fail(lineno, "set line needs a cost");
            SetCoverInstance::Set s;
            try {
                s.cost = Rational::parse(tok[1]);
            } catch (const Error&) {
                detail::parse_fail(lineno, "bad cost '" + tok[1] + "'");
            }
            if (s.cost.is_negative()) detail::parse_fail(lineno, "negative cost");
            for (size_t i = 2; i < tok.size(); ++i) {
                int e = detail::parse_id(tok[i], lineno, "element id");
                if (e < 0 || e >= sc.universe_size)
                    detail::parse_fail(lineno, "element id " + tok[i] + " out of range");
                s.members.push_back(e);
            }
            std::sort(s.members.begin(), s.members.end());
            s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
            sc.sets.push_back(std::move(s));
        } else {
            detail::parse_fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!header) detail::parse_fail(lineno, "missing 'p sc' header");
    if ((int)sc.sets.size() != expect_sets)
        detail::parse_fail(lineno, "header promised " + std::to_string(expect_sets) + " sets, got " +
                                       std::to_string(sc.sets.size()));
    return sc;
}

// ============================================================================
// DST: `p dst <n> <m>`, arcs `a <tail> <head> <cost>`, `r <root>`, `t <v>`
// ============================================================================

inline std::string emit_dst(const DstInstance& d) {
    std::ostringstream out;
    out << "p dst " << d.vertex_count << " " << d.arcs.size() << "\n";
    out << "r " << d.root << "\n";
    for (int t : d.terminals) out << "t " << t << "\n";
    for (const auto& a : d.arcs) out << "a " << a.tail << " " << a.head << " " << a.cost.str() << "\n";
    return out.str();
}

inline DstInstance parse_dst(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool header = false, have_root = false;
    int expect_arcs = 0;
    int vertex_count = 0, root = 0;
    std::vector<DstInstance::Arc> arcs;
    std::vector<int> terminals;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = detail::tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (header) detail::parse_fail(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "dst") detail::parse_fail(lineno, "expected 'p dst n m'");
            vertex_count = detail::parse_id(tok[2], lineno, "vertex count");
            expect_arcs = detail::parse_id(tok[3], lineno, "arc count");
            header = true;
        } else if (tok[0] == "a") {
            if (!header) detail::parse_fail(lineno, "arc before header");
            if (tok.size() != 4) detail::parse_fail(lineno, "expected 'a tail head cost'");
            DstInstance::Arc a;
            a.tail = detail::parse_id(tok[1], lineno, "tail");
            a.head = detail::parse_id(tok[2], lineno, "head");
            if (a.tail < 0 || a.tail >= vertex_count || a.head < 0 || a.head >= vertex_count)
                detail::parse_fail(lineno, "arc endpoint out of range");
            try {
                a.cost = Rational::parse(tok[3]);
            } catch (const Error&) {
                detail::parse_fail(lineno, "bad cost '" + tok[3] + "'");
            }
            if (a.cost.is_negative()) detail::parse_fail(lineno, "negative cost");
            arcs.push_back(a);
        } else if (tok[0] == "r") {
            if (tok.size() != 2) detail::parse_fail(lineno, "expected 'r root'");
            root = detail::parse_id(tok[1], lineno, "root");
            if (root < 0 || root >= vertex_count) detail::parse_fail(lineno, "root out of range");
            have_root = true;
        } else if (tok[0] == "t") {
            if (tok.size() != 2) detail::parse_fail(lineno, "expected 't vertex'");
            int t = detail::parse_id(tok[1], lineno, "terminal");
            if (t < 0 || t >= vertex_count) detail::parse_fail(lineno, "terminal out of range");
            terminals.push_back(t);
        } else {
            detail::parse_fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!header) detail::parse_fail(lineno, "missing 'p dst' header");
    if (!have_root) detail::parse_fail(lineno, "missing 'r' record");
    if ((int)arcs.size() != expect_arcs)
        detail::parse_fail(lineno, "header promised " + std::to_string(expect_arcs) + " arcs, got " +
                                       std::to_string(arcs.size()));
    return make_dst(vertex_count, std::move(arcs), root, std::move(terminals));
}

// ============================================================================
// Label-Cover (JSON)
// ============================================================================

inline std::string emit_label_cover(const LabelCoverInstance& lc) {
    nlohmann::json j;
    j["a_count"] = lc.a_count;
    j["b_count"] = lc.b_count;
    j["sigma_a"] = lc.sigma_a;
    j["sigma_b"] = lc.sigma_b;
    j["bi_regular"] = lc.bi_regular;
    j["a_degree"] = lc.a_degree;
    j["b_degree"] = lc.b_degree;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : lc.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"slot", e.b_slot}});
    j["edges"] = std::move(edges);
    j["projections"] = lc.projections;
    return j.dump(2) + "\n";
}

inline LabelCoverInstance parse_label_cover(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("label-cover JSON: ") + e.what());
    }
    LabelCoverInstance lc;
    try {
        lc.a_count = j.at("a_count").get<int>();
        lc.b_count = j.at("b_count").get<int>();
        lc.sigma_a = j.at("sigma_a").get<int>();
        lc.sigma_b = j.at("sigma_b").get<int>();
        lc.bi_regular = j.value("bi_regular", false);
        lc.a_degree = j.value("a_degree", 0);
        lc.b_degree = j.value("b_degree", 0);
        for (const auto& e : j.at("edges"))
            lc.edges.push_back(
                {e.at("a").get<int>(), e.at("b").get<int>(), e.at("slot").get<int>()});
        lc.projections = j.at("projections").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("label-cover JSON: ") + e.what());
    }
    auto rep = validate(lc);
    if (!rep.pass)
        fail(ErrorCode::ParseError, "label cover fails validation: " + rep.violations[0]);
    return lc;
}

inline std::string emit_labeling(const Labeling& phi) {
    nlohmann::json j;
    j["phi_a"] = phi.phi_a;
    j["phi_b"] = phi.phi_b;
    return j.dump(2) + "\n";
}

// ============================================================================
// Partition systems (JSON)
// ============================================================================

inline std::string emit_partition_system(const PartitionSystem& ps) {
    nlohmann::json j;
    j["universe"] = ps.universe;
    j["parts"] = ps.parts;
    j["count"] = ps.count;
    j["seed"] = ps.seed;
    j["assignment"] = ps.assignment;
    return j.dump(2) + "\n";
}

inline PartitionSystem parse_partition_system(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("partition-system JSON: ") + e.what());
    }
    PartitionSystem ps;
    try {
        ps.universe = j.at("universe").get<int>();
        ps.parts = j.at("parts").get<int>();
        ps.count = j.at("count").get<int>();
        ps.seed = j.value("seed", (uint64_t)0);
        ps.assignment = j.at("assignment").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("partition-system JSON: ") + e.what());
    }
    if ((int)ps.assignment.size() != ps.count)
        fail(ErrorCode::ParseError, "partition count mismatch");
    for (const auto& part_of : ps.assignment) {
        if ((int)part_of.size() != ps.universe)
            fail(ErrorCode::ParseError, "partition does not assign every universe point");
        for (int part : part_of)
            if (part < 0 || part >= ps.parts) fail(ErrorCode::ParseError, "part id out of range");
    }
    return ps;
}

}  // namespace coverbench
