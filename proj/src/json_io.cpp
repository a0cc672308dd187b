#include "khx/json_io.hpp"

#include <fstream>

namespace khx {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::Io, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(Err::BadJson, path + ": " + e.what());
    }
    return j;
}

Diagram diagram_from_json(const Json& j) {
    if (j.is_string()) return parse_pd(j.get<std::string>());
    if (!j.is_object()) fail(Err::BadJson, "diagram must be an object or PD string");
    std::vector<Crossing> crossings;
    if (j.contains("pd")) {
        const Json& pd = j.at("pd");
        if (pd.is_string()) {
            Diagram text = parse_pd(pd.get<std::string>());
            crossings = text.crossings();
            // free arcs come from the O() terms plus the "free" field below
            std::vector<int> free = text.free_arcs();
            for (const Json& f : j.value("free", Json::array())) free.push_back(f.get<int>());
            int bp = j.value("basepoint", 0);
            return Diagram(std::move(crossings), std::move(free), bp);
        }
        for (const Json& row : pd) {
            if (!row.is_array() || row.size() != 4)
                fail(Err::BadJson, "pd rows must be 4-tuples");
            crossings.push_back(
                {{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>()}});
        }
    }
    std::vector<int> free;
    for (const Json& f : j.value("free", Json::array())) free.push_back(f.get<int>());
    int bp = j.value("basepoint", 0);
    return Diagram(std::move(crossings), std::move(free), bp);
}

Json diagram_to_json(const Diagram& d) {
    Json j = Json::object();
    j["pd"] = Json::array();
    for (const Crossing& c : d.crossings()) j["pd"].push_back({c[0], c[1], c[2], c[3]});
    if (!d.free_arcs().empty()) j["free"] = d.free_arcs();
    j["basepoint"] = d.basepoint();
    return j;
}

namespace {
MoveType move_type_from_string(const std::string& s) {
    if (s == "birth") return MoveType::Birth;
    if (s == "death") return MoveType::Death;
    if (s == "saddle") return MoveType::Saddle;
    if (s == "dot") return MoveType::Dot;
    if (s == "r1+") return MoveType::R1Plus;
    if (s == "r1-") return MoveType::R1Minus;
    if (s == "r2+") return MoveType::R2Plus;
    if (s == "r2-") return MoveType::R2Minus;
    if (s == "r3") return MoveType::R3;
    fail(Err::BadJson, "unknown move type: " + s);
}
} // namespace

Move move_from_json(const Json& j) {
    Move m{move_type_from_string(j.at("type").get<std::string>())};
    switch (m.type) {
        case MoveType::Birth:
        case MoveType::Death:
        case MoveType::Dot:
        case MoveType::R1Minus:
            m.arc = j.at("arc").get<int>();
            break;
        case MoveType::Saddle: {
            const Json& arcs = j.at("arcs");
            m.arcs = {arcs.at(0).get<int>(), arcs.at(1).get<int>()};
            m.new_arc = j.value("new_arc", 0);
            break;
        }
        case MoveType::R1Plus:
            m.arc = j.at("arc").get<int>();
            m.sign = j.at("sign").get<int>();
            m.over_first = j.value("over_first", false);
            for (const Json& a : j.at("new_arcs")) m.new_arcs.push_back(a.get<int>());
            break;
        case MoveType::R2Plus:
            m.over_arc = j.at("over").get<int>();
            m.under_arc = j.at("under").get<int>();
            m.same_first = j.at("same_first").get<bool>();
            m.first_sign = j.at("first_sign").get<int>();
            for (const Json& a : j.at("new_arcs")) m.new_arcs.push_back(a.get<int>());
            break;
        case MoveType::R2Minus: {
            const Json& arcs = j.at("arcs");
            m.arcs = {arcs.at(0).get<int>(), arcs.at(1).get<int>()};
            break;
        }
        case MoveType::R3:
            m.arc = j.at("arc").get<int>();
            m.crossing_hint = j.value("crossing", -1);
            break;
    }
    return m;
}

Json move_to_json(const Move& m) {
    Json j = Json::object();
    j["type"] = move_type_name(m.type);
    switch (m.type) {
        case MoveType::Birth:
        case MoveType::Death:
        case MoveType::Dot:
        case MoveType::R1Minus:
            j["arc"] = m.arc;
            break;
        case MoveType::Saddle:
            j["arcs"] = {m.arcs[0], m.arcs[1]};
            if (m.new_arc) j["new_arc"] = m.new_arc;
            break;
        case MoveType::R1Plus:
            j["arc"] = m.arc;
            j["sign"] = m.sign;
            if (m.over_first) j["over_first"] = true;
            j["new_arcs"] = m.new_arcs;
            break;
        case MoveType::R2Plus:
            j["over"] = m.over_arc;
            j["under"] = m.under_arc;
            j["same_first"] = m.same_first;
            j["first_sign"] = m.first_sign;
            j["new_arcs"] = m.new_arcs;
            break;
        case MoveType::R2Minus:
            j["arcs"] = {m.arcs[0], m.arcs[1]};
            break;
        case MoveType::R3:
            j["arc"] = m.arc;
            if (m.crossing_hint >= 0) j["crossing"] = m.crossing_hint;
            break;
    }
    return j;
}

Movie movie_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("frames") || !j.contains("moves"))
        fail(Err::BadJson, "movie needs frames and moves");
    std::vector<Diagram> frames;
    for (const Json& f : j.at("frames")) frames.push_back(diagram_from_json(f));
    std::vector<Move> moves;
    for (const Json& m : j.at("moves")) moves.push_back(move_from_json(m));
    return Movie::validate(std::move(frames), std::move(moves));
}

Json movie_to_json(const Movie& m) {
    Json j = Json::object();
    j["schema"] = 1;
    j["frames"] = Json::array();
    for (const Diagram& d : m.frames()) j["frames"].push_back(diagram_to_json(d));
    j["moves"] = Json::array();
    for (const Move& mv : m.moves()) j["moves"].push_back(move_to_json(mv));
    return j;
}

std::vector<TableRow> table_from_json(const Json& j) {
    const Json& rows = j.is_array() ? j : j.at("knots");
    std::vector<TableRow> out;
    for (const Json& row : rows) {
        TableRow r;
        r.name = row.at("name").get<std::string>();
        if (row.contains("pd") || row.contains("free"))
            r.diagram = diagram_from_json(row);
        else
            fail(Err::BadJson, "table row needs a pd field");
        out.push_back(std::move(r));
    }
    return out;
}

Json table_to_json(const std::vector<TableRow>& rows) {
    Json j = Json::object();
    j["schema"] = 1;
    j["knots"] = Json::array();
    for (const TableRow& r : rows) {
        Json row = diagram_to_json(r.diagram);
        Json named = Json::object();
        named["name"] = r.name;
        for (auto& [k, v] : row.items()) named[k] = v;
        j["knots"].push_back(named);
    }
    return j;
}

} // namespace khx
