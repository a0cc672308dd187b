#include "khx/report.hpp"

#include <chrono>
#include <sstream>

namespace khx {

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Json decomposition_json(const HomologyResult& h) {
    Json bigraded = Json::array();
    for (const auto& [bg, dec] : h.per_bigrade()) {
        Json cell = Json::object();
        cell["i"] = bg.i;
        cell["j"] = bg.j;
        cell["free"] = dec.free_rank;
        cell["torsion"] = dec.torsion_exponents;
        bigraded.push_back(cell);
    }
    Json out = Json::object();
    out["free_rank"] = h.free_rank_total;
    out["torsion_exponents"] = h.torsion_exponents_total;
    out["xo"] = h.xo;
    out["bigraded"] = bigraded;
    return out;
}

Json config_json(const RunConfig& cfg) {
    Json j = Json::object();
    j["prime"] = cfg.prime;
    if (cfg.basepoint) j["basepoint"] = cfg.basepoint;
    j["format"] = cfg.format;
    return j;
}

Json error_json(const Error& e) {
    Json j = Json::object();
    j["kind"] = err_name(e.kind);
    j["message"] = e.what();
    return j;
}

std::string render_homology_text(const Json& r) {
    std::ostringstream os;
    os << "knot homology over F_" << r["config"]["prime"].get<long>() << "[x]\n";
    const Json& res = r["result"];
    os << "  free rank " << res["free_rank"].get<long>() << ", torsion exponents [";
    bool first = true;
    for (const Json& t : res["torsion_exponents"]) {
        if (!first) os << ", ";
        os << t.get<int>();
        first = false;
    }
    os << "], xo = " << res["xo"].get<int>() << "\n";
    for (const Json& cell : res["bigraded"]) {
        os << "  (i=" << cell["i"].get<int>() << ", j=" << cell["j"].get<int>()
           << "): free " << cell["free"].get<long>();
        if (!cell["torsion"].empty()) {
            os << ", torsion x^{";
            bool f2 = true;
            for (const Json& t : cell["torsion"]) {
                if (!f2) os << ",";
                os << t.get<int>();
                f2 = false;
            }
            os << "}";
        }
        os << "\n";
    }
    os << "  band-unlinking bound: ul_b >= xo = " << res["xo"].get<int>() << "\n";
    return os.str();
}

} // namespace

void RunConfig::apply() const {
    if (!is_odd_prime(prime))
        fail(Err::BadConfig,
             "--prime must be an odd prime (the theory needs 2 invertible); got " +
                 std::to_string(prime));
    Fp::set_modulus(prime);
}

CmdResult cmd_homology(const std::string& path, const RunConfig& cfg) {
    CmdResult out;
    out.report["schema"] = 1;
    out.report["command"] = "homology";
    out.report["input"] = path;
    out.report["config"] = config_json(cfg);
    double t0 = now_ms();
    try {
        cfg.apply();
        Diagram d = diagram_from_json(load_json_file(path));
        if (cfg.basepoint) d = d.with_basepoint(cfg.basepoint);
        Complex c = Complex::build(d);
        HomologyResult h = homology(c);
        out.report["result"] = decomposition_json(h);
        out.report["result"]["unlinking_bound"] =
            "ul_b >= " + std::to_string(h.xo);
        out.report["pass"] = true;
        out.exit_code = 0;
    } catch (const Error& e) {
        out.report["error"] = error_json(e);
        out.report["pass"] = false;
        out.exit_code = exit_code_for(e.kind);
    }
    if (cfg.timings) out.report["timing_ms"] = now_ms() - t0;
    out.text = out.report.contains("error")
                   ? std::string("error: ") + out.report["error"]["message"].get<std::string>() +
                         "\n"
                   : render_homology_text(out.report);
    return out;
}

CmdResult cmd_movie(const std::string& path, const RunConfig& cfg) {
    CmdResult out;
    out.report["schema"] = 1;
    out.report["command"] = "movie";
    out.report["input"] = path;
    out.report["config"] = config_json(cfg);
    double t0 = now_ms();
    try {
        cfg.apply();
        Movie mov = movie_from_json(load_json_file(path));
        const MovieStats& st = mov.stats();
        Json stats = Json::object();
        stats["births"] = st.births;
        stats["saddles"] = st.saddles;
        stats["deaths"] = st.deaths;
        stats["dots"] = st.dots;
        stats["connected"] = st.connected;
        stats["genus"] = st.genus;
        stats["j_degree"] = st.j_degree;
        out.report["stats"] = stats;

        std::vector<std::string> wanted = cfg.checks;
        if (wanted.empty()) {
            wanted = {"mirror-identity", "bounds"};
            if (!find_reverse_saddle_pairs(mov).empty()) {
                wanted.push_back("neck");
                wanted.push_back("reverse-saddles");
            }
            if (mov.is_ribbon()) wanted.push_back("ribbon");
        }

        Json checks = Json::array();
        bool all_pass = true;
        for (const std::string& name : wanted) {
            Json cj = Json::object();
            cj["name"] = name;
            try {
                if (name == "mirror-identity" || name == "theorem") {
                    CheckReport rep = verify_mirror_composite(mov);
                    cj["pass"] = rep.pass;
                    cj["unit_scalar"] = rep.unit_scalar.value();
                    cj["scalar_is_pm1"] = rep.scalar_is_pm1;
                    cj["details"] = rep.details;
                    all_pass = all_pass && rep.pass;
                } else if (name == "neck" || name == "reverse-saddles") {
                    auto pairs = find_reverse_saddle_pairs(mov);
                    if (pairs.empty()) fail(Err::NoSuchHandle, "no adjacent reverse saddle pair");
                    Json sub = Json::array();
                    for (std::size_t idx : pairs) {
                        CheckReport rep = name == "neck" ? verify_neck_cutting(mov, idx)
                                                         : verify_reverse_saddles(mov, idx);
                        Json sj = Json::object();
                        sj["index"] = idx;
                        sj["pass"] = rep.pass;
                        sj["unit_scalar"] = rep.unit_scalar.value();
                        sj["details"] = rep.details;
                        sub.push_back(sj);
                        all_pass = all_pass && rep.pass;
                    }
                    cj["pass"] = true;
                    for (const Json& sj : sub) cj["pass"] = cj["pass"].get<bool>() && sj["pass"].get<bool>();
                    cj["instances"] = sub;
                } else if (name == "ribbon") {
                    CheckReport rep = verify_ribbon_injectivity(mov);
                    cj["pass"] = rep.pass;
                    cj["details"] = rep.details;
                    all_pass = all_pass && rep.pass;
                } else if (name == "bounds") {
                    BoundsReport rep = cobordism_bounds(mov.source(), &mov);
                    cj["xo_source"] = rep.xo_source;
                    if (rep.xo_target) cj["xo_target"] = *rep.xo_target;
                    if (rep.corollary_genus_checked) {
                        cj["genus_bound_lhs"] = rep.corollary_lhs;
                        cj["genus_bound_rhs"] = rep.corollary_rhs;
                        cj["pass"] = rep.corollary_holds;
                        all_pass = all_pass && rep.corollary_holds;
                    } else {
                        cj["pass"] = true;
                    }
                    cj["unlinking_witness"] = rep.unlinking_witness;
                    if (rep.concordance_checked) cj["concordance_iso"] = rep.concordance_iso;
                } else {
                    fail(Err::BadConfig, "unknown check: " + name);
                }
            } catch (const Error& e) {
                if (e.kind == Err::BadConfig) throw;
                cj["error"] = error_json(e);
                cj["pass"] = false;
                all_pass = false;
            }
            checks.push_back(cj);
        }
        out.report["checks"] = checks;
        out.report["pass"] = all_pass;
        out.exit_code = all_pass ? 0 : 1;
    } catch (const Error& e) {
        out.report["error"] = error_json(e);
        out.report["pass"] = false;
        out.exit_code = exit_code_for(e.kind);
    }
    if (cfg.timings) out.report["timing_ms"] = now_ms() - t0;
    std::ostringstream os;
    if (out.report.contains("error")) {
        os << "error: " << out.report["error"]["message"].get<std::string>() << "\n";
    } else {
        const Json& st = out.report["stats"];
        os << "movie: m=" << st["births"] << " b=" << st["saddles"] << " M=" << st["deaths"]
           << " dots=" << st["dots"] << " connected=" << (st["connected"].get<bool>() ? "yes" : "no")
           << " genus=" << st["genus"] << "\n";
        for (const Json& cj : out.report["checks"]) {
            os << "  [" << (cj["pass"].get<bool>() ? "PASS" : "FAIL") << "] "
               << cj["name"].get<std::string>();
            if (cj.contains("unit_scalar")) os << " (scalar " << cj["unit_scalar"] << ")";
            if (cj.contains("error"))
                os << " error: " << cj["error"]["message"].get<std::string>();
            os << "\n";
        }
    }
    out.text = os.str();
    return out;
}

CmdResult cmd_batch(const std::string& path, const RunConfig& cfg) {
    CmdResult out;
    out.report["schema"] = 1;
    out.report["command"] = "batch";
    out.report["input"] = path;
    out.report["config"] = config_json(cfg);
    double t0 = now_ms();
    try {
        cfg.apply();
        Json j = load_json_file(path);
        const Json& raw_rows = j.is_array() ? j : j.at("knots");
        Json results = Json::array();
        bool any_error = false;
        for (const Json& row : raw_rows) {
            Json rj = Json::object();
            rj["name"] = row.value("name", "?");
            try {
                Diagram d = diagram_from_json(row);
                Complex c = Complex::build(d);
                HomologyResult h = homology(c);
                rj["free_rank"] = h.free_rank_total;
                rj["torsion_exponents"] = h.torsion_exponents_total;
                rj["xo"] = h.xo;
            } catch (const Error& e) {
                rj["error"] = error_json(e);
                any_error = true;
            }
            results.push_back(rj);
        }
        out.report["rows"] = results;
        out.report["pass"] = !any_error;
        out.exit_code = any_error ? 1 : 0;
    } catch (const Error& e) {
        out.report["error"] = error_json(e);
        out.report["pass"] = false;
        out.exit_code = exit_code_for(e.kind);
    }
    if (cfg.timings) out.report["timing_ms"] = now_ms() - t0;
    std::ostringstream os;
    if (out.report.contains("error")) {
        os << "error: " << out.report["error"]["message"].get<std::string>() << "\n";
    } else {
        for (const Json& rj : out.report["rows"]) {
            os << rj["name"].get<std::string>() << ": ";
            if (rj.contains("error"))
                os << "error " << rj["error"]["kind"].get<std::string>();
            else
                os << "free " << rj["free_rank"] << ", xo " << rj["xo"];
            os << "\n";
        }
    }
    out.text = os.str();
    return out;
}

} // namespace khx
