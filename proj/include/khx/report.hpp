#ifndef KHX_REPORT_HPP
#define KHX_REPORT_HPP

#include "khx/json_io.hpp"
#include "khx/verify.hpp"

namespace khx {

struct RunConfig {
    std::uint32_t prime = 32003;
    int basepoint = 0; // 0: use the file's basepoint / smallest arc
    std::string format = "json";
    std::vector<std::string> checks; // empty: all applicable
    bool timings = false;
    int verbosity = 0;

    void apply() const; // validates and installs the field modulus
};

struct CmdResult {
    Json report;
    int exit_code = 0;
    std::string text; // human-readable rendering
};

CmdResult cmd_homology(const std::string& path, const RunConfig& cfg);
CmdResult cmd_movie(const std::string& path, const RunConfig& cfg);
CmdResult cmd_batch(const std::string& path, const RunConfig& cfg);

} // namespace khx

#endif
