#ifndef KHX_ERRORS_HPP
#define KHX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace khx {

enum class Err {
    // input / parse
    MalformedPD,
    ArcMultiplicity,
    InconsistentOrientation,
    BadConfig,
    Io,
    BadJson,
    // semantic preconditions
    NotAKnot,
    FrameMismatch,
    EndpointNotKnot,
    BadLocus,
    MoveNotApplicable,
    NotConnected,
    NoSuchHandle,
    NotReversePair,
    MovieOutOfOrder,
    // internal invariant violations (exit code 3 territory)
    D2NotZero,
    NotHomogeneous,
    NonMonomialTorsion,
    ComposeNotZero,
    NotAChainMap,
    NotWellDefined,
    Internal,
};

struct Error : std::runtime_error {
    Err kind;
    Error(Err k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(Err k, const std::string& msg) { throw Error(k, msg); }

inline const char* err_name(Err k) {
    switch (k) {
        case Err::MalformedPD: return "MalformedPD";
        case Err::ArcMultiplicity: return "ArcMultiplicity";
        case Err::InconsistentOrientation: return "InconsistentOrientation";
        case Err::BadConfig: return "BadConfig";
        case Err::Io: return "Io";
        case Err::BadJson: return "BadJson";
        case Err::NotAKnot: return "NotAKnot";
        case Err::FrameMismatch: return "FrameMismatch";
        case Err::EndpointNotKnot: return "EndpointNotKnot";
        case Err::BadLocus: return "BadLocus";
        case Err::MoveNotApplicable: return "MoveNotApplicable";
        case Err::NotConnected: return "NotConnected";
        case Err::NoSuchHandle: return "NoSuchHandle";
        case Err::NotReversePair: return "NotReversePair";
        case Err::MovieOutOfOrder: return "MovieOutOfOrder";
        case Err::D2NotZero: return "D2NotZero";
        case Err::NotHomogeneous: return "NotHomogeneous";
        case Err::NonMonomialTorsion: return "NonMonomialTorsion";
        case Err::ComposeNotZero: return "ComposeNotZero";
        case Err::NotAChainMap: return "NotAChainMap";
        case Err::NotWellDefined: return "NotWellDefined";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

// Exit status classification used by the CLI.
inline int exit_code_for(Err k) {
    switch (k) {
        case Err::D2NotZero:
        case Err::NotHomogeneous:
        case Err::NonMonomialTorsion:
        case Err::ComposeNotZero:
        case Err::NotAChainMap:
        case Err::NotWellDefined:
        case Err::Internal:
            return 3;
        default:
            return 2;
    }
}

} // namespace khx

#endif
