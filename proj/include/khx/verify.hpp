#ifndef KHX_VERIFY_HPP
#define KHX_VERIFY_HPP

#include <optional>
#include <string>

#include "khx/chainmap.hpp"

namespace khx {

struct CheckReport {
    std::string name;
    bool pass = false;
    Fp unit_scalar;
    bool scalar_is_pm1 = false;
    std::string details;
};

// (2x)^M φ_mirror ∘ φ ≡ (2x)^{b-m} id on the homology of the source knot,
// up to one unit scalar.  Requires a connected cobordism with Morse events
// in birth/saddle/death order.
CheckReport verify_mirror_composite(const Movie& mov);

// Neck cutting: a split/merge pair along one band equals the sum of the
// surgered movie dotted at either foot of the handle, up to a unit.
CheckReport verify_neck_cutting(const Movie& mov, std::size_t handle_index);

// Same comparison entered through the reverse-saddle relation; the two
// moves at `index` must be saddles reversing each other.
CheckReport verify_reverse_saddles(const Movie& mov, std::size_t index);

// Ribbon movies (births then fusion saddles) induce injective maps.
CheckReport verify_ribbon_injectivity(const Movie& mov);

// Locate adjacent reverse-saddle pairs (candidates for the two checks above).
std::vector<std::size_t> find_reverse_saddle_pairs(const Movie& mov);

struct BoundsReport {
    int xo_source = 0;
    std::optional<int> xo_target;
    bool has_movie = false;
    int births = 0, saddles = 0, deaths = 0, genus = 0;
    bool connected = false;
    bool corollary_genus_checked = false;
    int corollary_lhs = 0, corollary_rhs = 0;
    bool corollary_holds = false;
    bool unlinking_witness = false; // movie certifies ul_b(source) <= saddles
    bool concordance_checked = false;
    bool concordance_iso = false; // φ restricts to an iso on (2x)^b images
};

// xo as a band-unlinking lower bound for the diagram`s knot, plus the
// genus-bound instance and concordance checks when a movie is supplied.
// When the diagram is the movie's target the movie is reversed first.
BoundsReport cobordism_bounds(const Diagram& k, const Movie* mov);

} // namespace khx

#endif
