#ifndef KHX_GENERATORS_HPP
#define KHX_GENERATORS_HPP

#include <random>

#include "khx/diagram.hpp"

namespace khx {

// Closure of a braid word on `width` strands; letter +i / -i is the
// positive / negative crossing of strands i, i+1 (1-based).
Diagram braid_closure(int width, const std::vector<int>& word);

// Alternating 4-plat of a rational tangle with positive twist counts
// [a1, ..., ak] built inside-out (odd slots twist east, even slots south).
Diagram rational_knot(const std::vector<int>& twists);

// Pretzel diagram with one vertical twist region per entry (sign = twist
// handedness).
Diagram pretzel(const std::vector<int>& twists);

// Cyclic chain of rational-tangle columns (Montesinos-style): column j
// applies its twist counts alternately to its bottom pair and its east
// pair, starting at the bottom; signs flip the crossing handedness per
// column.  pretzel() is the single-block case.
Diagram tangle_chain(const std::vector<std::vector<int>>& columns,
                     const std::vector<int>& signs);

// Random knot diagram (single component) via random braid closures with at
// most `max_crossings` crossings.
Diagram random_knot(std::mt19937_64& rng, int max_crossings);

} // namespace khx

#endif
