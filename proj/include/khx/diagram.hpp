#ifndef KHX_DIAGRAM_HPP
#define KHX_DIAGRAM_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "khx/errors.hpp"

namespace khx {

// One PD crossing X(a,b,c,d): arcs listed counterclockwise starting from
// the incoming under-strand.  a is the under in-arc, c the under out-arc,
// {b,d} the over strand.
struct Crossing {
    std::array<int, 4> arc;
    int& operator[](int k) { return arc[static_cast<std::size_t>(k)]; }
    int operator[](int k) const { return arc[static_cast<std::size_t>(k)]; }
    friend bool operator==(const Crossing& x, const Crossing& y) { return x.arc == y.arc; }
    friend bool operator<(const Crossing& x, const Crossing& y) { return x.arc < y.arc; }
};

// Resolution of every crossing: bit k = smoothing of crossing k.
// 0-smoothing joins (a,d) and (b,c); 1-smoothing joins (a,b) and (c,d).
struct State {
    std::uint32_t bits = 0;
    int size = 0;
    bool bit(int k) const { return (bits >> k) & 1u; }
    int weight() const { return __builtin_popcount(bits); }
};

struct CircleSet {
    int circle_count = 0;
    std::map<int, int> arc_to_circle; // arc label -> circle index (0-based)
    int basepoint_circle = 0;
};

// An oriented knot/link diagram: PD crossings plus crossingless circles
// ("free" arcs, one label per circle) and a marked basepoint arc.
// Orientations, crossing signs and component structure are derived and
// validated at construction.
class Diagram {
public:
    Diagram() = default;
    Diagram(std::vector<Crossing> crossings, std::vector<int> free_arcs, int basepoint = 0);

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<int>& free_arcs() const { return free_arcs_; }
    int basepoint() const { return basepoint_; }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }

    const std::vector<int>& arcs() const { return arcs_; } // sorted
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    bool has_arc(int a) const;
    bool is_free_arc(int a) const;

    int sign(int crossing) const { return signs_[static_cast<std::size_t>(crossing)]; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int writhe() const { return n_plus_ - n_minus_; }

    // True when the over strand of crossing k enters at tuple position b.
    bool over_in_b(int k) const { return over_in_b_[static_cast<std::size_t>(k)]; }

    int components() const { return components_; }
    bool is_knot() const { return components_ == 1; }
    int component_of_arc(int a) const;

    // Next arc along the strand through the given arc's head.
    int next_arc(int a) const;
    // Arcs of the component containing a, in strand order.
    std::vector<int> component_arcs(int a) const;

    CircleSet resolve(const State& s) const;
    // Arcs on the same circle of the *diagram-level* smoothing where every
    // crossing keeps both strands (i.e. knot components).
    bool same_component(int a, int b) const;

    Diagram mirrored() const;
    Diagram with_basepoint(int arc) const;

    // Whether the crossing tuples (read as counterclockwise rotations)
    // embed in the plane: Euler count of the induced ribbon graph.
    bool planar() const;

    // Sequential relabelling along each component; components ordered by
    // their smallest arc label.  Idempotent.
    Diagram canonical() const;

    std::string render() const; // canonical-order PD text
    bool same_labelled_diagram(const Diagram& o) const;

    // Build a crossing tuple from strand data and a sign.
    static Crossing make_crossing(int under_in, int under_out, int over_in, int over_out,
                                  int sign);

private:
    std::vector<Crossing> crossings_;
    std::vector<int> free_arcs_;
    int basepoint_ = 0;

    std::vector<int> arcs_;
    std::vector<int> signs_;
    std::vector<bool> over_in_b_;
    int n_plus_ = 0, n_minus_ = 0;
    int components_ = 0;
    std::map<int, int> component_of_;

    void validate_and_derive();
};

Diagram parse_pd(const std::string& text, int basepoint = 0);

std::pair<int, int> crossing_signs(const Diagram& d);

} // namespace khx

#endif
