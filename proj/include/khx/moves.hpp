#ifndef KHX_MOVES_HPP
#define KHX_MOVES_HPP

#include <array>
#include <string>
#include <vector>

#include "khx/diagram.hpp"

namespace khx {

enum class MoveType { Birth, Death, Saddle, Dot, R1Plus, R1Minus, R2Plus, R2Minus, R3 };

const char* move_type_name(MoveType t);

// Elementary movie move.  Field use by type:
//   Birth   : arc (fresh label for the new circle)
//   Death   : arc (a crossingless circle, not the basepoint circle)
//   Saddle  : arcs[2] (band feet; equal for a split-off circle), new_arc
//             (label for a circle created by a same-arc split)
//   Dot     : arc
//   R1Plus  : arc, sign, over_first, new_arcs (loop label, then the new
//             outgoing piece when the arc is not a free circle)
//   R1Minus : arc (the kink's loop arc)
//   R2Plus  : over_arc, under_arc, same_first, first_sign, new_arcs
//             (over middle [, over out], under middle [, under out])
//   R2Minus : arcs[2] (over middle, under middle)
//   R3      : arc (the sliding strand's triangle edge), crossing_hint
struct Move {
    MoveType type;
    int arc = 0;
    std::array<int, 2> arcs{0, 0};
    int over_arc = 0;
    int under_arc = 0;
    int new_arc = 0;
    std::vector<int> new_arcs;
    int sign = 1;
    bool over_first = false;
    bool same_first = true;
    int first_sign = 1;
    int crossing_hint = -1;

    bool is_morse() const {
        return type == MoveType::Birth || type == MoveType::Death || type == MoveType::Saddle;
    }
    bool is_reidemeister() const {
        return type == MoveType::R1Plus || type == MoveType::R1Minus ||
               type == MoveType::R2Plus || type == MoveType::R2Minus || type == MoveType::R3;
    }
    std::string describe() const;
};

struct MoveApplication {
    Diagram result;
    Move reverse;
    // source crossing index -> index in result, -1 when removed
    std::vector<int> crossing_map;
};

MoveApplication apply_move(const Diagram& src, const Move& mv);

} // namespace khx

#endif
