#ifndef KHX_MOVIE_HPP
#define KHX_MOVIE_HPP

#include "khx/moves.hpp"

namespace khx {

struct MovieStats {
    int births = 0;   // m
    int saddles = 0;  // b
    int deaths = 0;   // M
    int dots = 0;
    bool connected = false;
    int genus = 0;    // (b - m - M)/2, meaningful when connected
    int j_degree = 0; // m + M - b - 2*dots
};

// A validated movie: frames joined by elementary moves, each move
// reproducing the next frame exactly (labels included).  Endpoints are
// knots; intermediate frames may be links.
class Movie {
public:
    static Movie validate(std::vector<Diagram> frames, std::vector<Move> moves);

    const std::vector<Diagram>& frames() const { return frames_; }
    const std::vector<Move>& moves() const { return moves_; }
    const Move& reverse_move(std::size_t k) const { return reverse_[k]; }
    const std::vector<int>& crossing_map(std::size_t k) const { return cmaps_[k]; }
    const MovieStats& stats() const { return stats_; }

    std::size_t length() const { return moves_.size(); }
    const Diagram& source() const { return frames_.front(); }
    const Diagram& target() const { return frames_.back(); }

    // Time reversal: frames reversed, each move replaced by its reverse.
    Movie mirrored() const;

    // Morse events ordered births, then saddles, then deaths (Reidemeister
    // moves and dots may appear anywhere).
    bool morse_canonically_ordered() const;
    // Births and fusion saddles only (index 0 and 1 critical points, every
    // saddle merging two components).
    bool is_ribbon() const;

private:
    std::vector<Diagram> frames_;
    std::vector<Move> moves_;
    std::vector<Move> reverse_;
    std::vector<std::vector<int>> cmaps_;
    MovieStats stats_;

    void compute_stats();
};

} // namespace khx

#endif
