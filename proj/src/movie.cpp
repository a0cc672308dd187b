#include "khx/movie.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace khx {

namespace {

struct PatchDsu {
    std::vector<int> p;
    int make() {
        p.push_back(static_cast<int>(p.size()));
        return static_cast<int>(p.size()) - 1;
    }
    int find(int x) {
        while (p[static_cast<std::size_t>(x)] != x) {
            p[static_cast<std::size_t>(x)] =
                p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
            x = p[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void join(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

Movie Movie::validate(std::vector<Diagram> frames, std::vector<Move> moves) {
    if (frames.empty()) fail(Err::MalformedPD, "movie needs at least one frame");
    if (frames.size() != moves.size() + 1)
        fail(Err::FrameMismatch, "movie needs moves = frames - 1");
    if (!frames.front().is_knot() || !frames.back().is_knot())
        fail(Err::EndpointNotKnot, "movie endpoints must be knots");

    Movie m;
    m.frames_ = std::move(frames);
    m.moves_ = std::move(moves);
    for (std::size_t k = 0; k < m.moves_.size(); ++k) {
        MoveApplication app = apply_move(m.frames_[k], m.moves_[k]);
        if (!app.result.same_labelled_diagram(m.frames_[k + 1]))
            fail(Err::FrameMismatch,
                 "move " + std::to_string(k) + " (" + m.moves_[k].describe() +
                     ") does not produce frame " + std::to_string(k + 1) +
                     "; applying it gives " + app.result.render() + " with basepoint " +
                     std::to_string(app.result.basepoint()));
        m.reverse_.push_back(app.reverse);
        m.cmaps_.push_back(app.crossing_map);
    }
    m.compute_stats();
    return m;
}

void Movie::compute_stats() {
    stats_ = MovieStats();
    for (const Move& mv : moves_) {
        switch (mv.type) {
            case MoveType::Birth: ++stats_.births; break;
            case MoveType::Death: ++stats_.deaths; break;
            case MoveType::Saddle: ++stats_.saddles; break;
            case MoveType::Dot: ++stats_.dots; break;
            default: break;
        }
    }
    stats_.j_degree = stats_.births + stats_.deaths - stats_.saddles - 2 * stats_.dots;

    // surface components: union-find over per-frame diagram components,
    // propagated by shared arc labels; saddles merge the patches of both
    // feet, births open fresh patches
    PatchDsu dsu;
    std::map<int, int> patch; // component id of current frame -> patch
    {
        const Diagram& f0 = frames_.front();
        for (int a : f0.arcs()) {
            int comp = f0.component_of_arc(a);
            if (!patch.count(comp)) patch[comp] = dsu.make();
        }
    }
    for (std::size_t k = 0; k < moves_.size(); ++k) {
        const Diagram& prev = frames_[k];
        const Diagram& next = frames_[k + 1];
        const Move& mv = moves_[k];

        int saddle_patch = -1;
        if (mv.type == MoveType::Saddle) {
            int p1 = patch.at(prev.component_of_arc(mv.arcs[0]));
            int p2 = patch.at(prev.component_of_arc(mv.arcs[1]));
            dsu.join(p1, p2);
            saddle_patch = dsu.find(p1);
        }

        std::map<int, int> next_patch;
        for (int a : next.arcs()) {
            int comp = next.component_of_arc(a);
            if (next_patch.count(comp)) continue;
            // patches of all inherited arc labels in this component
            int acc = -1;
            for (int b : next.component_arcs(a)) {
                if (!prev.has_arc(b)) continue;
                int q = patch.at(prev.component_of_arc(b));
                if (acc < 0)
                    acc = q;
                else
                    dsu.join(acc, q);
            }
            if (acc < 0) {
                if (mv.type == MoveType::Birth)
                    acc = dsu.make();
                else if (mv.type == MoveType::Saddle && saddle_patch >= 0)
                    acc = saddle_patch;
                else
                    fail(Err::Internal, "component with no surface ancestry");
            } else if (mv.type == MoveType::Saddle) {
                bool touches = false;
                for (int b : next.component_arcs(a))
                    if (b == mv.arcs[0] || b == mv.arcs[1] || b == mv.new_arc) touches = true;
                if (touches) dsu.join(acc, saddle_patch);
            }
            next_patch[comp] = dsu.find(acc);
        }
        patch = std::move(next_patch);
    }
    std::set<int> roots;
    for (std::size_t i = 0; i < dsu.p.size(); ++i) roots.insert(dsu.find(static_cast<int>(i)));
    stats_.connected = roots.size() <= 1;
    int chi_defect = stats_.saddles - stats_.births - stats_.deaths;
    if (stats_.connected && chi_defect >= 0 && chi_defect % 2 == 0)
        stats_.genus = chi_defect / 2;
    else
        stats_.genus = -1;
}

Movie Movie::mirrored() const {
    // Frames are re-derived by applying the reverse moves: the diagrams
    // agree with the originals but a basepoint that sat on a move locus
    // follows its forward transport rather than snapping back.
    std::vector<Move> moves(reverse_.rbegin(), reverse_.rend());
    std::vector<Diagram> frames = {frames_.back()};
    for (const Move& mv : moves) frames.push_back(apply_move(frames.back(), mv).result);
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const Diagram& expect = frames_[frames_.size() - 1 - k];
        std::vector<Crossing> a = frames[k].crossings(), b = expect.crossings();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!(a == b && frames[k].free_arcs() == expect.free_arcs()))
            fail(Err::Internal, "mirrored movie does not retrace its frames");
    }
    return validate(std::move(frames), std::move(moves));
}

bool Movie::morse_canonically_ordered() const {
    int stage = 0; // 0 births, 1 saddles, 2 deaths
    for (const Move& mv : moves_) {
        int want;
        switch (mv.type) {
            case MoveType::Birth: want = 0; break;
            case MoveType::Saddle: want = 1; break;
            case MoveType::Death: want = 2; break;
            default: continue;
        }
        if (want < stage) return false;
        stage = want;
    }
    return true;
}

bool Movie::is_ribbon() const {
    bool saddle_seen = false;
    for (std::size_t k = 0; k < moves_.size(); ++k) {
        const Move& mv = moves_[k];
        switch (mv.type) {
            case MoveType::Death:
            case MoveType::Dot: return false;
            case MoveType::Birth:
                if (saddle_seen) return false;
                break;
            case MoveType::Saddle: {
                saddle_seen = true;
                const Diagram& f = frames_[k];
                if (mv.arcs[0] == mv.arcs[1]) return false; // same-arc split
                if (f.same_component(mv.arcs[0], mv.arcs[1])) return false; // fission
                break;
            }
            default: break;
        }
    }
    return true;
}

} // namespace khx
