#include "khx/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace khx {

Diagram braid_closure(int width, const std::vector<int>& word) {
    if (width < 1) fail(Err::BadConfig, "braid width must be positive");
    std::vector<int> initial(static_cast<std::size_t>(width));
    std::iota(initial.begin(), initial.end(), 1);
    std::vector<int> cur = initial;
    int next = width + 1;
    std::vector<Crossing> crossings;
    for (int letter : word) {
        int g = std::abs(letter);
        if (g < 1 || g >= width) fail(Err::BadConfig, "braid letter out of range");
        std::size_t p = static_cast<std::size_t>(g - 1);
        int u = cur[p], v = cur[p + 1];
        int wp = next++, wq = next++;
        // strands swap positions; positive letter: strand from position p
        // passes over
        if (letter > 0)
            crossings.push_back(Diagram::make_crossing(v, wp, u, wq, +1));
        else
            crossings.push_back(Diagram::make_crossing(u, wq, v, wp, -1));
        cur[p] = wp;
        cur[p + 1] = wq;
    }
    // close the braid: final arc at each position joins the initial one
    std::vector<int> free_arcs;
    for (std::size_t p = 0; p < cur.size(); ++p) {
        if (cur[p] == initial[p]) {
            free_arcs.push_back(initial[p]); // strand met no crossing
            continue;
        }
        for (Crossing& c : crossings)
            for (int q = 0; q < 4; ++q)
                if (c[q] == cur[p]) c[q] = initial[p];
    }
    return Diagram(std::move(crossings), std::move(free_arcs));
}

namespace {

// Crossing described by its arms in counterclockwise order plus which
// diagonal passes under; orientations are resolved at the end by tracing
// strands, which fixes the tuple rotation.
struct ArmCrossing {
    std::array<int, 4> ccw;
    int under_diag; // 0: strand ccw[0]-ccw[2] is under; 1: ccw[1]-ccw[3]
};

class ArmBuilder {
public:
    int fresh() { return next_++; }

    void add(std::array<int, 4> ccw, int under_diag) {
        crossings_.push_back({ccw, under_diag});
    }

    // join two dangling arc ends into one arc
    void identify(int keep, int drop) {
        if (keep == drop) {
            free_.push_back(keep);
            return;
        }
        for (ArmCrossing& c : crossings_)
            for (int q = 0; q < 4; ++q)
                if (c.ccw[static_cast<std::size_t>(q)] == drop)
                    c.ccw[static_cast<std::size_t>(q)] = keep;
    }

    Diagram finish() {
        std::map<int, std::vector<std::pair<int, int>>> occ; // label -> (crossing, arm)
        for (int k = 0; k < static_cast<int>(crossings_.size()); ++k)
            for (int a = 0; a < 4; ++a)
                occ[crossings_[static_cast<std::size_t>(k)].ccw[static_cast<std::size_t>(a)]]
                    .push_back({k, a});
        for (const auto& [label, os] : occ)
            if (os.size() != 2)
                fail(Err::Internal, "dangling arc " + std::to_string(label) + " in builder");

        // orient components by tracing strands; record the head occurrence
        // (the end a strand flows into) of every arc
        std::map<std::pair<int, int>, bool> is_head;
        for (const auto& [start, so] : occ) {
            if (is_head.count(so[0])) continue;
            is_head[so[0]] = false; // tail
            is_head[so[1]] = true;  // head
            std::pair<int, int> head = so[1];
            for (;;) {
                auto [k, a] = head;
                int e = (a + 2) % 4;
                int next_arc =
                    crossings_[static_cast<std::size_t>(k)].ccw[static_cast<std::size_t>(e)];
                if (next_arc == start) break; // component closed
                std::pair<int, int> exit_occ = {k, e};
                const auto& no = occ.at(next_arc);
                std::pair<int, int> other = (no[0] == exit_occ) ? no[1] : no[0];
                is_head[exit_occ] = false;
                is_head[other] = true;
                head = other;
            }
        }

        std::vector<Crossing> out;
        for (int k = 0; k < static_cast<int>(crossings_.size()); ++k) {
            const ArmCrossing& c = crossings_[static_cast<std::size_t>(k)];
            int u1 = c.under_diag, u2 = c.under_diag + 2;
            int in_arm = is_head.at({k, u1}) ? u1 : u2;
            Crossing t;
            for (int q = 0; q < 4; ++q)
                t[q] = c.ccw[static_cast<std::size_t>((in_arm + q) % 4)];
            out.push_back(t);
        }
        return Diagram(std::move(out), free_, 0);
    }

private:
    std::vector<ArmCrossing> crossings_;
    std::vector<int> free_;
    int next_ = 1;
};

} // namespace

Diagram rational_knot(const std::vector<int>& twists) {
    if (twists.empty()) fail(Err::BadConfig, "empty twist vector");
    for (int a : twists)
        if (a < 1) fail(Err::BadConfig, "twist counts must be positive");
    ArmBuilder b;
    // the outermost block must twist east so the continued fraction reads
    // a_k + 1/(a_{k-1} + ... + 1/a_1): odd length starts from the 0-tangle,
    // even length from the infinity tangle
    bool start_east = twists.size() % 2 == 1;
    int nw, ne, sw, se;
    if (start_east) {
        nw = ne = b.fresh(); // horizontal strands
        sw = se = b.fresh();
    } else {
        nw = sw = b.fresh(); // vertical strands
        ne = se = b.fresh();
    }
    for (std::size_t slot = 0; slot < twists.size(); ++slot) {
        bool east = (slot % 2 == 0) == start_east;
        for (int t = 0; t < twists[slot]; ++t) {
            if (east) {
                int et = b.fresh(), eb = b.fresh();
                // arms ccw from NW: ne, se, eb, et; strands ne-eb / se-et
                b.add({ne, se, eb, et}, 1);
                ne = et;
                se = eb;
            } else {
                int sl = b.fresh(), sr = b.fresh();
                // arms ccw from NW: sw, sl, sr, se; strands sw-sr / sl-se
                b.add({sw, sl, sr, se}, 1);
                sw = sl;
                se = sr;
            }
        }
    }
    // numerator closure
    b.identify(nw, ne);
    b.identify(sw, se);
    return b.finish();
}

Diagram tangle_chain(const std::vector<std::vector<int>>& columns,
                     const std::vector<int>& signs) {
    if (columns.size() < 2) fail(Err::BadConfig, "tangle chain needs at least two columns");
    if (signs.size() != columns.size()) fail(Err::BadConfig, "one sign per column");
    ArmBuilder b;
    std::size_t n = columns.size();
    std::vector<int> top_left(n), top_right(n), bot_left(n), bot_right(n);
    for (std::size_t j = 0; j < n; ++j) {
        // two vertical strands: tl-bl and tr-br
        int left = b.fresh(), right = b.fresh();
        top_left[j] = left;
        top_right[j] = right;
        int bl = left, br = right;
        int tr = right;
        if (columns[j].empty()) fail(Err::BadConfig, "empty column");
        for (std::size_t blk = 0; blk < columns[j].size(); ++blk) {
            int count = columns[j][blk];
            if (count < 1) fail(Err::BadConfig, "twist counts must be positive");
            bool bottom = blk % 2 == 0;
            for (int t = 0; t < count; ++t) {
                if (bottom) {
                    int sl = b.fresh(), sr = b.fresh();
                    // arms ccw from NW: bl, sl, sr, br; strands bl-sr / sl-br
                    b.add({bl, sl, sr, br}, signs[j] > 0 ? 1 : 0);
                    bl = sl;
                    br = sr;
                } else {
                    int et = b.fresh(), eb = b.fresh();
                    // crossing east of the column: arms ccw tr, br, eb, et
                    b.add({tr, br, eb, et}, signs[j] > 0 ? 1 : 0);
                    tr = et;
                    br = eb;
                }
            }
        }
        top_right[j] = tr;
        bot_left[j] = bl;
        bot_right[j] = br;
    }
    // chain the columns left to right, wrapping around
    std::map<int, int> alias;
    auto resolve = [&](int label) {
        while (alias.count(label)) label = alias[label];
        return label;
    };
    auto join = [&](int a, int c) {
        a = resolve(a);
        c = resolve(c);
        if (a == c) {
            b.identify(a, a);
            return;
        }
        b.identify(a, c);
        alias[c] = a;
    };
    for (std::size_t j = 0; j < n; ++j) {
        join(top_right[j], top_left[(j + 1) % n]);
        join(bot_right[j], bot_left[(j + 1) % n]);
    }
    return b.finish();
}

Diagram pretzel(const std::vector<int>& twists) {
    std::vector<std::vector<int>> cols;
    std::vector<int> signs;
    for (int t : twists) {
        if (t == 0) fail(Err::BadConfig, "zero twist region");
        cols.push_back({std::abs(t)});
        signs.push_back(t > 0 ? 1 : -1);
    }
    return tangle_chain(cols, signs);
}

Diagram random_knot(std::mt19937_64& rng, int max_crossings) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::uniform_int_distribution<int> wd(2, 4);
        int width = wd(rng);
        std::uniform_int_distribution<int> ld(1, max_crossings);
        int len = ld(rng);
        std::vector<int> word;
        std::uniform_int_distribution<int> gd(1, width - 1);
        std::uniform_int_distribution<int> sd(0, 1);
        for (int t = 0; t < len; ++t) word.push_back(gd(rng) * (sd(rng) ? 1 : -1));
        // single-component check via the braid permutation
        std::vector<int> perm(static_cast<std::size_t>(width));
        std::iota(perm.begin(), perm.end(), 0);
        for (int letter : word)
            std::swap(perm[static_cast<std::size_t>(std::abs(letter) - 1)],
                      perm[static_cast<std::size_t>(std::abs(letter))]);
        // count cycles
        std::vector<bool> seen(static_cast<std::size_t>(width), false);
        int cycles = 0;
        for (int s = 0; s < width; ++s) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            ++cycles;
            int c = s;
            while (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = true;
                c = perm[static_cast<std::size_t>(c)];
            }
        }
        if (cycles != 1) continue;
        Diagram d = braid_closure(width, word);
        if (d.is_knot()) return d;
    }
    fail(Err::Internal, "random knot generation failed");
}

} // namespace khx
