#include "khx/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace khx {

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(static_cast<std::size_t>(n)) {
        std::iota(p.begin(), p.end(), 0);
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

struct Occurrence {
    int crossing;
    int pos; // 0..3
};

} // namespace

Diagram::Diagram(std::vector<Crossing> crossings, std::vector<int> free_arcs, int basepoint)
    : crossings_(std::move(crossings)), free_arcs_(std::move(free_arcs)), basepoint_(basepoint) {
    validate_and_derive();
}

void Diagram::validate_and_derive() {
    std::map<int, std::vector<Occurrence>> occ;
    for (int k = 0; k < crossing_count(); ++k)
        for (int p = 0; p < 4; ++p) {
            int a = crossings_[static_cast<std::size_t>(k)][p];
            if (a <= 0) fail(Err::MalformedPD, "arc labels must be positive integers");
            occ[a].push_back({k, p});
        }
    std::sort(free_arcs_.begin(), free_arcs_.end());
    for (std::size_t i = 0; i + 1 < free_arcs_.size(); ++i)
        if (free_arcs_[i] == free_arcs_[i + 1])
            fail(Err::MalformedPD, "duplicate free-circle arc label");
    for (int f : free_arcs_) {
        if (f <= 0) fail(Err::MalformedPD, "arc labels must be positive integers");
        if (occ.count(f))
            fail(Err::ArcMultiplicity,
                 "arc " + std::to_string(f) + " declared free but meets a crossing");
    }

    arcs_.clear();
    for (const auto& [a, os] : occ) {
        if (os.size() != 2)
            fail(Err::ArcMultiplicity, "arc " + std::to_string(a) + " appears " +
                                           std::to_string(os.size()) + " times (want 2)");
        arcs_.push_back(a);
    }
    for (int f : free_arcs_) arcs_.push_back(f);
    std::sort(arcs_.begin(), arcs_.end());
    if (arcs_.empty()) fail(Err::MalformedPD, "empty diagram (no arcs)");

    if (basepoint_ == 0) basepoint_ = arcs_.front();
    if (!has_arc(basepoint_))
        fail(Err::MalformedPD, "basepoint arc " + std::to_string(basepoint_) + " not in diagram");

    // Orient: decide, per crossing, whether the over strand enters at
    // tuple position b.  Position a is always a strand head, position c a
    // tail; each arc needs exactly one head and one tail.
    int n = crossing_count();
    std::vector<int> assign(static_cast<std::size_t>(n), -1); // -1 unknown, else 0/1
    // parity constraints x_c1 == x_c2 (parity 0) or != (parity 1)
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));

    auto head_if = [](int pos, bool x) {
        switch (pos) {
            case 0: return true;
            case 2: return false;
            case 1: return x;
            default: return !x;
        }
    };

    for (const auto& [a, os] : occ) {
        (void)a;
        const Occurrence &o1 = os[0], &o2 = os[1];
        bool fixed1 = o1.pos == 0 || o1.pos == 2;
        bool fixed2 = o2.pos == 0 || o2.pos == 2;
        if (fixed1 && fixed2) {
            if (head_if(o1.pos, false) == head_if(o2.pos, false))
                fail(Err::InconsistentOrientation,
                     "arc " + std::to_string(a) + " has two heads or two tails");
        } else if (fixed1 || fixed2) {
            const Occurrence& f = fixed1 ? o1 : o2;
            const Occurrence& v = fixed1 ? o2 : o1;
            bool fixed_head = head_if(f.pos, false);
            // variable occurrence must be the opposite
            bool need_head = !fixed_head;
            // pos 1 is head iff x; pos 3 is head iff !x
            int want = (v.pos == 1) == need_head ? 1 : 0;
            int& slot = assign[static_cast<std::size_t>(v.crossing)];
            if (slot == -1)
                slot = want;
            else if (slot != want)
                fail(Err::InconsistentOrientation,
                     "conflicting over-strand direction at crossing " +
                         std::to_string(v.crossing));
        } else {
            if (o1.crossing == o2.crossing) continue; // over loop: either direction consistent
            // head(o1) != head(o2): derive parity between the two booleans
            // pos1: head = x ; pos3: head = !x
            bool s1 = o1.pos == 1;
            bool s2 = o2.pos == 1;
            // head1 = s1 ? x1 : !x1 ; head2 likewise; want head1 != head2
            // If s1 == s2 the booleans must differ; otherwise agree.
            int parity = (s1 == s2) ? 1 : 0;
            adj[static_cast<std::size_t>(o1.crossing)].push_back({o2.crossing, parity});
            adj[static_cast<std::size_t>(o2.crossing)].push_back({o1.crossing, parity});
        }
    }
    // propagate assignments across the parity graph; components with no
    // pinned crossing (a strand that is never an under-strand) default to
    // over-in-at-b
    auto propagate = [&](int seed) {
        std::vector<int> stack = {seed};
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            int xc = assign[static_cast<std::size_t>(c)];
            for (auto [d, parity] : adj[static_cast<std::size_t>(c)]) {
                int want = parity ? 1 - xc : xc;
                int& slot = assign[static_cast<std::size_t>(d)];
                if (slot == -1) {
                    slot = want;
                    stack.push_back(d);
                } else if (slot != want) {
                    fail(Err::InconsistentOrientation,
                         "orientation parity conflict at crossing " + std::to_string(d));
                }
            }
        }
    };
    for (int c = 0; c < n; ++c)
        if (assign[static_cast<std::size_t>(c)] != -1) propagate(c);
    for (int c = 0; c < n; ++c)
        if (assign[static_cast<std::size_t>(c)] == -1) {
            assign[static_cast<std::size_t>(c)] = 1;
            propagate(c);
        }

    over_in_b_.resize(static_cast<std::size_t>(n));
    signs_.resize(static_cast<std::size_t>(n));
    n_plus_ = n_minus_ = 0;
    for (int k = 0; k < n; ++k) {
        bool x = assign[static_cast<std::size_t>(k)] == 1;
        over_in_b_[static_cast<std::size_t>(k)] = x;
        signs_[static_cast<std::size_t>(k)] = x ? 1 : -1;
        (x ? n_plus_ : n_minus_)++;
    }

    // components: arcs joined through each crossing along both strands
    std::map<int, int> arc_index;
    for (std::size_t i = 0; i < arcs_.size(); ++i) arc_index[arcs_[i]] = static_cast<int>(i);
    Dsu dsu(static_cast<int>(arcs_.size()));
    for (const Crossing& c : crossings_) {
        dsu.join(arc_index[c[0]], arc_index[c[2]]);
        dsu.join(arc_index[c[1]], arc_index[c[3]]);
    }
    std::map<int, int> root_to_comp;
    component_of_.clear();
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        int r = dsu.find(static_cast<int>(i));
        if (!root_to_comp.count(r)) {
            int id = static_cast<int>(root_to_comp.size());
            root_to_comp[r] = id;
        }
        component_of_[arcs_[i]] = root_to_comp[r];
    }
    components_ = static_cast<int>(root_to_comp.size());
}

bool Diagram::has_arc(int a) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), a);
}

bool Diagram::is_free_arc(int a) const {
    return std::find(free_arcs_.begin(), free_arcs_.end(), a) != free_arcs_.end();
}

int Diagram::component_of_arc(int a) const {
    auto it = component_of_.find(a);
    if (it == component_of_.end()) fail(Err::Internal, "unknown arc " + std::to_string(a));
    return it->second;
}

bool Diagram::same_component(int a, int b) const {
    return component_of_arc(a) == component_of_arc(b);
}

int Diagram::next_arc(int a) const {
    if (is_free_arc(a)) return a;
    // find the head occurrence of a
    for (int k = 0; k < crossing_count(); ++k) {
        const Crossing& c = crossings_[static_cast<std::size_t>(k)];
        bool x = over_in_b_[static_cast<std::size_t>(k)];
        for (int p = 0; p < 4; ++p) {
            if (c[p] != a) continue;
            bool head = (p == 0) || (p == 1 && x) || (p == 3 && !x);
            if (!head) continue;
            if (p == 0) return c[2];
            return x ? c[3] : c[1];
        }
    }
    fail(Err::Internal, "arc head not found for arc " + std::to_string(a));
}

std::vector<int> Diagram::component_arcs(int a) const {
    std::vector<int> out = {a};
    int cur = next_arc(a);
    while (cur != a) {
        out.push_back(cur);
        cur = next_arc(cur);
        if (out.size() > arcs_.size()) fail(Err::Internal, "strand traversal did not close");
    }
    return out;
}

CircleSet Diagram::resolve(const State& s) const {
    if (s.size != crossing_count()) fail(Err::Internal, "state length != crossing count");
    std::map<int, int> arc_index;
    for (std::size_t i = 0; i < arcs_.size(); ++i) arc_index[arcs_[i]] = static_cast<int>(i);
    Dsu dsu(static_cast<int>(arcs_.size()));
    for (int k = 0; k < crossing_count(); ++k) {
        const Crossing& c = crossings_[static_cast<std::size_t>(k)];
        if (!s.bit(k)) {
            dsu.join(arc_index[c[0]], arc_index[c[3]]);
            dsu.join(arc_index[c[1]], arc_index[c[2]]);
        } else {
            dsu.join(arc_index[c[0]], arc_index[c[1]]);
            dsu.join(arc_index[c[2]], arc_index[c[3]]);
        }
    }
    // circles numbered by smallest member arc
    std::map<int, int> root_min;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        int r = dsu.find(static_cast<int>(i));
        auto it = root_min.find(r);
        if (it == root_min.end() || arcs_[i] < it->second) root_min[r] = arcs_[i];
    }
    std::vector<std::pair<int, int>> mins; // (min arc, root)
    for (auto [r, m] : root_min) mins.push_back({m, r});
    std::sort(mins.begin(), mins.end());
    std::map<int, int> root_to_circle;
    for (std::size_t i = 0; i < mins.size(); ++i) root_to_circle[mins[i].second] = static_cast<int>(i);

    CircleSet cs;
    cs.circle_count = static_cast<int>(mins.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i)
        cs.arc_to_circle[arcs_[i]] = root_to_circle[dsu.find(static_cast<int>(i))];
    cs.basepoint_circle = cs.arc_to_circle.at(basepoint_);
    return cs;
}

bool Diagram::planar() const {
    int n = crossing_count();
    if (n == 0) return true;
    // half-edges (crossing, arm); edge involution pairs the two occurrences
    // of each arc label
    std::map<int, std::vector<int>> occ; // arc -> flattened half-edge ids
    auto he = [](int k, int arm) { return 4 * k + arm; };
    for (int k = 0; k < n; ++k)
        for (int arm = 0; arm < 4; ++arm)
            occ[crossings_[static_cast<std::size_t>(k)][arm]].push_back(he(k, arm));
    std::vector<int> alpha(static_cast<std::size_t>(4 * n));
    for (const auto& [arc, hs] : occ) {
        (void)arc;
        if (hs.size() != 2) return false;
        alpha[static_cast<std::size_t>(hs[0])] = hs[1];
        alpha[static_cast<std::size_t>(hs[1])] = hs[0];
    }
    // faces: orbits of sigma∘alpha with sigma the counterclockwise rotation
    std::vector<bool> seen(static_cast<std::size_t>(4 * n), false);
    int faces = 0;
    for (int h = 0; h < 4 * n; ++h) {
        if (seen[static_cast<std::size_t>(h)]) continue;
        ++faces;
        int cur = h;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = true;
            int a = alpha[static_cast<std::size_t>(cur)];
            cur = (a / 4) * 4 + (a % 4 + 1) % 4;
        }
    }
    // connected components of the crossing graph
    Dsu dsu(n);
    for (const auto& [arc, hs] : occ) {
        (void)arc;
        dsu.join(hs[0] / 4, hs[1] / 4);
    }
    std::set<int> comps;
    for (int k = 0; k < n; ++k) comps.insert(dsu.find(k));
    int k_comp = static_cast<int>(comps.size());
    // V - E + F = 1 + k on the sphere (components share the outer face)
    return n - 2 * n + faces == 1 + k_comp;
}

Diagram Diagram::mirrored() const {
    std::vector<Crossing> out;
    out.reserve(crossings_.size());
    for (int k = 0; k < crossing_count(); ++k) {
        const Crossing& c = crossings_[static_cast<std::size_t>(k)];
        if (over_in_b_[static_cast<std::size_t>(k)])
            out.push_back({{c[1], c[2], c[3], c[0]}});
        else
            out.push_back({{c[3], c[0], c[1], c[2]}});
    }
    return Diagram(std::move(out), free_arcs_, basepoint_);
}

Diagram Diagram::with_basepoint(int arc) const {
    return Diagram(crossings_, free_arcs_, arc);
}

Diagram Diagram::canonical() const {
    // traversal order: components by smallest arc, then strand order
    std::vector<int> order;
    std::vector<int> starts;
    {
        std::map<int, int> comp_min;
        for (int a : arcs_) {
            int c = component_of_.at(a);
            auto it = comp_min.find(c);
            if (it == comp_min.end() || a < it->second) comp_min[c] = a;
        }
        for (auto [c, m] : comp_min) starts.push_back(m);
        std::sort(starts.begin(), starts.end());
    }
    for (int s : starts)
        for (int a : component_arcs(s)) order.push_back(a);

    std::map<int, int> relabel;
    for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<int>(i) + 1;

    std::vector<Crossing> out;
    out.reserve(crossings_.size());
    for (const Crossing& c : crossings_)
        out.push_back({{relabel[c[0]], relabel[c[1]], relabel[c[2]], relabel[c[3]]}});
    std::sort(out.begin(), out.end());
    std::vector<int> free_out;
    for (int f : free_arcs_) free_out.push_back(relabel[f]);
    std::sort(free_out.begin(), free_out.end());
    return Diagram(std::move(out), std::move(free_out), relabel[basepoint_]);
}

std::string Diagram::render() const {
    std::vector<Crossing> cs = crossings_;
    std::sort(cs.begin(), cs.end());
    std::ostringstream os;
    bool first = true;
    for (const Crossing& c : cs) {
        if (!first) os << " ";
        first = false;
        os << "X(" << c[0] << "," << c[1] << "," << c[2] << "," << c[3] << ")";
    }
    for (int f : free_arcs_) {
        if (!first) os << " ";
        first = false;
        os << "O(" << f << ")";
    }
    return os.str();
}

bool Diagram::same_labelled_diagram(const Diagram& o) const {
    std::vector<Crossing> a = crossings_, b = o.crossings_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b && free_arcs_ == o.free_arcs_ && basepoint_ == o.basepoint_;
}

Crossing Diagram::make_crossing(int under_in, int under_out, int over_in, int over_out,
                                int sign) {
    if (sign > 0) return {{under_in, over_in, under_out, over_out}};
    return {{under_in, over_out, under_out, over_in}};
}

Diagram parse_pd(const std::string& text, int basepoint) {
    std::vector<Crossing> crossings;
    std::vector<int> free_arcs;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto parse_ints = [&](std::size_t off, char close) {
            std::vector<int> vals;
            if (tok.back() != close) fail(Err::MalformedPD, "bad term: " + tok);
            std::string body = tok.substr(off, tok.size() - off - 1);
            std::istringstream bs(body);
            std::string piece;
            while (std::getline(bs, piece, ',')) {
                try {
                    std::size_t used = 0;
                    int v = std::stoi(piece, &used);
                    if (used != piece.size()) throw std::invalid_argument(piece);
                    vals.push_back(v);
                } catch (const std::exception&) {
                    fail(Err::MalformedPD, "bad arc label in term: " + tok);
                }
            }
            return vals;
        };
        if (tok.rfind("X(", 0) == 0) {
            auto v = parse_ints(2, ')');
            if (v.size() != 4) fail(Err::MalformedPD, "crossing needs 4 arcs: " + tok);
            crossings.push_back({{v[0], v[1], v[2], v[3]}});
        } else if (tok.rfind("O(", 0) == 0) {
            auto v = parse_ints(2, ')');
            if (v.size() != 1) fail(Err::MalformedPD, "free circle needs 1 arc: " + tok);
            free_arcs.push_back(v[0]);
        } else {
            fail(Err::MalformedPD, "unrecognized term: " + tok);
        }
    }
    if (crossings.empty() && free_arcs.empty())
        fail(Err::MalformedPD, "empty diagram text (declare free circles with O(arc))");
    return Diagram(std::move(crossings), std::move(free_arcs), basepoint);
}

std::pair<int, int> crossing_signs(const Diagram& d) { return {d.n_plus(), d.n_minus()}; }

} // namespace khx
