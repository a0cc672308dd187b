#include "khx/moves.hpp"

#include <algorithm>
#include <sstream>

namespace khx {

const char* move_type_name(MoveType t) {
    switch (t) {
        case MoveType::Birth: return "birth";
        case MoveType::Death: return "death";
        case MoveType::Saddle: return "saddle";
        case MoveType::Dot: return "dot";
        case MoveType::R1Plus: return "r1+";
        case MoveType::R1Minus: return "r1-";
        case MoveType::R2Plus: return "r2+";
        case MoveType::R2Minus: return "r2-";
        case MoveType::R3: return "r3";
    }
    return "?";
}

std::string Move::describe() const {
    std::ostringstream os;
    os << move_type_name(type);
    switch (type) {
        case MoveType::Birth:
        case MoveType::Death:
        case MoveType::Dot:
        case MoveType::R1Minus:
        case MoveType::R3: os << "(" << arc << ")"; break;
        case MoveType::Saddle: os << "(" << arcs[0] << "," << arcs[1] << ")"; break;
        case MoveType::R1Plus: os << "(" << arc << ",sign=" << sign << ")"; break;
        case MoveType::R2Plus: os << "(" << over_arc << " over " << under_arc << ")"; break;
        case MoveType::R2Minus: os << "(" << arcs[0] << "," << arcs[1] << ")"; break;
    }
    return os.str();
}

namespace {

struct Occ {
    int crossing;
    int pos;
};

std::vector<Occ> occurrences(const Diagram& d, int arc) {
    std::vector<Occ> out;
    for (int k = 0; k < d.crossing_count(); ++k)
        for (int p = 0; p < 4; ++p)
            if (d.crossings()[static_cast<std::size_t>(k)][p] == arc) out.push_back({k, p});
    return out;
}

bool occ_is_head(const Diagram& d, Occ o) {
    bool x = d.over_in_b(o.crossing);
    return o.pos == 0 || (o.pos == 1 && x) || (o.pos == 3 && !x);
}

void require_fresh(const Diagram& d, int label, const char* what) {
    if (label <= 0)
        fail(Err::BadLocus, std::string(what) + ": new arc label must be positive");
    if (d.has_arc(label))
        fail(Err::BadLocus,
             std::string(what) + ": label " + std::to_string(label) + " already in use");
}

std::vector<Crossing> relabel(std::vector<Crossing> cs, int from, int to) {
    for (Crossing& c : cs)
        for (int p = 0; p < 4; ++p)
            if (c[p] == from) c[p] = to;
    return cs;
}

std::vector<int> identity_map(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
    return m;
}

// (in_arc, out_arc) of the under strand at crossing k
std::pair<int, int> under_passage(const Diagram& d, int k) {
    const Crossing& c = d.crossings()[static_cast<std::size_t>(k)];
    return {c[0], c[2]};
}
std::pair<int, int> over_passage(const Diagram& d, int k) {
    const Crossing& c = d.crossings()[static_cast<std::size_t>(k)];
    return d.over_in_b(k) ? std::pair<int, int>{c[1], c[3]} : std::pair<int, int>{c[3], c[1]};
}

MoveApplication apply_birth(const Diagram& src, const Move& mv) {
    require_fresh(src, mv.arc, "birth");
    std::vector<int> free = src.free_arcs();
    free.push_back(mv.arc);
    MoveApplication out{Diagram(src.crossings(), free, src.basepoint()),
                        Move{MoveType::Death}, identity_map(src.crossing_count())};
    out.reverse.arc = mv.arc;
    return out;
}

MoveApplication apply_death(const Diagram& src, const Move& mv) {
    if (!src.is_free_arc(mv.arc))
        fail(Err::BadLocus, "death: arc " + std::to_string(mv.arc) +
                                " is not a crossingless circle");
    if (mv.arc == src.basepoint())
        fail(Err::BadLocus, "death of the basepoint-carrying circle; mark a surviving arc");
    std::vector<int> free;
    for (int f : src.free_arcs())
        if (f != mv.arc) free.push_back(f);
    MoveApplication out{Diagram(src.crossings(), free, src.basepoint()),
                        Move{MoveType::Birth}, identity_map(src.crossing_count())};
    out.reverse.arc = mv.arc;
    return out;
}

MoveApplication apply_dot(const Diagram& src, const Move& mv) {
    if (!src.has_arc(mv.arc)) fail(Err::BadLocus, "dot: no such arc");
    MoveApplication out{src, Move{MoveType::Dot}, identity_map(src.crossing_count())};
    out.reverse.arc = mv.arc;
    return out;
}

MoveApplication apply_saddle(const Diagram& src, const Move& mv) {
    int r = mv.arcs[0], s = mv.arcs[1];
    if (!src.has_arc(r) || !src.has_arc(s)) fail(Err::BadLocus, "saddle: no such arc");
    MoveApplication out;
    out.crossing_map = identity_map(src.crossing_count());

    if (r == s) {
        // same-arc band: splits off a crossingless circle
        require_fresh(src, mv.new_arc, "saddle split");
        std::vector<int> free = src.free_arcs();
        free.push_back(mv.new_arc);
        out.result = Diagram(src.crossings(), free, src.basepoint());
        out.reverse = Move{MoveType::Saddle};
        out.reverse.arcs = {r, mv.new_arc};
        return out;
    }
    bool rf = src.is_free_arc(r), sf = src.is_free_arc(s);
    if (rf || sf) {
        // absorb a crossingless circle into the other arc
        int keep = rf && !sf ? s : r;
        int drop = keep == r ? s : r;
        if (!src.is_free_arc(drop))
            fail(Err::BadLocus, "saddle: internal orientation of band feet");
        std::vector<int> free;
        for (int f : src.free_arcs())
            if (f != drop) free.push_back(f);
        int bp = src.basepoint() == drop ? keep : src.basepoint();
        out.result = Diagram(src.crossings(), free, bp);
        out.reverse = Move{MoveType::Saddle};
        out.reverse.arcs = {keep, keep};
        out.reverse.new_arc = drop;
        return out;
    }
    // oriented reconnection: swap the head occurrences of r and s
    Occ hr{-1, -1}, hs{-1, -1};
    for (Occ o : occurrences(src, r))
        if (occ_is_head(src, o)) hr = o;
    for (Occ o : occurrences(src, s))
        if (occ_is_head(src, o)) hs = o;
    if (hr.crossing < 0 || hs.crossing < 0) fail(Err::Internal, "saddle: head not found");
    std::vector<Crossing> cs = src.crossings();
    cs[static_cast<std::size_t>(hr.crossing)][hr.pos] = s;
    cs[static_cast<std::size_t>(hs.crossing)][hs.pos] = r;
    out.result = Diagram(std::move(cs), src.free_arcs(), src.basepoint());
    out.reverse = Move{MoveType::Saddle};
    out.reverse.arcs = {r, s};
    return out;
}

MoveApplication apply_r1plus(const Diagram& src, const Move& mv) {
    int a = mv.arc;
    if (!src.has_arc(a)) fail(Err::BadLocus, "r1+: no such arc");
    bool a_free = src.is_free_arc(a);
    std::size_t need = a_free ? 1 : 2;
    if (mv.new_arcs.size() != need)
        fail(Err::BadLocus, "r1+: expected " + std::to_string(need) + " new arc labels");
    int loop = mv.new_arcs[0];
    int outp = a_free ? a : mv.new_arcs[1];
    require_fresh(src, loop, "r1+");
    if (!a_free) {
        require_fresh(src, outp, "r1+");
        if (outp == loop) fail(Err::BadLocus, "r1+: new labels must be distinct");
    }

    std::vector<Crossing> cs = src.crossings();
    if (!a_free) {
        Occ head{-1, -1};
        for (Occ o : occurrences(src, a))
            if (occ_is_head(src, o)) head = o;
        cs[static_cast<std::size_t>(head.crossing)][head.pos] = outp;
    }
    Crossing kink;
    if (!mv.over_first)
        kink = mv.sign > 0 ? Crossing{{a, loop, loop, outp}} : Crossing{{a, outp, loop, loop}};
    else
        kink = mv.sign > 0 ? Crossing{{loop, a, outp, loop}} : Crossing{{loop, loop, outp, a}};
    cs.push_back(kink);

    std::vector<int> free;
    for (int f : src.free_arcs())
        if (f != a) free.push_back(f);

    MoveApplication out;
    out.result = Diagram(std::move(cs), free, src.basepoint());
    out.crossing_map = identity_map(src.crossing_count());
    out.reverse = Move{MoveType::R1Minus};
    out.reverse.arc = loop;
    return out;
}

MoveApplication apply_r1minus(const Diagram& src, const Move& mv) {
    int loop = mv.arc;
    auto occ = occurrences(src, loop);
    if (occ.size() != 2 || occ[0].crossing != occ[1].crossing)
        fail(Err::BadLocus, "r1-: arc is not the loop of a kink");
    int k = occ[0].crossing;
    int p = std::min(occ[0].pos, occ[1].pos), q = std::max(occ[0].pos, occ[1].pos);
    if ((p == 0 && q == 2) || (p == 1 && q == 3))
        fail(Err::BadLocus, "r1-: arc passes twice on the same level (not a kink)");

    const Crossing& c = src.crossings()[static_cast<std::size_t>(k)];
    std::vector<int> others;
    for (int pos = 0; pos < 4; ++pos)
        if (pos != p && pos != q) others.push_back(pos);
    Occ o1{k, others[0]}, o2{k, others[1]};
    int in_arc = occ_is_head(src, o1) ? c[o1.pos] : c[o2.pos];
    int out_arc = occ_is_head(src, o1) ? c[o2.pos] : c[o1.pos];

    // reverse parameters from the loop's slot pattern
    Move rev{MoveType::R1Plus};
    rev.arc = in_arc;
    if (p == 1 && q == 2) {
        rev.sign = 1;
        rev.over_first = false;
    } else if (p == 2 && q == 3) {
        rev.sign = -1;
        rev.over_first = false;
    } else if (p == 0 && q == 3) {
        rev.sign = 1;
        rev.over_first = true;
    } else { // (0,1)
        rev.sign = -1;
        rev.over_first = true;
    }
    rev.new_arcs = {loop};
    if (in_arc != out_arc) rev.new_arcs.push_back(out_arc);

    std::vector<Crossing> cs;
    std::vector<int> cmap(static_cast<std::size_t>(src.crossing_count()), -1);
    for (int i = 0; i < src.crossing_count(); ++i) {
        if (i == k) continue;
        cmap[static_cast<std::size_t>(i)] = static_cast<int>(cs.size());
        cs.push_back(src.crossings()[static_cast<std::size_t>(i)]);
    }
    std::vector<int> free = src.free_arcs();
    int bp = src.basepoint();
    if (in_arc == out_arc) {
        free.push_back(in_arc);
        std::sort(free.begin(), free.end());
    } else {
        cs = relabel(std::move(cs), out_arc, in_arc);
        if (bp == out_arc) bp = in_arc;
    }
    if (bp == loop) bp = in_arc;

    MoveApplication out;
    out.result = Diagram(std::move(cs), free, bp);
    out.crossing_map = std::move(cmap);
    out.reverse = rev;
    return out;
}

MoveApplication apply_r2plus(const Diagram& src, const Move& mv) {
    int o = mv.over_arc, u = mv.under_arc;
    if (o == u) fail(Err::BadLocus, "r2+: self-poke is not supported; use distinct arcs");
    if (!src.has_arc(o) || !src.has_arc(u)) fail(Err::BadLocus, "r2+: no such arc");
    bool of = src.is_free_arc(o), uf = src.is_free_arc(u);
    std::size_t need = (of ? 1u : 2u) + (uf ? 1u : 2u);
    if (mv.new_arcs.size() != need)
        fail(Err::BadLocus, "r2+: expected " + std::to_string(need) + " new arc labels");
    std::size_t idx = 0;
    int m1 = mv.new_arcs[idx++];
    int m2 = of ? o : mv.new_arcs[idx++];
    int n1 = mv.new_arcs[idx++];
    int n2 = uf ? u : mv.new_arcs[idx++];
    for (int lbl : mv.new_arcs) require_fresh(src, lbl, "r2+");
    {
        std::vector<int> uniq = mv.new_arcs;
        std::sort(uniq.begin(), uniq.end());
        if (std::adjacent_find(uniq.begin(), uniq.end()) != uniq.end())
            fail(Err::BadLocus, "r2+: new labels must be distinct");
    }

    std::vector<Crossing> cs = src.crossings();
    auto relabel_head = [&](int arc, int to) {
        for (Occ oc : occurrences(src, arc))
            if (occ_is_head(src, oc)) cs[static_cast<std::size_t>(oc.crossing)][oc.pos] = to;
    };
    if (!of) relabel_head(o, m2);
    if (!uf) relabel_head(u, n2);

    int s1 = mv.first_sign, s2 = -mv.first_sign;
    Crossing cfirst, csecond;
    if (mv.same_first) {
        cfirst = Diagram::make_crossing(u, n1, o, m1, s1);
        csecond = Diagram::make_crossing(n1, n2, m1, m2, s2);
    } else {
        cfirst = Diagram::make_crossing(u, n1, m1, m2, s1);
        csecond = Diagram::make_crossing(n1, n2, o, m1, s2);
    }
    cs.push_back(cfirst);
    cs.push_back(csecond);

    std::vector<int> free;
    for (int f : src.free_arcs())
        if (f != o && f != u) free.push_back(f);

    MoveApplication out;
    out.result = Diagram(std::move(cs), free, src.basepoint());
    out.crossing_map = identity_map(src.crossing_count());
    out.reverse = Move{MoveType::R2Minus};
    out.reverse.arcs = {m1, n1};
    return out;
}

MoveApplication apply_r2minus(const Diagram& src, const Move& mv) {
    int om = mv.arcs[0], um = mv.arcs[1];
    if (om == um) fail(Err::BadLocus, "r2-: middle arcs must be distinct");
    auto occ_u = occurrences(src, um), occ_o = occurrences(src, om);
    if (occ_u.size() != 2 || occ_o.size() != 2) fail(Err::BadLocus, "r2-: no such arcs");
    if (occ_u[0].crossing == occ_u[1].crossing || occ_o[0].crossing == occ_o[1].crossing)
        fail(Err::BadLocus, "r2-: middle arcs must join two distinct crossings");
    int c1 = occ_u[0].crossing, c2 = occ_u[1].crossing;
    if (!((occ_o[0].crossing == c1 && occ_o[1].crossing == c2) ||
          (occ_o[0].crossing == c2 && occ_o[1].crossing == c1)))
        fail(Err::BadLocus, "r2-: the two middle arcs span different crossing pairs");
    for (Occ oc : occ_u)
        if (oc.pos != 0 && oc.pos != 2) fail(Err::BadLocus, "r2-: under middle is not under");
    for (Occ oc : occ_o)
        if (oc.pos != 1 && oc.pos != 3) fail(Err::BadLocus, "r2-: over middle is not over");
    if (src.sign(c1) != -src.sign(c2))
        fail(Err::BadLocus, "r2-: crossings do not have opposite signs");

    // under flow: um leaves its first crossing and enters its second
    int cf = um == under_passage(src, c1).second ? c1 : c2; // first along the under strand
    int csnd = cf == c1 ? c2 : c1;
    if (under_passage(src, cf).second != um || under_passage(src, csnd).first != um)
        fail(Err::BadLocus, "r2-: under middle is not a through strand");
    int u_in = under_passage(src, cf).first;
    int u_out = under_passage(src, csnd).second;

    int of = om == over_passage(src, c1).second ? c1 : c2; // first along the over strand
    int osnd = of == c1 ? c2 : c1;
    if (over_passage(src, of).second != om || over_passage(src, osnd).first != om)
        fail(Err::BadLocus, "r2-: over middle is not a through strand");
    int o_in = over_passage(src, of).first;
    int o_out = over_passage(src, osnd).second;

    for (int piece : {u_in, u_out})
        if (piece == o_in || piece == o_out || piece == om)
            fail(Err::BadLocus, "r2-: unsupported strand sharing at the bigon");
    if (o_in == um || o_out == um) fail(Err::BadLocus, "r2-: unsupported strand sharing");

    std::vector<Crossing> cs;
    std::vector<int> cmap(static_cast<std::size_t>(src.crossing_count()), -1);
    for (int i = 0; i < src.crossing_count(); ++i) {
        if (i == c1 || i == c2) continue;
        cmap[static_cast<std::size_t>(i)] = static_cast<int>(cs.size());
        cs.push_back(src.crossings()[static_cast<std::size_t>(i)]);
    }
    std::vector<int> free = src.free_arcs();
    int bp = src.basepoint();
    if (u_in == u_out) {
        free.push_back(u_in);
    } else {
        cs = relabel(std::move(cs), u_out, u_in);
        if (bp == u_out) bp = u_in;
    }
    if (o_in == o_out) {
        free.push_back(o_in);
    } else {
        cs = relabel(std::move(cs), o_out, o_in);
        if (bp == o_out) bp = o_in;
    }
    std::sort(free.begin(), free.end());
    if (bp == um) bp = u_in;
    if (bp == om) bp = o_in;

    Move rev{MoveType::R2Plus};
    rev.over_arc = o_in;
    rev.under_arc = u_in;
    rev.same_first = (of == cf);
    rev.first_sign = src.sign(cf);
    rev.new_arcs = {om};
    if (o_in != o_out) rev.new_arcs.push_back(o_out);
    rev.new_arcs.push_back(um);
    if (u_in != u_out) rev.new_arcs.push_back(u_out);

    MoveApplication out;
    out.result = Diagram(std::move(cs), free, bp);
    out.crossing_map = std::move(cmap);
    out.reverse = rev;
    return out;
}

MoveApplication apply_r3(const Diagram& src, const Move& mv) {
    int t = mv.arc;
    auto occ_t = occurrences(src, t);
    if (occ_t.size() != 2 || occ_t[0].crossing == occ_t[1].crossing)
        fail(Err::BadLocus, "r3: sliding arc must join two distinct crossings");
    int x1 = occ_t[0].crossing, x2 = occ_t[1].crossing;
    auto is_over_pos = [](int p) { return p == 1 || p == 3; };
    bool a_over = is_over_pos(occ_t[0].pos);
    if (a_over != is_over_pos(occ_t[1].pos))
        fail(Err::BadLocus, "r3: sliding strand must pass on one level over both crossings");

    auto strand_passage = [&](int k, bool over) {
        return over ? over_passage(src, k) : under_passage(src, k);
    };
    // the crossed strands at x1 (strand B) and x2 (strand C)
    auto bp1 = strand_passage(x1, !a_over);
    auto cp2 = strand_passage(x2, !a_over);

    // locate the third crossing joining B and C
    int x3 = -1, e_b = 0, e_c = 0;
    for (int arc_b : {bp1.first, bp1.second})
        for (int arc_c : {cp2.first, cp2.second}) {
            if (arc_b == arc_c) continue;
            for (int k = 0; k < src.crossing_count(); ++k) {
                if (k == x1 || k == x2) continue;
                const Crossing& c = src.crossings()[static_cast<std::size_t>(k)];
                bool has_b = false, has_c = false;
                for (int p = 0; p < 4; ++p) {
                    if (c[p] == arc_b) has_b = true;
                    if (c[p] == arc_c) has_c = true;
                }
                if (has_b && has_c) {
                    if (mv.crossing_hint >= 0 && k != mv.crossing_hint) continue;
                    if (x3 >= 0 && (x3 != k || e_b != arc_b || e_c != arc_c))
                        fail(Err::BadLocus, "r3: ambiguous triangle; give a crossing hint");
                    x3 = k;
                    e_b = arc_b;
                    e_c = arc_c;
                }
            }
        }
    if (x3 < 0) fail(Err::BadLocus, "r3: no triangle found for the sliding arc");

    // strand descriptors: boundary arcs, middle arc, crossing order
    struct Strand {
        int first, second; // crossings in strand order
        int in, mid, out;
    };
    auto make_strand = [&](int mid, int y1, int y2, bool over_at_y1, bool over_at_y2) {
        auto p1 = strand_passage(y1, over_at_y1);
        auto p2 = strand_passage(y2, over_at_y2);
        Strand s;
        s.mid = mid;
        if (p1.second == mid) {
            if (p2.first != mid) fail(Err::BadLocus, "r3: strand does not flow through");
            s.first = y1;
            s.second = y2;
            s.in = p1.first;
            s.out = p2.second;
        } else {
            if (p1.first != mid || p2.second != mid)
                fail(Err::BadLocus, "r3: strand does not flow through");
            s.first = y2;
            s.second = y1;
            s.in = p2.first;
            s.out = p1.second;
        }
        return s;
    };

    // over/under role of B and C at x3 from the slots of e_b
    bool b_over_x3;
    {
        const Crossing& c3 = src.crossings()[static_cast<std::size_t>(x3)];
        int pos = -1;
        for (int p = 0; p < 4; ++p)
            if (c3[p] == e_b) pos = p;
        b_over_x3 = is_over_pos(pos);
        // e_c must occupy the complementary strand
        int posc = -1;
        for (int p = 0; p < 4; ++p)
            if (c3[p] == e_c) posc = p;
        if (is_over_pos(posc) == b_over_x3)
            fail(Err::BadLocus, "r3: triangle arcs share one strand of the far crossing");
    }

    Strand A = make_strand(t, x1, x2, a_over, a_over);
    Strand B = make_strand(e_b, x1, x3, !a_over, b_over_x3);
    Strand C = make_strand(e_c, x2, x3, !a_over, !b_over_x3);

    // after the slide every strand's crossing order reverses
    auto after_passage = [&](const Strand& s, int y) {
        // new path: in -> s.second -> mid -> s.first -> out
        if (y == s.second) return std::pair<int, int>{s.in, s.mid};
        return std::pair<int, int>{s.mid, s.out};
    };

    std::vector<Crossing> cs = src.crossings();
    auto rebuild = [&](int y, const Strand& u_str, const Strand& o_str) {
        auto up = after_passage(u_str, y);
        auto op = after_passage(o_str, y);
        cs[static_cast<std::size_t>(y)] =
            Diagram::make_crossing(up.first, up.second, op.first, op.second, src.sign(y));
    };
    if (a_over) {
        rebuild(x1, B, A);
        rebuild(x2, C, A);
    } else {
        rebuild(x1, A, B);
        rebuild(x2, A, C);
    }
    if (b_over_x3)
        rebuild(x3, C, B);
    else
        rebuild(x3, B, C);

    MoveApplication out;
    out.result = Diagram(std::move(cs), src.free_arcs(), src.basepoint());
    out.crossing_map = identity_map(src.crossing_count());
    // the three rebuilt crossings are local to the move: chain maps need
    // not preserve their cube coordinates
    out.crossing_map[static_cast<std::size_t>(x1)] = -1;
    out.crossing_map[static_cast<std::size_t>(x2)] = -1;
    out.crossing_map[static_cast<std::size_t>(x3)] = -1;
    out.reverse = Move{MoveType::R3};
    out.reverse.arc = t;
    out.reverse.crossing_hint = x3;
    return out;
}

} // namespace

MoveApplication apply_move(const Diagram& src, const Move& mv) {
    switch (mv.type) {
        case MoveType::Birth: return apply_birth(src, mv);
        case MoveType::Death: return apply_death(src, mv);
        case MoveType::Saddle: return apply_saddle(src, mv);
        case MoveType::Dot: return apply_dot(src, mv);
        case MoveType::R1Plus: return apply_r1plus(src, mv);
        case MoveType::R1Minus: return apply_r1minus(src, mv);
        case MoveType::R2Plus: return apply_r2plus(src, mv);
        case MoveType::R2Minus: return apply_r2minus(src, mv);
        case MoveType::R3: return apply_r3(src, mv);
    }
    fail(Err::Internal, "unhandled move type");
}

} // namespace khx
