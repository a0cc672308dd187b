#include "khx/verify.hpp"

#include <sstream>

namespace khx {

namespace {

Poly two_x_power(int k) {
    return Poly::monomial(Fp(2).pow(static_cast<std::uint64_t>(k)), k);
}

ChainMap rebind(const ChainMap& f, const Complex& src, const Complex& tgt) {
    if (!f.src->diagram().same_labelled_diagram(src.diagram()) ||
        !f.tgt->diagram().same_labelled_diagram(tgt.diagram()))
        fail(Err::Internal, "rebind between different diagrams");
    ChainMap g = f;
    g.src = &src;
    g.tgt = &tgt;
    return g;
}

bool is_pm1(Fp c) { return c == Fp(1) || c == Fp(-1); }

bool same_saddle(const Move& a, const Move& b) {
    if (a.type != MoveType::Saddle || b.type != MoveType::Saddle) return false;
    bool arcs_match = (a.arcs[0] == b.arcs[0] && a.arcs[1] == b.arcs[1]) ||
                      (a.arcs[0] == b.arcs[1] && a.arcs[1] == b.arcs[0]);
    return arcs_match && a.new_arc == b.new_arc;
}

Movie surgered_movie(const Movie& mov, std::size_t idx, std::optional<int> dot_arc) {
    // drop moves idx and idx+1 (frames idx+1, idx+2); optionally insert a
    // dot on the surviving frame
    std::vector<Diagram> frames;
    std::vector<Move> moves;
    for (std::size_t k = 0; k <= idx; ++k) frames.push_back(mov.frames()[k]);
    for (std::size_t k = 0; k < idx; ++k) moves.push_back(mov.moves()[k]);
    if (dot_arc) {
        Move dot{MoveType::Dot};
        dot.arc = *dot_arc;
        moves.push_back(dot);
        frames.push_back(mov.frames()[idx]);
    }
    for (std::size_t k = idx + 3; k < mov.frames().size(); ++k) frames.push_back(mov.frames()[k]);
    for (std::size_t k = idx + 2; k < mov.moves().size(); ++k) moves.push_back(mov.moves()[k]);
    return Movie::validate(std::move(frames), std::move(moves));
}

CheckReport neck_core(const Movie& mov, std::size_t idx, const char* name, Err precondition_err) {
    if (idx + 1 >= mov.length())
        fail(precondition_err, "no adjacent saddle pair at index " + std::to_string(idx));
    const Move& first = mov.moves()[idx];
    const Move& second = mov.moves()[idx + 1];
    if (first.type != MoveType::Saddle || second.type != MoveType::Saddle)
        fail(precondition_err, "moves " + std::to_string(idx) + "," + std::to_string(idx + 1) +
                                   " are not saddles");
    if (!same_saddle(mov.reverse_move(idx), second))
        fail(precondition_err, "the saddles are not reverse to each other");
    if (!mov.frames()[idx].same_labelled_diagram(mov.frames()[idx + 2]))
        fail(precondition_err, "handle does not return to its source frame");

    int foot1 = first.arcs[0], foot2 = first.arcs[1];

    MapCache cache;
    MovieComputation full(mov, &cache);
    Movie m1 = surgered_movie(mov, idx, foot1);
    Movie m2 = surgered_movie(mov, idx, foot2);
    MovieComputation c1(m1, &cache);
    MovieComputation c2(m2, &cache);

    const Complex& src = full.complex_at(0);
    const Complex& tgt = full.complex_at(mov.frames().size() - 1);
    const HomologyData& h0 = full.homology_at(0);
    const HomologyData& h1 = full.homology_at(mov.frames().size() - 1);

    HomologyMap lhs = induced_map(full.total_map(), h0, h1);
    ChainMap f1 = rebind(c1.total_map(), src, tgt);
    ChainMap f2 = rebind(c2.total_map(), src, tgt);
    HomologyMap rhs = add(induced_map(f1, h0, h1), induced_map(f2, h0, h1));

    ScalarCompare cmp = compare_up_to_unit(lhs, rhs);
    CheckReport rep;
    rep.name = name;
    rep.pass = cmp.proportional;
    rep.unit_scalar = cmp.scalar;
    rep.scalar_is_pm1 = cmp.proportional && is_pm1(cmp.scalar);
    std::ostringstream os;
    os << "handle at move " << idx << ", feet arcs (" << foot1 << ", " << foot2 << ")";
    if (cmp.proportional) os << ", scalar " << cmp.scalar.value();
    rep.details = os.str();
    return rep;
}

} // namespace

CheckReport verify_mirror_composite(const Movie& mov) {
    const MovieStats& st = mov.stats();
    if (!st.connected)
        fail(Err::NotConnected, "the composite identity applies to connected cobordisms");
    if (!mov.morse_canonically_ordered())
        fail(Err::MovieOutOfOrder,
             "Morse events must come ordered births, saddles, deaths (rearrange the movie)");
    if (st.genus < 0) fail(Err::Internal, "odd Euler defect on a connected knot cobordism");

    MapCache cache;
    MovieComputation fw(mov, &cache);
    Movie mirror = mov.mirrored();
    MovieComputation bw(mirror, &cache);

    const Complex& c0 = fw.complex_at(0);
    const Complex& c1 = fw.complex_at(mov.frames().size() - 1);
    ChainMap back = rebind(bw.total_map(), c1, c0);
    ChainMap round = compose(back, fw.total_map());

    const HomologyData& h0 = fw.homology_at(0);
    HomologyMap lhs = scale(induced_map(round, h0, h0), two_x_power(st.deaths));
    HomologyMap rhs = scale(identity_homology_map(h0), two_x_power(st.saddles - st.births));

    ScalarCompare cmp = compare_up_to_unit(lhs, rhs);
    CheckReport rep;
    rep.name = "mirror-identity";
    rep.pass = cmp.proportional;
    rep.unit_scalar = cmp.scalar;
    rep.scalar_is_pm1 = cmp.proportional && is_pm1(cmp.scalar);
    std::ostringstream os;
    os << "(m,b,M)=(" << st.births << "," << st.saddles << "," << st.deaths << "), genus "
       << st.genus;
    if (cmp.proportional) os << ", scalar " << cmp.scalar.value();
    rep.details = os.str();
    return rep;
}

CheckReport verify_neck_cutting(const Movie& mov, std::size_t handle_index) {
    return neck_core(mov, handle_index, "neck", Err::NoSuchHandle);
}

CheckReport verify_reverse_saddles(const Movie& mov, std::size_t index) {
    return neck_core(mov, index, "reverse-saddles", Err::NotReversePair);
}

std::vector<std::size_t> find_reverse_saddle_pairs(const Movie& mov) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k + 1 < mov.length(); ++k) {
        if (mov.moves()[k].type != MoveType::Saddle) continue;
        if (mov.moves()[k + 1].type != MoveType::Saddle) continue;
        if (same_saddle(mov.reverse_move(k), mov.moves()[k + 1]) &&
            mov.frames()[k].same_labelled_diagram(mov.frames()[k + 2]))
            out.push_back(k);
    }
    return out;
}

CheckReport verify_ribbon_injectivity(const Movie& mov) {
    if (!mov.is_ribbon())
        fail(Err::MoveNotApplicable,
             "movie is not ribbon (births then fusion saddles, no deaths or dots)");
    MovieComputation comp(mov);
    const HomologyData& h0 = comp.homology_at(0);
    const HomologyData& h1 = comp.homology_at(mov.frames().size() - 1);
    HomologyMap f = induced_map(comp.total_map(), h0, h1);
    CheckReport rep;
    rep.name = "ribbon";
    rep.pass = homology_map_injective(f);
    rep.unit_scalar = Fp(1);
    rep.scalar_is_pm1 = true;
    rep.details = rep.pass ? "induced map has trivial kernel" : "kernel detected";
    return rep;
}

namespace {

// x^b truncation of a decomposed module: free coordinates stay free,
// torsion exponents drop by b (dead at zero).
std::vector<int> truncated_exponents(const PresentedModule& m, int b) {
    std::vector<int> out;
    for (int e : m.coordinate_exponents())
        out.push_back(e < 0 ? -1 : std::max(e - b, 0));
    return out;
}

} // namespace

BoundsReport cobordism_bounds(const Diagram& k, const Movie* mov) {
    BoundsReport rep;
    HomologyResult hk = homology(Complex::build(k));
    rep.xo_source = hk.xo;
    if (!mov) return rep;

    // orient the movie so that k is its source
    Movie oriented = *mov;
    std::string kc = k.canonical().render();
    if (mov->source().canonical().render() == kc) {
        // already oriented
    } else if (mov->target().canonical().render() == kc) {
        oriented = mov->mirrored();
    } else {
        fail(Err::BadLocus, "diagram is not an endpoint of the movie");
    }

    rep.has_movie = true;
    const MovieStats& st = oriented.stats();
    rep.births = st.births;
    rep.saddles = st.saddles;
    rep.deaths = st.deaths;
    rep.connected = st.connected;
    rep.genus = st.genus;

    HomologyResult h1 = homology(Complex::build(oriented.target()));
    rep.xo_target = h1.xo;

    if (st.connected && st.genus >= 0) {
        rep.corollary_genus_checked = true;
        rep.corollary_lhs = rep.xo_source;
        rep.corollary_rhs = std::max(st.deaths, h1.xo) + 2 * st.genus;
        rep.corollary_holds = rep.corollary_lhs <= rep.corollary_rhs;
    }

    // band-unlinking witness: no births, Morse order, and after the last
    // saddle only Reidemeister moves and deaths, ending in the unknot
    if (st.births == 0 && oriented.morse_canonically_ordered()) {
        bool tail_ok = true;
        bool saddle_region_done = false;
        for (const Move& m : oriented.moves()) {
            if (m.type == MoveType::Saddle) {
                if (saddle_region_done) tail_ok = false;
            } else if (m.type == MoveType::Death) {
                saddle_region_done = true;
            } else if (m.type == MoveType::Dot) {
                tail_ok = false;
            }
        }
        bool target_unknot = h1.free_rank_total == 1 && h1.torsion_exponents_total.empty();
        rep.unlinking_witness = tail_ok && target_unknot;
    }

    // concordance: φ restricts to an isomorphism on (2x)^b images
    if (st.connected && st.genus == 0) {
        rep.concordance_checked = true;
        MovieComputation comp(oriented);
        const HomologyData& h0d = comp.homology_at(0);
        const HomologyData& h1d = comp.homology_at(oriented.frames().size() - 1);
        HomologyMap f = induced_map(comp.total_map(), h0d, h1d);
        bool iso = true;
        int b = st.saddles;
        for (int i = h0d.min_i(); i <= h0d.max_i(); ++i) {
            bool s_has = h0d.has_degree(i) && h0d.degree(i).module->gens() > 0;
            bool t_has = h1d.has_degree(i) && h1d.degree(i).module->gens() > 0;
            if (!s_has && !t_has) continue;
            PresentedModule ms =
                s_has ? PresentedModule::diagonal(truncated_exponents(*h0d.degree(i).module, b))
                      : PresentedModule::diagonal({});
            PresentedModule mt =
                t_has ? PresentedModule::diagonal(truncated_exponents(*h1d.degree(i).module, b))
                      : PresentedModule::diagonal({});
            PolyMat mat = t_has && s_has ? f.decomposed_block(i)
                                         : PolyMat(mt.gens(), ms.gens());
            ModuleMap mm{&ms, &mt, mat};
            check_well_defined(mm);
            if (!kernel_is_trivial(mm) || !cokernel_is_trivial(mm)) iso = false;
        }
        rep.concordance_iso = iso;
    }
    return rep;
}

} // namespace khx
