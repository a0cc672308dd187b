#include "khx/chainmap.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace khx {

PolyMat diff_or_zero(const Complex& c, int i) {
    const PolyMat& d = c.differential(i);
    if (d.rows() == 0 && d.cols() == 0) return PolyMat(c.dim(i + 1), c.dim(i));
    return d;
}

PolyMat ChainMap::block(int i) const {
    auto it = blocks.find(i);
    if (it != blocks.end()) return it->second;
    return PolyMat(tgt->dim(i), src->dim(i));
}

void ChainMap::verify() const {
    int lo = std::min(src->min_i(), tgt->min_i());
    int hi = std::max(src->max_i(), tgt->max_i());
    for (int i = lo; i <= hi; ++i) {
        PolyMat lhs = diff_or_zero(*tgt, i) * block(i);
        PolyMat rhs = block(i + 1) * diff_or_zero(*src, i);
        if (!(lhs == rhs))
            fail(Err::NotAChainMap, "chain property fails at degree " + std::to_string(i));
        // homogeneity
        PolyMat b = block(i);
        auto gs = src->grades(i);
        auto gt = tgt->grades(i);
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) {
                const Poly& e = b.at(r, c);
                if (e.is_zero()) continue;
                if (!e.is_monomial())
                    fail(Err::NotAChainMap, "inhomogeneous (non-monomial) block entry");
                if (gt[r].j - 2 * e.degree() - gs[c].j != j_degree)
                    fail(Err::NotAChainMap, "block entry of wrong j-degree");
            }
    }
}

ChainMap identity_chain_map(const Complex& c) {
    ChainMap f;
    f.src = f.tgt = &c;
    f.j_degree = 0;
    for (int i = c.min_i(); i <= c.max_i(); ++i)
        if (c.dim(i)) f.blocks[i] = PolyMat::identity(c.dim(i));
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (g.src != f.tgt) fail(Err::Internal, "chain map composition mismatch");
    ChainMap h;
    h.src = f.src;
    h.tgt = g.tgt;
    h.j_degree = g.j_degree + f.j_degree;
    int lo = std::min(f.src->min_i(), g.tgt->min_i());
    int hi = std::max(f.src->max_i(), g.tgt->max_i());
    for (int i = lo; i <= hi; ++i) {
        if (h.tgt->dim(i) == 0 || h.src->dim(i) == 0) continue;
        h.blocks[i] = g.block(i) * f.block(i);
    }
    return h;
}

ChainMap add(const ChainMap& f, const ChainMap& g) {
    if (f.src != g.src || f.tgt != g.tgt || f.j_degree != g.j_degree)
        fail(Err::Internal, "chain map sum mismatch");
    ChainMap h;
    h.src = f.src;
    h.tgt = f.tgt;
    h.j_degree = f.j_degree;
    int lo = std::min(f.src->min_i(), f.tgt->min_i());
    int hi = std::max(f.src->max_i(), f.tgt->max_i());
    for (int i = lo; i <= hi; ++i) {
        if (f.tgt->dim(i) == 0 || f.src->dim(i) == 0) continue;
        h.blocks[i] = f.block(i) + g.block(i);
    }
    return h;
}

ChainMap scale(const ChainMap& f, const Poly& mono) {
    if (!mono.is_monomial() && !mono.is_zero())
        fail(Err::Internal, "chain maps scale by monomials only");
    ChainMap h;
    h.src = f.src;
    h.tgt = f.tgt;
    h.j_degree = f.j_degree - 2 * (mono.is_zero() ? 0 : mono.degree());
    for (const auto& [i, b] : f.blocks) h.blocks[i] = b.scaled(mono);
    return h;
}

std::map<int, ModuleDecomposition> complex_homology(const std::map<int, std::size_t>& dims,
                                                    const std::map<int, PolyMat>& diffs) {
    auto dim_at = [&](int i) -> std::size_t {
        auto it = dims.find(i);
        return it == dims.end() ? 0 : it->second;
    };
    auto diff_at = [&](int i) -> PolyMat {
        auto it = diffs.find(i);
        if (it != diffs.end()) return it->second;
        return PolyMat(dim_at(i + 1), dim_at(i));
    };
    std::map<int, ModuleDecomposition> out;
    for (const auto& [i, n] : dims) {
        if (n == 0) continue;
        SnfOptions opts;
        opts.need_u = false;
        opts.need_v = true;
        opts.need_v_inv = true;
        SmithForm sf = snf(diff_at(i), opts);
        std::size_t kappa = n - sf.rank;
        PolyMat w = sf.v_inv * diff_at(i - 1);
        for (std::size_t r = 0; r < sf.rank; ++r)
            for (std::size_t c = 0; c < w.cols(); ++c)
                if (!w.at(r, c).is_zero())
                    fail(Err::Internal, "image escapes kernel in abstract complex");
        PolyMat rel = row_slice(w, sf.rank, n);
        (void)kappa;
        out[i] = PresentedModule::from_relations(rel).decomposition();
    }
    return out;
}

bool cone_is_acyclic(const ChainMap& f) {
    // Cone^i = tgt^i ⊕ src^{i+1}, d = [[d_tgt, f],[0, -d_src]]
    std::map<int, std::size_t> dims;
    std::map<int, PolyMat> diffs;
    int lo = std::min(f.tgt->min_i(), f.src->min_i() - 1);
    int hi = std::max(f.tgt->max_i(), f.src->max_i() - 1);
    for (int i = lo; i <= hi; ++i) {
        std::size_t n = f.tgt->dim(i) + f.src->dim(i + 1);
        if (n) dims[i] = n;
    }
    for (int i = lo; i <= hi; ++i) {
        std::size_t rows = f.tgt->dim(i + 1) + f.src->dim(i + 2);
        std::size_t cols = f.tgt->dim(i) + f.src->dim(i + 1);
        if (!rows || !cols) continue;
        PolyMat d(rows, cols);
        PolyMat dt = diff_or_zero(*f.tgt, i);
        PolyMat ds = diff_or_zero(*f.src, i + 1);
        PolyMat fb = f.block(i + 1);
        for (std::size_t r = 0; r < dt.rows(); ++r)
            for (std::size_t c = 0; c < dt.cols(); ++c) d.at(r, c) = dt.at(r, c);
        for (std::size_t r = 0; r < fb.rows(); ++r)
            for (std::size_t c = 0; c < fb.cols(); ++c)
                d.at(r, f.tgt->dim(i) + c) = fb.at(r, c);
        for (std::size_t r = 0; r < ds.rows(); ++r)
            for (std::size_t c = 0; c < ds.cols(); ++c)
                d.at(f.tgt->dim(i + 1) + r, f.tgt->dim(i) + c) = -ds.at(r, c);
        diffs[i] = std::move(d);
    }
    for (const auto& [i, dec] : complex_homology(dims, diffs)) {
        (void)i;
        if (dec.free_rank != 0 || !dec.torsion_exponents.empty()) return false;
    }
    return true;
}

// ----- induced maps -----

PolyMat HomologyMap::block(int i) const {
    auto it = blocks.find(i);
    if (it != blocks.end()) return it->second;
    std::size_t rows = tgt->has_degree(i) ? tgt->degree(i).module->gens() : 0;
    std::size_t cols = src->has_degree(i) ? src->degree(i).module->gens() : 0;
    return PolyMat(rows, cols);
}

PolyMat HomologyMap::decomposed_block(int i) const {
    PolyMat b = block(i);
    if (!src->has_degree(i) || !tgt->has_degree(i)) return b;
    const PresentedModule& ms = *src->degree(i).module;
    const PresentedModule& mt = *tgt->degree(i).module;
    PolyMat out(b.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        std::vector<Poly> e(ms.gens());
        e[c] = Poly::one();
        std::vector<Poly> gen = ms.from_diag(e);
        std::vector<Poly> img(b.rows());
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t k = 0; k < b.cols(); ++k)
                if (!b.at(r, k).is_zero() && !gen[k].is_zero()) img[r] += b.at(r, k) * gen[k];
        std::vector<Poly> red = mt.reduce(img);
        for (std::size_t r = 0; r < b.rows(); ++r) out.at(r, c) = red[r];
    }
    return out;
}

HomologyMap induced_map(const ChainMap& f, const HomologyData& hsrc, const HomologyData& htgt) {
    if (&hsrc.complex() != f.src || &htgt.complex() != f.tgt)
        fail(Err::Internal, "induced_map: homology data does not match the chain map");
    HomologyMap out;
    out.src = &hsrc;
    out.tgt = &htgt;
    for (int i = hsrc.min_i(); i <= hsrc.max_i(); ++i) {
        if (!hsrc.has_degree(i)) continue;
        const auto& ds = hsrc.degree(i);
        std::size_t ks = ds.kernel_basis.cols();
        if (ks == 0) continue;
        if (!htgt.has_degree(i)) {
            if (htgt.complex().dim(i) != 0) fail(Err::Internal, "missing target degree");
            out.blocks[i] = PolyMat(0, ks);
            continue;
        }
        const auto& dt = htgt.degree(i);
        PolyMat img = f.block(i) * ds.kernel_basis; // dim_tgt x ks
        PolyMat y = dt.v_inv * img;
        for (std::size_t r = 0; r < dt.rank_d; ++r)
            for (std::size_t c = 0; c < ks; ++c)
                if (!y.at(r, c).is_zero())
                    fail(Err::NotWellDefined, "image of a cycle is not a cycle");
        out.blocks[i] = row_slice(y, dt.rank_d, htgt.complex().dim(i));

        // relations must map into relations
        PolyMat rel = ds.module->relations_in_generator_coords();
        for (std::size_t c = 0; c < rel.cols(); ++c) {
            std::vector<Poly> v(ks);
            for (std::size_t r = 0; r < ks; ++r) v[r] = rel.at(r, c);
            std::vector<Poly> img2(out.blocks[i].rows());
            for (std::size_t r = 0; r < img2.size(); ++r)
                for (std::size_t k = 0; k < ks; ++k)
                    if (!out.blocks[i].at(r, k).is_zero() && !v[k].is_zero())
                        img2[r] += out.blocks[i].at(r, k) * v[k];
            if (!dt.module->is_zero_element(img2))
                fail(Err::NotWellDefined, "induced map does not preserve boundaries");
        }
    }
    return out;
}

HomologyMap identity_homology_map(const HomologyData& h) {
    HomologyMap out;
    out.src = out.tgt = &h;
    for (int i = h.min_i(); i <= h.max_i(); ++i) {
        if (!h.has_degree(i)) continue;
        std::size_t k = h.degree(i).kernel_basis.cols();
        if (k) out.blocks[i] = PolyMat::identity(k);
    }
    return out;
}

HomologyMap compose(const HomologyMap& g, const HomologyMap& f) {
    if (g.src != f.tgt) fail(Err::Internal, "homology map composition mismatch");
    HomologyMap h;
    h.src = f.src;
    h.tgt = g.tgt;
    for (const auto& [i, b] : f.blocks) h.blocks[i] = g.block(i) * b;
    return h;
}

HomologyMap add(const HomologyMap& f, const HomologyMap& g) {
    if (f.src != g.src || f.tgt != g.tgt) fail(Err::Internal, "homology map sum mismatch");
    HomologyMap h;
    h.src = f.src;
    h.tgt = f.tgt;
    std::set<int> keys;
    for (const auto& [i, b] : f.blocks) {
        (void)b;
        keys.insert(i);
    }
    for (const auto& [i, b] : g.blocks) {
        (void)b;
        keys.insert(i);
    }
    for (int i : keys) h.blocks[i] = f.block(i) + g.block(i);
    return h;
}

HomologyMap scale(const HomologyMap& f, const Poly& mono) {
    HomologyMap h;
    h.src = f.src;
    h.tgt = f.tgt;
    for (const auto& [i, b] : f.blocks) h.blocks[i] = b.scaled(mono);
    return h;
}

ScalarCompare compare_up_to_unit(const HomologyMap& lhs, const HomologyMap& rhs) {
    if (lhs.src != rhs.src || lhs.tgt != rhs.tgt)
        fail(Err::Internal, "comparing maps with different endpoints");
    ScalarCompare out;
    bool have = false;
    Fp c(1);
    const HomologyData* hs = lhs.src;
    const HomologyData* ht = lhs.tgt;
    for (int i = hs->min_i(); i <= hs->max_i(); ++i) {
        if (!hs->has_degree(i) || !ht->has_degree(i)) continue;
        const PresentedModule& mt = *ht->degree(i).module;
        std::size_t ks = hs->degree(i).kernel_basis.cols();
        if (ks == 0 || mt.gens() == 0) continue;
        PolyMat lb = lhs.block(i), rb = rhs.block(i);
        for (std::size_t col = 0; col < ks; ++col) {
            std::vector<Poly> vl(mt.gens()), vr(mt.gens());
            for (std::size_t r = 0; r < mt.gens(); ++r) {
                vl[r] = lb.at(r, col);
                vr[r] = rb.at(r, col);
            }
            std::vector<Poly> rl = mt.reduce(vl), rr = mt.reduce(vr);
            for (std::size_t r = 0; r < mt.gens(); ++r) {
                const Poly &a = rl[r], &b = rr[r];
                if (a.is_zero() && b.is_zero()) continue;
                if (b.is_zero() || a.is_zero()) return out; // c would be 0 or infinite
                // candidate from matching coefficients
                Fp cand = a.coeff(b.degree()) * b.leading().inverse();
                if (cand.is_zero()) return out;
                if (!have) {
                    c = cand;
                    have = true;
                }
                if (!(a == b.scaled(c))) return out;
            }
        }
    }
    out.proportional = true;
    out.scalar = have ? c : Fp(1);
    return out;
}

bool homology_map_injective(const HomologyMap& f) {
    for (int i = f.src->min_i(); i <= f.src->max_i(); ++i) {
        if (!f.src->has_degree(i)) continue;
        const auto& dec = f.src->degree(i).module->decomposition();
        if (dec.free_rank == 0 && dec.torsion_exponents.empty()) continue;
        if (!f.tgt->has_degree(i)) return false;
        ModuleMap mm{f.src->degree(i).module.get(), f.tgt->degree(i).module.get(), f.block(i)};
        check_well_defined(mm);
        if (!kernel_is_trivial(mm)) return false;
    }
    return true;
}

// ----- elementary maps -----

namespace {

std::vector<int> nonbp_circles(const CircleSet& cs) {
    std::vector<int> out;
    for (int t = 0; t < cs.circle_count; ++t)
        if (t != cs.basepoint_circle) out.push_back(t);
    return out;
}

int label_pos(const std::vector<int>& nonbp, int circle) {
    for (std::size_t t = 0; t < nonbp.size(); ++t)
        if (nonbp[t] == circle) return static_cast<int>(t);
    fail(Err::Internal, "circle is not a labelled circle");
    return -1;
}

int rep_arc(const CircleSet& cs, int circle) {
    for (const auto& [arc, c] : cs.arc_to_circle)
        if (c == circle) return arc;
    fail(Err::Internal, "empty circle");
    return -1;
}

// Build a target label mask by carrying labels of corresponding circles;
// circles listed in `skip_tgt` are handled by the caller.
std::uint32_t carry_labels(const CircleSet& cs_src, const std::vector<int>& nonbp_src,
                           std::uint32_t labels, const CircleSet& cs_tgt,
                           const std::vector<int>& nonbp_tgt, const std::set<int>& skip_tgt) {
    std::uint32_t out = 0;
    for (std::size_t t = 0; t < nonbp_tgt.size(); ++t) {
        int circ = nonbp_tgt[t];
        if (skip_tgt.count(circ)) continue;
        int arc = rep_arc(cs_tgt, circ);
        auto it = cs_src.arc_to_circle.find(arc);
        if (it == cs_src.arc_to_circle.end())
            fail(Err::Internal, "carried circle has no source counterpart");
        int sc = it->second;
        if (sc == cs_src.basepoint_circle)
            fail(Err::Internal, "carried circle collides with the basepoint circle");
        if ((labels >> label_pos(nonbp_src, sc)) & 1u) out |= (1u << t);
    }
    return out;
}

ChainMap morse_map(const Move& mv, const Complex& src, const Complex& tgt) {
    ChainMap f;
    f.src = &src;
    f.tgt = &tgt;
    switch (mv.type) {
        case MoveType::Birth: f.j_degree = 1; break;
        case MoveType::Death: f.j_degree = 1; break;
        case MoveType::Saddle: f.j_degree = -1; break;
        default: fail(Err::Internal, "not a Morse move");
    }
    if (src.diagram().crossing_count() != tgt.diagram().crossing_count() ||
        src.min_i() != tgt.min_i())
        fail(Err::Internal, "Morse move changed the crossing data");

    int n = src.diagram().crossing_count();
    for (int w = 0; w <= n; ++w) {
        int i = w - src.diagram().n_minus();
        const auto& gens = src.generators(i);
        PolyMat b(tgt.dim(i), src.dim(i));
        State prev_state{0xffffffffu, -1};
        CircleSet cs_s, cs_t;
        std::vector<int> nb_s, nb_t;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            const Generator& g = gens[gi];
            if (g.state.bits != prev_state.bits || prev_state.size < 0) {
                prev_state = g.state;
                cs_s = src.circles(g.state);
                cs_t = tgt.circles(g.state);
                nb_s = nonbp_circles(cs_s);
                nb_t = nonbp_circles(cs_t);
            }
            auto label_of = [&](int circle) -> int {
                return (g.labels >> label_pos(nb_s, circle)) & 1u;
            };

            if (mv.type == MoveType::Birth) {
                int newc = cs_t.arc_to_circle.at(mv.arc);
                std::uint32_t lab = carry_labels(cs_s, nb_s, g.labels, cs_t, nb_t, {newc});
                // new circle labelled 1 (bit stays 0)
                b.at(tgt.index_of(i, g.state, lab), gi) += Poly::one();
            } else if (mv.type == MoveType::Death) {
                int dying = cs_s.arc_to_circle.at(mv.arc);
                if (dying == cs_s.basepoint_circle)
                    fail(Err::BadLocus, "death of the basepoint circle");
                if (!label_of(dying)) continue; // ε(1) = 0
                std::uint32_t lab = carry_labels(cs_s, nb_s, g.labels, cs_t, nb_t, {});
                b.at(tgt.index_of(i, g.state, lab), gi) += Poly::one(); // ε(x) = 1
            } else {
                // saddle
                int r = mv.arcs[0], s = mv.arcs[1];
                int c1 = cs_s.arc_to_circle.at(r);
                int c2 = cs_s.arc_to_circle.at(s);
                if (c1 != c2) {
                    // merge; the merged circle is found through a surviving arc
                    int surv = tgt.diagram().has_arc(r) ? r : s;
                    int m = cs_t.arc_to_circle.at(surv);
                    std::uint32_t lab =
                        carry_labels(cs_s, nb_s, g.labels, cs_t, nb_t, {m});
                    if (c1 == cs_s.basepoint_circle || c2 == cs_s.basepoint_circle) {
                        int other = (c1 == cs_s.basepoint_circle) ? c2 : c1;
                        int xpow = label_of(other) ? 1 : 0;
                        b.at(tgt.index_of(i, g.state, lab), gi) +=
                            Poly::monomial(Fp(1), xpow);
                    } else {
                        int l1 = label_of(c1), l2 = label_of(c2);
                        int pos_m = label_pos(nb_t, m);
                        if (l1 + l2 == 0)
                            b.at(tgt.index_of(i, g.state, lab), gi) += Poly::one();
                        else if (l1 + l2 == 1)
                            b.at(tgt.index_of(i, g.state, lab | (1u << pos_m)), gi) +=
                                Poly::one();
                        else
                            b.at(tgt.index_of(i, g.state, lab), gi) +=
                                Poly::monomial(Fp(1), 2);
                    }
                } else {
                    // split
                    int p1 = cs_t.arc_to_circle.at(r);
                    int p2 = (r == s) ? cs_t.arc_to_circle.at(mv.new_arc)
                                      : cs_t.arc_to_circle.at(s);
                    if (p1 == p2) fail(Err::Internal, "saddle split produced one circle");
                    std::uint32_t lab =
                        carry_labels(cs_s, nb_s, g.labels, cs_t, nb_t, {p1, p2});
                    if (c1 == cs_s.basepoint_circle) {
                        int bp2 = cs_t.basepoint_circle;
                        if (p1 != bp2 && p2 != bp2)
                            fail(Err::Internal, "basepoint lost through a split");
                        int other = (p1 == bp2) ? p2 : p1;
                        int pos = label_pos(nb_t, other);
                        b.at(tgt.index_of(i, g.state, lab | (1u << pos)), gi) += Poly::one();
                        b.at(tgt.index_of(i, g.state, lab), gi) += Poly::monomial(Fp(1), 1);
                    } else {
                        int q1 = label_pos(nb_t, p1), q2 = label_pos(nb_t, p2);
                        if (!label_of(c1)) {
                            b.at(tgt.index_of(i, g.state, lab | (1u << q2)), gi) += Poly::one();
                            b.at(tgt.index_of(i, g.state, lab | (1u << q1)), gi) += Poly::one();
                        } else {
                            b.at(tgt.index_of(i, g.state, lab | (1u << q1) | (1u << q2)), gi) +=
                                Poly::one();
                            b.at(tgt.index_of(i, g.state, lab), gi) += Poly::monomial(Fp(1), 2);
                        }
                    }
                }
            }
        }
        f.blocks[i] = std::move(b);
    }
    return f;
}

// ----- linear solver for Reidemeister maps -----

struct LinearSystem {
    std::size_t ncols = 0;
    std::vector<std::vector<std::pair<std::size_t, Fp>>> rows;
    std::vector<Fp> rhs;

    void add_row(std::vector<std::pair<std::size_t, Fp>> r, Fp b) {
        if (r.empty() && b.is_zero()) return;
        rows.push_back(std::move(r));
        rhs.push_back(b);
    }
};

struct LinearSolution {
    bool feasible = false;
    std::vector<Fp> particular;
    std::vector<std::vector<Fp>> nullspace;
};

LinearSolution solve_linear(const LinearSystem& sys) {
    struct SparseRow {
        std::vector<std::pair<std::size_t, Fp>> e; // sorted by column
        Fp rhs;
    };
    auto normalized = [](std::vector<std::pair<std::size_t, Fp>> v, Fp rhs) {
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseRow r;
        r.rhs = rhs;
        for (auto& [c, x] : v) {
            if (!r.e.empty() && r.e.back().first == c)
                r.e.back().second += x;
            else
                r.e.push_back({c, x});
        }
        std::erase_if(r.e, [](const auto& p) { return p.second.is_zero(); });
        return r;
    };
    // leading column -> pivot row with leading coefficient 1
    std::map<std::size_t, SparseRow> pivots;
    auto axpy = [](SparseRow& r, Fp factor, const SparseRow& p) {
        // r -= factor * p
        std::vector<std::pair<std::size_t, Fp>> out;
        out.reserve(r.e.size() + p.e.size());
        std::size_t i = 0, j = 0;
        while (i < r.e.size() || j < p.e.size()) {
            if (j == p.e.size() || (i < r.e.size() && r.e[i].first < p.e[j].first)) {
                out.push_back(r.e[i++]);
            } else if (i == r.e.size() || p.e[j].first < r.e[i].first) {
                Fp v = -(factor * p.e[j].second);
                if (!v.is_zero()) out.push_back({p.e[j].first, v});
                ++j;
            } else {
                Fp v = r.e[i].second - factor * p.e[j].second;
                if (!v.is_zero()) out.push_back({r.e[i].first, v});
                ++i;
                ++j;
            }
        }
        r.e = std::move(out);
        r.rhs -= factor * p.rhs;
    };

    LinearSolution out;
    for (std::size_t ri = 0; ri < sys.rows.size(); ++ri) {
        SparseRow r = normalized(sys.rows[ri], sys.rhs[ri]);
        while (!r.e.empty()) {
            auto it = pivots.find(r.e.front().first);
            if (it == pivots.end()) break;
            axpy(r, r.e.front().second, it->second);
        }
        if (r.e.empty()) {
            if (!r.rhs.is_zero()) return out; // inconsistent
            continue;
        }
        Fp inv = r.e.front().second.inverse();
        for (auto& [c, v] : r.e) v *= inv;
        r.rhs *= inv;
        pivots[r.e.front().first] = std::move(r);
    }
    out.feasible = true;

    // back-substitution helpers (pivot rows only involve columns >= pivot)
    auto solve_with = [&](const std::vector<Fp>& free_values, bool homogeneous) {
        std::vector<Fp> x(sys.ncols);
        std::size_t fi = 0;
        for (std::size_t c = 0; c < sys.ncols; ++c)
            if (!pivots.count(c)) x[c] = free_values.empty() ? Fp() : free_values[fi++];
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            Fp acc = homogeneous ? Fp() : it->second.rhs;
            for (std::size_t k = 1; k < it->second.e.size(); ++k)
                acc -= it->second.e[k].second * x[it->second.e[k].first];
            x[it->first] = acc;
        }
        return x;
    };

    std::size_t free_count = sys.ncols - pivots.size();
    out.particular = solve_with({}, false);
    for (std::size_t f = 0; f < free_count; ++f) {
        std::vector<Fp> fv(free_count);
        fv[f] = Fp(1);
        out.nullspace.push_back(solve_with(fv, true));
    }
    return out;
}

struct Unknown {
    int i;
    std::size_t tgt_idx, src_idx;
    int xpow;
};

struct CoherenceGoal {
    // require reduce(pre * f * post) == identity in the module of `against`
    const HomologyData* against = nullptr; // modules per degree
    std::map<int, PolyMat> pre;            // per degree
    std::map<int, PolyMat> post;
};

ChainMap solve_reidemeister(const Complex& src, const Complex& tgt,
                            const std::vector<int>& crossing_map, bool use_support,
                            const CoherenceGoal* goal) {
    std::vector<Unknown> unknowns;
    std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> unknown_index;
    int lo = std::max(src.min_i(), tgt.min_i());
    int hi = std::min(src.max_i(), tgt.max_i());
    for (int i = lo; i <= hi; ++i) {
        const auto& gs = src.generators(i);
        const auto& gt = tgt.generators(i);
        for (std::size_t a = 0; a < gs.size(); ++a)
            for (std::size_t b = 0; b < gt.size(); ++b) {
                int jd = gt[b].j_grade - gs[a].j_grade;
                if (jd < 0 || jd % 2) continue;
                if (use_support) {
                    bool ok = true;
                    for (int k = 0; k < src.diagram().crossing_count(); ++k) {
                        int k2 = crossing_map[static_cast<std::size_t>(k)];
                        if (k2 < 0) continue;
                        if (gs[a].state.bit(k) != gt[b].state.bit(k2)) ok = false;
                    }
                    if (!ok) continue;
                }
                unknown_index[{i, b, a}] = unknowns.size();
                unknowns.push_back({i, b, a, jd / 2});
            }
    }

    LinearSystem sys;
    sys.ncols = unknowns.size();
    // chain property rows: (d_tgt f - f d_src) = 0
    std::map<std::tuple<int, std::size_t, std::size_t, int>, std::size_t> row_index;
    std::vector<std::vector<std::pair<std::size_t, Fp>>> rows;
    auto row_at = [&](int i, std::size_t h2, std::size_t g, int pow) -> std::size_t {
        auto key = std::make_tuple(i, h2, g, pow);
        auto it = row_index.find(key);
        if (it != row_index.end()) return it->second;
        std::size_t idx = rows.size();
        row_index[key] = idx;
        rows.emplace_back();
        return idx;
    };
    // the chain condition at lo-1 constrains f(lo) whenever the source
    // complex extends below the target
    for (int i = lo - 1; i <= hi; ++i) {
        PolyMat dt = diff_or_zero(tgt, i);
        PolyMat ds = diff_or_zero(src, i);
        // d_tgt * f_i
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const Unknown& un = unknowns[u];
            if (un.i == i) {
                for (std::size_t h2 = 0; h2 < dt.rows(); ++h2) {
                    const Poly& e = dt.at(h2, un.tgt_idx);
                    if (e.is_zero()) continue;
                    std::size_t ridx = row_at(i, h2, un.src_idx, e.degree() + un.xpow);
                    rows[ridx].push_back({u, e.leading()});
                }
            }
            if (un.i == i + 1) {
                // -(f_{i+1} d_src) contribution
                for (std::size_t g = 0; g < ds.cols(); ++g) {
                    const Poly& e = ds.at(un.src_idx, g);
                    if (e.is_zero()) continue;
                    std::size_t ridx = row_at(i, un.tgt_idx, g, e.degree() + un.xpow);
                    rows[ridx].push_back({u, -e.leading()});
                }
            }
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), Fp());

    if (goal) {
        for (const auto& [i, pre] : goal->pre) {
            const PolyMat& post = goal->post.at(i);
            if (!goal->against->has_degree(i)) continue;
            const PresentedModule& mod = *goal->against->degree(i).module;
            std::size_t kdim = pre.rows(); // = post.cols()
            // contribution of unknown u to column c of pre*f*post:
            // pre[:, tgt_idx] * x^pow * post[src_idx, c]
            for (std::size_t c = 0; c < post.cols(); ++c) {
                std::vector<std::vector<Poly>> contrib(unknowns.size());
                std::vector<Poly> constant(kdim);
                bool any = false;
                for (std::size_t u = 0; u < unknowns.size(); ++u) {
                    const Unknown& un = unknowns[u];
                    if (un.i != i) continue;
                    const Poly& pc = post.at(un.src_idx, c);
                    if (pc.is_zero()) continue;
                    std::vector<Poly> v(kdim);
                    bool nz = false;
                    for (std::size_t r = 0; r < kdim; ++r) {
                        const Poly& pr = pre.at(r, un.tgt_idx);
                        if (pr.is_zero()) continue;
                        v[r] = pr * pc * Poly::monomial(Fp(1), un.xpow);
                        nz = true;
                    }
                    if (nz) {
                        contrib[u] = mod.reduce(v);
                        any = true;
                    }
                }
                // identity target column c
                std::vector<Poly> idcol(kdim);
                if (c < kdim) idcol[c] = Poly::one();
                constant = mod.reduce(idcol);
                (void)any;
                // rows: for each coordinate and each x-power present
                int maxdeg = 0;
                for (const Poly& p : constant) maxdeg = std::max(maxdeg, p.degree());
                for (const auto& v : contrib)
                    for (const Poly& p : v) maxdeg = std::max(maxdeg, p.degree());
                for (std::size_t r = 0; r < kdim; ++r)
                    for (int dpow = 0; dpow <= maxdeg; ++dpow) {
                        std::vector<std::pair<std::size_t, Fp>> row;
                        for (std::size_t u = 0; u < unknowns.size(); ++u) {
                            if (contrib[u].empty()) continue;
                            Fp cf = contrib[u][r].coeff(dpow);
                            if (!cf.is_zero()) row.push_back({u, cf});
                        }
                        Fp b = constant[r].coeff(dpow);
                        sys.add_row(std::move(row), b);
                    }
            }
        }
    }

    LinearSolution sol = solve_linear(sys);
    if (!sol.feasible) fail(Err::Internal, "reidemeister map system infeasible");

    auto build = [&](const std::vector<Fp>& coeffs) {
        ChainMap f;
        f.src = &src;
        f.tgt = &tgt;
        f.j_degree = 0;
        for (int i = std::min(src.min_i(), tgt.min_i());
             i <= std::max(src.max_i(), tgt.max_i()); ++i)
            if (src.dim(i) && tgt.dim(i)) f.blocks[i] = PolyMat(tgt.dim(i), src.dim(i));
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if (coeffs[u].is_zero()) continue;
            const Unknown& un = unknowns[u];
            f.blocks[un.i].at(un.tgt_idx, un.src_idx) += Poly::monomial(coeffs[u], un.xpow);
        }
        return f;
    };
    auto normalize = [&](std::vector<Fp> v) {
        for (const Fp& x : v)
            if (!x.is_zero()) {
                Fp inv = x.inverse();
                for (Fp& y : v) y *= inv;
                break;
            }
        return v;
    };

    if (goal) {
        ChainMap f = build(sol.particular);
        f.verify();
        return f;
    }

    // deterministic search for a quasi-isomorphism among the solutions
    std::vector<std::vector<Fp>> candidates;
    for (const auto& b : sol.nullspace) candidates.push_back(normalize(b));
    for (int lambda : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
        std::vector<Fp> v(sys.ncols);
        Fp mult(1);
        for (const auto& b : sol.nullspace) {
            for (std::size_t k = 0; k < sys.ncols; ++k) v[k] += mult * b[k];
            mult *= Fp(lambda);
        }
        candidates.push_back(normalize(v));
    }
    for (const auto& cand : candidates) {
        bool allzero = true;
        for (const Fp& x : cand)
            if (!x.is_zero()) allzero = false;
        if (allzero) continue;
        ChainMap f = build(cand);
        f.verify();
        if (cone_is_acyclic(f)) return f;
    }
    fail(Err::Internal, "no quasi-isomorphism found for the Reidemeister move");
}

} // namespace

namespace {
// storage-order fingerprint: cached maps may only be rebound to complexes
// whose crossing order (hence generator order) is identical
std::string diagram_fingerprint(const Diagram& d) {
    std::ostringstream os;
    for (const Crossing& c : d.crossings())
        os << "X" << c[0] << "." << c[1] << "." << c[2] << "." << c[3] << ";";
    for (int f : d.free_arcs()) os << "O" << f << ";";
    os << "@" << d.basepoint();
    return os.str();
}
} // namespace

std::string rmove_cache_key(const Move& mv, const Diagram& src, const Diagram& tgt) {
    std::ostringstream os;
    os << move_type_name(mv.type) << "|" << mv.arc << "|" << mv.arcs[0] << "," << mv.arcs[1]
       << "|" << mv.over_arc << "," << mv.under_arc << "|" << mv.new_arc << "|";
    for (int a : mv.new_arcs) os << a << ",";
    os << "|" << mv.sign << mv.over_first << mv.same_first << mv.first_sign << "|"
       << diagram_fingerprint(src) << ">" << diagram_fingerprint(tgt);
    return os.str();
}

ChainMap elementary_map(const Move& mv, const std::vector<int>& crossing_map,
                        const Complex& src, const Complex& tgt, MapCache* cache) {
    switch (mv.type) {
        case MoveType::Birth:
        case MoveType::Death:
        case MoveType::Saddle: {
            ChainMap f = morse_map(mv, src, tgt);
            f.verify();
            return f;
        }
        case MoveType::Dot: {
            ChainMap f;
            f.src = &src;
            f.tgt = &tgt;
            f.j_degree = -2;
            f.blocks = src.dot_blocks(mv.arc);
            f.verify();
            return f;
        }
        default: break;
    }
    (void)cache;
    ChainMap f = solve_reidemeister(src, tgt, crossing_map, true, nullptr);
    return f;
}

MovieComputation::MovieComputation(const Movie& movie, MapCache* cache) : movie_(&movie) {
    MapCache local;
    if (!cache) cache = &local;
    for (const Diagram& d : movie.frames())
        complexes_.push_back(std::make_unique<Complex>(Complex::build(d, true)));
    for (const auto& c : complexes_)
        homology_.push_back(std::make_unique<HomologyData>(*c));

    for (std::size_t k = 0; k < movie.length(); ++k) {
        const Move& mv = movie.moves()[k];
        const Complex& src = *complexes_[k];
        const Complex& tgt = *complexes_[k + 1];
        if (!mv.is_reidemeister()) {
            maps_.push_back(std::make_shared<ChainMap>(
                elementary_map(mv, movie.crossing_map(k), src, tgt, cache)));
            continue;
        }
        std::string key = rmove_cache_key(mv, movie.frames()[k], movie.frames()[k + 1]);
        auto found = cache->solved.find(key);
        if (found != cache->solved.end()) {
            // complexes of equal diagrams have identical bases; rebind
            auto f = std::make_shared<ChainMap>(*found->second);
            f->src = &src;
            f->tgt = &tgt;
            f->verify();
            maps_.push_back(f);
            continue;
        }
        // When this move undoes an already-solved one, pick the coherent
        // inverse: the composite must induce the identity on homology.
        std::string partner_key =
            rmove_cache_key(movie.reverse_move(k), movie.frames()[k + 1], movie.frames()[k]);
        std::shared_ptr<ChainMap> solved;
        auto partner = cache->solved.find(partner_key);
        if (partner != cache->solved.end()) {
            ChainMap pf = *partner->second; // as a map tgt -> src of this computation
            pf.src = &tgt;
            pf.tgt = &src;
            pf.verify();
            const HomologyData& hb = *homology_[k + 1];
            const HomologyData& ha = *homology_[k];
            HomologyMap hpf = induced_map(pf, hb, ha);
            CoherenceGoal goal;
            goal.against = &hb;
            for (int i = hb.min_i(); i <= hb.max_i(); ++i) {
                if (!hb.has_degree(i) || !ha.has_degree(i)) continue;
                const auto& db = hb.degree(i);
                goal.pre[i] = row_slice(db.v_inv, db.rank_d, hb.complex().dim(i));
                goal.post[i] = ha.degree(i).kernel_basis * hpf.block(i);
            }
            try {
                solved = std::make_shared<ChainMap>(
                    solve_reidemeister(src, tgt, movie.crossing_map(k), true, &goal));
            } catch (const Error&) {
                solved = std::make_shared<ChainMap>(
                    solve_reidemeister(src, tgt, movie.crossing_map(k), false, &goal));
            }
            if (!cone_is_acyclic(*solved))
                fail(Err::Internal, "coherent inverse is not a quasi-isomorphism");
        }
        if (!solved)
            solved = std::make_shared<ChainMap>(
                solve_reidemeister(src, tgt, movie.crossing_map(k), true, nullptr));
        cache->solved[key] = solved;
        maps_.push_back(solved);
    }

    ChainMap total = identity_chain_map(*complexes_.front());
    for (const auto& f : maps_) total = compose(*f, total);
    total.verify();
    total_ = std::make_unique<ChainMap>(std::move(total));
}

} // namespace khx
