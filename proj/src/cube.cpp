#include "khx/cube.hpp"

#include <algorithm>

#include "khx/snf.hpp"

namespace khx {

namespace {

std::vector<State> states_of_weight(int n, int w) {
    std::vector<State> out;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        if (__builtin_popcount(bits) != w) continue;
        out.push_back(State{bits, n});
    }
    return out;
}

int label_degree_sum(std::uint32_t labels, int nonbp_count) {
    // basepoint circle contributes deg(1) = +1
    return 1 + nonbp_count - 2 * __builtin_popcount(labels & ((1u << nonbp_count) - 1));
}

} // namespace

Complex Complex::build(const Diagram& d, bool allow_links) {
    if (!allow_links && !d.is_knot())
        fail(Err::NotAKnot, "diagram has " + std::to_string(d.components()) +
                                " components; a knot is required");
    Complex c;
    c.diagram_ = d;
    int n = d.crossing_count();
    int nm = d.n_minus(), np = d.n_plus();

    // resolve every state once
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        State s{bits, n};
        CircleSet cs = d.resolve(s);
        std::vector<int> nonbp;
        for (int t = 0; t < cs.circle_count; ++t)
            if (t != cs.basepoint_circle) nonbp.push_back(t);
        c.circles_[bits] = std::move(cs);
        c.nonbp_[bits] = std::move(nonbp);
    }

    // generators grouped by homological degree
    c.gens_.resize(static_cast<std::size_t>(n) + 1);
    for (int w = 0; w <= n; ++w) {
        auto& bucket = c.gens_[static_cast<std::size_t>(w)];
        for (const State& s : states_of_weight(n, w)) {
            c.state_offset_[s.bits] = bucket.size();
            int nonbp_count = static_cast<int>(c.nonbp_[s.bits].size());
            for (std::uint32_t lab = 0; lab < (1u << nonbp_count); ++lab) {
                Generator g;
                g.state = s;
                g.labels = lab;
                g.i_grade = w - nm;
                g.j_grade = label_degree_sum(lab, nonbp_count) + w + np - 2 * nm;
                bucket.push_back(g);
            }
        }
    }

    // differentials
    c.diff_.resize(static_cast<std::size_t>(n) > 0 ? static_cast<std::size_t>(n) : 0);
    for (int w = 0; w + 1 <= n; ++w) {
        PolyMat dmat(c.gens_[static_cast<std::size_t>(w) + 1].size(),
                     c.gens_[static_cast<std::size_t>(w)].size());
        for (const State& s : states_of_weight(n, w)) {
            const CircleSet& cs = c.circles_.at(s.bits);
            const std::vector<int>& nonbp_s = c.nonbp_.at(s.bits);
            std::map<int, int> labelpos_s;
            for (std::size_t t = 0; t < nonbp_s.size(); ++t)
                labelpos_s[nonbp_s[t]] = static_cast<int>(t);

            for (int k = 0; k < n; ++k) {
                if (s.bit(k)) continue;
                State s2{s.bits | (1u << k), n};
                const CircleSet& cs2 = c.circles_.at(s2.bits);
                const std::vector<int>& nonbp_s2 = c.nonbp_.at(s2.bits);
                std::map<int, int> labelpos_s2;
                for (std::size_t t = 0; t < nonbp_s2.size(); ++t)
                    labelpos_s2[nonbp_s2[t]] = static_cast<int>(t);

                int sign = (__builtin_popcount(s.bits & ((1u << k) - 1)) % 2 == 0) ? 1 : -1;
                const Crossing& cr = d.crossings()[static_cast<std::size_t>(k)];
                int ca = cs.arc_to_circle.at(cr[0]);
                int cb = cs.arc_to_circle.at(cr[1]);
                bool merge = (ca != cb);

                // correspondence for untouched circles: via smallest arc
                auto circle_rep_arc = [&](const CircleSet& set, int circle) {
                    for (const auto& [arc, circ] : set.arc_to_circle)
                        if (circ == circle) return arc;
                    fail(Err::Internal, "circle without arcs");
                    return -1;
                };

                std::size_t src_base = c.state_offset_.at(s.bits);
                std::size_t tgt_base = c.state_offset_.at(s2.bits);

                for (std::uint32_t lab = 0; lab < (1u << nonbp_s.size()); ++lab) {
                    auto label_of = [&](int circle) -> int {
                        // 0 = "1", 1 = "x"
                        return (lab >> labelpos_s.at(circle)) & 1u;
                    };
                    // terms: (target labels, extra x power)
                    std::vector<std::pair<std::uint32_t, int>> terms;

                    // carry labels of circles untouched by the flip
                    std::uint32_t carry = 0;
                    for (std::size_t t2 = 0; t2 < nonbp_s2.size(); ++t2) {
                        int circ2 = nonbp_s2[t2];
                        int rep = circle_rep_arc(cs2, circ2);
                        int c1 = cs.arc_to_circle.at(rep);
                        bool touched = merge ? (c1 == ca || c1 == cb)
                                             : (c1 == ca); // split source circle
                        if (touched) continue;
                        if (c1 == cs.basepoint_circle) continue; // stays basepoint side
                        if (label_of(c1)) carry |= (1u << t2);
                    }

                    if (merge) {
                        int m = cs2.arc_to_circle.at(cr[0]);
                        if (ca == cs.basepoint_circle || cb == cs.basepoint_circle) {
                            int other = (ca == cs.basepoint_circle) ? cb : ca;
                            int l = label_of(other);
                            terms.push_back({carry, l ? 1 : 0});
                        } else {
                            int l1 = label_of(ca), l2 = label_of(cb);
                            int pos_m = labelpos_s2.at(m);
                            if (l1 + l2 == 0) {
                                terms.push_back({carry, 0}); // 1*1 -> 1
                            } else if (l1 + l2 == 1) {
                                terms.push_back({carry | (1u << pos_m), 0}); // -> x
                            } else {
                                terms.push_back({carry, 2}); // x*x -> t = x^2
                            }
                        }
                    } else {
                        // split: source circle ca -> circles of cr[0]/cr[1] sides in s2
                        int p1 = cs2.arc_to_circle.at(cr[0]);
                        int p2 = cs2.arc_to_circle.at(cr[2]);
                        if (p1 == p2) fail(Err::Internal, "split did not create two circles");
                        if (ca == cs.basepoint_circle) {
                            int bp2 = cs2.basepoint_circle;
                            int other = (p1 == bp2) ? p2 : p1;
                            int pos = labelpos_s2.at(other);
                            terms.push_back({carry | (1u << pos), 0}); // 1 (x) other<-x
                            terms.push_back({carry, 1});               // coeff x, other<-1
                        } else {
                            int q1 = labelpos_s2.at(p1), q2 = labelpos_s2.at(p2);
                            if (!label_of(ca)) {
                                terms.push_back({carry | (1u << q2), 0}); // 1 -> 1(x)... p1<-1,p2<-x
                                terms.push_back({carry | (1u << q1), 0}); // p1<-x, p2<-1
                            } else {
                                terms.push_back({carry | (1u << q1) | (1u << q2), 0}); // x(x)
                                terms.push_back({carry, 2}); // t * 1(1)
                            }
                        }
                    }

                    std::size_t src = src_base + lab;
                    for (auto [tlab, xpow] : terms) {
                        std::size_t tgt = tgt_base + tlab;
                        dmat.at(tgt, src) += Poly::monomial(Fp(sign), xpow);
                    }
                }
            }
        }
        c.diff_[static_cast<std::size_t>(w)] = std::move(dmat);
    }

    c.verify_invariants();
    return c;
}

void Complex::verify_invariants() const {
    int n = diagram_.crossing_count();
    for (int w = 0; w + 1 <= n; ++w) {
        const PolyMat& dmat = diff_[static_cast<std::size_t>(w)];
        const auto& src = gens_[static_cast<std::size_t>(w)];
        const auto& tgt = gens_[static_cast<std::size_t>(w) + 1];
        for (std::size_t r = 0; r < dmat.rows(); ++r)
            for (std::size_t cidx = 0; cidx < dmat.cols(); ++cidx) {
                const Poly& e = dmat.at(r, cidx);
                if (e.is_zero()) continue;
                if (!e.is_monomial())
                    fail(Err::NotHomogeneous, "differential entry not a monomial: " + e.str());
                if (tgt[r].j_grade - 2 * e.degree() != src[cidx].j_grade)
                    fail(Err::NotHomogeneous, "differential entry of nonzero j-degree");
            }
    }
    for (int w = 0; w + 2 <= n; ++w) {
        if (!(diff_[static_cast<std::size_t>(w) + 1] * diff_[static_cast<std::size_t>(w)])
                 .is_zero())
            fail(Err::D2NotZero, "d∘d != 0 at cube weight " + std::to_string(w));
    }
}

std::size_t Complex::dim(int i) const {
    int w = i + diagram_.n_minus();
    if (w < 0 || w > diagram_.crossing_count()) return 0;
    return gens_[static_cast<std::size_t>(w)].size();
}

const std::vector<Generator>& Complex::generators(int i) const {
    static const std::vector<Generator> empty;
    int w = i + diagram_.n_minus();
    if (w < 0 || w > diagram_.crossing_count()) return empty;
    return gens_[static_cast<std::size_t>(w)];
}

std::vector<Bigrade> Complex::grades(int i) const {
    std::vector<Bigrade> out;
    for (const Generator& g : generators(i)) out.push_back({g.i_grade, g.j_grade});
    return out;
}

const PolyMat& Complex::differential(int i) const {
    static const PolyMat empty;
    int w = i + diagram_.n_minus();
    if (w < 0 || w >= diagram_.crossing_count()) {
        // zero map with the right shape is synthesized by callers; empty
        // means "no stored differential here"
        return empty;
    }
    return diff_[static_cast<std::size_t>(w)];
}

std::size_t Complex::index_of(int i, const State& s, std::uint32_t labels) const {
    int w = i + diagram_.n_minus();
    if (w != s.weight()) fail(Err::Internal, "state weight does not match degree");
    return state_offset_.at(s.bits) + labels;
}

const CircleSet& Complex::circles(const State& s) const { return circles_.at(s.bits); }

std::map<int, PolyMat> Complex::dot_blocks(int arc) const {
    if (!diagram_.has_arc(arc)) fail(Err::BadLocus, "dot arc not in diagram");
    std::map<int, PolyMat> blocks;
    int n = diagram_.crossing_count();
    for (int w = 0; w <= n; ++w) {
        int i = w - diagram_.n_minus();
        const auto& gens = generators(i);
        PolyMat b(gens.size(), gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const Generator& g = gens[k];
            const CircleSet& cs = circles_.at(g.state.bits);
            const auto& nonbp = nonbp_.at(g.state.bits);
            int circ = cs.arc_to_circle.at(arc);
            if (circ == cs.basepoint_circle) {
                b.at(k, k) += Poly::monomial(Fp(1), 1);
            } else {
                int pos = -1;
                for (std::size_t t = 0; t < nonbp.size(); ++t)
                    if (nonbp[t] == circ) pos = static_cast<int>(t);
                if (pos < 0) fail(Err::Internal, "dot circle not indexed");
                std::uint32_t bit = 1u << pos;
                if (g.labels & bit) {
                    // x -> x^2 * 1
                    std::size_t tgt = index_of(i, g.state, g.labels & ~bit);
                    b.at(tgt, k) += Poly::monomial(Fp(1), 2);
                } else {
                    std::size_t tgt = index_of(i, g.state, g.labels | bit);
                    b.at(tgt, k) += Poly::one();
                }
            }
        }
        blocks[i] = std::move(b);
    }
    return blocks;
}

std::map<Bigrade, ModuleDecomposition> HomologyResult::per_bigrade() const {
    std::map<Bigrade, ModuleDecomposition> out;
    for (const auto& [i, dec] : by_degree) {
        (void)i;
        for (const Summand& s : dec.summands) {
            if (!s.grade) continue;
            ModuleDecomposition& slot = out[*s.grade];
            slot.summands.push_back(s);
            if (s.torsion == 0)
                ++slot.free_rank;
            else
                slot.torsion_exponents.push_back(s.torsion);
        }
    }
    for (auto& [bg, dec] : out) {
        (void)bg;
        std::sort(dec.torsion_exponents.begin(), dec.torsion_exponents.end());
    }
    return out;
}

int torsion_order(const HomologyResult& h) {
    int m = 0;
    for (int k : h.torsion_exponents_total)
        if (k > m) m = k;
    return m;
}

HomologyData::HomologyData(const Complex& c) : complex_(&c) {
    for (int i = c.min_i(); i <= c.max_i(); ++i) {
        std::size_t dim_i = c.dim(i);
        Degree deg;

        PolyMat d_i = c.differential(i);
        if (d_i.rows() == 0 && d_i.cols() == 0 && dim_i > 0)
            d_i = PolyMat(c.dim(i + 1), dim_i); // zero map out of the top degree

        SnfOptions opts;
        opts.need_u = false;
        opts.need_v = true;
        opts.need_v_inv = true;
        SmithForm sf = snf(d_i, opts);
        deg.rank_d = sf.rank;
        deg.v_inv = std::move(sf.v_inv);

        std::size_t kappa = dim_i - sf.rank;
        deg.kernel_basis = PolyMat(dim_i, kappa);
        for (std::size_t r = 0; r < dim_i; ++r)
            for (std::size_t k = 0; k < kappa; ++k)
                deg.kernel_basis.at(r, k) = sf.v.at(r, sf.rank + k);

        std::vector<Bigrade> all_grades = c.grades(i);
        for (std::size_t k = 0; k < kappa; ++k)
            deg.kernel_grades.push_back(all_grades[sf.col_perm[sf.rank + k]]);

        // relations: image of d_{i-1} expressed in kernel coordinates
        PolyMat rel(kappa, 0);
        const PolyMat& d_prev = c.differential(i - 1);
        if (d_prev.rows() > 0 || d_prev.cols() > 0) {
            PolyMat w = deg.v_inv * d_prev;
            for (std::size_t r = 0; r < deg.rank_d; ++r)
                for (std::size_t cc = 0; cc < w.cols(); ++cc)
                    if (!w.at(r, cc).is_zero())
                        fail(Err::Internal, "boundary image escapes the kernel");
            rel = row_slice(w, deg.rank_d, dim_i);
        }
        deg.module = std::make_shared<PresentedModule>(
            PresentedModule::from_relations(rel, &deg.kernel_grades));

        result_.by_degree[i] = deg.module->decomposition();
        deg_[i] = std::move(deg);
    }

    for (const auto& [i, dec] : result_.by_degree) {
        (void)i;
        result_.free_rank_total += dec.free_rank;
        for (int k : dec.torsion_exponents) result_.torsion_exponents_total.push_back(k);
    }
    std::sort(result_.torsion_exponents_total.begin(), result_.torsion_exponents_total.end());
    result_.xo = 0;
    for (int k : result_.torsion_exponents_total)
        if (k > result_.xo) result_.xo = k;
}

const HomologyData::Degree& HomologyData::degree(int i) const {
    auto it = deg_.find(i);
    if (it == deg_.end()) fail(Err::Internal, "no homology data at degree " + std::to_string(i));
    return it->second;
}

bool HomologyData::has_degree(int i) const { return deg_.count(i) > 0; }

std::vector<Poly> HomologyData::cycle_coordinates(int i, const std::vector<Poly>& chain) const {
    const Degree& deg = degree(i);
    std::size_t dim_i = complex_->dim(i);
    if (chain.size() != dim_i) fail(Err::Internal, "chain dimension mismatch");
    std::vector<Poly> y(dim_i);
    for (std::size_t r = 0; r < dim_i; ++r)
        for (std::size_t k = 0; k < dim_i; ++k) {
            const Poly& v = deg.v_inv.at(r, k);
            if (!v.is_zero() && !chain[k].is_zero()) y[r] += v * chain[k];
        }
    for (std::size_t r = 0; r < deg.rank_d; ++r)
        if (!y[r].is_zero()) fail(Err::Internal, "element is not a cycle");
    return std::vector<Poly>(y.begin() + static_cast<std::ptrdiff_t>(deg.rank_d), y.end());
}

HomologyResult homology(const Complex& c) { return HomologyData(c).result(); }

namespace {

// 2x2 block of multiplication by c*x^k on F[x]/(x^2 - t0) with basis (1, x).
void add_block(FpMat& m, std::size_t r2, std::size_t c2, Fp coeff, int k, Fp t0) {
    // x * (a + b x) = t0 b + a x  =>  M = [[0, t0], [1, 0]]
    Fp m00(1), m01(0), m10(0), m11(1);
    for (int t = 0; t < k; ++t) {
        Fp n00 = t0 * m10, n01 = t0 * m11;
        Fp n10 = m00, n11 = m01;
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
    }
    m.at(r2, c2) += coeff * m00;
    m.at(r2, c2 + 1) += coeff * m01;
    m.at(r2 + 1, c2) += coeff * m10;
    m.at(r2 + 1, c2 + 1) += coeff * m11;
}

} // namespace

SpecializationDims specialize_dimension(const Complex& c, Fp t_value) {
    SpecializationDims out;
    bool t_zero = t_value.is_zero();

    // F-basis per degree: (generator, power e in {0,1}), block key preserves
    // the differential: full j when t = 0, j mod 4 otherwise.
    struct Basis {
        std::vector<std::pair<std::size_t, int>> elems; // (gen index, power)
        std::map<std::size_t, std::size_t> pos;         // 2*gen+e -> index
    };
    auto key_of = [&](int j) { return t_zero ? j : ((j % 4) + 4) % 4; };

    std::map<int, std::map<int, Basis>> basis; // i -> key -> basis
    for (int i = c.min_i(); i <= c.max_i(); ++i) {
        const auto& gens = c.generators(i);
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (int e = 0; e < 2; ++e) {
                int j = gens[g].j_grade - 2 * e;
                Basis& b = basis[i][key_of(j)];
                b.pos[2 * g + static_cast<std::size_t>(e)] = b.elems.size();
                b.elems.push_back({g, e});
            }
    }

    auto block_matrix = [&](int i, int key) -> FpMat {
        // differential C^i -> C^{i+1} restricted to the key block
        auto it_src = basis.find(i);
        auto it_tgt = basis.find(i + 1);
        std::size_t rows = 0, cols = 0;
        const Basis* bs = nullptr;
        const Basis* bt = nullptr;
        if (it_src != basis.end() && it_src->second.count(key)) {
            bs = &it_src->second.at(key);
            cols = bs->elems.size();
        }
        if (it_tgt != basis.end() && it_tgt->second.count(key)) {
            bt = &it_tgt->second.at(key);
            rows = bt->elems.size();
        }
        FpMat m(rows, cols);
        if (!bs || !bt) return m;
        const PolyMat& d = c.differential(i);
        if (d.rows() == 0 && d.cols() == 0) return m;
        for (std::size_t col = 0; col < cols; ++col) {
            auto [g, e] = bs->elems[col];
            for (std::size_t h = 0; h < d.rows(); ++h) {
                const Poly& p = d.at(h, g);
                if (p.is_zero()) continue;
                int k = p.degree(); // monomial
                Fp coeff = p.leading();
                // x^{k+e} = x^{(k+e)%2} * t0^{(k+e)/2}
                int tot = k + e;
                Fp scale = coeff * t_value.pow(static_cast<std::uint64_t>(tot / 2));
                int e2 = tot % 2;
                auto pit = bt->pos.find(2 * h + static_cast<std::size_t>(e2));
                if (pit == bt->pos.end()) {
                    if (!scale.is_zero())
                        fail(Err::Internal, "specialized differential leaves its block");
                    continue;
                }
                m.at(pit->second, col) += scale;
            }
        }
        return m;
    };

    for (int i = c.min_i(); i <= c.max_i(); ++i) {
        std::size_t total_i = 0;
        for (const auto& [key, b] : basis[i]) {
            (void)b;
            FpMat dA = block_matrix(i - 1, key);
            FpMat dB = block_matrix(i, key);
            std::size_t h = field_homology_dimension(dA, dB);
            total_i += h;
            if (t_zero && h > 0) out.by_bigrade[{i, key}] += h;
        }
        out.by_degree[i] = total_i;
        out.total += total_i;
    }
    return out;
}

std::map<Bigrade, std::size_t> chain_dims_t0(const Complex& c) {
    std::map<Bigrade, std::size_t> out;
    for (int i = c.min_i(); i <= c.max_i(); ++i)
        for (const Generator& g : c.generators(i)) {
            out[{i, g.j_grade}]++;
            out[{i, g.j_grade - 2}]++;
        }
    return out;
}

} // namespace khx
