#ifndef KHX_CUBE_HPP
#define KHX_CUBE_HPP

#include <map>
#include <memory>
#include <vector>

#include "khx/diagram.hpp"
#include "khx/fpmat.hpp"
#include "khx/module.hpp"

namespace khx {

// Basis element of the cube complex at one vertex: a resolution state plus
// an {1,x} label on every circle except the basepoint circle (whose x
// content lives in the F[x] coefficient).  Bit t of labels is set when the
// t-th non-basepoint circle (circles ordered by index) carries x.
struct Generator {
    State state;
    std::uint32_t labels = 0;
    int i_grade = 0;
    int j_grade = 0;
};

// The deformed Khovanov complex of a diagram over F[x] (t = x^2): one free
// module per homological degree with a j-homogeneous degree-0 differential.
// d^2 = 0 and homogeneity are verified at construction.
class Complex {
public:
    static Complex build(const Diagram& d, bool allow_links = false);

    const Diagram& diagram() const { return diagram_; }
    int min_i() const { return -diagram_.n_minus(); }
    int max_i() const { return diagram_.crossing_count() - diagram_.n_minus(); }

    std::size_t dim(int i) const;
    const std::vector<Generator>& generators(int i) const;
    std::vector<Bigrade> grades(int i) const;
    // d_i : C^i -> C^{i+1}; rows index C^{i+1} generators.
    const PolyMat& differential(int i) const;

    std::size_t index_of(int i, const State& s, std::uint32_t labels) const;
    const CircleSet& circles(const State& s) const;

    // Chain-level multiplication by x on the circle through the given arc;
    // returns one block per homological degree (j-degree -2).
    std::map<int, PolyMat> dot_blocks(int arc) const;

private:
    Diagram diagram_;
    std::vector<std::vector<Generator>> gens_;   // by i - min_i
    std::vector<PolyMat> diff_;                  // d_i for i in [min_i, max_i)
    std::map<std::uint32_t, CircleSet> circles_; // per state bits
    std::map<std::uint32_t, std::size_t> state_offset_;
    std::map<std::uint32_t, std::vector<int>> nonbp_;

    void verify_invariants() const;
};

struct HomologyResult {
    std::map<int, ModuleDecomposition> by_degree;
    std::size_t free_rank_total = 0;
    std::vector<int> torsion_exponents_total; // sorted
    int xo = 0;

    std::map<Bigrade, ModuleDecomposition> per_bigrade() const;
};

int torsion_order(const HomologyResult& h);

// Homology of the complex over F[x] with enough retained structure to
// push chain maps through: per degree, a kernel basis for d_i and the
// cokernel presentation of the boundary image inside it.
class HomologyData {
public:
    explicit HomologyData(const Complex& c);

    const Complex& complex() const { return *complex_; }
    const HomologyResult& result() const { return result_; }

    struct Degree {
        PolyMat kernel_basis; // dim_i x kappa columns
        PolyMat v_inv;        // V^{-1} of snf(d_i)
        std::size_t rank_d = 0;
        std::vector<Bigrade> kernel_grades;
        std::shared_ptr<PresentedModule> module; // on kernel generators
    };
    const Degree& degree(int i) const;
    bool has_degree(int i) const;
    int min_i() const { return complex_->min_i(); }
    int max_i() const { return complex_->max_i(); }

    // Coordinates of a cycle (element of C^i lying in ker d_i) in the
    // kernel basis; throws Internal if the element is not a cycle.
    std::vector<Poly> cycle_coordinates(int i, const std::vector<Poly>& chain) const;

private:
    const Complex* complex_;
    std::map<int, Degree> deg_;
    HomologyResult result_;
};

HomologyResult homology(const Complex& c);

struct SpecializationDims {
    std::map<int, std::size_t> by_degree;
    std::map<Bigrade, std::size_t> by_bigrade; // only for t = 0 (j preserved)
    std::size_t total = 0;
};

// Dimensions over F of the homology of the complex specialized along
// x^2 = t_value, computed by Gaussian elimination (independent of the
// Smith normal form path).
SpecializationDims specialize_dimension(const Complex& c, Fp t_value);

// F-dimension per (i, j) of the chain level at t = 0 (each F[x] generator
// contributes basis 1, x in j-grades j, j-2): the graded Euler
// characteristic reference for the Jones-style alternating sum.
std::map<Bigrade, std::size_t> chain_dims_t0(const Complex& c);

} // namespace khx

#endif
