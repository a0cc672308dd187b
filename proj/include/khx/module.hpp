#ifndef KHX_MODULE_HPP
#define KHX_MODULE_HPP

#include <optional>
#include <vector>

#include "khx/snf.hpp"

namespace khx {

struct Bigrade {
    int i = 0;
    int j = 0;
    friend bool operator==(const Bigrade& a, const Bigrade& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator<(const Bigrade& a, const Bigrade& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
};

// One summand of a finitely generated graded F_p[x]-module:
// torsion == 0 encodes a free F[x] summand, torsion == k encodes F[x]/(x^k).
struct Summand {
    int torsion = 0;
    std::optional<Bigrade> grade;
};

struct ModuleDecomposition {
    std::size_t free_rank = 0;
    std::vector<int> torsion_exponents; // sorted ascending
    std::vector<Summand> summands;

    int max_torsion() const {
        int m = 0;
        for (int k : torsion_exponents)
            if (k > m) m = k;
        return m;
    }
};

// A finitely presented F[x]-module F[x]^g / (column span of relations),
// carrying the change of basis that diagonalizes the relations.  Torsion
// invariant factors must be monomials x^k (monomial-compatible gradings
// guarantee this for the complexes built here); anything else raises
// NonMonomialTorsion.
class PresentedModule {
public:
    // relations: g x r matrix whose columns are relation vectors.
    static PresentedModule from_relations(const PolyMat& relations,
                                          const std::vector<Bigrade>* gen_tags = nullptr);
    // Module with diagonal relations x^{e_k} (e_k < 0 meaning free coordinate).
    static PresentedModule diagonal(const std::vector<int>& exponents,
                                    const std::vector<Bigrade>* gen_tags = nullptr);

    std::size_t gens() const { return gens_; }
    const ModuleDecomposition& decomposition() const { return dec_; }

    // Canonical residue of an element given in generator coordinates;
    // zero residue means the element lies in the relation span.
    std::vector<Poly> reduce(const std::vector<Poly>& z) const;
    bool is_zero_element(const std::vector<Poly>& z) const;

    // Transform a generator-coordinate vector to diagonalized coordinates
    // (without modding out) and back.
    std::vector<Poly> to_diag(const std::vector<Poly>& z) const;
    std::vector<Poly> from_diag(const std::vector<Poly>& y) const;

    // Annihilator exponent of diagonal coordinate k: 0 for dead (unit
    // relation), k>0 for x^k torsion, -1 for free.
    const std::vector<int>& coordinate_exponents() const { return exps_; }

    // Diagonalized relations expressed back in generator coordinates.
    PolyMat relations_in_generator_coords() const;

    bool has_tags() const { return has_tags_; }
    const std::vector<Bigrade>& coordinate_tags() const { return tags_; }

private:
    std::size_t gens_ = 0;
    bool diagonal_basis_ = false; // u == identity shortcut
    PolyMat u_, u_inv_;
    std::vector<int> exps_;
    bool has_tags_ = false;
    std::vector<Bigrade> tags_;
    ModuleDecomposition dec_;

    void build_decomposition();
};

// Spec-facing decomposition of a presentation matrix whose rows are
// relations and whose columns are generators.
ModuleDecomposition module_decompose(const PolyMat& presentation,
                                     const std::vector<Bigrade>* generator_grades = nullptr);

// A map of presented modules, given by its matrix on generators.
struct ModuleMap {
    const PresentedModule* src;
    const PresentedModule* tgt;
    PolyMat matrix; // tgt.gens() x src.gens()
};

// Throws NotWellDefined unless the matrix sends relations into relations.
void check_well_defined(const ModuleMap& f);
bool kernel_is_trivial(const ModuleMap& f);
bool cokernel_is_trivial(const ModuleMap& f);

} // namespace khx

#endif
