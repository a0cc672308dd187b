#ifndef KHX_CHAINMAP_HPP
#define KHX_CHAINMAP_HPP

#include <map>
#include <memory>

#include "khx/cube.hpp"
#include "khx/movie.hpp"

namespace khx {

// A j-homogeneous chain map between cube complexes, stored block per
// homological degree (missing degrees are zero).  verify() checks the
// chain property and homogeneity exactly.
struct ChainMap {
    const Complex* src = nullptr;
    const Complex* tgt = nullptr;
    std::map<int, PolyMat> blocks;
    int j_degree = 0;

    PolyMat block(int i) const; // zero-filled when absent
    void verify() const;
};

ChainMap identity_chain_map(const Complex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f); // g ∘ f
ChainMap add(const ChainMap& f, const ChainMap& g);
// scale by a monomial c x^k (j-degree drops by 2k)
ChainMap scale(const ChainMap& f, const Poly& mono);

// Zero differential-completed copy of c.differential(i).
PolyMat diff_or_zero(const Complex& c, int i);

// Homology of an abstract bounded complex of free F[x]-modules given by
// its differentials d_i : C^i -> C^{i+1}.
std::map<int, ModuleDecomposition> complex_homology(const std::map<int, std::size_t>& dims,
                                                    const std::map<int, PolyMat>& diffs);

bool cone_is_acyclic(const ChainMap& f); // f is a quasi-isomorphism

// ----- induced maps on homology -----

struct HomologyMap {
    const HomologyData* src = nullptr;
    const HomologyData* tgt = nullptr;
    std::map<int, PolyMat> blocks; // kernel-coordinate matrices

    PolyMat block(int i) const;
    // matrix in decomposed (free + torsion generator) coordinates
    PolyMat decomposed_block(int i) const;
};

HomologyMap induced_map(const ChainMap& f, const HomologyData& hsrc, const HomologyData& htgt);
HomologyMap identity_homology_map(const HomologyData& h);
HomologyMap compose(const HomologyMap& g, const HomologyMap& f);
HomologyMap add(const HomologyMap& f, const HomologyMap& g);
HomologyMap scale(const HomologyMap& f, const Poly& mono);

struct ScalarCompare {
    bool proportional = false; // L == c * R for a unit c
    Fp scalar;                 // the witness c (1 when both sides vanish)
};
ScalarCompare compare_up_to_unit(const HomologyMap& lhs, const HomologyMap& rhs);

// trivial kernel in every degree (used for ribbon concordance checks)
bool homology_map_injective(const HomologyMap& f);

// ----- movie-level construction -----

// Shared cache so that solving the reverse of an already-solved
// Reidemeister move picks the coherent inverse (composite inducing the
// identity on homology).
struct MapCache {
    std::map<std::string, std::shared_ptr<ChainMap>> solved;
};

// Owns the per-frame complexes and homology of a movie and the chain maps
// of its moves.
class MovieComputation {
public:
    MovieComputation(const Movie& movie, MapCache* cache = nullptr);

    const Movie& movie() const { return *movie_; }
    const Complex& complex_at(std::size_t frame) const { return *complexes_[frame]; }
    const HomologyData& homology_at(std::size_t frame) const { return *homology_[frame]; }
    const ChainMap& map_for_move(std::size_t k) const { return *maps_[k]; }
    // composite of all elementary maps
    const ChainMap& total_map() const { return *total_; }

private:
    const Movie* movie_;
    std::vector<std::unique_ptr<Complex>> complexes_;
    std::vector<std::unique_ptr<HomologyData>> homology_;
    std::vector<std::shared_ptr<ChainMap>> maps_;
    std::unique_ptr<ChainMap> total_;
};

// Elementary cobordism map for one move between prepared complexes.
ChainMap elementary_map(const Move& mv, const std::vector<int>& crossing_map,
                        const Complex& src, const Complex& tgt, MapCache* cache);

std::string rmove_cache_key(const Move& mv, const Diagram& src, const Diagram& tgt);

} // namespace khx

#endif
