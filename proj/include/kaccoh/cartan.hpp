#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kaccoh/exactlin.hpp"

namespace kaccoh {

// Subsets of the index set S = {0,..,n-1} as bitmasks (n <= 10).
using Subset = std::uint32_t;

std::vector<int> subset_members(Subset s);
Subset subset_of(const std::vector<int>& members);
// "123" or "{}" style label with 1-based indices, for printing.
std::string subset_label(Subset s);

struct ValidationError : std::runtime_error {
    enum class Kind { DiagonalNotTwo, PositiveOffDiagonal, AsymmetricZero, RankCapExceeded };
    Kind kind;
    int i, j;  // offending indices, 0-based (-1 if n/a)
    ValidationError(Kind k, int i_, int j_, const std::string& what)
        : std::runtime_error(what), kind(k), i(i_), j(j_) {}
};

struct CartanMatrix {
    int n = 0;
    std::vector<long> a;  // row-major n x n

    long at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    // Principal submatrix on the given index subset (in ascending index order).
    CartanMatrix submatrix(Subset s) const;
    Subset full_set() const { return (Subset(1) << n) - 1; }

    bool operator==(const CartanMatrix& o) const { return n == o.n && a == o.a; }
};

// Checks the three defining conditions; throws ValidationError otherwise.
// n is capped at 10 (principal-minor classification is exponential).
CartanMatrix validate(const std::vector<std::vector<long>>& raw);

enum class BlockType { Finite, Affine, Indefinite };

std::string block_type_name(BlockType t);

struct TypeLabel {
    bool finite_overall = false;
    bool decomposable = false;
    struct Block {
        Subset members;
        BlockType type;
    };
    std::vector<Block> blocks;  // sorted by smallest member
    bool infinite_type() const { return !finite_overall; }
};

// Connected components of the graph with edges {i,j} where a_ij != 0,
// sorted by smallest member.
std::vector<Subset> decompose(const CartanMatrix& A);

TypeLabel classify(const CartanMatrix& A);

bool is_finite_type(const CartanMatrix& A);

// The simplicial category C(A): all proper subsets I of S with A_I of
// finite type (downward closed), plus its inclusion-maximal members.
struct SimplicialCategory {
    int n = 0;
    std::vector<Subset> simplices;  // by cardinality, then numerically
    std::vector<Subset> maximal;    // lexicographic on sorted member lists
};

SimplicialCategory finite_subsets(const CartanMatrix& A);

// Dynkin-diagram identification of a finite-type matrix, per block.
struct DynkinBlock {
    char family = 0;  // 'A','B','C','D','E','F','G'
    int rank = 0;
    std::vector<int> relabel;  // relabel[k] = index in A of the k-th standard vertex
    unsigned long weyl_order = 0;
    std::string name() const { return std::string(1, family) + std::to_string(rank); }
};

struct NoMatch : std::runtime_error {
    explicit NoMatch(const std::string& what) : std::runtime_error(what) {}
};

// Requires classify(A).finite_overall; throws NoMatch on failure (which
// would indicate a classification bug).
std::vector<DynkinBlock> dynkin_type(const CartanMatrix& A);

// Standard Cartan matrix of a finite family, Bourbaki numbering.
CartanMatrix standard_cartan(char family, int rank);

unsigned long weyl_order_of(char family, int rank);

}  // namespace kaccoh
