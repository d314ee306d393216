#pragma once

#include <vector>

#include "kaccoh/cartan.hpp"
#include "kaccoh/exactlin.hpp"

namespace kaccoh {

// sigma_i on the weight basis, column convention: column j holds the
// coordinates of sigma_i(w_j). Column i is e_i minus column i of A;
// all other columns are standard basis vectors.
struct ReflectionMatrix {
    int i = 0;  // generator index, 0-based
    RationalMatrix m;
};

ReflectionMatrix reflection_matrix(const CartanMatrix& A, int i);

struct NotFiniteType : std::runtime_error {
    explicit NotFiniteType(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr unsigned long kDefaultOrderCap = 5'000'000;

struct WeylSubgroup {
    Subset generators = 0;
    std::vector<RationalMatrix> elements;  // complete list, identity first
    unsigned long order = 0;
};

// Breadth-first closure of the generator set {sigma_i : i in J}.
// Requires A_J of finite type; refuses to run past `cap` elements.
WeylSubgroup enumerate_subgroup(const CartanMatrix& A, Subset J,
                                unsigned long cap = kDefaultOrderCap);

// Coefficients through degree D of (1/|W|) sum_g 1/det(I - t g):
// entry d is the dimension of the degree-d invariant subspace.
std::vector<Rational> molien_series(const WeylSubgroup& W, int D);

std::vector<long> molien_dims(const WeylSubgroup& W, int D);

// det(I - t M) as a coefficient vector of length n+1 (exact).
std::vector<Rational> reverse_char_poly(const RationalMatrix& M);

}  // namespace kaccoh
