#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kaccoh {

using Rational = mpq_class;
using Integer = mpz_class;

// Dense row-major matrix of exact rationals. Entries are always kept in
// lowest terms with positive denominator (mpq_class canonical form).
struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;

    RationalMatrix() = default;
    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}

    Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<std::vector<long>>& rows_in);

    bool operator==(const RationalMatrix& o) const;
    bool is_zero() const;

    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix transpose() const;

    std::string to_string() const;
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Subspace of Q^ambient in canonical form: the basis rows are the reduced
// row echelon form of any spanning set, so two equal subspaces compare
// entrywise equal.
struct SubspaceBasis {
    std::size_t ambient = 0;
    RationalMatrix basis;  // dim() x ambient, reduced echelon, full row rank

    SubspaceBasis() = default;
    explicit SubspaceBasis(std::size_t amb) : ambient(amb), basis(0, amb) {}

    std::size_t dim() const { return basis.rows; }

    static SubspaceBasis full_space(std::size_t ambient);
    static SubspaceBasis zero_space(std::size_t ambient);
    // Canonicalizes an arbitrary spanning set (rows need not be independent).
    static SubspaceBasis from_spanning_rows(const RationalMatrix& rows);

    bool operator==(const SubspaceBasis& o) const {
        return ambient == o.ambient && basis == o.basis;
    }
};

// Reduced row echelon form and rank.
std::pair<RationalMatrix, std::size_t> rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

// Canonical basis of { v : m v = 0 }.
SubspaceBasis kernel_basis(const RationalMatrix& m);

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);

// Intersection via the kernel of the stacked block system [A^T | -B^T].
SubspaceBasis subspace_intersect(const SubspaceBasis& a, const SubspaceBasis& b);

// True iff span(b) is contained in span(a).
bool contains(const SubspaceBasis& a, const SubspaceBasis& b);

// Residue of v after elimination against an echelon basis; zero iff v lies
// in the subspace.
std::vector<Rational> reduce_against(const SubspaceBasis& a, std::vector<Rational> v);

// Coordinates of each basis vector of sub in terms of sup's basis.
// Requires sub <= sup; dim(sub) x dim(sup).
RationalMatrix coordinates_in(const SubspaceBasis& sup, const SubspaceBasis& sub);

namespace detail {

// One matrix row scaled to integer entries: entries/denom, content-free.
struct IntRow {
    std::vector<Integer> e;
    Integer denom = 1;
};

IntRow to_int_row(const std::vector<Rational>& v);

// In-place reduction to reduced echelon form over integer rows.
// Returns pivot column per surviving row (rows sorted by pivot).
std::vector<std::size_t> echelonize(std::vector<IntRow>& rows, std::size_t cols);

}  // namespace detail

}  // namespace kaccoh
