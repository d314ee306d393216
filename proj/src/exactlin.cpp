#include "kaccoh/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace kaccoh {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<long>>& rows_in) {
    RationalMatrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (rows_in[i].size() != m.cols) throw DimensionMismatch("ragged row list");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
    }
    return m;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols != o.rows) throw DimensionMismatch("matrix product shape mismatch");
    RationalMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j) {
                if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionMismatch("matrix difference shape mismatch");
    RationalMatrix r(rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows; ++i) {
        os << (i == 0 ? "[" : " ") << "[";
        for (std::size_t j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
        os << "]" << (i + 1 == rows ? "]" : "\n");
    }
    return os.str();
}

namespace detail {

namespace {

std::size_t leading(const IntRow& r) {
    for (std::size_t j = 0; j < r.e.size(); ++j)
        if (r.e[j] != 0) return j;
    return r.e.size();
}

// Divide the row by the gcd of its entries. Early exit once the gcd is 1.
void remove_content(IntRow& r) {
    Integer g = 0;
    for (const auto& x : r.e) {
        if (x == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& x : r.e) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// row := (p/g) * row - (q/g) * piv  where g = gcd(p, q),
// p = piv[col], q = row[col]; afterwards row[col] == 0.
void eliminate(IntRow& row, const IntRow& piv, std::size_t col) {
    Integer p = piv.e[col];
    Integer q = row.e[col];
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
    const std::size_t n = row.e.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (piv.e[j] == 0) {
            if (p != 1 && row.e[j] != 0) row.e[j] *= p;
        } else {
            row.e[j] = row.e[j] * p - q * piv.e[j];
        }
    }
    remove_content(row);
}

}  // namespace

IntRow to_int_row(const std::vector<Rational>& v) {
    IntRow r;
    r.e.resize(v.size());
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < v.size(); ++j) {
        Integer t = l;
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), v[j].get_den_mpz_t());
        r.e[j] = t * v[j].get_num();
    }
    remove_content(r);
    return r;
}

std::vector<std::size_t> echelonize(std::vector<IntRow>& rows, std::size_t cols) {
    std::vector<IntRow> done;
    std::vector<std::size_t> pivots;

    // (leading column, index into `rows`) for all not-yet-placed rows
    std::vector<std::pair<std::size_t, std::size_t>> lead(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) lead[i] = {leading(rows[i]), i};

    for (std::size_t col = 0; col < cols && !lead.empty(); ++col) {
        // pick the row with smallest pivot magnitude among those leading at col
        std::size_t best = lead.size();
        for (std::size_t k = 0; k < lead.size(); ++k) {
            if (lead[k].first != col) continue;
            if (best == lead.size() ||
                mpz_cmpabs(rows[lead[k].second].e[col].get_mpz_t(),
                           rows[lead[best].second].e[col].get_mpz_t()) < 0)
                best = k;
        }
        if (best == lead.size()) continue;

        IntRow piv = std::move(rows[lead[best].second]);
        lead.erase(lead.begin() + static_cast<std::ptrdiff_t>(best));
        if (mpz_sgn(piv.e[col].get_mpz_t()) < 0)
            for (auto& x : piv.e) x = -x;

        for (std::size_t k = 0; k < lead.size();) {
            if (lead[k].first == col) {
                IntRow& r = rows[lead[k].second];
                eliminate(r, piv, col);
                std::size_t l = leading(r);
                if (l == cols) {
                    lead.erase(lead.begin() + static_cast<std::ptrdiff_t>(k));
                    continue;
                }
                lead[k].first = l;
            }
            ++k;
        }
        pivots.push_back(col);
        done.push_back(std::move(piv));
    }

    // back substitution: clear entries above each pivot
    for (std::size_t i = done.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            if (done[j].e[pivots[i]] != 0) eliminate(done[j], done[i], pivots[i]);
        }
    }
    rows = std::move(done);
    return pivots;
}

}  // namespace detail

namespace {

// Echelonize arbitrary rational rows; returns (rref rows as rationals, pivots).
std::pair<RationalMatrix, std::vector<std::size_t>> rref_rows(const RationalMatrix& m) {
    std::vector<detail::IntRow> rows;
    rows.reserve(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::vector<Rational> v(m.a.begin() + static_cast<std::ptrdiff_t>(i * m.cols),
                                m.a.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols));
        rows.push_back(detail::to_int_row(v));
    }
    std::vector<std::size_t> pivots = detail::echelonize(rows, m.cols);
    RationalMatrix out(rows.size(), m.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Integer& p = rows[i].e[pivots[i]];
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (rows[i].e[j] != 0) {
                Rational q(rows[i].e[j], p);
                q.canonicalize();
                out.at(i, j) = std::move(q);
            }
        }
    }
    return {std::move(out), std::move(pivots)};
}

}  // namespace

std::pair<RationalMatrix, std::size_t> rref(const RationalMatrix& m) {
    auto [red, pivots] = rref_rows(m);
    std::size_t rk = red.rows;
    RationalMatrix out(m.rows, m.cols);
    std::copy(red.a.begin(), red.a.end(), out.a.begin());
    return {std::move(out), rk};
}

std::size_t rank(const RationalMatrix& m) { return rref_rows(m).second.size(); }

SubspaceBasis SubspaceBasis::full_space(std::size_t ambient) {
    SubspaceBasis s(ambient);
    s.basis = RationalMatrix::identity(ambient);
    return s;
}

SubspaceBasis SubspaceBasis::zero_space(std::size_t ambient) { return SubspaceBasis(ambient); }

SubspaceBasis SubspaceBasis::from_spanning_rows(const RationalMatrix& rows) {
    SubspaceBasis s(rows.cols);
    s.basis = rref_rows(rows).first;
    return s;
}

SubspaceBasis kernel_basis(const RationalMatrix& m) {
    auto [red, pivots] = rref_rows(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    RationalMatrix gens(m.cols - pivots.size(), m.cols);
    std::size_t g = 0;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        gens.at(g, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) gens.at(g, pivots[i]) = -red.at(i, f);
        ++g;
    }
    return SubspaceBasis::from_spanning_rows(gens);
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("subspace_sum: ambient mismatch");
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    RationalMatrix stacked(a.dim() + b.dim(), a.ambient);
    std::copy(a.basis.a.begin(), a.basis.a.end(), stacked.a.begin());
    std::copy(b.basis.a.begin(), b.basis.a.end(),
              stacked.a.begin() + static_cast<std::ptrdiff_t>(a.dim() * a.ambient));
    return SubspaceBasis::from_spanning_rows(stacked);
}

SubspaceBasis subspace_intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("subspace_intersect: ambient mismatch");
    const std::size_t n = a.ambient;
    if (a.dim() == 0 || b.dim() == 0) return SubspaceBasis::zero_space(n);
    if (a.dim() == n) return b;
    if (b.dim() == n) return a;

    // columns: coefficients (lambda | mu) with lambda.A = mu.B
    RationalMatrix sys(n, a.dim() + b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(j, i) = a.basis.at(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(j, a.dim() + i) = -b.basis.at(i, j);
    SubspaceBasis ker = kernel_basis(sys);

    RationalMatrix gens(ker.dim(), n);
    for (std::size_t k = 0; k < ker.dim(); ++k)
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const Rational& lam = ker.basis.at(k, i);
            if (lam == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (a.basis.at(i, j) != 0) gens.at(k, j) += lam * a.basis.at(i, j);
            }
        }
    return SubspaceBasis::from_spanning_rows(gens);
}

std::vector<Rational> reduce_against(const SubspaceBasis& a, std::vector<Rational> v) {
    if (v.size() != a.ambient) throw DimensionMismatch("reduce_against: ambient mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i) {
        std::size_t p = 0;
        while (p < a.ambient && a.basis.at(i, p) == 0) ++p;
        if (p == a.ambient || v[p] == 0) continue;
        Rational c = v[p];  // pivot entry is 1
        for (std::size_t j = p; j < a.ambient; ++j) {
            if (a.basis.at(i, j) != 0) v[j] -= c * a.basis.at(i, j);
        }
    }
    return v;
}

bool contains(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient != b.ambient) throw DimensionMismatch("contains: ambient mismatch");
    if (b.dim() > a.dim()) return false;
    for (std::size_t r = 0; r < b.dim(); ++r) {
        std::vector<Rational> v(b.basis.a.begin() + static_cast<std::ptrdiff_t>(r * b.ambient),
                                b.basis.a.begin() + static_cast<std::ptrdiff_t>((r + 1) * b.ambient));
        for (const Rational& x : reduce_against(a, std::move(v)))
            if (x != 0) return false;
    }
    return true;
}

RationalMatrix coordinates_in(const SubspaceBasis& sup, const SubspaceBasis& sub) {
    if (sup.ambient != sub.ambient) throw DimensionMismatch("coordinates_in: ambient mismatch");
    RationalMatrix coords(sub.dim(), sup.dim());
    std::vector<std::size_t> pivots(sup.dim());
    for (std::size_t i = 0; i < sup.dim(); ++i) {
        std::size_t p = 0;
        while (p < sup.ambient && sup.basis.at(i, p) == 0) ++p;
        pivots[i] = p;
    }
    for (std::size_t r = 0; r < sub.dim(); ++r) {
        std::vector<Rational> v(sub.basis.a.begin() + static_cast<std::ptrdiff_t>(r * sub.ambient),
                                sub.basis.a.begin() + static_cast<std::ptrdiff_t>((r + 1) * sub.ambient));
        for (std::size_t i = 0; i < sup.dim(); ++i) {
            Rational c = v[pivots[i]];
            coords.at(r, i) = c;
            if (c == 0) continue;
            for (std::size_t j = pivots[i]; j < sup.ambient; ++j) {
                if (sup.basis.at(i, j) != 0) v[j] -= c * sup.basis.at(i, j);
            }
        }
        for (const Rational& x : v)
            if (x != 0) throw DimensionMismatch("coordinates_in: vector not in subspace");
    }
    return coords;
}

}  // namespace kaccoh
