#include "kaccoh/weyl.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace kaccoh {

ReflectionMatrix reflection_matrix(const CartanMatrix& A, int i) {
    if (i < 0 || i >= A.n) throw std::out_of_range("reflection index out of range");
    RationalMatrix m = RationalMatrix::identity(static_cast<std::size_t>(A.n));
    for (int k = 0; k < A.n; ++k) m.at(k, i) -= A.at(k, i);
    // involution check at construction
    if (!((m * m) == RationalMatrix::identity(static_cast<std::size_t>(A.n))))
        throw std::logic_error("reflection matrix is not an involution");
    return {i, std::move(m)};
}

namespace {

std::string matrix_key(const RationalMatrix& m) {
    std::ostringstream os;
    for (const auto& x : m.a) os << x << ",";
    return os.str();
}

}  // namespace

WeylSubgroup enumerate_subgroup(const CartanMatrix& A, Subset J, unsigned long cap) {
    if (!is_finite_type(A.submatrix(J)))
        throw NotFiniteType("W_" + subset_label(J) + " is infinite: A_J is not of finite type");

    std::vector<RationalMatrix> gens;
    for (int i : subset_members(J)) gens.push_back(reflection_matrix(A, i).m);

    WeylSubgroup W;
    W.generators = J;
    RationalMatrix id = RationalMatrix::identity(static_cast<std::size_t>(A.n));
    std::map<std::string, std::size_t> seen;
    seen[matrix_key(id)] = 0;
    W.elements.push_back(id);
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& g : gens) {
            RationalMatrix next = W.elements[cur] * g;
            std::string key = matrix_key(next);
            if (seen.count(key)) continue;
            if (W.elements.size() >= cap)
                throw CapExceeded("W_" + subset_label(J) + " exceeds the order cap " +
                                  std::to_string(cap));
            seen[key] = W.elements.size();
            frontier.push_back(W.elements.size());
            W.elements.push_back(std::move(next));
        }
    }
    W.order = W.elements.size();
    return W;
}

std::vector<Rational> reverse_char_poly(const RationalMatrix& M) {
    // Faddeev-LeVerrier: char(x) = x^n + c_{n-1} x^{n-1} + ... + c_0,
    // then det(I - tM) = 1 + c_{n-1} t + ... + c_0 t^n.
    const std::size_t n = M.rows;
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix Mk = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mk = M * Mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += Mk.at(i, i);
        Rational ck = -tr / static_cast<long>(k);
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) Mk.at(i, i) += ck;
    }
    std::vector<Rational> p(n + 1);
    for (std::size_t k = 0; k <= n; ++k) p[k] = c[n - k];
    return p;
}

std::vector<Rational> molien_series(const WeylSubgroup& W, int D) {
    if (W.order == 0) throw std::logic_error("molien_series: group not enumerated");
    std::vector<Rational> total(static_cast<std::size_t>(D) + 1);
    for (const auto& g : W.elements) {
        std::vector<Rational> p = reverse_char_poly(g);
        // power series inverse of p, p[0] = 1
        std::vector<Rational> q(static_cast<std::size_t>(D) + 1);
        q[0] = 1;
        for (int k = 1; k <= D; ++k) {
            Rational s = 0;
            for (std::size_t j = 1; j < p.size() && j <= static_cast<std::size_t>(k); ++j)
                s += p[j] * q[static_cast<std::size_t>(k) - j];
            q[static_cast<std::size_t>(k)] = -s;
        }
        for (int k = 0; k <= D; ++k) total[static_cast<std::size_t>(k)] += q[static_cast<std::size_t>(k)];
    }
    for (auto& x : total) x /= static_cast<long>(W.order);
    return total;
}

std::vector<long> molien_dims(const WeylSubgroup& W, int D) {
    std::vector<Rational> s = molien_series(W, D);
    std::vector<long> dims;
    dims.reserve(s.size());
    for (const auto& x : s) {
        if (x.get_den() != 1) throw std::logic_error("molien series coefficient not an integer");
        dims.push_back(static_cast<long>(x.get_num().get_si()));
    }
    return dims;
}

}  // namespace kaccoh
