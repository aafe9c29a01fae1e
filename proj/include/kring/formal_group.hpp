#pragma once

#include "kring/ring.hpp"

namespace kr {

/// F(x, y) = x + y + beta x y
inline Poly fgl(const Poly& x, const Poly& y, const Poly& beta) { return x + y + beta * x * y; }

/// Z'[beta, x1..xm, y1..ym] with y_i = 1/(1 + beta x_i); x_i in weight -2.
inline Presentation torus_presentation(int m, BaseRing base = BaseRing::Zp(true)) {
    if (!base.beta) throw RingError("torus_presentation: base needs beta");
    Presentation T(base);
    std::vector<int> xs;
    for (int i = 1; i <= m; ++i) xs.push_back(T.add_gen(m == 1 ? "x" : "x" + std::to_string(i), -2));
    int bi = T.at("beta");
    for (int i = 1; i <= m; ++i) {
        std::string x = m == 1 ? "x" : "x" + std::to_string(i);
        T.add_inverse(m == 1 ? "y" : "y" + std::to_string(i), Poly(Q(1)) + Poly::var(bi) * Poly::var(xs[i - 1]),
                      "1+beta*" + x);
    }
    return T;
}

namespace detail {

inline Poly binomial_series(const Poly& x, const Poly& beta, int n) {
    // sum_{k>=1} C(n,k) beta^{k-1} x^k
    Poly r;
    mpz_class c = 1;
    Poly bx(Q(1)), xp(Q(1));
    for (int k = 1; k <= n; ++k) {
        c = c * (n - k + 1) / k;
        xp = xp * x;
        r += Q(c) * (xp * bx);
        bx = bx * beta;
    }
    return r;
}

}  // namespace detail

/// [n](x) for the generator named `x`; negative n uses the reciprocal `y` of 1 + beta x.
inline Poly n_series(const Presentation& T, int n, const std::string& x = "x", const std::string& y = "y") {
    Poly X = T.var(x), B = T.var("beta");
    if (n >= 0) return T.nf(detail::binomial_series(X, B, n));
    Poly Y = T.var(y);
    return T.nf(-(detail::binomial_series(X, B, -n) * pow(Y, -n)));
}

/// [n] applied to an arbitrary element e with 1 + beta e invertible via `inv` (needed only for n < 0).
inline Poly n_series_of(const Presentation& T, const Poly& e, int n, const Poly& inv = Poly()) {
    Poly B = T.var("beta");
    if (n >= 0) return T.nf(detail::binomial_series(e, B, n));
    if (inv.zero()) throw RingError("n_series_of: negative n needs the inverse of 1 + beta e");
    return T.nf(-(detail::binomial_series(e, B, -n) * pow(inv, -n)));
}

/// x_lambda: the F-sum of [lambda_i](x_i).
inline Poly character_series(const std::vector<int>& lambda, const Presentation& T) {
    int m = static_cast<int>(lambda.size());
    Poly B = T.var("beta");
    Poly acc;
    for (int i = 0; i < m; ++i) {
        if (lambda[i] == 0) continue;
        std::string xi = m == 1 ? "x" : "x" + std::to_string(i + 1);
        std::string yi = m == 1 ? "y" : "y" + std::to_string(i + 1);
        if (T.index(xi) < 0) throw RingError("character_series: length does not match the torus rank");
        acc = T.nf(fgl(acc, n_series(T, lambda[i], xi, yi), B));
    }
    if (T.index(m == 1 ? "x" : "x" + std::to_string(m + 1)) >= 0 && m > 1)
        throw RingError("character_series: length does not match the torus rank");
    return acc;
}

/// Length-n Witt vectors in ghost coordinates; the j-th ghost component has weight 2j.
struct WittVector {
    std::vector<Q> ghost;

    static int weight(int j) { return 2 * j; }
    size_t length() const { return ghost.size(); }
    bool operator==(const WittVector& o) const { return ghost == o.ghost; }
};

inline WittVector witt_add(const WittVector& u, const WittVector& v) {
    if (u.length() != v.length()) throw RingError("witt_add: length mismatch");
    WittVector r{u.ghost};
    for (size_t i = 0; i < r.length(); ++i) r.ghost[i] += v.ghost[i];
    return r;
}

inline WittVector witt_mul(const WittVector& u, const WittVector& v) {
    if (u.length() != v.length()) throw RingError("witt_mul: length mismatch");
    WittVector r{u.ghost};
    for (size_t i = 0; i < r.length(); ++i) r.ghost[i] *= v.ghost[i];
    return r;
}

/// Scaling by t in G_m multiplies the j-th ghost component by t^j.
inline WittVector witt_scale(const WittVector& u, const Q& t) {
    WittVector r{u.ghost};
    Q s = 1;
    for (size_t i = 0; i < r.length(); ++i) {
        s *= t;
        r.ghost[i] *= s;
    }
    return r;
}

using Matrix = std::vector<std::vector<Poly>>;

inline Matrix mat_mul(const Presentation& P, const Matrix& A, const Matrix& B) {
    size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    Matrix C(n, std::vector<Poly>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            Poly s;
            for (size_t l = 0; l < k; ++l) s += A[i][l] * B[l][j];
            C[i][j] = P.nf(s);
        }
    return C;
}

/// Unipotent upper triangular Toeplitz matrix with superdiagonals x_1..x_{n-1}.
inline Matrix toeplitz(const std::vector<Poly>& xs) {
    size_t n = xs.size() + 1;
    Matrix M(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i) {
        M[i][i] = Poly(Q(1));
        for (size_t j = i + 1; j < n; ++j) M[i][j] = xs[j - i - 1];
    }
    return M;
}

/// Product of two unipotent Toeplitz matrices, returned by its superdiagonal entries.
inline std::vector<Poly> toeplitz_mul(const Presentation& P, const std::vector<Poly>& a, const std::vector<Poly>& b) {
    if (a.size() != b.size()) throw RingError("toeplitz_mul: size mismatch");
    Matrix C = mat_mul(P, toeplitz(a), toeplitz(b));
    size_t n = C.size();
    std::vector<Poly> out(n - 1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Poly& e = C[i][j];
            if (j < i && !e.zero()) throw RingError("toeplitz_mul: lower entry nonzero");
            if (j == i && e != Poly(Q(1))) throw RingError("toeplitz_mul: diagonal entry not 1");
            if (j > i) {
                if (i == 0) out[j - 1] = e;
                else if (e != C[0][j - i]) throw RingError("toeplitz_mul: not Toeplitz");
            }
        }
    return out;
}

}  // namespace kr
