#pragma once

// Invariant counts for a finite matrix group acting linearly on Q[x1..xn], by Molien series.
// Kept independent of the library: group closure, determinants and series live here.

#include <gmpxx.h>

#include <set>
#include <stdexcept>
#include <vector>

namespace molien {

using Mat = std::vector<std::vector<long>>;
using Series = std::vector<mpq_class>;

inline Mat mul(const Mat& a, const Mat& b) {
    size_t n = a.size();
    Mat c(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline std::vector<Mat> close(const std::vector<Mat>& gens, size_t n) {
    Mat id(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    std::set<Mat> seen{id};
    std::vector<Mat> out{id};
    for (size_t h = 0; h < out.size(); ++h)
        for (auto& g : gens) {
            Mat c = mul(g, out[h]);
            if (seen.insert(c).second) out.push_back(c);
            if (out.size() > 10000) throw std::runtime_error("group too large");
        }
    return out;
}

inline Series pmul(const Series& a, const Series& b) {
    Series c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// det(I - t M) by Laplace expansion on polynomial entries
inline Series det(const std::vector<std::vector<Series>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Series acc(1, 0);
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Series>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Series> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Series t = pmul(m[0][j], det(minor));
        if (acc.size() < t.size()) acc.resize(t.size(), 0);
        for (size_t k = 0; k < t.size(); ++k) acc[k] += (j % 2 ? -1 : 1) * t[k];
    }
    return acc;
}

inline Series inverse_series(const Series& p, int D) {
    Series r(D + 1, 0);
    r[0] = 1 / p[0];
    for (int d = 1; d <= D; ++d) {
        mpq_class s = 0;
        for (int k = 1; k <= d && k < static_cast<int>(p.size()); ++k) s += p[k] * r[d - k];
        r[d] = -s / p[0];
    }
    return r;
}

struct Counts {
    std::vector<long> poly;      // dim Q[x]^G_d
    std::vector<long> quotient;  // dim (Q[x]/(prod of forms))^G_d
    size_t order = 0;
};

/// g acts on variables by x_i -> sum_j M[i][j] x_j; `forms` are linear forms whose product is semi-invariant.
inline Counts count(const std::vector<Mat>& gens, size_t n, const std::vector<std::vector<long>>& forms, int D) {
    auto G = close(gens, n);
    Counts c;
    c.order = G.size();
    Series plain(D + 1, 0), twisted(D + 1, 0);
    for (auto& g : G) {
        std::vector<std::vector<Series>> m(n, std::vector<Series>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m[i][j] = Series{mpq_class(i == j ? 1 : 0), mpq_class(-g[j][i])};
        Series s = inverse_series(det(m), D);
        long chi = 1;
        for (auto& f : forms) {
            std::vector<long> img(n, 0);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) img[j] += f[i] * g[i][j];
            int sign = 0;
            for (auto& h : forms)
                if (h == img) sign = 1;
            for (auto& h : forms) {
                std::vector<long> neg(h);
                for (auto& v : neg) v = -v;
                if (!sign && neg == img) sign = -1;
            }
            if (!sign) throw std::runtime_error("forms are not permuted up to sign");
            chi *= sign;
        }
        for (int d = 0; d <= D; ++d) {
            plain[d] += s[d];
            twisted[d] += chi * s[d];
        }
    }
    size_t N = forms.size();
    for (int d = 0; d <= D; ++d) {
        mpq_class p = plain[d] / static_cast<long>(G.size());
        mpq_class t = d >= static_cast<int>(N) ? twisted[d - N] / static_cast<long>(G.size()) : mpq_class(0);
        if (p.get_den() != 1 || t.get_den() != 1) throw std::runtime_error("non-integral Molien coefficient");
        c.poly.push_back(p.get_num().get_si());
        c.quotient.push_back(mpq_class(p - t).get_num().get_si());
    }
    return c;
}

inline Mat transposition(size_t n, size_t i, size_t j) {
    Mat m(n, std::vector<long>(n, 0));
    for (size_t k = 0; k < n; ++k) m[k][k] = 1;
    m[i][i] = m[j][j] = 0;
    m[i][j] = m[j][i] = 1;
    return m;
}

inline Mat cycle(size_t n, size_t from, size_t to) {
    Mat m(n, std::vector<long>(n, 0));
    for (size_t k = 0; k < n; ++k) m[k][k] = 1;
    for (size_t k = from; k < to; ++k) {
        m[k][k] = 0;
        m[k][k + 1 < to ? k + 1 : from] = 1;
    }
    return m;
}

inline Mat flip(size_t n, std::vector<size_t> which) {
    Mat m(n, std::vector<long>(n, 0));
    for (size_t k = 0; k < n; ++k) m[k][k] = 1;
    for (auto k : which) m[k][k] = -1;
    return m;
}

}  // namespace molien
