#pragma once

#include "kring/loop_homology.hpp"

#include <functional>

namespace kr {

/// One row of the rank-one duality table. T and N rows carry T^*(2j) A^2(2i,0); G rows carry sl_2(2j - 2j rho).
struct Rank1Row {
    std::string name;
    std::string space;
    char type = 'T';
    std::string dual;           // symbolic in n for the parametric rows
    std::string normalization;  // opaque label
    std::string phenomenon;
    std::string loop_case;
    int n_lo = 0, n_hi = 0;     // n_lo == n_hi for the fixed rows
    std::function<int(int)> two_i, two_j, grading;

    bool parametric() const { return n_lo != n_hi; }
    bool sl2() const { return type == 'G'; }
};

struct Rank1Entry {
    std::string name;
    int n = 0;
    char type = 'T';
    int two_i = 0;  // 0 on sl_2 rows
    int two_j = 0;
    int grading = 0;
    std::string space, dual, normalization, phenomenon, loop_case;
    int b_weight = 0;  // distinguished weight of the loop-homology presentation
    bool matches = false;
};

inline const std::vector<Rank1Row>& rank1_table() {
    static const std::vector<Rank1Row> rows = [] {
        auto c = [](int v) { return [v](int) { return v; }; };
        std::vector<Rank1Row> r;
        r.push_back({"A_n", "PGL_{n+1}/GL_n", 'T', "T^*(2n)A^2(2n,0)", "gl_{n-1}[2]//GL_{n-1}",
                     "Hopf fibration S^1 -> Omega CP^n -> Omega S^{2n+1}", "an", 1, 6,
                     [](int n) { return 2 * n; }, [](int n) { return 2 * n; }, [](int n) { return 2 * n; }});
        r.push_back({"B_n", "SO_{2n+1}/SO_{2n}", 'T', "T^*(2n)A^2(4n-2,0)", "sp_{2n-2}[2]//Sp_{2n-2}",
                     "EHP sequence S^{2n-1} -> Omega S^{2n} -> Omega S^{4n-1}", "bn", 1, 6,
                     [](int n) { return 4 * n - 2; }, [](int n) { return 2 * n; }, [](int n) { return 4 * n - 2; }});
        r.push_back({"C_n", "Sp_{2n}/(Sp_2 x Sp_{2n-2})", 'T', "T^*(4n-4)A^2(4n-2,0)",
                     "(sp_2 x sp_{2n-4})[2]//(Sp_2 x Sp_{2n-4})", "Hopf fibration S^3 -> Omega HP^{n-1} -> Omega S^{4n-1}",
                     "cn", 2, 6, [](int n) { return 4 * n - 2; }, [](int n) { return 4 * n - 4; },
                     [](int n) { return 4 * n - 2; }});
        r.push_back({"D_n", "SO_{2n}/mu_2.SO_{2n-1}", 'G', "sl_2(2n-2-(2n-2)rho)", "spin_{2n-3}[2]//Spin_{2n-3}",
                     "James splitting for Omega S^{2n-1}", "dn", 2, 6, c(0), [](int n) { return 2 * n - 2; },
                     [](int n) { return 2 * n - 2; }});
        r.push_back({"F_4", "F_4/Spin_9", 'T', "T^*(16)A^2(22,0)", "sp_6[2]//Sp_6",
                     "Exceptional Hopf fibration S^7 -> Omega OP^2 -> Omega S^23", "f4", 4, 4, c(22), c(16), c(22)});
        r.push_back({"G_2", "G_2/SL_3", 'T', "T^*(6)A^2(10,0)", "sl_2[2]//SL_2",
                     "EHP sequence S^5 -> Omega S^6 -> Omega S^11", "g2", 2, 2, c(10), c(6), c(10)});
        r.push_back({"B_3'", "SO_7/G_2", 'G', "sl_2(6-6rho)", "sp_2[2]//Sp_2", "James splitting for Omega S^7", "b3p",
                     3, 3, c(0), c(6), c(6)});
        r.push_back({"N(A_1)", "PGL_2/PO_2", 'N', "(T^*(2)A^2(2,0))/(Z/2)", "0", "Antipodal action on S^2", "an", 1, 1,
                     c(2), c(2), c(2)});
        r.push_back({"N(B_n)", "SO_{2n+1}/N_{SO_{2n+1}}(SO_{2n})", 'N', "(T^*(2n)A^2(4n-2,0))/(Z/2)",
                     "sp_{2n-2}[2]//Sp_{2n-2}", "Antipodal action on S^{2n}", "bn", 1, 6,
                     [](int n) { return 4 * n - 2; }, [](int n) { return 2 * n; }, [](int n) { return 4 * n - 2; }});
        r.push_back({"N(G_2)", "G_2/N_{G_2}(SL_3)", 'N', "(T^*(6)A^2(10,0))/(Z/2)", "sl_2[2]//SL_2",
                     "Antipodal action on S^6", "g2", 2, 2, c(10), c(6), c(10)});
        return r;
    }();
    return rows;
}

/// Row evaluated at n (ignored on fixed rows), with the loop-homology cross-check.
inline Rank1Entry rank1_entry(const Rank1Row& row, int n) {
    if (!row.parametric()) n = row.n_lo;
    if (n < row.n_lo || n > row.n_hi)
        throw RingError("row " + row.name + " takes n in [" + std::to_string(row.n_lo) + "," + std::to_string(row.n_hi) + "]");
    Rank1Entry e;
    e.name = row.name;
    e.n = n;
    e.type = row.type;
    e.two_i = row.two_i(n);
    e.two_j = row.two_j(n);
    e.grading = row.grading(n);
    e.space = row.space;
    e.dual = row.dual;
    e.normalization = row.normalization;
    e.phenomenon = row.phenomenon;
    e.loop_case = row.loop_case;
    auto lp = equivariant_loop_homology(row.loop_case, n);
    e.b_weight = lp.ring.gens[lp.ring.at(lp.distinguished)].weight;
    e.matches = e.b_weight == (row.sl2() ? e.two_j : e.two_i) && e.grading == e.b_weight;
    return e;
}

inline std::vector<Rank1Entry> rank1_entries(int n) {
    std::vector<Rank1Entry> out;
    for (auto& row : rank1_table()) out.push_back(rank1_entry(row, std::clamp(n, row.n_lo, row.n_hi)));
    return out;
}

/// Every row at every admissible n up to n_max; returns the mismatches.
inline std::vector<std::string> rank1_cross_check(int n_max) {
    std::vector<std::string> bad;
    for (auto& row : rank1_table())
        for (int n = row.n_lo; n <= std::min(row.n_hi, std::max(n_max, row.n_lo)); ++n) {
            auto e = rank1_entry(row, n);
            if (!e.matches)
                bad.push_back(row.name + " at n=" + std::to_string(n) + ": b weight " + std::to_string(e.b_weight) +
                              ", table " + std::to_string(row.sl2() ? e.two_j : e.two_i));
        }
    return bad;
}

}  // namespace kr
