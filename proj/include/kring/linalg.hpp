#pragma once

#include "kring/poly.hpp"

#include <map>

namespace kr {

/// Sparse vector, entries sorted by ascending index.
using SVec = std::vector<std::pair<int, Q>>;

/// Incremental row echelon form over Q.  Pivot = smallest index of a row.
class Echelon {
  public:
    bool insert(const SVec& v) {
        std::map<int, Q> acc;
        for (auto& [i, c] : v)
            if (c != 0) acc[i] += c;
        reduce_in_place(acc);
        if (acc.empty()) return false;
        Q lead = acc.begin()->second;
        SVec row;
        row.reserve(acc.size());
        for (auto& [i, c] : acc) row.emplace_back(i, c / lead);
        rows_.emplace(row.front().first, std::move(row));
        return true;
    }

    SVec reduce(const SVec& v) const {
        std::map<int, Q> acc;
        for (auto& [i, c] : v)
            if (c != 0) acc[i] += c;
        reduce_in_place(acc);
        return SVec(acc.begin(), acc.end());
    }

    bool contains(const SVec& v) const { return reduce(v).empty(); }
    size_t rank() const { return rows_.size(); }
    const std::map<int, SVec>& rows() const { return rows_; }

  private:
    std::map<int, SVec> rows_;

    void reduce_in_place(std::map<int, Q>& acc) const {
        auto it = acc.begin();
        while (it != acc.end()) {
            if (it->second == 0) {
                it = acc.erase(it);
                continue;
            }
            auto r = rows_.find(it->first);
            if (r == rows_.end()) {
                ++it;
                continue;
            }
            Q c = it->second;
            int piv = it->first;
            for (auto& [j, d] : r->second) {
                if (j == piv) continue;
                Q& slot = acc[j];
                slot -= c * d;
            }
            it = acc.erase(it);
            // entries created lie beyond piv, so the scan continues forward
        }
    }
};

/// Assigns stable coordinates to monomials.
class Coords {
  public:
    int id(const Mono& m) {
        auto it = ix_.find(m);
        if (it != ix_.end()) return it->second;
        int k = static_cast<int>(monos_.size());
        ix_.emplace(m, k);
        monos_.push_back(m);
        return k;
    }
    int find(const Mono& m) const {
        auto it = ix_.find(m);
        return it == ix_.end() ? -1 : it->second;
    }
    const Mono& mono(int k) const { return monos_[k]; }
    size_t size() const { return monos_.size(); }

    SVec vec(const Poly& p) {
        SVec v;
        v.reserve(p.t.size());
        for (auto& x : p.t) v.emplace_back(id(x.m), x.c);
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return v;
    }

  private:
    std::unordered_map<Mono, int, MonoHash> ix_;
    std::vector<Mono> monos_;
};

inline size_t rank_of(const std::vector<SVec>& vs) {
    Echelon e;
    for (auto& v : vs) e.insert(v);
    return e.rank();
}

/// dim(span(vs) ∩ {coordinates where keep(i)}), via dim U - rank of the projection away from keep.
template <class Keep>
size_t dim_in_coordinate_subspace(const std::vector<SVec>& vs, Keep keep, size_t* full_rank = nullptr) {
    Echelon full, outside;
    for (auto& v : vs) {
        full.insert(v);
        SVec o;
        for (auto& [i, c] : v)
            if (!keep(i)) o.emplace_back(i, c);
        outside.insert(o);
    }
    if (full_rank) *full_rank = full.rank();
    return full.rank() - outside.rank();
}

/// Kernel of the linear map sending basis vector k to cols[k]; returns kernel vectors (indices into cols).
inline std::vector<SVec> kernel(const std::vector<SVec>& cols) {
    // augment each column with an identity tag placed past every real coordinate
    int shift = 0;
    for (auto& v : cols)
        for (auto& [i, c] : v) shift = std::max(shift, i + 1);
    Echelon e;
    std::vector<SVec> out;
    for (size_t k = 0; k < cols.size(); ++k) {
        SVec v = cols[k];
        v.emplace_back(shift + static_cast<int>(k), Q(1));
        SVec r = e.reduce(v);
        if (!r.empty() && r.front().first >= shift) {
            SVec kv;
            for (auto& [i, c] : r) kv.emplace_back(i - shift, c);
            out.push_back(kv);
        }
        e.insert(v);
    }
    return out;
}

}  // namespace kr
