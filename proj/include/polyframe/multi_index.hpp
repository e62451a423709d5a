#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polyframe/errors.hpp"

namespace polyframe {

using MultiIndex = std::vector<int>;

enum class IndexSetKind { TensorProduct, TotalDegree, HyperbolicCross, Custom };

inline const char* to_string(IndexSetKind k) {
    switch (k) {
        case IndexSetKind::TensorProduct: return "tensor_product";
        case IndexSetKind::TotalDegree: return "total_degree";
        case IndexSetKind::HyperbolicCross: return "hyperbolic_cross";
        default: return "custom";
    }
}

inline IndexSetKind index_set_kind_from_string(const std::string& s) {
    if (s == "tensor_product") return IndexSetKind::TensorProduct;
    if (s == "total_degree") return IndexSetKind::TotalDegree;
    if (s == "hyperbolic_cross") return IndexSetKind::HyperbolicCross;
    if (s == "custom") return IndexSetKind::Custom;
    throw ParameterError("unknown index set kind: " + s);
}

/// Default ceiling on |Lambda|.  Hyperbolic-cross growth in high d can be
/// surprising, so generators fail loudly instead of silently truncating.
inline constexpr std::size_t kDefaultIndexCap = 1'000'000;

/// Ordered set of d-dimensional multi-indices spanning P_Lambda.
/// Indices are kept in lexicographic order so that design-matrix columns
/// are reproducible across runs and platforms.
class MultiIndexSet {
public:
    MultiIndexSet(int dimension, std::vector<MultiIndex> indices,
                  IndexSetKind kind = IndexSetKind::Custom, int degree = -1)
        : dimension_(dimension), kind_(kind), degree_(degree),
          indices_(std::move(indices)) {
        if (dimension_ < 1) throw ParameterError("dimension must be >= 1");
        if (indices_.empty()) throw ParameterError("index set must be nonempty");
        for (const auto& idx : indices_) {
            if (static_cast<int>(idx.size()) != dimension_)
                throw ShapeError("multi-index length does not match dimension");
            for (int e : idx)
                if (e < 0) throw ParameterError("multi-index entries must be >= 0");
        }
        std::sort(indices_.begin(), indices_.end());
        auto last = std::unique(indices_.begin(), indices_.end());
        if (last != indices_.end())
            throw ParameterError("duplicate multi-indices");
    }

    int dimension() const { return dimension_; }
    IndexSetKind kind() const { return kind_; }
    int degree() const { return degree_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }

    bool contains(const MultiIndex& idx) const {
        return std::binary_search(indices_.begin(), indices_.end(), idx);
    }

    /// Largest entry over all indices and coordinates.
    int max_degree() const {
        int m = 0;
        for (const auto& idx : indices_)
            for (int e : idx) m = std::max(m, e);
        return m;
    }

private:
    int dimension_;
    IndexSetKind kind_;
    int degree_;
    std::vector<MultiIndex> indices_;
};

namespace detail {

inline void check_cap(std::size_t count, std::size_t cap) {
    if (count > cap)
        throw SizeLimitError("index set cardinality exceeds cap of " +
                             std::to_string(cap));
}

} // namespace detail

/// Exact cardinality (n+1)^d with overflow guard.
inline std::uint64_t tensor_product_cardinality(int n, int d) {
    std::uint64_t c = 1;
    for (int k = 0; k < d; ++k) {
        std::uint64_t next = c * static_cast<std::uint64_t>(n + 1);
        if (n >= 0 && next / static_cast<std::uint64_t>(n + 1) != c)
            throw SizeLimitError("(n+1)^d overflows 64 bits");
        c = next;
    }
    return c;
}

/// Exact cardinality binom(n+d, d).
inline std::uint64_t total_degree_cardinality(int n, int d) {
    std::uint64_t c = 1;
    for (int k = 1; k <= d; ++k) {
        // multiply first, keep exactness: c * (n+k) is divisible by k here
        std::uint64_t num = c * static_cast<std::uint64_t>(n + k);
        if (num / static_cast<std::uint64_t>(n + k) != c)
            throw SizeLimitError("binom(n+d,d) overflows 64 bits");
        c = num / static_cast<std::uint64_t>(k);
    }
    return c;
}

/// Exact hyperbolic-cross cardinality |{n : prod(n_k+1) <= n+1}| by
/// recursion over coordinates.
inline std::uint64_t hyperbolic_cross_cardinality(int n, int d) {
    if (d == 1) return static_cast<std::uint64_t>(n + 1);
    std::uint64_t total = 0;
    for (int j = 0; j <= n; ++j)
        total += hyperbolic_cross_cardinality((n + 1) / (j + 1) - 1, d - 1);
    return total;
}

/// Upper bound floor((n+1)(1+log(n+1))^(d-1)).
inline std::uint64_t hyperbolic_cross_cardinality_bound(int n, int d) {
    double b = (n + 1) * std::pow(1.0 + std::log(static_cast<double>(n + 1)),
                                  d - 1);
    return static_cast<std::uint64_t>(std::floor(b));
}

/// All n with |n|_inf <= n.
inline MultiIndexSet tensor_product_set(int n, int d,
                                        std::size_t cap = kDefaultIndexCap) {
    if (n < 0 || d < 1) throw ParameterError("require n >= 0 and d >= 1");
    detail::check_cap(tensor_product_cardinality(n, d), cap);
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(tensor_product_cardinality(n, d)));
    MultiIndex cur(d, 0);
    while (true) {
        out.push_back(cur);
        int k = d - 1;
        while (k >= 0 && cur[k] == n) cur[k--] = 0;
        if (k < 0) break;
        ++cur[k];
    }
    return MultiIndexSet(d, std::move(out), IndexSetKind::TensorProduct, n);
}

/// All n with |n|_1 <= n.
inline MultiIndexSet total_degree_set(int n, int d,
                                      std::size_t cap = kDefaultIndexCap) {
    if (n < 0 || d < 1) throw ParameterError("require n >= 0 and d >= 1");
    detail::check_cap(total_degree_cardinality(n, d), cap);
    std::vector<MultiIndex> out;
    MultiIndex cur(d, 0);
    auto rec = [&](auto&& self, int coord, int budget) -> void {
        if (coord == d - 1) {
            for (int j = 0; j <= budget; ++j) {
                cur[coord] = j;
                out.push_back(cur);
            }
            cur[coord] = 0;
            return;
        }
        for (int j = 0; j <= budget; ++j) {
            cur[coord] = j;
            self(self, coord + 1, budget - j);
        }
        cur[coord] = 0;
    };
    rec(rec, 0, n);
    return MultiIndexSet(d, std::move(out), IndexSetKind::TotalDegree, n);
}

/// All n with prod(n_k + 1) <= n + 1.
inline MultiIndexSet hyperbolic_cross_set(int n, int d,
                                          std::size_t cap = kDefaultIndexCap) {
    if (n < 0 || d < 1) throw ParameterError("require n >= 0 and d >= 1");
    detail::check_cap(hyperbolic_cross_cardinality(n, d), cap);
    std::vector<MultiIndex> out;
    MultiIndex cur(d, 0);
    auto rec = [&](auto&& self, int coord, int budget) -> void {
        // budget = remaining product allowance, always >= 1
        if (coord == d - 1) {
            for (int j = 0; j + 1 <= budget; ++j) {
                cur[coord] = j;
                out.push_back(cur);
            }
            cur[coord] = 0;
            return;
        }
        for (int j = 0; j + 1 <= budget; ++j) {
            cur[coord] = j;
            self(self, coord + 1, budget / (j + 1));
        }
        cur[coord] = 0;
    };
    rec(rec, 0, n + 1);
    return MultiIndexSet(d, std::move(out), IndexSetKind::HyperbolicCross, n);
}

inline MultiIndexSet make_index_set(IndexSetKind kind, int n, int d,
                                    std::size_t cap = kDefaultIndexCap) {
    switch (kind) {
        case IndexSetKind::TensorProduct: return tensor_product_set(n, d, cap);
        case IndexSetKind::TotalDegree: return total_degree_set(n, d, cap);
        case IndexSetKind::HyperbolicCross: return hyperbolic_cross_set(n, d, cap);
        default: throw ParameterError("cannot generate a custom index set");
    }
}

/// True iff the set is downward closed: every coordinatewise-dominated
/// index of a member is also a member.  Single-step decrements suffice.
inline bool is_lower_set(const MultiIndexSet& set) {
    std::set<MultiIndex> lookup(set.indices().begin(), set.indices().end());
    for (const auto& idx : set.indices()) {
        MultiIndex probe = idx;
        for (int k = 0; k < set.dimension(); ++k) {
            if (probe[k] == 0) continue;
            --probe[k];
            bool found = lookup.count(probe) > 0;
            ++probe[k];
            if (!found) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------
// Oversampling rules relating N = |Lambda| to a sample budget M.
// ---------------------------------------------------------------------

enum class OversamplingKind {
    Direct,    // N <= M
    Linear,    // M = ceil(c N)
    LogLinear, // c N log N <= M
    Quadratic  // c N^2 log N <= M
};

inline const char* to_string(OversamplingKind k) {
    switch (k) {
        case OversamplingKind::Direct: return "direct";
        case OversamplingKind::Linear: return "linear";
        case OversamplingKind::LogLinear: return "loglinear";
        case OversamplingKind::Quadratic: return "quadratic";
    }
    return "?";
}

struct OversamplingRule {
    OversamplingKind kind = OversamplingKind::LogLinear;
    double c = 1.0;

    /// Smallest admissible sample count for a space of dimension N.
    /// Never below N itself, so the least-squares problem stays tall.
    std::uint64_t min_samples(std::uint64_t N) const {
        double logn = std::log(static_cast<double>(N));
        double m = 0;
        switch (kind) {
            case OversamplingKind::Direct: m = static_cast<double>(N); break;
            case OversamplingKind::Linear: m = c * static_cast<double>(N); break;
            case OversamplingKind::LogLinear:
                m = c * static_cast<double>(N) * logn;
                break;
            case OversamplingKind::Quadratic:
                m = c * static_cast<double>(N) * static_cast<double>(N) * logn;
                break;
        }
        return std::max<std::uint64_t>(
            N, static_cast<std::uint64_t>(std::ceil(m)));
    }

    bool satisfied(std::uint64_t N, std::uint64_t M) const {
        return min_samples(N) <= M;
    }
};

inline std::uint64_t index_set_cardinality(IndexSetKind kind, int n, int d) {
    switch (kind) {
        case IndexSetKind::TensorProduct: return tensor_product_cardinality(n, d);
        case IndexSetKind::TotalDegree: return total_degree_cardinality(n, d);
        case IndexSetKind::HyperbolicCross:
            return hyperbolic_cross_cardinality(n, d);
        default: throw ParameterError("no closed-form cardinality for custom sets");
    }
}

/// Maximal degree n whose cardinality N satisfies the oversampling rule
/// for budget M.
inline int largest_n_for_budget(IndexSetKind kind, int d, std::uint64_t M,
                                const OversamplingRule& rule,
                                std::size_t cap = kDefaultIndexCap) {
    if (M == 0) throw ParameterError("sample budget M must be >= 1");
    if (!rule.satisfied(index_set_cardinality(kind, 0, d), M))
        return 0;
    int n = 0;
    while (true) {
        std::uint64_t next = index_set_cardinality(kind, n + 1, d);
        if (next > cap || !rule.satisfied(next, M)) return n;
        ++n;
    }
}

// ---------------------------------------------------------------------
// Plain-text serialization: header line, then one index per line.
// ---------------------------------------------------------------------

inline void write_index_set(std::ostream& os, const MultiIndexSet& set) {
    os << "dim=" << set.dimension() << " kind=" << to_string(set.kind())
       << " n=" << set.degree() << "\n";
    for (const auto& idx : set.indices()) {
        for (int k = 0; k < set.dimension(); ++k)
            os << (k ? " " : "") << idx[k];
        os << "\n";
    }
}

inline MultiIndexSet read_index_set(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParameterError("empty index set stream");
    int d = 0, n = -1;
    std::string kind_str = "custom";
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParameterError("bad header: " + header);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "dim") d = std::stoi(val);
        else if (key == "kind") kind_str = val;
        else if (key == "n") n = std::stoi(val);
    }
    std::vector<MultiIndex> indices;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        MultiIndex idx;
        int e;
        while (ls >> e) idx.push_back(e);
        indices.push_back(std::move(idx));
    }
    return MultiIndexSet(d, std::move(indices),
                         index_set_kind_from_string(kind_str), n);
}

} // namespace polyframe
