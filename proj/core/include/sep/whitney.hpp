#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sep {

/// Restriction data: one value per node, all multiplicities 1.
template <class F>
struct SampleFunction {
    std::vector<F> nodes;   // strictly increasing
    std::vector<F> values;

    void validate() const {
        if (nodes.size() != values.size() || nodes.empty())
            throw std::invalid_argument("SampleFunction: need one value per node");
        for (size_t i = 1; i < nodes.size(); ++i)
            if (!(nodes[i - 1] < nodes[i]))
                throw std::invalid_argument("SampleFunction: nodes must be strictly increasing");
    }
};

template <class F>
struct SeminormResult {
    F value{0};
    bool heuristic = false;             // true when the tuple budget forced windowed enumeration
    unsigned long long tuples = 0;      // number of divided differences evaluated
};

namespace detail {

/// f[x_0..x_s] over distinct nodes, classic recursion in a scratch buffer.
template <class F>
F top_divided_difference(const std::vector<F>& xs, std::vector<F>& vals) {
    const size_t n = vals.size();
    for (size_t s = 1; s < n; ++s)
        for (size_t i = 0; i + s < n; ++i)
            vals[i] = (vals[i] - vals[i + 1]) / (xs[i] - xs[i + s]);
    return vals[0];
}

inline unsigned long long saturating_binomial(size_t n, size_t k) {
    if (k > n) return 0;
    unsigned long long r = 1;
    for (size_t i = 1; i <= k; ++i) {
        if (r > (~0ULL) / (n - k + i)) return ~0ULL;
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace detail

/// |f|_n = sup over j <= n and distinct tuples of |f[x_0..x_j]|.
///
/// Divided differences are symmetric in their nodes, so the sup over ordered
/// tuples equals the sup over subsets; enumeration is exhaustive while
/// C(|K|, n+1)*(n+1) fits the budget, otherwise it degrades to consecutive
/// windows and sets the heuristic flag.
template <class F>
SeminormResult<F> whitney_seminorm(const SampleFunction<F>& f, int n,
                                   unsigned long long budget = 5000000ULL) {
    f.validate();
    if (n < 0) throw std::invalid_argument("whitney_seminorm: order must be >= 0");
    const size_t N = f.nodes.size();
    const size_t max_size = std::min<size_t>(static_cast<size_t>(n) + 1, N);

    SeminormResult<F> out;
    const unsigned long long worst =
        detail::saturating_binomial(N, static_cast<size_t>(n) + 1 <= N ? static_cast<size_t>(n) + 1 : N);
    const bool exhaustive =
        worst != ~0ULL && worst <= budget / (static_cast<unsigned long long>(n) + 1);

    auto consider = [&](const F& dd) {
        F a = dd < F(0) ? -dd : dd;
        if (out.value < a) out.value = a;
    };

    std::vector<F> xs, vals;
    if (exhaustive) {
        std::vector<size_t> idx;
        for (size_t size = 1; size <= max_size; ++size) {
            idx.resize(size);
            for (size_t i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                xs.clear();
                vals.clear();
                for (size_t i : idx) {
                    xs.push_back(f.nodes[i]);
                    vals.push_back(f.values[i]);
                }
                consider(detail::top_divided_difference(xs, vals));
                ++out.tuples;
                // next lexicographic combination
                size_t k = size;
                while (k > 0 && idx[k - 1] == N - size + (k - 1)) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (size_t i = k; i < size; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
        out.heuristic = false;
    } else {
        for (size_t size = 1; size <= max_size; ++size) {
            for (size_t start = 0; start + size <= N; ++start) {
                xs.clear();
                vals.clear();
                for (size_t i = start; i < start + size; ++i) {
                    xs.push_back(f.nodes[i]);
                    vals.push_back(f.values[i]);
                }
                consider(detail::top_divided_difference(xs, vals));
                ++out.tuples;
            }
        }
        out.heuristic = true;
    }
    return out;
}

}  // namespace sep
