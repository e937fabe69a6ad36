#pragma once

#include <stdexcept>
#include <vector>

#include "sep/jet.hpp"

namespace sep {

template <class F>
F factorial(int n) {
    F f(1);
    for (int i = 2; i <= n; ++i) f = f * F(i);
    return f;
}

/// Interpolation data on a finite node set: per node, the prescribed
/// derivatives f(x), f'(x), ..., f^(mu-1)(x). The node multiplicity is the
/// length of its derivative list.
template <class F>
struct HermiteData {
    std::vector<F> nodes;                       // strictly increasing
    std::vector<std::vector<F>> derivatives;    // one list per node, length = multiplicity

    long total_count() const {
        long n = 0;
        for (const auto& d : derivatives) n += static_cast<long>(d.size());
        return n;
    }

    void validate() const {
        if (nodes.size() != derivatives.size())
            throw std::invalid_argument("HermiteData: nodes/derivatives size mismatch");
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (derivatives[i].empty()) throw std::invalid_argument("HermiteData: empty derivative list");
            if (i > 0 && !(nodes[i - 1] < nodes[i]))
                throw std::invalid_argument("HermiteData: nodes must be strictly increasing");
        }
    }
};

/// Builds interpolation data where the multiplicities request how many
/// derivatives each node contributes. The supplied jets must carry at least
/// mu(i) entries per node ("insufficient jet order" otherwise); extra
/// entries are dropped.
template <class F>
HermiteData<F> make_hermite_data(std::vector<F> nodes, const std::vector<int>& multiplicities,
                                 const std::vector<std::vector<F>>& jets) {
    if (nodes.size() != multiplicities.size() || nodes.size() != jets.size())
        throw std::invalid_argument("make_hermite_data: size mismatch");
    HermiteData<F> d;
    d.nodes = std::move(nodes);
    d.derivatives.resize(jets.size());
    for (size_t i = 0; i < jets.size(); ++i) {
        const size_t mu = static_cast<size_t>(multiplicities[i]);
        if (jets[i].size() < mu)
            throw std::runtime_error("insufficient jet order at node index " + std::to_string(i));
        d.derivatives[i].assign(jets[i].begin(), jets[i].begin() + static_cast<long>(mu));
    }
    d.validate();
    return d;
}

/// Full triangular table of generalized divided differences over the ordered
/// confluent node vector (equal nodes adjacent). level(s)[i] = f[z_i..z_{i+s}].
template <class F>
struct DividedDifferenceTable {
    std::vector<F> z;                    // confluent node vector, |z| = N
    std::vector<size_t> node_index;      // which input node each z entry came from
    std::vector<std::vector<F>> levels;  // levels[s], s = 0..N-1

    const std::vector<F>& newton_coefficients() const { return top_; }
    std::vector<F> top_;                 // f[z_0..z_s] for s = 0..N-1
};

/// Builds the divided-difference table for confluent data. Repeated nodes use
/// the prescribed derivatives: f[x,...,x] (s+1 copies) = f^(s)(x)/s!.
/// Throws "insufficient jet order" if a confluent group needs a derivative
/// that the data does not carry.
template <class F>
DividedDifferenceTable<F> divided_differences(const HermiteData<F>& data) {
    data.validate();
    DividedDifferenceTable<F> t;
    for (size_t i = 0; i < data.nodes.size(); ++i)
        for (size_t j = 0; j < data.derivatives[i].size(); ++j) {
            t.z.push_back(data.nodes[i]);
            t.node_index.push_back(i);
        }
    const size_t n = t.z.size();
    if (n == 0) throw std::invalid_argument("divided_differences: empty data");

    t.levels.resize(n);
    t.levels[0].reserve(n);
    for (size_t i = 0; i < n; ++i) t.levels[0].push_back(data.derivatives[t.node_index[i]][0]);

    for (size_t s = 1; s < n; ++s) {
        t.levels[s].reserve(n - s);
        for (size_t i = 0; i + s < n; ++i) {
            if (t.node_index[i] == t.node_index[i + s]) {
                const auto& derivs = data.derivatives[t.node_index[i]];
                if (derivs.size() <= s)
                    throw std::runtime_error("insufficient jet order for confluent node group");
                t.levels[s].push_back(derivs[s] / factorial<F>(static_cast<int>(s)));
            } else {
                t.levels[s].push_back((t.levels[s - 1][i] - t.levels[s - 1][i + 1]) /
                                      (t.z[i] - t.z[i + s]));
            }
        }
    }
    t.top_.reserve(n);
    for (size_t s = 0; s < n; ++s) t.top_.push_back(t.levels[s][0]);
    return t;
}

/// Polynomial in Newton form over an ordered confluent center vector:
/// P(x) = sum_s d_s (x-c_0)...(x-c_{s-1}).
template <class F>
struct NewtonPolynomial {
    std::vector<F> centers;  // c_0..c_{m-1}
    std::vector<F> coeffs;   // d_0..d_m

    int degree_bound() const { return static_cast<int>(coeffs.size()) - 1; }

    F operator()(const F& x) const {
        if (coeffs.empty()) return F(0);
        F acc = coeffs.back();
        for (size_t s = coeffs.size() - 1; s-- > 0;) acc = acc * (x - centers[s]) + coeffs[s];
        return acc;
    }
};

/// Newton-form Hermite interpolant: degree <= N-1, matching every prescribed
/// derivative at every node.
template <class F>
NewtonPolynomial<F> hermite_interpolant(const HermiteData<F>& data) {
    auto table = divided_differences(data);
    NewtonPolynomial<F> p;
    p.coeffs = table.top_;
    p.centers.assign(table.z.begin(), table.z.end() - 1);
    return p;
}

/// Jet of the Newton-form polynomial at x via nested multiplication in the
/// jet ring; exact up to field rounding (exact for rational F).
template <class F>
Jet<F> eval_jet(const NewtonPolynomial<F>& p, const F& x, int order) {
    Jet<F> acc(x, order);
    if (p.coeffs.empty()) return acc;
    const Jet<F> var = Jet<F>::variable(x, order);
    acc = Jet<F>::constant(x, p.coeffs.back(), order);
    for (size_t s = p.coeffs.size() - 1; s-- > 0;) {
        acc = acc * (var - p.centers[s]) + p.coeffs[s];
    }
    return acc;
}

/// Expands the Newton form into monomial coefficients (a_0..a_m).
template <class F>
std::vector<F> to_monomial(const NewtonPolynomial<F>& p) {
    std::vector<F> out(1, F(0));
    if (p.coeffs.empty()) return out;
    out[0] = p.coeffs.back();
    for (size_t s = p.coeffs.size() - 1; s-- > 0;) {
        // out = out * (x - c_s) + d_s
        out.push_back(F(0));
        for (size_t i = out.size() - 1; i-- > 0;) {
            out[i + 1] = out[i + 1] + out[i];
            out[i] = out[i] * (-p.centers[s]);
        }
        out[0] = out[0] + p.coeffs[s];
    }
    return out;
}

/// Dense polynomial in monomial basis; evaluation and jets via Horner.
template <class F>
struct DensePolynomial {
    std::vector<F> coeffs;  // a_0 + a_1 x + ... (empty means 0)

    int degree() const {
        for (size_t i = coeffs.size(); i-- > 0;)
            if (!(coeffs[i] == F(0))) return static_cast<int>(i);
        return -1;
    }

    F operator()(const F& x) const {
        F acc(0);
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }
};

template <class F>
Jet<F> eval_jet(const DensePolynomial<F>& p, const F& x, int order) {
    Jet<F> acc(x, order);
    const Jet<F> var = Jet<F>::variable(x, order);
    for (size_t i = p.coeffs.size(); i-- > 0;) acc = acc * var + p.coeffs[i];
    return acc;
}

/// Coefficient convolution.
template <class F>
DensePolynomial<F> multiply(const DensePolynomial<F>& a, const DensePolynomial<F>& b) {
    DensePolynomial<F> r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, F(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    return r;
}

}  // namespace sep
