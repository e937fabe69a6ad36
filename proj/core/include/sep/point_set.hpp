#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "sep/scalar.hpp"

namespace sep {

/// Finite sorted multiset of real nodes with per-node multiplicities.
/// Nodes are strictly increasing and multiplicities are >= 1.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<Scalar> nodes, std::vector<int> multiplicities);

    /// Multiplicity 1 everywhere.
    static PointSet simple(std::vector<Scalar> nodes);

    size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const Scalar& node(size_t i) const { return nodes_[i]; }
    int multiplicity(size_t i) const { return mult_[i]; }
    const std::vector<Scalar>& nodes() const { return nodes_; }
    const std::vector<int>& multiplicities() const { return mult_; }

    /// Total count N = sum of multiplicities.
    long total_count() const { return prefix_.empty() ? 0 : prefix_.back(); }

    /// Index range [first, last) of nodes in the open interval (a, b).
    std::pair<size_t, size_t> range_open(const Scalar& a, const Scalar& b) const;

    /// Number of nodes (not counting multiplicity) in (a, b).
    size_t nodes_in_open(const Scalar& a, const Scalar& b) const;

    /// Sum of multiplicities over nodes in (a, b).
    long count_in_open(const Scalar& a, const Scalar& b) const;

private:
    std::vector<Scalar> nodes_;
    std::vector<int> mult_;
    std::vector<long> prefix_;  // prefix_[i] = sum of mult_[0..i]
    void build_prefix();
};

/// Parses the point-set text format: one node per line as a decimal literal
/// or "log:<v>" for e^v, an optional whitespace-separated multiplicity
/// (default 1), and '#' comments. Nodes must be strictly increasing.
/// Violations raise std::runtime_error naming the line.
PointSet parse_point_set(std::istream& in);
PointSet parse_point_set_file(const std::string& path);

}  // namespace sep
