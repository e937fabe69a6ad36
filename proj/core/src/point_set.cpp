#include "sep/point_set.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sep {

PointSet::PointSet(std::vector<Scalar> nodes, std::vector<int> multiplicities)
    : nodes_(std::move(nodes)), mult_(std::move(multiplicities)) {
    if (nodes_.size() != mult_.size()) throw std::invalid_argument("PointSet: nodes/multiplicities size mismatch");
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (mult_[i] < 1) throw std::invalid_argument("PointSet: multiplicity must be >= 1");
        if (i > 0 && !(nodes_[i - 1] < nodes_[i]))
            throw std::invalid_argument("PointSet: nodes must be strictly increasing");
    }
    build_prefix();
}

PointSet PointSet::simple(std::vector<Scalar> nodes) {
    std::vector<int> m(nodes.size(), 1);
    return PointSet(std::move(nodes), std::move(m));
}

void PointSet::build_prefix() {
    prefix_.resize(nodes_.size());
    long acc = 0;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        acc += mult_[i];
        prefix_[i] = acc;
    }
}

std::pair<size_t, size_t> PointSet::range_open(const Scalar& a, const Scalar& b) const {
    auto first = std::upper_bound(nodes_.begin(), nodes_.end(), a);
    auto last = std::lower_bound(nodes_.begin(), nodes_.end(), b);
    if (first >= last) return {0, 0};
    return {static_cast<size_t>(first - nodes_.begin()), static_cast<size_t>(last - nodes_.begin())};
}

size_t PointSet::nodes_in_open(const Scalar& a, const Scalar& b) const {
    auto [lo, hi] = range_open(a, b);
    return hi - lo;
}

long PointSet::count_in_open(const Scalar& a, const Scalar& b) const {
    auto [lo, hi] = range_open(a, b);
    if (hi == lo) return 0;
    const long upto = prefix_[hi - 1];
    const long before = lo == 0 ? 0 : prefix_[lo - 1];
    return upto - before;
}

PointSet parse_point_set(std::istream& in) {
    std::vector<Scalar> nodes;
    std::vector<int> mult;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank or comment-only line

        Scalar value;
        try {
            if (tok.rfind("log:", 0) == 0) {
                value = exp(Scalar(tok.substr(4)));
            } else {
                value = Scalar(tok);
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("point-set line " + std::to_string(lineno) + ": " + e.what());
        }

        long m = 1;
        std::string mtok;
        if (ls >> mtok) {
            try {
                size_t pos = 0;
                m = std::stol(mtok, &pos);
                if (pos != mtok.size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw std::runtime_error("point-set line " + std::to_string(lineno) +
                                         ": malformed multiplicity '" + mtok + "'");
            }
            if (m < 1) throw std::runtime_error("point-set line " + std::to_string(lineno) +
                                                ": multiplicity must be >= 1");
            std::string extra;
            if (ls >> extra)
                throw std::runtime_error("point-set line " + std::to_string(lineno) + ": unexpected token '" + extra + "'");
        }

        if (!nodes.empty()) {
            const int c = Scalar::cmp(nodes.back(), value);
            if (c == 0)
                throw std::runtime_error("point-set line " + std::to_string(lineno) + ": duplicate node");
            if (c > 0)
                throw std::runtime_error("point-set line " + std::to_string(lineno) + ": nodes not increasing");
        }
        nodes.push_back(std::move(value));
        mult.push_back(static_cast<int>(m));
    }
    return PointSet(std::move(nodes), std::move(mult));
}

PointSet parse_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point-set file: " + path);
    return parse_point_set(in);
}

}  // namespace sep
