#pragma once

#include <string>
#include <vector>

#include "rpforge/report.hpp"

namespace rpforge {

using Simplex = std::vector<int>;  // sorted, distinct vertex ids

// A simplicial complex given by its maximal faces over vertices 0..V-1.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Sorts each face and the face list. Throws std::invalid_argument on
    // repeated or out-of-range vertices, duplicate faces, or a face contained
    // in another. Empty `labels` get numeric names.
    SimplicialComplex(int vertex_count, std::vector<Simplex> maximal_faces,
                      std::vector<std::string> labels = {});

    int vertex_count() const { return vertex_count_; }
    const std::vector<Simplex>& maximal_faces() const { return faces_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool is_pure() const;
    // Dimension of the largest face; -1 for the empty complex.
    int dimension() const;
    // f[d] = number of d-dimensional faces in the closure.
    std::vector<long long> f_vector() const;
    // All faces of dimension d in the closure, sorted lexicographically.
    std::vector<Simplex> faces(int d) const;
    long long euler_characteristic() const;

private:
    int vertex_count_ = 0;
    std::vector<Simplex> faces_;
    std::vector<std::string> labels_;
};

// A fixed-point-free pairing of vertex ids, v <-> partner(v).
class Involution {
public:
    Involution() = default;
    // Throws std::invalid_argument unless the pairing is its own inverse and
    // moves every vertex.
    explicit Involution(std::vector<int> partner);

    int operator()(int v) const { return partner_[v]; }
    int size() const { return static_cast<int>(partner_.size()); }
    Simplex apply(const Simplex& s) const;

private:
    std::vector<int> partner_;
};

} // namespace rpforge
