#include "rpforge/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpforge {

SimplicialComplex::SimplicialComplex(int vertex_count, std::vector<Simplex> maximal_faces,
                                     std::vector<std::string> labels)
    : vertex_count_(vertex_count), faces_(std::move(maximal_faces)), labels_(std::move(labels)) {
    if (vertex_count_ < 0) throw std::invalid_argument("negative vertex count");
    if (labels_.empty()) {
        for (int v = 0; v < vertex_count_; ++v) labels_.push_back(std::to_string(v));
    } else if (static_cast<int>(labels_.size()) != vertex_count_) {
        throw std::invalid_argument("label count does not match vertex count");
    }
    for (auto& face : faces_) {
        if (face.empty()) throw std::invalid_argument("empty maximal face");
        std::sort(face.begin(), face.end());
        if (std::adjacent_find(face.begin(), face.end()) != face.end())
            throw std::invalid_argument("face with a repeated vertex");
        if (face.front() < 0 || face.back() >= vertex_count_)
            throw std::invalid_argument("face vertex out of range");
    }
    std::sort(faces_.begin(), faces_.end());
    if (std::adjacent_find(faces_.begin(), faces_.end()) != faces_.end())
        throw std::invalid_argument("duplicate maximal face");

    // Containment can only happen between faces of different sizes.
    std::vector<std::vector<int>> by_vertex(vertex_count_);
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
        for (int v : faces_[f]) by_vertex[v].push_back(f);
    for (const auto& face : faces_) {
        for (int g : by_vertex[face.front()]) {
            const auto& other = faces_[g];
            if (other.size() > face.size() &&
                std::includes(other.begin(), other.end(), face.begin(), face.end()))
                throw std::invalid_argument("maximal face contained in another");
        }
    }
}

bool SimplicialComplex::is_pure() const {
    return std::all_of(faces_.begin(), faces_.end(),
                       [&](const Simplex& s) { return s.size() == faces_.front().size(); });
}

int SimplicialComplex::dimension() const {
    std::size_t m = 0;
    for (const auto& s : faces_) m = std::max(m, s.size());
    return static_cast<int>(m) - 1;
}

std::vector<Simplex> SimplicialComplex::faces(int d) const {
    std::vector<Simplex> out;
    if (d < 0) return out;
    const std::size_t k = static_cast<std::size_t>(d) + 1;
    for (const auto& face : faces_) {
        if (face.size() < k) continue;
        // Enumerate k-subsets of the face by index combinations.
        std::vector<std::size_t> idx(k);
        for (std::size_t t = 0; t < k; ++t) idx[t] = t;
        while (true) {
            Simplex s(k);
            for (std::size_t t = 0; t < k; ++t) s[t] = face[idx[t]];
            out.push_back(std::move(s));
            std::size_t t = k;
            while (t > 0 && idx[t - 1] == face.size() - k + t - 1) --t;
            if (t == 0) break;
            ++idx[t - 1];
            for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<long long> SimplicialComplex::f_vector() const {
    std::vector<long long> f;
    for (int d = 0; d <= dimension(); ++d) f.push_back(static_cast<long long>(faces(d).size()));
    return f;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    const auto f = f_vector();
    for (std::size_t d = 0; d < f.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * f[d];
    return chi;
}

Involution::Involution(std::vector<int> partner) : partner_(std::move(partner)) {
    const int n = size();
    for (int v = 0; v < n; ++v) {
        const int w = partner_[v];
        if (w < 0 || w >= n) throw std::invalid_argument("involution partner out of range");
        if (w == v) throw std::invalid_argument("involution fixes vertex " + std::to_string(v));
        if (partner_[w] != v)
            throw std::invalid_argument("pairing is not an involution at vertex " +
                                        std::to_string(v));
    }
}

Simplex Involution::apply(const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (int v : s) out.push_back(partner_.at(v));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rpforge
