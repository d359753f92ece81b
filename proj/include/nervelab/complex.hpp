#pragma once

// Finite abstract simplicial complexes over an ordered vertex type, skeleta,
// cones and simplicial maps. Everything here is a value type: operations
// return new complexes and never mutate their arguments.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nervelab/error.hpp"

namespace nervelab {

using VertexId = std::string;

/// A simplex is a nonempty, strictly increasing vertex list.
template <class V>
using Simplex = std::vector<V>;

template <class V>
Simplex<V> make_simplex(std::vector<V> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

template <class V>
bool is_face_of(const Simplex<V>& face, const Simplex<V>& simplex) {
  return std::includes(simplex.begin(), simplex.end(), face.begin(), face.end());
}

template <class V>
bool intersects(const Simplex<V>& a, const Simplex<V>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

template <class V>
Simplex<V> simplex_union(const Simplex<V>& a, const Simplex<V>& b) {
  Simplex<V> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class V>
class ComplexBuilder;

template <class V>
class Complex {
 public:
  using vertex_type = V;
  using simplex_type = Simplex<V>;

  Complex() = default;

  /// Face closure of `raw`. Fails on an empty family or an empty member.
  static Complex closure_of(const std::vector<Simplex<V>>& raw);

  bool contains(const Simplex<V>& s) const { return simplices_.count(s) != 0; }
  bool has_vertex(const V& v) const { return vertices_.count(v) != 0; }

  const std::set<Simplex<V>>& simplices() const { return simplices_; }
  const std::set<V>& vertices() const { return vertices_; }
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }

  /// (max simplex cardinality) - 1; -1 for the empty complex.
  int dim() const {
    std::size_t best = 0;
    for (const auto& s : simplices_) best = std::max(best, s.size());
    return static_cast<int>(best) - 1;
  }

  /// Number of simplices per dimension, index = dimension.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> f(static_cast<std::size_t>(dim() + 1), 0);
    for (const auto& s : simplices_) ++f[s.size() - 1];
    return f;
  }

  std::vector<Simplex<V>> maximal_simplices() const {
    std::vector<Simplex<V>> out;
    for (const auto& s : simplices_) {
      bool maximal = true;
      for (const auto& v : vertices_) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        Simplex<V> bigger = s;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
        if (contains(bigger)) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
    return out;
  }

  bool subcomplex_of(const Complex& other) const {
    return std::includes(other.simplices_.begin(), other.simplices_.end(), simplices_.begin(),
                         simplices_.end());
  }

  friend bool operator==(const Complex&, const Complex&) = default;

 private:
  friend class ComplexBuilder<V>;
  std::set<Simplex<V>> simplices_;
  std::set<V> vertices_;
};

/// Accumulates simplices, keeping the set face-closed at every step.
template <class V>
class ComplexBuilder {
 public:
  ComplexBuilder() = default;
  explicit ComplexBuilder(Complex<V> start) : c_(std::move(start)) {}

  void add(const Simplex<V>& s) {
    if (s.empty() || c_.simplices_.count(s) != 0) return;
    c_.simplices_.insert(s);
    if (s.size() == 1) {
      c_.vertices_.insert(s.front());
      return;
    }
    // A present simplex already has all its faces, so recursion stops early.
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex<V> facet;
      facet.reserve(s.size() - 1);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) facet.push_back(s[i]);
      add(facet);
    }
  }

  void add_all(const Complex<V>& other) {
    for (const auto& s : other.simplices()) add(s);
  }

  bool contains(const Simplex<V>& s) const { return c_.contains(s); }

  Complex<V> build() && { return std::move(c_); }
  const Complex<V>& peek() const { return c_; }

 private:
  Complex<V> c_;
};

template <class V>
Complex<V> Complex<V>::closure_of(const std::vector<Simplex<V>>& raw) {
  if (raw.empty()) throw Error(Errc::invalid_complex, "[nonempty] a complex needs at least one simplex");
  ComplexBuilder<V> b;
  for (const auto& s : raw) {
    if (s.empty()) throw Error(Errc::invalid_complex, "[nonempty-simplex] empty vertex set in input");
    b.add(make_simplex(s));
  }
  return std::move(b).build();
}

/// The k-skeleton: simplices with at most k+1 vertices.
template <class V>
Complex<V> skeleton(const Complex<V>& c, int k) {
  ComplexBuilder<V> b;
  if (k < 0) return std::move(b).build();
  for (const auto& s : c.simplices())
    if (s.size() <= static_cast<std::size_t>(k) + 1) b.add(s);
  return std::move(b).build();
}

/// Adds `apex` to every simplex, keeping the original ones. Unlike `cone`,
/// the apex may already be a vertex (used to state cone-witness conditions
/// inside a fixed target complex).
template <class V>
Complex<V> join_apex(const Complex<V>& c, const std::type_identity_t<V>& apex) {
  ComplexBuilder<V> b(c);
  b.add({apex});
  for (const auto& s : c.simplices()) b.add(make_simplex(simplex_union(s, Simplex<V>{apex})));
  return std::move(b).build();
}

/// The cone c*v for a fresh vertex v.
template <class V>
Complex<V> cone(const Complex<V>& c, const std::type_identity_t<V>& v) {
  if (c.has_vertex(v)) throw Error(Errc::vertex_clash, "[fresh-apex] cone vertex is already a vertex of the complex");
  return join_apex(c, v);
}

/// Drops every simplex containing v (the inverse of coning on v).
template <class V>
Complex<V> delete_vertex(const Complex<V>& c, const std::type_identity_t<V>& v) {
  ComplexBuilder<V> b;
  for (const auto& s : c.simplices())
    if (!std::binary_search(s.begin(), s.end(), v)) b.add(s);
  return std::move(b).build();
}

template <class V>
Complex<V> complex_union(const Complex<V>& a, const Complex<V>& b) {
  ComplexBuilder<V> out(a);
  out.add_all(b);
  return std::move(out).build();
}

/// A vertex map between two complexes. Validity (simpliciality) is a
/// separate check so that invalid maps can be represented and rejected.
template <class V, class W>
struct SimplicialMap {
  Complex<V> source;
  Complex<W> target;
  std::map<V, W> vertex_images;

  const W& image(const V& v) const {
    auto it = vertex_images.find(v);
    if (it == vertex_images.end()) throw Error(Errc::incomplete_map, "[total-vertex-map] a source vertex has no image");
    return it->second;
  }

  Simplex<W> image(const Simplex<V>& s) const {
    std::vector<W> out;
    out.reserve(s.size());
    for (const auto& v : s) out.push_back(image(v));
    return make_simplex(std::move(out));
  }
};

/// True iff every source simplex maps onto a target simplex.
template <class V, class W>
bool check_simplicial_map(const SimplicialMap<V, W>& m) {
  for (const auto& v : m.source.vertices())
    if (m.vertex_images.count(v) == 0)
      throw Error(Errc::incomplete_map, "[total-vertex-map] a source vertex has no image");
  for (const auto& s : m.source.simplices())
    if (!m.target.contains(m.image(s))) return false;
  return true;
}

/// second ∘ first.
template <class U, class V, class W>
SimplicialMap<U, W> compose(const SimplicialMap<V, W>& second, const SimplicialMap<U, V>& first) {
  SimplicialMap<U, W> out{first.source, second.target, {}};
  for (const auto& [u, v] : first.vertex_images) {
    auto it = second.vertex_images.find(v);
    if (it == second.vertex_images.end())
      throw Error(Errc::compose_error, "[composable] an image vertex is not in the domain of the second map");
    out.vertex_images.emplace(u, it->second);
  }
  return out;
}

}  // namespace nervelab
