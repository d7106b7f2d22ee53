#pragma once

// Discrete cube combinatorics: vertices of {0,1}^l, cube morphisms, faces,
// configurations and the corner / constant patterns built from them.
//
// A vertex w of {0,1}^l is stored as an integer with bit (i-1) equal to w_i.
// All canonical orders are ascending integer orders on these encodings.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nilkit {

using PointId = std::uint32_t;
using VertexIndex = std::uint32_t;
using CubeCode = std::uint64_t;

inline constexpr int kMaxCubeDim = 16;

inline VertexIndex vertex_count(int dim) { return VertexIndex{1} << dim; }
inline VertexIndex top_vertex(int dim) { return vertex_count(dim) - 1; }
inline int vertex_weight(VertexIndex w) { return std::popcount(w); }
/// (-1)^{|w|}
inline int vertex_sign(VertexIndex w) { return (std::popcount(w) & 1) ? -1 : 1; }

struct Vertex {
  int dim = 0;
  VertexIndex bits = 0;

  /// Coordinate w_i, 1-based.
  int coord(int i) const { return static_cast<int>((bits >> (i - 1)) & 1U); }
  int weight() const { return vertex_weight(bits); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// One output coordinate of a cube morphism.
struct MorphismCoord {
  enum class Kind : std::uint8_t { Const0, Const1, Proj, Flip };
  Kind kind = Kind::Const0;
  int index = 0;  // 1-based source coordinate for Proj / Flip

  int evaluate(VertexIndex w) const;
  friend bool operator==(const MorphismCoord&, const MorphismCoord&) = default;
};

/// A morphism of discrete cubes {0,1}^source_dim -> {0,1}^target_dim.
class CubeMorphism {
 public:
  CubeMorphism() = default;
  CubeMorphism(int source_dim, std::vector<MorphismCoord> coords);

  static CubeMorphism identity(int dim);

  int source_dim() const { return source_dim_; }
  int target_dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<MorphismCoord>& coords() const { return coords_; }

  VertexIndex operator()(VertexIndex w) const;
  /// image of every source vertex, indexed by source vertex
  std::vector<VertexIndex> vertex_table() const;

  /// (*this) o inner, computed symbolically.
  CubeMorphism compose(const CubeMorphism& inner) const;

  std::string to_string() const;
  friend bool operator==(const CubeMorphism&, const CubeMorphism&) = default;

 private:
  int source_dim_ = 0;
  std::vector<MorphismCoord> coords_;
};

/// A face of {0,1}^ambient_dim: the vertices agreeing with `fixed`.
class Face {
 public:
  Face() = default;
  Face(int ambient_dim, std::vector<std::pair<int, int>> fixed);

  /// The whole cube (codimension 0).
  static Face whole(int ambient_dim) { return Face(ambient_dim, {}); }
  static Face vertex(int ambient_dim, VertexIndex w);

  int ambient_dim() const { return ambient_dim_; }
  int codim() const { return static_cast<int>(fixed_.size()); }
  const std::vector<std::pair<int, int>>& fixed() const { return fixed_; }

  bool contains(VertexIndex w) const { return (w & mask_) == value_; }
  std::vector<VertexIndex> members() const;
  VertexIndex mask() const { return mask_; }
  VertexIndex value() const { return value_; }

  std::string to_string() const;
  friend bool operator==(const Face& a, const Face& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.fixed_ == b.fixed_;
  }

 private:
  int ambient_dim_ = 0;
  std::vector<std::pair<int, int>> fixed_;  // (coordinate, value), sorted
  VertexIndex mask_ = 0;
  VertexIndex value_ = 0;
};

/// A total map {0,1}^dim -> points.
struct Configuration {
  int dim = 0;
  std::vector<PointId> values;

  Configuration() = default;
  Configuration(int d, std::vector<PointId> v);

  PointId operator[](VertexIndex w) const { return values[w]; }
  PointId& operator[](VertexIndex w) { return values[w]; }
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// A map on {0,1}^dim minus the top vertex.
struct Corner {
  int dim = 0;
  std::vector<PointId> values;  // indexed by vertex, size 2^dim - 1

  Corner() = default;
  Corner(int d, std::vector<PointId> v);

  /// The configuration obtained by placing `top` at the all-ones vertex.
  Configuration complete_with(PointId top) const;
  friend bool operator==(const Corner&, const Corner&) = default;
};

/// c o phi
Configuration apply_morphism(const Configuration& c, const CubeMorphism& phi);

/// All (2 + 2l)^k morphisms {0,1}^l -> {0,1}^k in lexicographic coordinate
/// order (Const0 < Const1 < Proj(1) < Flip(1) < Proj(2) < ...).
std::vector<CubeMorphism> enumerate_morphisms(int source_dim, int target_dim);

/// [c0, c1] with the new coordinate inserted at position `axis` (1-based).
Configuration concatenate(const Configuration& c0, const Configuration& c1, int axis);
/// Restriction to the face w_axis = value, as a (dim-1)-configuration.
Configuration slice(const Configuration& c, int axis, int value);

/// The corner pattern: y at the top vertex, x elsewhere.
Configuration corner_pattern(int dim, PointId x, PointId y);
/// The constant configuration.
Configuration constant_pattern(int dim, PointId x);
Corner corner_of(const Configuration& c);

/// All C(l,d) 2^d faces of codimension d, ordered by (fixed-coordinate mask,
/// fixed values) as integers.
std::vector<Face> enumerate_faces(int dim, int codim);

/// Mixed-radix encoding of configurations over n points. Vertex 0 is the
/// most significant digit, so integer order is lexicographic order of the
/// value vectors and the top vertex is the least significant digit.
class ConfigCodec {
 public:
  ConfigCodec(PointId points, int dim);

  PointId points() const { return n_; }
  int dim() const { return dim_; }
  VertexIndex vertices() const { return vertex_count(dim_); }
  /// n^{2^dim}; saturates at UINT64_MAX when it does not fit.
  std::uint64_t space_size() const { return space_; }
  std::uint64_t weight(VertexIndex w) const { return weights_[w]; }

  CubeCode encode(std::span<const PointId> values) const;
  CubeCode encode(const Configuration& c) const { return encode(c.values); }
  void decode(CubeCode code, std::span<PointId> out) const;
  Configuration decode(CubeCode code) const;
  PointId digit(CubeCode code, VertexIndex w) const {
    return static_cast<PointId>((code / weights_[w]) % n_);
  }

 private:
  PointId n_;
  int dim_;
  std::uint64_t space_;
  std::vector<std::uint64_t> weights_;
};

}  // namespace nilkit
