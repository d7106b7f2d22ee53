#include "nilkit/cube.hpp"

#include <algorithm>
#include <sstream>

#include "nilkit/error.hpp"

namespace nilkit {

int MorphismCoord::evaluate(VertexIndex w) const {
  switch (kind) {
    case Kind::Const0: return 0;
    case Kind::Const1: return 1;
    case Kind::Proj: return static_cast<int>((w >> (index - 1)) & 1U);
    case Kind::Flip: return 1 - static_cast<int>((w >> (index - 1)) & 1U);
  }
  return 0;
}

CubeMorphism::CubeMorphism(int source_dim, std::vector<MorphismCoord> coords)
    : source_dim_(source_dim), coords_(std::move(coords)) {
  if (source_dim < 0 || source_dim > kMaxCubeDim || coords_.size() > kMaxCubeDim)
    throw InputError("cube.BadDimension", "morphism dimensions out of range");
  for (const auto& c : coords_) {
    bool indexed = c.kind == MorphismCoord::Kind::Proj || c.kind == MorphismCoord::Kind::Flip;
    if (indexed && (c.index < 1 || c.index > source_dim))
      throw InputError("cube.BadMorphism", "coordinate index " + std::to_string(c.index) +
                                               " outside 1.." + std::to_string(source_dim));
  }
}

CubeMorphism CubeMorphism::identity(int dim) {
  std::vector<MorphismCoord> coords;
  for (int i = 1; i <= dim; ++i) coords.push_back({MorphismCoord::Kind::Proj, i});
  return CubeMorphism(dim, std::move(coords));
}

VertexIndex CubeMorphism::operator()(VertexIndex w) const {
  VertexIndex out = 0;
  for (std::size_t j = 0; j < coords_.size(); ++j)
    out |= static_cast<VertexIndex>(coords_[j].evaluate(w)) << j;
  return out;
}

std::vector<VertexIndex> CubeMorphism::vertex_table() const {
  std::vector<VertexIndex> table(vertex_count(source_dim_));
  for (VertexIndex w = 0; w < table.size(); ++w) table[w] = (*this)(w);
  return table;
}

CubeMorphism CubeMorphism::compose(const CubeMorphism& inner) const {
  if (inner.target_dim() != source_dim_)
    throw InputError("cube.DimensionMismatch", "cannot compose morphisms");
  using K = MorphismCoord::Kind;
  std::vector<MorphismCoord> coords;
  coords.reserve(coords_.size());
  for (const auto& outer : coords_) {
    if (outer.kind == K::Const0 || outer.kind == K::Const1) {
      coords.push_back(outer);
      continue;
    }
    MorphismCoord in = inner.coords_[outer.index - 1];
    if (outer.kind == K::Flip) {
      switch (in.kind) {
        case K::Const0: in.kind = K::Const1; break;
        case K::Const1: in.kind = K::Const0; break;
        case K::Proj: in.kind = K::Flip; break;
        case K::Flip: in.kind = K::Proj; break;
      }
    }
    coords.push_back(in);
  }
  return CubeMorphism(inner.source_dim_, std::move(coords));
}

std::string CubeMorphism::to_string() const {
  std::ostringstream os;
  os << "{0,1}^" << source_dim_ << "->{0,1}^" << target_dim() << " (";
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (j) os << ", ";
    const auto& c = coords_[j];
    switch (c.kind) {
      case MorphismCoord::Kind::Const0: os << "0"; break;
      case MorphismCoord::Kind::Const1: os << "1"; break;
      case MorphismCoord::Kind::Proj: os << "w" << c.index; break;
      case MorphismCoord::Kind::Flip: os << "1-w" << c.index; break;
    }
  }
  os << ")";
  return os.str();
}

Face::Face(int ambient_dim, std::vector<std::pair<int, int>> fixed)
    : ambient_dim_(ambient_dim), fixed_(std::move(fixed)) {
  std::sort(fixed_.begin(), fixed_.end());
  for (std::size_t k = 0; k < fixed_.size(); ++k) {
    auto [i, v] = fixed_[k];
    if (i < 1 || i > ambient_dim || (v != 0 && v != 1))
      throw InputError("cube.BadFace", "face coordinate out of range");
    if (k > 0 && fixed_[k - 1].first == i)
      throw InputError("cube.BadFace", "repeated face coordinate");
    mask_ |= VertexIndex{1} << (i - 1);
    value_ |= static_cast<VertexIndex>(v) << (i - 1);
  }
}

Face Face::vertex(int ambient_dim, VertexIndex w) {
  std::vector<std::pair<int, int>> fixed;
  for (int i = 1; i <= ambient_dim; ++i) fixed.emplace_back(i, static_cast<int>((w >> (i - 1)) & 1U));
  return Face(ambient_dim, std::move(fixed));
}

std::vector<VertexIndex> Face::members() const {
  std::vector<VertexIndex> out;
  for (VertexIndex w = 0; w < vertex_count(ambient_dim_); ++w)
    if (contains(w)) out.push_back(w);
  return out;
}

std::string Face::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < fixed_.size(); ++k) {
    if (k) os << ",";
    os << "w" << fixed_[k].first << "=" << fixed_[k].second;
  }
  os << "} in {0,1}^" << ambient_dim_;
  return os.str();
}

Configuration::Configuration(int d, std::vector<PointId> v) : dim(d), values(std::move(v)) {
  if (d < 0 || d > kMaxCubeDim || values.size() != vertex_count(d))
    throw InputError("cube.BadConfiguration", "configuration of dimension " + std::to_string(d) +
                                                  " needs " + std::to_string(vertex_count(d)) +
                                                  " values");
}

Corner::Corner(int d, std::vector<PointId> v) : dim(d), values(std::move(v)) {
  if (d < 0 || d > kMaxCubeDim || values.size() != vertex_count(d) - 1)
    throw InputError("cube.BadCorner", "corner of dimension " + std::to_string(d) + " needs " +
                                           std::to_string(vertex_count(d) - 1) + " values");
}

Configuration Corner::complete_with(PointId top) const {
  std::vector<PointId> v = values;
  v.push_back(top);
  return Configuration(dim, std::move(v));
}

Configuration apply_morphism(const Configuration& c, const CubeMorphism& phi) {
  if (phi.target_dim() != c.dim)
    throw InputError("cube.DimensionMismatch",
                     "morphism target dimension " + std::to_string(phi.target_dim()) +
                         " does not match configuration dimension " + std::to_string(c.dim));
  std::vector<PointId> out(vertex_count(phi.source_dim()));
  for (VertexIndex w = 0; w < out.size(); ++w) out[w] = c.values[phi(w)];
  return Configuration(phi.source_dim(), std::move(out));
}

std::vector<CubeMorphism> enumerate_morphisms(int source_dim, int target_dim) {
  if (source_dim < 0 || target_dim < 0 || source_dim > kMaxCubeDim || target_dim > kMaxCubeDim)
    throw InputError("cube.BadDimension", "morphism dimensions out of range");
  const std::uint64_t choices = 2 + 2 * static_cast<std::uint64_t>(source_dim);
  std::uint64_t total = 1;
  for (int j = 0; j < target_dim; ++j) {
    total *= choices;
    check_guard("enumerate_morphisms", total);
  }
  auto coord_of = [](std::uint64_t digit) {
    using K = MorphismCoord::Kind;
    if (digit == 0) return MorphismCoord{K::Const0, 0};
    if (digit == 1) return MorphismCoord{K::Const1, 0};
    int idx = static_cast<int>((digit - 2) / 2) + 1;
    return MorphismCoord{(digit - 2) % 2 == 0 ? K::Proj : K::Flip, idx};
  };
  std::vector<CubeMorphism> out;
  out.reserve(total);
  std::vector<std::uint64_t> digits(target_dim, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::vector<MorphismCoord> coords(target_dim);
    for (int j = 0; j < target_dim; ++j) coords[j] = coord_of(digits[j]);
    out.emplace_back(source_dim, std::move(coords));
    // the first coordinate is the most significant in the lexicographic order
    for (int j = target_dim - 1; j >= 0; --j) {
      if (++digits[j] < choices) break;
      digits[j] = 0;
    }
  }
  return out;
}

Configuration concatenate(const Configuration& c0, const Configuration& c1, int axis) {
  if (c0.dim != c1.dim)
    throw InputError("cube.DimensionMismatch", "concatenating configurations of different dimension");
  const int dim = c0.dim + 1;
  if (axis < 1 || axis > dim) throw InputError("cube.BadAxis", "axis out of range");
  const VertexIndex low_mask = (VertexIndex{1} << (axis - 1)) - 1;
  std::vector<PointId> out(vertex_count(dim));
  for (VertexIndex w = 0; w < out.size(); ++w) {
    VertexIndex rest = (w & low_mask) | ((w >> axis) << (axis - 1));
    out[w] = ((w >> (axis - 1)) & 1U) ? c1.values[rest] : c0.values[rest];
  }
  return Configuration(dim, std::move(out));
}

Configuration slice(const Configuration& c, int axis, int value) {
  if (axis < 1 || axis > c.dim) throw InputError("cube.BadAxis", "axis out of range");
  const VertexIndex low_mask = (VertexIndex{1} << (axis - 1)) - 1;
  std::vector<PointId> out(vertex_count(c.dim - 1));
  for (VertexIndex r = 0; r < out.size(); ++r) {
    VertexIndex w = (r & low_mask) | (static_cast<VertexIndex>(value) << (axis - 1)) |
                    ((r >> (axis - 1)) << axis);
    out[r] = c.values[w];
  }
  return Configuration(c.dim - 1, std::move(out));
}

Configuration corner_pattern(int dim, PointId x, PointId y) {
  std::vector<PointId> v(vertex_count(dim), x);
  v.back() = y;
  return Configuration(dim, std::move(v));
}

Configuration constant_pattern(int dim, PointId x) {
  return Configuration(dim, std::vector<PointId>(vertex_count(dim), x));
}

Corner corner_of(const Configuration& c) {
  return Corner(c.dim, std::vector<PointId>(c.values.begin(), c.values.end() - 1));
}

std::vector<Face> enumerate_faces(int dim, int codim) {
  if (codim < 0 || codim > dim) throw InputError("cube.BadFace", "codimension out of range");
  std::vector<Face> out;
  for (VertexIndex mask = 0; mask < vertex_count(dim); ++mask) {
    if (std::popcount(mask) != codim) continue;
    std::vector<int> coords;
    for (int i = 1; i <= dim; ++i)
      if ((mask >> (i - 1)) & 1U) coords.push_back(i);
    for (VertexIndex alpha = 0; alpha < vertex_count(codim); ++alpha) {
      std::vector<std::pair<int, int>> fixed;
      for (int j = 0; j < codim; ++j) fixed.emplace_back(coords[j], static_cast<int>((alpha >> j) & 1U));
      out.emplace_back(dim, std::move(fixed));
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return std::pair(a.mask(), a.value()) < std::pair(b.mask(), b.value());
  });
  return out;
}

ConfigCodec::ConfigCodec(PointId points, int dim) : n_(points), dim_(dim) {
  if (points == 0) throw InputError("cube.EmptySpace", "configurations over an empty point set");
  if (dim < 0 || dim > kMaxCubeDim) throw InputError("cube.BadDimension", "dimension out of range");
  const VertexIndex v = vertex_count(dim);
  weights_.assign(v, 1);
  unsigned __int128 acc = 1;
  for (VertexIndex k = 0; k < v; ++k) {
    // vertex v-1-k has weight n^k
    weights_[v - 1 - k] = static_cast<std::uint64_t>(acc);
    acc *= n_;
    if (acc > (static_cast<unsigned __int128>(1) << 64))
      throw Error("cube.CodeOverflow", std::to_string(n_) + "^" + std::to_string(v) +
                                           " configurations do not fit a 64-bit code");
  }
  space_ = acc == (static_cast<unsigned __int128>(1) << 64) ? UINT64_MAX
                                                            : static_cast<std::uint64_t>(acc);
}

CubeCode ConfigCodec::encode(std::span<const PointId> values) const {
  CubeCode code = 0;
  for (PointId p : values) code = code * n_ + p;
  return code;
}

void ConfigCodec::decode(CubeCode code, std::span<PointId> out) const {
  for (VertexIndex k = vertices(); k-- > 0;) {
    out[k] = static_cast<PointId>(code % n_);
    code /= n_;
  }
}

Configuration ConfigCodec::decode(CubeCode code) const {
  std::vector<PointId> v(vertices());
  decode(code, v);
  return Configuration(dim_, std::move(v));
}

}  // namespace nilkit
