#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rankshift {

/// An element of Z_+^r. Comparison operators are deliberately absent: the
/// order on shapes is partial, use leq() for it.
class Shape {
public:
  Shape() = default;
  explicit Shape(std::vector<std::size_t> coords) : coords_(std::move(coords)) {}
  Shape(std::initializer_list<std::size_t> coords) : coords_(coords) {}

  static Shape zero(std::size_t rank) { return Shape(std::vector<std::size_t>(rank, 0)); }
  /// The cube corner (k, ..., k).
  static Shape uniform(std::size_t rank, std::size_t k) {
    return Shape(std::vector<std::size_t>(rank, k));
  }
  /// Basis vector e_j, j zero-based.
  static Shape unit(std::size_t rank, std::size_t j);

  std::size_t rank() const { return coords_.size(); }
  std::size_t operator[](std::size_t i) const { return coords_[i]; }
  std::span<const std::size_t> coords() const { return coords_; }

  bool is_zero() const;
  bool is_cube() const;
  std::size_t total() const;
  std::size_t min_coord() const;
  std::size_t max_coord() const;
  /// Number of lattice points in [0, m], saturating at UINT64_MAX.
  std::uint64_t box_volume() const;

  bool operator==(const Shape&) const = default;

private:
  std::vector<std::size_t> coords_;
};

/// Coordinatewise partial order a <= b.
bool leq(const Shape& a, const Shape& b);
/// Coordinatewise maximum.
Shape sup(const Shape& a, const Shape& b);
Shape operator+(const Shape& a, const Shape& b);
/// Throws ShapeNotDominated unless leq(b, a).
Shape operator-(const Shape& a, const Shape& b);
Shape operator*(std::size_t k, const Shape& s);

std::string to_string(const Shape& s);
/// Parses "1,2,3"; throws ParseError.
Shape parse_shape(const std::string& text);

/// All l with 0 <= l <= max, first coordinate slowest.
std::vector<Shape> shapes_below(const Shape& max);

/// Row-major addressing of the lattice box [0, m]; the first coordinate varies slowest.
class BoxIndexer {
public:
  explicit BoxIndexer(const Shape& box);

  std::size_t volume() const { return volume_; }
  std::size_t stride(std::size_t j) const { return strides_[j]; }
  std::size_t index(std::span<const std::size_t> point) const;
  std::vector<std::size_t> point(std::size_t index) const;

private:
  Shape box_;
  std::vector<std::size_t> strides_;
  std::size_t volume_ = 1;
};

void require_same_rank(const Shape& a, const Shape& b);

} // namespace rankshift
