#include "rankshift/shape.hpp"

#include "rankshift/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

namespace rankshift {

Shape Shape::unit(std::size_t rank, std::size_t j) {
  if (j >= rank) throw Error(ErrorCode::ShapeMismatch, "direction out of range");
  std::vector<std::size_t> c(rank, 0);
  c[j] = 1;
  return Shape(std::move(c));
}

bool Shape::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::size_t c) { return c == 0; });
}

bool Shape::is_cube() const {
  return std::adjacent_find(coords_.begin(), coords_.end(), std::not_equal_to<>()) ==
         coords_.end();
}

std::size_t Shape::total() const {
  return std::accumulate(coords_.begin(), coords_.end(), std::size_t{0});
}

std::size_t Shape::min_coord() const {
  return coords_.empty() ? 0 : *std::min_element(coords_.begin(), coords_.end());
}

std::size_t Shape::max_coord() const {
  return coords_.empty() ? 0 : *std::max_element(coords_.begin(), coords_.end());
}

std::uint64_t Shape::box_volume() const {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 1;
  for (auto c : coords_) {
    const std::uint64_t f = c + 1;
    if (v > cap / f) return cap;
    v *= f;
  }
  return v;
}

void require_same_rank(const Shape& a, const Shape& b) {
  if (a.rank() != b.rank())
    throw Error(ErrorCode::ShapeMismatch,
                "rank " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
}

bool leq(const Shape& a, const Shape& b) {
  require_same_rank(a, b);
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Shape sup(const Shape& a, const Shape& b) {
  require_same_rank(a, b);
  std::vector<std::size_t> c(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) c[i] = std::max(a[i], b[i]);
  return Shape(std::move(c));
}

Shape operator+(const Shape& a, const Shape& b) {
  require_same_rank(a, b);
  std::vector<std::size_t> c(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) c[i] = a[i] + b[i];
  return Shape(std::move(c));
}

Shape operator-(const Shape& a, const Shape& b) {
  if (!leq(b, a))
    throw Error(ErrorCode::ShapeNotDominated, to_string(b) + " is not <= " + to_string(a));
  std::vector<std::size_t> c(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) c[i] = a[i] - b[i];
  return Shape(std::move(c));
}

Shape operator*(std::size_t k, const Shape& s) {
  std::vector<std::size_t> c(s.coords().begin(), s.coords().end());
  for (auto& x : c) x *= k;
  return Shape(std::move(c));
}

std::string to_string(const Shape& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.rank(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Shape parse_shape(const std::string& text) {
  std::vector<std::size_t> coords;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
      throw Error(ErrorCode::ParseError, "bad shape '" + text + "'");
    coords.push_back(value);
    pos = comma + 1;
  }
  return Shape(std::move(coords));
}

std::vector<Shape> shapes_below(const Shape& max) {
  std::vector<Shape> out;
  BoxIndexer box(max);
  out.reserve(box.volume());
  for (std::size_t i = 0; i < box.volume(); ++i) out.emplace_back(box.point(i));
  return out;
}

BoxIndexer::BoxIndexer(const Shape& box) : box_(box), strides_(box.rank()) {
  for (std::size_t j = box.rank(); j-- > 0;) {
    strides_[j] = volume_;
    volume_ *= box[j] + 1;
  }
}

std::size_t BoxIndexer::index(std::span<const std::size_t> point) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < point.size(); ++j) idx += point[j] * strides_[j];
  return idx;
}

std::vector<std::size_t> BoxIndexer::point(std::size_t index) const {
  std::vector<std::size_t> p(box_.rank());
  for (std::size_t j = 0; j < box_.rank(); ++j) {
    p[j] = index / strides_[j];
    index %= strides_[j];
  }
  return p;
}

} // namespace rankshift
