#include "rankshift/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace rankshift::io {

namespace {

template <class F>
auto parsing(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

} // namespace

json family_to_json(const MatrixFamily& family) {
  json mats = json::array();
  for (const auto& m : family.matrices()) {
    json rows = json::array();
    for (std::size_t a = 0; a < m.rows(); ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return json{{"rank", family.rank()}, {"alphabet", family.alphabet().letters()}, {"matrices", mats}};
}

MatrixFamily family_from_json(const json& j) {
  return parsing("family", [&] {
    const auto rank = j.at("rank").get<std::size_t>();
    Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
    std::vector<ZeroOneMatrix> mats;
    for (const auto& m : j.at("matrices"))
      mats.push_back(ZeroOneMatrix::from_rows(m.get<std::vector<std::vector<int>>>()));
    if (mats.size() != rank)
      throw Error(ErrorCode::ShapeMismatch, "rank " + std::to_string(rank) + " but " +
                                                std::to_string(mats.size()) + " matrices");
    return make_family(std::move(alphabet), std::move(mats));
  });
}

json report_to_json(const ValidationReport& report) {
  if (report.valid()) return json{{"status", "valid"}};
  json violations = json::array();
  for (const auto& v : report.violations) {
    json witness = json::object();
    for (const auto& f : v.witness) {
      if (f.values.size() == 1)
        witness[f.name] = f.values.front();
      else
        witness[f.name] = f.values;
    }
    violations.push_back({{"code", std::string(to_string(v.code))}, {"witness", witness}, {"message", v.message}});
  }
  return json{{"status", "invalid"}, {"violations", violations}};
}

json word_to_json(const Word& w) {
  return json{{"shape", std::vector<std::size_t>(w.shape().coords().begin(), w.shape().coords().end())},
              {"labels", std::vector<Letter>(w.labels().begin(), w.labels().end())}};
}

Word word_from_json(const json& j) {
  return parsing("word", [&] {
    return Word(Shape(j.at("shape").get<std::vector<std::size_t>>()), j.at("labels").get<std::vector<Letter>>());
  });
}

json potential_to_json(const Potential& f, std::size_t rank) {
  json entries = json::array();
  const Shape shape = Shape::uniform(rank, f.window());
  for (const auto& [labels, value] : f.table())
    entries.push_back({{"word", word_to_json(Word(shape, labels))}, {"value", value}});
  return json{{"window", f.window()}, {"default", f.default_value()}, {"entries", entries}};
}

Potential potential_from_json(const json& j, std::size_t rank) {
  return parsing("potential", [&] {
    const auto window = j.at("window").get<std::size_t>();
    const double def = j.value("default", 0.0);
    Potential::Table table;
    if (j.contains("entries"))
      for (const auto& e : j.at("entries")) {
        const Word w = word_from_json(e.at("word"));
        if (!(w.shape() == Shape::uniform(rank, window)))
          throw Error(ErrorCode::ShapeMismatch, "potential entry is not a window-shaped word");
        table[std::vector<Letter>(w.labels().begin(), w.labels().end())] = e.at("value").get<double>();
      }
    return Potential(window, def, std::move(table));
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

MatrixFamily load_family(const std::string& path) { return family_from_json(read_json_file(path)); }

Potential load_potential(const std::string& path, std::size_t rank) {
  return potential_from_json(read_json_file(path), rank);
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

json round_floats(const json& j) {
  if (j.is_number_float()) return round_significant(j.get<double>());
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto& item : out) item = round_floats(item);
    return out;
  }
  return j;
}

} // namespace rankshift::io
