#include "mecsim/scenario_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "mecsim/errors.hpp"
#include "mecsim/scenario.hpp"

namespace mecsim {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

json point_to_json(const Point2& p) { return json::array({p.x, p.y}); }

// Field-path aware accessors; every failure names the offending field.
class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ParseError(fmt::format("{}: field '{}': {}", source_, path, what));
  }

  const json& field(const json& obj, const std::string& key) const {
    if (!obj.is_object()) fail(key, "expected an object at top level");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing");
    return *it;
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  std::size_t count(const json& v, const std::string& path) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(path, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  const json& array(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }

  std::vector<double> numbers(const json& v, const std::string& path) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < array(v, path).size(); ++i) {
      out.push_back(number(v[i], fmt::format("{}[{}]", path, i)));
    }
    return out;
  }

  Point2 point(const json& v, const std::string& path) const {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [x, y]");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
  }

 private:
  std::string source_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string to_text(const Scenario& s) {
  json doc;
  doc["num_clouds"] = s.num_clouds;
  doc["num_users"] = s.num_users;
  doc["num_slots"] = s.num_slots;
  doc["bs_capacity"] = s.bs_capacity;
  doc["cloud_capacity"] = s.cloud_capacity;
  doc["service_size"] = s.service_size;
  json lat = json::array();
  for (const auto& m : s.link_latency) lat.push_back(matrix_to_json(m));
  doc["link_latency"] = std::move(lat);
  doc["coverage"] = s.coverage;
  doc["demand"] = s.demand;
  if (s.geometry) {
    json g;
    json stations = json::array();
    for (const auto& p : s.geometry->stations) stations.push_back(point_to_json(p));
    g["stations"] = std::move(stations);
    g["coverage_radius"] = s.geometry->coverage_radius;
    json users = json::array();
    for (const auto& slot : s.geometry->user_positions) {
      json row = json::array();
      for (const auto& p : slot) row.push_back(point_to_json(p));
      users.push_back(std::move(row));
    }
    g["user_positions"] = std::move(users);
    doc["geometry"] = std::move(g);
  }
  return doc.dump(2) + "\n";
}

Scenario from_text(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(fmt::format("{}:{}:{}: malformed document: {}", source, line, col, e.what()));
  }

  const Reader r(source);
  Scenario s;
  s.num_clouds = r.count(r.field(doc, "num_clouds"), "num_clouds");
  s.num_users = r.count(r.field(doc, "num_users"), "num_users");
  s.num_slots = r.count(r.field(doc, "num_slots"), "num_slots");
  s.bs_capacity = r.numbers(r.field(doc, "bs_capacity"), "bs_capacity");
  s.cloud_capacity = r.numbers(r.field(doc, "cloud_capacity"), "cloud_capacity");
  s.service_size = r.numbers(r.field(doc, "service_size"), "service_size");

  const json& lat = r.array(r.field(doc, "link_latency"), "link_latency");
  for (std::size_t t = 0; t < lat.size(); ++t) {
    const std::string path = fmt::format("link_latency[{}]", t);
    const json& rows = r.array(lat[t], path);
    const std::size_t cols = rows.empty() || !rows[0].is_array() ? 0 : rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const auto row = r.numbers(rows[j], fmt::format("{}[{}]", path, j));
      if (row.size() != cols) r.fail(fmt::format("{}[{}]", path, j), "ragged matrix row");
      for (std::size_t i = 0; i < cols; ++i) m(j, i) = row[i];
    }
    s.link_latency.push_back(std::move(m));
  }

  const json& cov = r.array(r.field(doc, "coverage"), "coverage");
  for (std::size_t t = 0; t < cov.size(); ++t) {
    const std::string path = fmt::format("coverage[{}]", t);
    std::vector<std::vector<std::size_t>> slot;
    for (std::size_t k = 0; k < r.array(cov[t], path).size(); ++k) {
      const std::string upath = fmt::format("{}[{}]", path, k);
      std::vector<std::size_t> set;
      for (std::size_t a = 0; a < r.array(cov[t][k], upath).size(); ++a) {
        set.push_back(r.count(cov[t][k][a], fmt::format("{}[{}]", upath, a)));
      }
      slot.push_back(std::move(set));
    }
    s.coverage.push_back(std::move(slot));
  }

  const json& dem = r.array(r.field(doc, "demand"), "demand");
  for (std::size_t t = 0; t < dem.size(); ++t) {
    s.demand.push_back(r.numbers(dem[t], fmt::format("demand[{}]", t)));
  }

  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    Geometry geo;
    const json& st = r.array(r.field(g, "stations"), "geometry.stations");
    for (std::size_t i = 0; i < st.size(); ++i) {
      geo.stations.push_back(r.point(st[i], fmt::format("geometry.stations[{}]", i)));
    }
    geo.coverage_radius = r.number(r.field(g, "coverage_radius"), "geometry.coverage_radius");
    const json& up = r.array(r.field(g, "user_positions"), "geometry.user_positions");
    for (std::size_t t = 0; t < up.size(); ++t) {
      const std::string path = fmt::format("geometry.user_positions[{}]", t);
      std::vector<Point2> slot;
      for (std::size_t k = 0; k < r.array(up[t], path).size(); ++k) {
        slot.push_back(r.point(up[t][k], fmt::format("{}[{}]", path, k)));
      }
      geo.user_positions.push_back(std::move(slot));
    }
    s.geometry = std::move(geo);
  }
  return validate_scenario(std::move(s));
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("{}: cannot open file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("{}: cannot open for writing", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(fmt::format("{}: write failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

void save(const Scenario& s, const std::filesystem::path& path) {
  write_file_atomic(path, to_text(s));
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string scenario_digest(const Scenario& s) { return sha256_hex(to_text(s)); }

}  // namespace mecsim
