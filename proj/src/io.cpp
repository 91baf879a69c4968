#include "covering/io.hpp"

#include <fstream>
#include <sstream>

namespace covering {

nlohmann::json space_to_json(const SpaceDescriptor& space) {
  nlohmann::json j;
  switch (space.kind()) {
    case SpaceKind::Sphere:
      j["kind"] = "sphere";
      j["dim"] = space.dim();
      break;
    case SpaceKind::Torus:
      j["kind"] = "torus";
      j["dim"] = space.dim();
      break;
    case SpaceKind::Finite:
      j["kind"] = "finite";
      j["distances"] = space.finite_data().dist;
      j["weights"] = space.finite_data().weights;
      break;
  }
  return j;
}

SpaceDescriptor space_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere") return SpaceDescriptor::sphere(j.at("dim").get<int>());
  if (kind == "torus") return SpaceDescriptor::torus(j.at("dim").get<int>());
  if (kind == "finite") {
    FiniteData data;
    data.dist = j.at("distances").get<std::vector<std::vector<double>>>();
    if (j.contains("weights")) {
      data.weights = j.at("weights").get<std::vector<double>>();
    } else {
      data.weights.assign(data.dist.size(), 1.0 / static_cast<double>(data.dist.size()));
    }
    return SpaceDescriptor::finite(std::move(data));
  }
  throw ValidationError("space json: unknown kind '" + kind + "'");
}

nlohmann::json point_to_json(const SpaceDescriptor& space, const Point& p) {
  if (space.kind() == SpaceKind::Finite) return p.index;
  return p.coords;
}

Point point_from_json(const SpaceDescriptor& space, const nlohmann::json& j) {
  if (space.kind() == SpaceKind::Finite) return Point::at_index(j.get<std::uint32_t>());
  auto coords = j.get<std::vector<double>>();
  if (coords.size() != space.coord_count())
    throw ValidationError("point json: wrong coordinate count");
  return Point::from_coords(std::move(coords));
}

std::vector<std::vector<double>> load_distance_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> load_vector_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
  }
  return values;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace covering
