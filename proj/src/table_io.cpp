#include "bhp/table_io.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "bhp/io_util.hpp"

namespace bhp {

namespace {

using nlohmann::json;

constexpr const char* kTableFormat = "bhp-table/1";

json config_json(const SpectrumConfig& config, const QuadratureSettings& quad,
                 const GridSpec& grid) {
  return json{
      {"format", kTableFormat},
      {"spectrum", {{"lattice_side", config.lattice_side},
                    {"mode_count", config.mode_count()},
                    {"convention", "periodic-lattice-laplacian"}}},
      {"quadrature", {{"x_max", quad.x_max},
                      {"abs_tol", quad.abs_tol},
                      {"max_subdivisions", quad.max_subdivisions}}},
      {"grid", {{"lo", grid.lo},
                {"hi", grid.hi},
                {"step", grid.step},
                {"orientation", std::string(to_string(grid.orientation))}}},
  };
}

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
  return std::filesystem::path(stem.string() + ext);
}

}  // namespace

std::string table_config_hash(const SpectrumConfig& config,
                              const QuadratureSettings& quad, const GridSpec& grid) {
  return sha256_hex(config_json(config, quad, grid).dump());
}

std::string table_csv(const BhpTable& table) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.grid().size());
  for (std::size_t i = 0; i < table.grid().size(); ++i) {
    rows.push_back({table.grid()[i], table.pdf_values()[i], table.cdf_values()[i]});
  }
  return format_csv(table_config_hash(table.config(), table.quad(), table.grid_spec()),
                    "u,pdf,cdf", rows);
}

void export_table(const BhpTable& table, const std::filesystem::path& stem) {
  const std::string csv = table_csv(table);
  json sidecar = config_json(table.config(), table.quad(), table.grid_spec());
  sidecar["config_hash"] =
      table_config_hash(table.config(), table.quad(), table.grid_spec());
  sidecar["content_hash"] = sha256_hex(csv);
  sidecar["points"] = table.grid().size();
  sidecar["left_tail_mass"] = table.left_tail_mass();
  sidecar["right_tail_mass"] = table.right_tail_mass();
  write_file(with_ext(stem, ".csv"), csv);
  write_file(with_ext(stem, ".json"), sidecar.dump(2) + "\n");
}

BhpTable import_table(const std::filesystem::path& stem) {
  const std::string csv = read_file(with_ext(stem, ".csv"));
  const json sidecar = json::parse(read_file(with_ext(stem, ".json")));
  if (sidecar.value("format", "") != kTableFormat) {
    throw std::runtime_error("unsupported table format in " + stem.string());
  }
  if (sidecar.at("content_hash").get<std::string>() != sha256_hex(csv)) {
    throw std::runtime_error("table content hash mismatch for " + stem.string());
  }
  SpectrumConfig config{sidecar.at("spectrum").at("lattice_side").get<int>()};
  QuadratureSettings quad{sidecar.at("quadrature").at("x_max").get<double>(),
                          sidecar.at("quadrature").at("abs_tol").get<double>(),
                          sidecar.at("quadrature").at("max_subdivisions").get<int>()};
  GridSpec grid{sidecar.at("grid").at("lo").get<double>(),
                sidecar.at("grid").at("hi").get<double>(),
                sidecar.at("grid").at("step").get<double>(),
                orientation_from_string(
                    sidecar.at("grid").at("orientation").get<std::string>())};
  const std::string hash = table_config_hash(config, quad, grid);
  if (sidecar.at("config_hash").get<std::string>() != hash) {
    throw std::runtime_error("table config hash mismatch for " + stem.string());
  }

  std::vector<double> u, pdf, cdf;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "u,pdf,cdf") {
        throw std::runtime_error("table CSV header must be 'u,pdf,cdf'");
      }
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::runtime_error("malformed table row at line " + std::to_string(line_no));
    }
    std::string_view view(line);
    u.push_back(parse_double(view.substr(0, c1)));
    pdf.push_back(parse_double(view.substr(c1 + 1, c2 - c1 - 1)));
    cdf.push_back(parse_double(view.substr(c2 + 1)));
  }
  return BhpTable(std::move(u), std::move(pdf), std::move(cdf), config, quad, grid,
                  sidecar.at("left_tail_mass").get<double>(),
                  sidecar.at("right_tail_mass").get<double>());
}

CachedTable load_or_build_table(const std::filesystem::path& cache_dir,
                                const SpectrumConfig& config,
                                const QuadratureSettings& quad, const GridSpec& grid) {
  const std::string hash = table_config_hash(config, quad, grid);
  const auto stem = cache_dir / ("bhp_table_" + hash.substr(0, 16));
  if (std::filesystem::exists(with_ext(stem, ".csv")) &&
      std::filesystem::exists(with_ext(stem, ".json"))) {
    try {
      return {import_table(stem), true, stem};
    } catch (const std::exception&) {
      // Stale or corrupt cache entry; rebuild below.
    }
  }
  BhpTable table = build_table(config, quad, grid);
  std::filesystem::create_directories(cache_dir);
  export_table(table, stem);
  return {std::move(table), false, stem};
}

}  // namespace bhp
