#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "bhp/bhp_dist.hpp"

namespace bhp {

// SHA-256 over a canonical JSON rendering of everything that determines a
// table's contents.
std::string table_config_hash(const SpectrumConfig& config,
                              const QuadratureSettings& quad, const GridSpec& grid);

std::string table_csv(const BhpTable& table);

// Writes <stem>.csv (u,pdf,cdf) and <stem>.json (config echo, hashes, tail
// masses).
void export_table(const BhpTable& table, const std::filesystem::path& stem);

// Reads and validates a table pair. Throws std::runtime_error if the sidecar
// hash does not match the CSV bytes or the echoed configuration.
BhpTable import_table(const std::filesystem::path& stem);

struct CachedTable {
  BhpTable table;
  bool cache_hit;
  std::filesystem::path stem;
};

// Cache keyed by table_config_hash: reuses <cache_dir>/bhp_table_<hash> when
// it validates, otherwise builds and writes it.
CachedTable load_or_build_table(const std::filesystem::path& cache_dir,
                                const SpectrumConfig& config,
                                const QuadratureSettings& quad, const GridSpec& grid);

}  // namespace bhp
