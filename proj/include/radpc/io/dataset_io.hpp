#pragma once

#include <filesystem>
#include <fstream>
#include <optional>

#include "radpc/core/types.hpp"
#include "radpc/sim/simulator.hpp"

namespace radpc {

/// Writes the JSON-lines dataset: one header line, then one record per
/// frame. Deterministic byte-for-byte for identical datasets.
void write_dataset(const SimDataset& dataset, const std::filesystem::path& path);

/// Streaming reader. The header must parse (DataError otherwise); corrupt
/// record lines are skipped and counted.
class DatasetReader {
 public:
  explicit DatasetReader(const std::filesystem::path& path);

  const SimConfig& config() const { return config_; }
  const std::vector<Vec2>& waypoints() const { return waypoints_; }

  /// Extrinsics assembled from the header's sensor list.
  SensorExtrinsics extrinsics() const;

  /// Next readable record, or nullopt at end of file.
  std::optional<SimFrameRecord> next();

  int corrupt_records() const { return corrupt_; }

 private:
  std::ifstream in_;
  SimConfig config_;
  std::vector<Vec2> waypoints_;
  int corrupt_ = 0;
};

/// Whole-file convenience wrapper around DatasetReader.
SimDataset read_dataset(const std::filesystem::path& path);

}  // namespace radpc
