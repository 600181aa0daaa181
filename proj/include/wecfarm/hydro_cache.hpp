#pragma once

#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "wecfarm/array_hydro.hpp"
#include "wecfarm/geometry.hpp"
#include "wecfarm/single_body.hpp"

namespace wecfarm {

// Canonical cache key: (R, AR, h, omega) quantized to 1e-6 relative, plus the
// backend variant and truncation orders.
std::string cache_key(const CylinderGeometry& geom, double omega,
                      const HydroBackend& backend, double depth);

// Key-value store for isolated-body modal solutions. Memory-only when the
// path is empty; otherwise backed by an append-only binary file. Concurrent
// reads are shared, writes exclusive. Results are identical with or without
// a cache hit.
class HydroCache {
 public:
  HydroCache() = default;
  explicit HydroCache(const std::string& path);
  ~HydroCache();

  std::optional<IsolatedModal> get(const std::string& key) const;
  void put(const std::string& key, const IsolatedModal& value);

  std::size_t size() const;

 private:
  void load();
  void append(const std::string& key, const IsolatedModal& value);

  std::string path_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, IsolatedModal> map_;
};

}  // namespace wecfarm
