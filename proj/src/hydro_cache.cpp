#include "wecfarm/hydro_cache.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <vector>

#include "wecfarm/errors.hpp"

namespace wecfarm {

std::string cache_key(const CylinderGeometry& geom, double omega,
                      const HydroBackend& backend, double depth) {
  // %.6e quantizes to ~1e-6 relative, so physically identical inputs map to
  // the same key.
  char buf[192];
  std::snprintf(buf, sizeof(buf), "R=%.6e|AR=%.6e|h=%.6e|w=%.6e|be=%s|nt=%d|mh=%d",
                geom.radius, geom.slenderness, depth, omega,
                to_string(backend.variant).c_str(), backend.n_terms,
                backend.variant == BackendVariant::kMs ? backend.max_order : 0);
  return buf;
}

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

bool read_u32(std::istream& in, std::uint32_t& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof(v)));
}

std::vector<char> serialize(const IsolatedModal& m) {
  std::vector<char> out;
  auto push = [&](const void* p, std::size_t n) {
    const char* c = static_cast<const char*>(p);
    out.insert(out.end(), c, c + n);
  };
  push(&m.omega, sizeof(double));
  push(&m.wavenumber, sizeof(double));
  push(&m.added_mass, sizeof(double));
  push(&m.radiation_damping, sizeof(double));
  push(&m.radiated_amplitude, sizeof(std::complex<double>));
  push(&m.force_per_mode, sizeof(std::complex<double>));
  push(&m.excitation, sizeof(std::complex<double>));
  push(&m.plane_wave_factor, sizeof(std::complex<double>));
  const std::uint32_t nt = static_cast<std::uint32_t>(m.transfer.size());
  push(&nt, sizeof(nt));
  if (nt > 0) push(m.transfer.data(), nt * sizeof(std::complex<double>));
  return out;
}

IsolatedModal deserialize(const char* p, std::size_t len) {
  IsolatedModal m;
  auto pull = [&](void* dst, std::size_t n) {
    if (n > len) throw SchemaError("hydro cache: truncated record");
    std::memcpy(dst, p, n);
    p += n;
    len -= n;
  };
  pull(&m.omega, sizeof(double));
  pull(&m.wavenumber, sizeof(double));
  pull(&m.added_mass, sizeof(double));
  pull(&m.radiation_damping, sizeof(double));
  pull(&m.radiated_amplitude, sizeof(std::complex<double>));
  pull(&m.force_per_mode, sizeof(std::complex<double>));
  pull(&m.excitation, sizeof(std::complex<double>));
  pull(&m.plane_wave_factor, sizeof(std::complex<double>));
  std::uint32_t nt = 0;
  pull(&nt, sizeof(nt));
  m.transfer.resize(nt);
  if (nt > 0) pull(m.transfer.data(), nt * sizeof(std::complex<double>));
  return m;
}

}  // namespace

HydroCache::HydroCache(const std::string& path) : path_(path) {
  if (!path_.empty()) load();
}

HydroCache::~HydroCache() = default;

void HydroCache::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;  // created on first put
  std::uint32_t klen = 0;
  while (read_u32(in, klen)) {
    std::string key(klen, '\0');
    if (!in.read(key.data(), klen)) break;
    std::uint32_t plen = 0;
    if (!read_u32(in, plen)) break;
    std::vector<char> payload(plen);
    if (!in.read(payload.data(), plen)) break;
    map_[key] = deserialize(payload.data(), payload.size());
  }
}

std::optional<IsolatedModal> HydroCache::get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void HydroCache::put(const std::string& key, const IsolatedModal& value) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = map_.emplace(key, value);
  if (inserted && !path_.empty()) append(key, value);
}

void HydroCache::append(const std::string& key, const IsolatedModal& value) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) return;  // cache persistence is best-effort
  write_u32(out, static_cast<std::uint32_t>(key.size()));
  out.write(key.data(), key.size());
  const std::vector<char> payload = serialize(value);
  write_u32(out, static_cast<std::uint32_t>(payload.size()));
  out.write(payload.data(), payload.size());
}

std::size_t HydroCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

}  // namespace wecfarm
