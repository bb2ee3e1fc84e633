#include "levykit/io.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "levykit/solver.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot files assume a little-endian host");

namespace levykit {

namespace {

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("snapshot: truncated file");
  return value;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_value(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed for " + path);
}

void write_events_csv(const std::string& path, const std::vector<PRMEvent>& events) {
  std::vector<std::vector<double>> rows;
  rows.reserve(events.size());
  for (const auto& e : events)
    rows.push_back({e.time, static_cast<double>(e.mark)});
  write_csv(path, {"time", "mark"}, rows);
}

void write_snapshot(const std::string& path, SpectralField& field, double s, double t,
                    double lambda, SnapshotForm form) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("snapshot: cannot open " + path);
  const auto& grid = field.grid();
  out.write("LKSF", 4);
  write_raw(out, static_cast<std::uint32_t>(grid.dim));
  write_raw(out, static_cast<std::uint32_t>(grid.n));
  write_raw(out, grid.box);
  write_raw(out, s);
  write_raw(out, t);
  write_raw(out, lambda);
  write_raw(out, static_cast<std::uint32_t>(form));
  if (form == SnapshotForm::physical) {
    const auto& phys = field.physical();
    out.write(reinterpret_cast<const char*>(phys.data()),
              static_cast<std::streamsize>(phys.size() * sizeof(double)));
  } else {
    const auto values = transform_values(field);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(std::complex<double>)));
  }
  if (!out) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "LKSF", 4) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  const auto dim = read_raw<std::uint32_t>(in);
  const auto n = read_raw<std::uint32_t>(in);
  const auto box = read_raw<double>(in);
  const auto s = read_raw<double>(in);
  const auto t = read_raw<double>(in);
  const auto lambda = read_raw<double>(in);
  const auto form = read_raw<std::uint32_t>(in);
  if (form > 1) throw std::runtime_error("snapshot: unknown form");

  Snapshot snap{{FrequencyGrid(static_cast<int>(dim), static_cast<int>(n), box), s, t, lambda,
                 static_cast<SnapshotForm>(form)},
                {},
                {}};
  const std::size_t size = snap.header.grid.size();
  if (snap.header.form == SnapshotForm::physical) {
    snap.physical.resize(size);
    in.read(reinterpret_cast<char*>(snap.physical.data()),
            static_cast<std::streamsize>(size * sizeof(double)));
  } else {
    snap.transform.resize(size);
    in.read(reinterpret_cast<char*>(snap.transform.data()),
            static_cast<std::streamsize>(size * sizeof(std::complex<double>)));
  }
  if (!in) throw std::runtime_error("snapshot: truncated payload in " + path);
  return snap;
}

SpectralField Snapshot::as_field() const {
  if (header.form == SnapshotForm::physical)
    return SpectralField::from_physical(header.grid, physical);
  return SpectralField::from_transform_values(header.grid, transform);
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ull;
  }
  return hash;
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("hash: cannot open " + path);
  std::uint64_t hash = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return hash;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "0x%016llx",
                static_cast<unsigned long long>(manifest.config_hash));
  nlohmann::json j;
  j["kind"] = manifest.kind;
  j["config"] = manifest.config_path;
  j["config_hash"] = hash_hex;
  j["seed"] = manifest.seed;
  j["version"] = manifest.version;
  j["runtime_ms"] = manifest.runtime_ms;
  auto& outputs = j["outputs"] = nlohmann::json::object();
  for (const auto& [label, file] : manifest.outputs) outputs[label] = file;
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("manifest: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("manifest: write failed for " + path);
}

std::string output_root() {
  if (const char* env = std::getenv("LEVYKIT_OUTPUT_ROOT"); env && *env) return env;
  return ".";
}

}  // namespace levykit
