#pragma once
// Run artifacts: CSV tables, binary field snapshots, config hashing, run manifests.
//
// Snapshot layout (little-endian):
//   bytes 0..3   magic "LKSF"
//   u32          lattice dimension d (1 or 2)
//   u32          points per axis n
//   f64          half-width L
//   f64          interval start s
//   f64          interval end t
//   f64          damping lambda
//   u32          form: 0 = physical values (n^d f64), 1 = transform values
//                (n^d interleaved re, im pairs), row-major flat order either way
//   payload
// Doubles are written with full round-trip precision (%.17g) in all CSV output.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"
#include "levykit/prm.hpp"

namespace levykit {

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_events_csv(const std::string& path, const std::vector<PRMEvent>& events);

enum class SnapshotForm : std::uint32_t { physical = 0, transform = 1 };

struct SnapshotHeader {
  FrequencyGrid grid;
  double s = 0.0;
  double t = 0.0;
  double lambda = 0.0;
  SnapshotForm form = SnapshotForm::physical;
};

void write_snapshot(const std::string& path, SpectralField& field, double s, double t,
                    double lambda, SnapshotForm form);

struct Snapshot {
  SnapshotHeader header;
  std::vector<double> physical;                   // filled for form 0
  std::vector<std::complex<double>> transform;    // filled for form 1
  SpectralField as_field() const;
};

Snapshot read_snapshot(const std::string& path);

std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a_file(const std::string& path);

struct RunManifest {
  std::string kind;
  std::string config_path;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version;
  double runtime_ms = 0.0;
  std::vector<std::pair<std::string, std::string>> outputs;  // label -> path
};

void write_manifest(const std::string& path, const RunManifest& manifest);

// LEVYKIT_OUTPUT_ROOT if set, "." otherwise; created on demand by the writers
std::string output_root();

}  // namespace levykit
